#pragma once

#include "witten/json_io.hpp"
#include "witten/polygon_solver.hpp"
#include "witten/semiclassical.hpp"
#include "witten/spectral.hpp"
#include "witten/transfer.hpp"
#include "witten/trigpoly.hpp"

#include <span>
#include <string>

namespace witten {

nlohmann::ordered_json to_json(const TrigPoly& f);
nlohmann::ordered_json to_json(const TransTerm& t);
nlohmann::ordered_json to_json(const TransSeries& ts);
nlohmann::ordered_json morse_json(const MorseData& md);
nlohmann::ordered_json tunneling_json(const MorseData& md);
nlohmann::ordered_json to_json(const EigenAsym& e);
nlohmann::ordered_json to_json(const TransSolution& s);
nlohmann::ordered_json to_json(const SpectrumSample& s);
nlohmann::ordered_json to_json(const VerifyReport& r);

std::string morse_csv(const MorseData& md);
std::string eigen_csv(std::span<const EigenAsym> modes);
std::string solutions_csv(std::span<const TransSolution> sols);
std::string spectrum_csv(std::span<const SpectrumSample> samples);
/// h, N, lambda0..lambda_{n+1}, asym_i, ratio_i
std::string verify_csv(const VerifyReport& r);

}  // namespace witten
