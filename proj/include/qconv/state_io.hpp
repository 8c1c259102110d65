#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qconv/conv.hpp"

namespace qconv {

/// Reads {"d", "n", "kind", payload} where kind is one of
///   dense:  "re", "im" as row-major flat arrays or nested rows
///   char:   "re", "im" over the phase space in (p, q) index order
///   msps:   "generators" ([{"p": [..], "q": [..]}] or flat [p.., q..]) and "phases"
///   preset: "name" in maximally-mixed, zero-ket, t-state, random-pure, random-mixed
/// Payload fields may sit at top level or inside a "payload" object. Random
/// presets need `seed`. Schema errors throw ParseError.
DensityMatrix state_from_json(const nlohmann::json& j, std::optional<std::uint64_t> seed = std::nullopt);

DensityMatrix preset_state(const std::string& name, int d, int n, std::optional<std::uint64_t> seed = std::nullopt);

/// Dense form with flat row-major "re" and "im".
nlohmann::json state_to_json(const DensityMatrix& rho);
nlohmann::json char_to_json(const CharFunction& xi);
nlohmann::json group_to_json(const StabilizerGroup& group);
nlohmann::json phase_point_to_json(const PhasePoint& x);

/// {"d", "n", "G": [[g00, g01], [g10, g11]]}
ConvolutionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ConvolutionSpec& spec);

/// Parse helper that maps nlohmann exceptions to ParseError.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace qconv
