#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rado/linear_system.hpp"
#include "rado/search.hpp"

namespace rado {

using nlohmann::json;

/// Colorings serialize as plain JSON arrays of residues; index i holds the
/// color of the integer i+1.
inline json coloring_to_json(const coloring& chi) {
  json arr = json::array();
  for (auto v : chi.values) arr.push_back(static_cast<int>(v));
  return arr;
}

inline coloring coloring_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("coloring: expected a JSON array of residues");
  std::vector<std::uint8_t> vals;
  vals.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw std::invalid_argument("coloring: entries must be integers");
    const long long v = e.get<long long>();
    if (v < 0 || v > 255) throw std::invalid_argument("coloring: residue out of range");
    vals.push_back(static_cast<std::uint8_t>(v));
  }
  return coloring{std::move(vals)};
}

inline json outcome_to_json(const search_outcome& out) {
  json j;
  j["kind"] = out.kind == outcome_kind::exact ? "exact" : "lower_bound";
  j["value"] = out.value;
  if (out.incomplete) j["incomplete"] = true;
  return j;
}

inline search_outcome outcome_from_json(const json& j, const json& witness, std::uint64_t nodes) {
  const std::string kind = j.at("kind").get<std::string>();
  const int value = j.at("value").get<int>();
  coloring chi = coloring_from_json(witness);
  if (kind == "exact") return search_outcome::exact(value, std::move(chi), nodes);
  if (kind == "lower_bound")
    return search_outcome::lower_bound(value, std::move(chi), j.value("incomplete", false), nodes);
  throw std::invalid_argument("outcome: unknown kind '" + kind + "'");
}

}  // namespace rado
