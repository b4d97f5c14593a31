#pragma once

// Layer files: UTF-8 JSON, schema_version 1.
//
//   {"schema_version": 1, "inputs": n, "units": [
//       {"kind": "relu",   "w": [...], "b": x},
//       {"kind": "lrelu",  "w": [...], "b": x, "alpha": a},
//       {"kind": "maxout", "W": [[...], ...], "b": [...]},     // W row-major, one row per piece
//       {"kind": "raw",    "terms": [{"b": x, "c": [...]}, ...]}]}

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "tropreg/tropical.hpp"

namespace tropreg {

inline constexpr int kLayerSchemaVersion = 1;

LayerSpec layer_from_json(const nlohmann::json& doc);
nlohmann::json layer_to_json(const LayerSpec& layer);

LayerSpec parse_layer(const std::filesystem::path& path);
LayerSpec parse_layer_text(const std::string& text);
std::string serialize_layer(const LayerSpec& layer);
void write_layer(const std::filesystem::path& path, const LayerSpec& layer);

/// Standard-normal weights and biases, unit i drawn from substream (seed, i).
LayerSpec generate_layer(UnitKind kind, std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed,
                         double alpha = 0.1);

UnitKind parse_unit_kind(const std::string& s);

} // namespace tropreg
