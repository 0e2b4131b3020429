#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "summability/kernel.hpp"

namespace summability {

std::optional<CatalogId> parse_catalog_id(std::string_view name);
std::optional<Flavor> parse_flavor(std::string_view name);

// "catalog:<name>(<reals>)" or "file:<path>"; a bare path is read as a file.
Kernel parse_kernel_spec(std::string_view spec);

// Kernel spec document:
//   {"flavor": "additive", "body": {"catalog": "exponential", "params": {"rate": 1}}}
//   {"flavor": "additive", "body": {"catalog": "mixture", "terms": [
//       {"coefficient": [0.5, 0], "catalog": "exponential", "params": {"rate": 1}}, ...]}}
//   {"flavor": "multiplicative", "body": {"samples": [[t, re, im], ...]}}
// The body fields may also sit at the top level. An optional "normalize": true
// rescales to unit mass.
Kernel kernel_from_json(const nlohmann::json& doc);
nlohmann::json kernel_to_json(const Kernel& k);
Kernel load_kernel_file(const std::string& path);

}  // namespace summability
