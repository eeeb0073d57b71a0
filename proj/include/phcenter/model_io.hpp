// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "phcenter/lti.hpp"

namespace phcenter {

/// On-disk model document, schema "ph-center/1": dimensions, the four blocks
/// as {re, im} row-major arrays, optional metadata (name, seed, generator).
struct ModelDocument {
  static constexpr const char* kSchemaVersion = "ph-center/1";
  SystemModel model;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& what);

nlohmann::json model_to_json(const ModelDocument& doc);
ModelDocument model_from_json(const nlohmann::json& j);

/// Canonical text form: sorted keys, compact separators, floating-point
/// numbers rendered with 17 significant digits. parse -> dump is
/// byte-identical on canonical input.
std::string canonical_dump(const nlohmann::json& j);

ModelDocument load_model(const std::string& path);       // ParseError / DimensionError
void save_model(const ModelDocument& doc, const std::string& path);

/// FNV-1a 64-bit content digest, rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

/// Structural check of a report document: required keys `command`, `inputs`,
/// `outputs`, `tolerances` with the right JSON types.
bool validate_report_document(const nlohmann::json& j, std::string* why = nullptr);

}  // namespace phcenter
