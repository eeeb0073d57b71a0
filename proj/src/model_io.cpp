// SPDX-License-Identifier: Apache-2.0

#include "phcenter/model_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace phcenter {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return nlohmann::json{{"im", std::move(im)}, {"re", std::move(re)}};
}

namespace {

double number_at(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) {
    throw ParseError("expected a number in " + what);
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError("non-finite number in " + what);
  }
  return v;
}

RealMatrix real_array_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(what + " must be a non-empty 2D array");
  }
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) {
    throw ParseError(what + " must be a 2D array");
  }
  const Index cols = static_cast<Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError(what + " has ragged rows");
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = number_at(row[static_cast<size_t>(k)], what);
    }
  }
  return m;
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw ParseError(what + " must be an object with \"re\" and \"im\"");
  }
  const RealMatrix re = real_array_from_json(j["re"], what + ".re");
  const RealMatrix im = real_array_from_json(j["im"], what + ".im");
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw ParseError(what + ": re/im shape mismatch");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

nlohmann::json model_to_json(const ModelDocument& doc) {
  nlohmann::json j{
      {"schema_version", ModelDocument::kSchemaVersion},
      {"n", doc.model.state_dim()},
      {"m", doc.model.port_dim()},
      {"A", matrix_to_json(doc.model.a)},
      {"B", matrix_to_json(doc.model.b)},
      {"C", matrix_to_json(doc.model.c)},
      {"D", matrix_to_json(doc.model.d)},
  };
  nlohmann::json metadata = nlohmann::json::object();
  if (doc.name) metadata["name"] = *doc.name;
  if (doc.seed) metadata["seed"] = *doc.seed;
  if (doc.generator) metadata["generator"] = *doc.generator;
  if (!metadata.empty()) j["metadata"] = std::move(metadata);
  return j;
}

ModelDocument model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model document must be a JSON object");
  if (!j.contains("schema_version") || j["schema_version"] != ModelDocument::kSchemaVersion) {
    throw ParseError(std::string("model document requires schema_version \"") +
                     ModelDocument::kSchemaVersion + "\"");
  }
  for (const char* key : {"n", "m", "A", "B", "C", "D"}) {
    if (!j.contains(key)) throw ParseError(std::string("model document missing \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || !j["m"].is_number_integer()) {
    throw ParseError("n and m must be integers");
  }

  ModelDocument doc;
  doc.model.a = matrix_from_json(j["A"], "A");
  doc.model.b = matrix_from_json(j["B"], "B");
  doc.model.c = matrix_from_json(j["C"], "C");
  doc.model.d = matrix_from_json(j["D"], "D");

  const Index n = j["n"].get<Index>();
  const Index m = j["m"].get<Index>();
  if (doc.model.a.rows() != n || doc.model.d.rows() != m) {
    throw DimensionError("declared n/m do not match matrix shapes");
  }
  doc.model.validate();

  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& meta = j["metadata"];
    if (meta.contains("name") && meta["name"].is_string()) doc.name = meta["name"].get<std::string>();
    if (meta.contains("seed") && meta["seed"].is_number_unsigned()) {
      doc.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("generator") && meta["generator"].is_string()) {
      doc.generator = meta["generator"].get<std::string>();
    }
  }
  return doc;
}

namespace {

void dump_value(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_value(item, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw ParseError("canonical_dump: non-finite number");
      if (v == 0.0) v = 0.0;  // canonical form drops the sign of zero
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();  // strings, integers, booleans, null
      break;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_value(j, out);
  return out;
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return model_from_json(j);
}

void save_model(const ModelDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << canonical_dump(model_to_json(doc)) << '\n';
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char ch : bytes) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, hash);
  return buf;
}

bool validate_report_document(const nlohmann::json& j, std::string* why) {
  const auto fail = [&](const std::string& reason) {
    if (why != nullptr) *why = reason;
    return false;
  };
  if (!j.is_object()) return fail("report must be an object");
  if (!j.contains("command") || !j["command"].is_string()) return fail("missing string `command`");
  if (!j.contains("inputs") || !j["inputs"].is_object()) return fail("missing object `inputs`");
  if (!j.contains("outputs") || !j["outputs"].is_object()) return fail("missing object `outputs`");
  if (!j.contains("tolerances") || !j["tolerances"].is_object()) {
    return fail("missing object `tolerances`");
  }
  if (j.contains("wall_time_ms") && !j["wall_time_ms"].is_number()) {
    return fail("`wall_time_ms` must be a number");
  }
  return true;
}

}  // namespace phcenter
