// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "phcenter/model_io.hpp"
#include "phcenter/ph_form.hpp"
#include "test_support.hpp"

using namespace phcenter;
using namespace phcenter::testing;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("phcenter_io_test_" + name);
}

}  // namespace

TEST_CASE("model document JSON round-trip preserves the model") {
  ModelDocument doc;
  doc.model = generate_random_ph(4, 2, 3131);
  doc.name = "round-trip";
  doc.seed = 3131;
  doc.generator = GaussianSampler::kGeneratorName;

  const nlohmann::json j = model_to_json(doc);
  const ModelDocument back = model_from_json(j);
  CHECK((back.model.a - doc.model.a).norm() == 0.0);
  CHECK((back.model.b - doc.model.b).norm() == 0.0);
  CHECK((back.model.c - doc.model.c).norm() == 0.0);
  CHECK((back.model.d - doc.model.d).norm() == 0.0);
  CHECK(back.name == doc.name);
  CHECK(back.seed == doc.seed);
}

TEST_CASE("canonical dump is byte-stable under parse -> dump") {
  ModelDocument doc;
  doc.model = generate_random_ph(3, 2, 77);
  doc.seed = 77;
  const std::string text = canonical_dump(model_to_json(doc));
  const std::string again = canonical_dump(nlohmann::json::parse(text));
  CHECK(text == again);

  // Keys come out sorted.
  CHECK(text.find("\"A\"") < text.find("\"B\""));
  CHECK(text.find("\"B\"") < text.find("\"C\""));
  CHECK(text.find("\"D\"") < text.find("\"m\""));
  CHECK(text.find("\"m\"") < text.find("\"n\""));
}

TEST_CASE("canonical dump uses 17-significant-digit floats") {
  const nlohmann::json j = {{"value", 0.1}};
  CHECK(canonical_dump(j) == "{\"value\":0.10000000000000001}");
  const nlohmann::json third = {{"value", 1.0 / 3.0}};
  CHECK(canonical_dump(third) == "{\"value\":0.33333333333333331}");
  const nlohmann::json integral = {{"value", 1}};
  CHECK(canonical_dump(integral) == "{\"value\":1}");
}

TEST_CASE("save then load is exact, file bytes are stable") {
  const auto path = temp_file("save_load.json");
  ModelDocument doc;
  doc.model = generate_random_ph(4, 2, 909);
  doc.seed = 909;
  doc.generator = GaussianSampler::kGeneratorName;
  save_model(doc, path.string());

  const std::string bytes = slurp(path);
  const ModelDocument loaded = load_model(path.string());
  CHECK((loaded.model.a - doc.model.a).norm() == 0.0);
  CHECK((loaded.model.d - doc.model.d).norm() == 0.0);

  save_model(loaded, path.string());
  CHECK(slurp(path) == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("load_model rejects malformed input") {
  const auto path = temp_file("bad.json");
  {
    std::ofstream out(path);
    out << "{ this is not json";
  }
  CHECK_THROWS_AS(load_model(path.string()), ParseError);

  {
    std::ofstream out(path);
    out << R"({"schema_version":"ph-center/1","n":2,"m":1,)"
        << R"("A":{"im":[[0.0]],"re":[[1.0]]},"B":{"im":[[0.0]],"re":[[1.0]]},)"
        << R"("C":{"im":[[0.0]],"re":[[1.0]]},"D":{"im":[[0.0]],"re":[[1.0]]}})";
  }
  CHECK_THROWS_AS(load_model(path.string()), DimensionError);

  {
    std::ofstream out(path);
    out << R"({"n":1,"m":1})";
  }
  CHECK_THROWS_AS(load_model(path.string()), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("content digest is stable and sensitive") {
  const std::string a = content_digest("hello");
  CHECK(a == content_digest("hello"));
  CHECK(a != content_digest("hello!"));
  CHECK(a.substr(0, 8) == "fnv1a64:");
  CHECK(a.size() == 8 + 16);
}

TEST_CASE("validate_report_document") {
  nlohmann::json good = {
      {"command", "check"},
      {"inputs", {{"path", "x"}, {"digest", "y"}}},
      {"outputs", nlohmann::json::object()},
      {"tolerances", nlohmann::json::object()},
  };
  std::string why;
  CHECK(validate_report_document(good, &why));

  nlohmann::json bad = good;
  bad.erase("tolerances");
  CHECK_FALSE(validate_report_document(bad, &why));
  CHECK(why == "missing object `tolerances`");
}
