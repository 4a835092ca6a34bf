#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "interf/cli.hpp"
#include "support/corpus.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = interf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(INTERF_TEST_DATA_DIR) + "/" + rel; }

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Result r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("envelope") {
  const json j = run_json({"classify", "1,1,0,0"});
  CHECK(j["schema_version"] == "report-v1");
  CHECK(j["command"] == "classify");
  CHECK(j.contains("inputs"));
  CHECK(j.contains("results"));
  CHECK(j["warnings"].is_array());
  CHECK(j["results"]["classification"]["tag"] == "pure");
}

TEST_CASE("classify") {
  json j = run_json({"classify", "--in", "stokes:2,0.5,0,0"});
  CHECK(j["results"]["classification"]["tag"] == "impure");
  CHECK(j["results"]["classification"]["eta_to_standard"].get<double>() ==
        doctest::Approx(std::atanh(0.25)));
  j = run_json({"classify", "1,2,0,0"});
  CHECK(j["results"]["classification"]["tag"] == "non-physical");

  const Result text = run({"classify", "1,1,0,0"});
  CHECK(text.code == 0);
  CHECK(text.out.find("pure") != std::string::npos);
}

TEST_CASE("lift") {
  const json j = run_json({"lift", "squeeze eta=0.6"});
  const auto& m = j["results"]["matrix"];
  CHECK(m[0][0].get<double>() == doctest::Approx(std::cosh(0.6)).epsilon(1e-15));
  CHECK(m[0][1].get<double>() == doctest::Approx(std::sinh(0.6)).epsilon(1e-15));
  CHECK(m[1][0].get<double>() == doctest::Approx(std::sinh(0.6)).epsilon(1e-15));
  CHECK(m[2][2].get<double>() == 1.0);

  const json dsl = run_json({"lift", "rotate(theta=90 deg)"});
  CHECK(dsl["results"]["matrix"][1][2].get<double>() == doctest::Approx(-1.0));

  const json raw = run_json({"lift", "matrix:1,0,0,0,0,0,1,0"});
  CHECK(raw["results"]["matrix"][0][0].get<double>() == 1.0);

  CHECK(run({"lift", "matrix:2,0,0,0,0,0,2,0"}).code == 3);
  CHECK(run({"lift", "decohere(lambda=1)"}).code == 2);
  CHECK(run({"lift", "wobble eta=1"}).code == 2);
}

TEST_CASE("littlegroup") {
  json j = run_json({"littlegroup", "--alpha", "1", "--u", "0.5"});
  const auto& d = j["results"]["diagnostics"];
  CHECK(d["fixed_point_residual"].get<double>() < 1e-12);
  CHECK(d["distance_to_f1"].get<double>() < 1e-12);
  CHECK(j["warnings"].empty());

  j = run_json({"littlegroup", "--alpha", "0.5", "--u", "0.3"});
  CHECK(j["results"]["diagnostics"]["metric_defect"].get<double>() ==
        doctest::Approx(0.022493803664271894).epsilon(1e-12));
  CHECK(j["warnings"].size() == 1);

  j = run_json({"littlegroup", "--theta", "0.4", "--eta", "0.9"});
  CHECK(j["results"]["metric_defect"].get<double>() < 1e-12);
  CHECK(j["results"]["fixed_point_residual"].get<double>() < 1e-12);

  CHECK(run({"littlegroup", "--alpha", "1"}).code == 2);
  CHECK(run({"littlegroup", "--alpha", "1", "--u", "1", "--theta", "1", "--eta", "1"}).code == 2);
}

TEST_CASE("decompose") {
  json j = run_json({"decompose", "iwasawa", "1,0,0,1"});
  CHECK(j["results"]["factors"]["k"].get<double>() == 0.0);
  j = run_json({"decompose", "wigner", "1,0.5,0,1"});
  CHECK(j["results"]["reconstruction_residual"].get<double>() < 1e-12);
  CHECK(j["results"]["factors"]["squeeze_exponent"].get<double>() >= 0.0);
  CHECK(run({"decompose", "iwasawa", "2,0,0,1"}).code == 3);
  CHECK(run({"decompose", "cartan", "1,0,0,1"}).code == 2);
  CHECK(run({"decompose", "wigner", "1,0,0"}).code == 2);
}

TEST_CASE("simulate") {
  json j = run_json({"simulate", data("golden/g01_rotate.circ")});
  const auto& fin = j["results"]["final"]["stokes"];
  CHECK(fin[0].get<double>() == doctest::Approx(1.0));
  CHECK(fin[2].get<double>() == doctest::Approx(1.0));
  CHECK(j["warnings"].empty());

  j = run_json({"simulate", data("golden/g04_phase.circ")});
  CHECK(j["warnings"].size() == 1);

  j = run_json({"simulate", data("golden/g21_chi_reduction.circ"), "--in", "stokes:1,1,0,0"});
  CHECK(j["results"]["final"]["classification"]["tag"] == "impure");

  SUBCASE("byte-identical output across runs") {
    const Result a = run({"--format", "json", "simulate", data("golden/g14_long_chain.circ")});
    const Result b = run({"--format", "json", "simulate", data("golden/g14_long_chain.circ")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("--out writes the report to a file") {
  const fs::path p = fs::temp_directory_path() / "interf_cli_out_test.json";
  fs::remove(p);
  const Result r = run({"--format", "json", "--out", p.string(), "classify", "1,0,0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const json j = json::parse(interf::testing::read_file(p));
  CHECK(j["command"] == "classify");
  fs::remove(p);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"--format", "yaml", "classify", "1,0,0,0"}).code == 2);
  CHECK(run({"--tol", "-1", "classify", "1,0,0,0"}).code == 2);
  CHECK(run({"classify", "1,0,0"}).code == 2);
  CHECK(run({"classify", "0,0,0,0"}).code == 3);
  CHECK(run({"simulate", data("golden/does_not_exist.circ")}).code == 2);
  CHECK(run({"simulate", data("golden/g01_rotate.circ"), "--in", "stokes:1,2,0,0"}).code == 3);
  CHECK(run({"simulate", data("golden/g01_rotate.circ"), "--in", "laser:1"}).code == 2);

  for (const auto& f : interf::testing::corpus("malformed")) {
    CAPTURE(f.filename().string());
    const Result r = run({"simulate", f.string()});
    CHECK((r.code == 2 || r.code == 3));
    // diagnostics are prefixed with path:line:col
    CHECK(r.err.find(f.string() + ":") != std::string::npos);
  }
  const Result syn = run({"simulate", data("malformed/m03_missing_paren.circ")});
  CHECK(syn.code == 2);
  const Result sem = run({"simulate", data("malformed/m07_negative_lambda.circ")});
  CHECK(sem.code == 3);
  CHECK(sem.err.find(":2:10:") != std::string::npos);
}
