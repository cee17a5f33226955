#include "doctest.h"

#include "tclab/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace tclab;
using json = nlohmann::json;

namespace {

json run(const std::vector<std::string>& args, int expected_exit) {
  CliResult result = dispatch(args);
  CHECK(result.exit_code == expected_exit);
  json parsed = json::parse(result.output, nullptr, false);
  return parsed.is_discarded() ? json() : parsed;
}

// Minimal JSON Schema validation: type / required / properties / items.
bool validates(const json& schema, const json& value, std::string* why) {
  if (schema.contains("type")) {
    std::string type = schema["type"];
    bool ok = (type == "object" && value.is_object()) || (type == "array" && value.is_array()) ||
              (type == "string" && value.is_string()) ||
              (type == "integer" && value.is_number_integer()) ||
              (type == "number" && value.is_number()) ||
              (type == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "type mismatch: expected " + type + " got " + value.dump().substr(0, 40);
      return false;
    }
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) {
        *why = "missing required key " + key.get<std::string>();
        return false;
      }
  if (schema.contains("properties") && value.is_object())
    for (auto it = value.begin(); it != value.end(); ++it)
      if (schema["properties"].contains(it.key()))
        if (!validates(schema["properties"][it.key()], it.value(), why)) {
          *why = it.key() + ": " + *why;
          return false;
        }
  if (schema.contains("items") && value.is_array())
    for (const auto& item : value)
      if (!validates(schema["items"], item, why)) return false;
  return true;
}

void check_schema(const std::string& schema_file, const json& value) {
  std::ifstream in(std::string(TCLAB_SCHEMA_DIR) + "/" + schema_file);
  REQUIRE(in.is_open());
  json schema = json::parse(in);
  std::string why;
  bool ok = validates(schema, value, &why);
  INFO(why);
  CHECK(ok);
}

}  // namespace

TEST_CASE("futaki subcommand") {
  auto hexagon = run({"futaki", "--polytope", "hexagon"}, 0);
  CHECK(hexagon["futaki_vector"] == json::array({"0", "0"}));
  CHECK(hexagon["vanishes"] == true);
  check_schema("futaki.schema.json", hexagon);

  auto blowup = run({"futaki", "--polytope", "blowup1", "--params", "a=1"}, 0);
  CHECK(blowup["vanishes"] == false);

  auto fiber = run({"futaki", "--fiber", "d=2,b=1/2,a=1;d=2,b=-1/2,a=1", "--interval", "-1,1"}, 0);
  CHECK(fiber["futaki_fiberwise"] == "0");
  CHECK(fiber["vanishes"] == true);
}

TEST_CASE("extremal subcommand") {
  auto sol = run({"extremal", "--fiber", "d=2,b=1/2,a=1", "--interval", "-1,1"}, 0);
  CHECK(sol["alpha"] == "12/11");
  CHECK(sol["beta"] == "42/11");
  CHECK(sol["smooth_left"] == true);
  CHECK(sol["certificates"]["positivity"]["verdict"] == "positive");
  check_schema("extremal.schema.json", sol);

  auto einstein = run({"extremal", "--fiber", "d=2,b=1/2,a=1;d=2,b=-1/2,a=1", "--interval",
                       "-1,1", "--einstein", "1"},
                      0);
  CHECK(einstein["einstein"]["feasible"] == true);
  CHECK(einstein["einstein"]["D"] == "0");

  auto infeasible = run({"extremal", "--fiber", "d=2,b=0,a=2", "--interval", "-1,1",
                         "--einstein", "1"},
                        1);
  CHECK(infeasible["einstein"]["feasible"] == false);

  auto locus = run({"extremal", "--fiber", "d=2,b=1/2,a=1", "--interval", "-1,1", "--csc"}, 0);
  REQUIRE(locus["csc_locus"].size() == 1);
  CHECK(locus["csc_locus"][0]["feasible"] == false);
}

TEST_CASE("extremal csv export") {
  std::string path = "tclab_test_samples.csv";
  run({"extremal", "--fiber", "d=2,b=1/2,a=1;d=2,b=-1/2,a=1", "--interval", "-1,1", "--csv",
       path, "--samples", "11"},
      0);
  std::ifstream in(path);
  REQUIRE(in.is_open());
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,h,S,A_1,A_2");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    // Sakane: the S column is constant 6.
    auto second_comma = line.find(',', line.find(',') + 1);
    auto third_comma = line.find(',', second_comma + 1);
    CHECK(line.substr(second_comma + 1, third_comma - second_comma - 1) == "6");
  }
  CHECK(rows == 11);
  std::remove(path.c_str());
}

TEST_CASE("blowup csv: the scalar column is the affine -12x/11 + 42/11") {
  std::string path = "tclab_test_blowup.csv";
  run({"extremal", "--fiber", "d=2,b=-1/2,a=1", "--interval", "-1,1", "--csv", path,
       "--samples", "7"},
      0);
  std::ifstream in(path);
  REQUIRE(in.is_open());
  std::string line;
  std::getline(in, line);  // header
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    auto c3 = line.find(',', c2 + 1);
    double x = std::stod(line.substr(0, c1));
    double S = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    CHECK(S == doctest::Approx(-12.0 / 11 * x + 42.0 / 11).epsilon(1e-12));
  }
  CHECK(row == 7);
  std::remove(path.c_str());
}

TEST_CASE("curvature subcommand") {
  auto report = run({"curvature", "--potential", "catalog:cp2", "--points", "0,0;1/5,-1/3"}, 0);
  CHECK(report["results"][0]["S"] == "4");
  CHECK(report["results"][1]["S"] == "4");
  CHECK(report["identity_checks_pass"] == true);
  check_schema("curvature.schema.json", report);

  auto fitted = run({"curvature", "--potential", "catalog:blowup1-extremal", "--params", "a=1",
                     "--points", "0,0;1/2,-1/3;-1/4,1/8;1/8,1/4;-1/3,-1/5", "--fit"},
                    0);
  CHECK(fitted["extremal_fit"]["alpha"] == json::array({"-12/11", "0"}));
  CHECK(fitted["extremal_fit"]["beta"] == "42/11");
  CHECK(fitted["extremal_fit"]["max_residual"] == "0");

  auto einstein = run({"curvature", "--potential", "catalog:sakane6-einstein", "--points",
                       "0,0,0;1/2,-1/3,1/5", "--lambda", "1"},
                      0);
  CHECK(einstein["results"][0]["einstein_zero"] == true);

  // 3x3 bounding-box lattice filtered to the hexagon interior: 7 points.
  auto grid = run({"curvature", "--potential", "catalog:hexagon", "--grid", "3"}, 0);
  CHECK(grid["results"].size() == 7);
  auto square_grid = run({"curvature", "--potential", "catalog:square", "--grid", "3"}, 0);
  CHECK(square_grid["results"].size() == 9);
}

TEST_CASE("hermitian subcommand") {
  auto family = run({"hermitian", "--family", "-1,0"}, 0);
  CHECK(family["family"]["valid"] == true);
  CHECK(family["family"]["S"] == "6");
  check_schema("hermitian.schema.json", family);

  auto rejected = run({"hermitian", "--family", "-2,0"}, 0);
  CHECK(rejected["family"]["valid"] == false);

  auto mu = run({"hermitian", "--profile", "d=2,quad(1,2,3/4),b=1", "--mu"}, 0);
  CHECK(mu["gate_holds"] == true);

  auto noncompact = run({"hermitian", "--profile", "d=2,quad(1,2,3/4),b=1", "--noncompact",
                         "--beta", "0"},
                        0);
  CHECK(noncompact["accepted"] == true);

  auto positive_beta = run({"hermitian", "--profile", "d=2,quad(1,2,3/4),b=1", "--noncompact",
                            "--beta", "1"},
                           1);
  CHECK(positive_beta["accepted"] == false);

  auto compact = run({"hermitian", "--profile", "d=2,lin(1,5),b=1;d=2,quad(1,0,0),b=1",
                      "--compact-c", "5"},
                     0);
  CHECK(compact["found"] == true);
}

TEST_CASE("diag subcommand") {
  auto flag = run({"diag", "--orbit", "flag:2,2"}, 0);
  CHECK(flag["verdict"] == "not diagonalizable by this method");
  CHECK(flag["method_inconclusive"] == true);
  CHECK(flag["required_dim"] == 2);
  CHECK(flag["achieved_dim"] == 1);
  check_schema("diag.schema.json", flag);

  auto stiefel = run({"diag", "--orbit", "stiefel:4"}, 0);
  CHECK(stiefel["verdict"] == "diagonalizable");

  auto su2 = run({"diag", "--orbit", "su2"}, 0);
  CHECK(su2["verdict"] == "diagonalizable");

  auto t3 = run({"diag", "--orbit", "t3"}, 0);
  CHECK(t3["verdict"] == "not diagonalizable by this method");

  run({"diag", "--orbit", "nonsense"}, 2);
}

TEST_CASE("t2 subcommand") {
  auto inv = run({"t2", "--orbit", "(1,0);(0,1)", "--invariants"}, 0);
  CHECK(inv["chi"] == 2);
  CHECK(inv["tau"] == 0);
  CHECK(inv["hitchin_thorpe_pass"] == true);
  check_schema("t2.schema.json", inv);

  auto einstein = run({"t2", "--example", "s4", "--grid", "8", "--check", "einstein", "--tol",
                       "1e-6"},
                      0);
  CHECK(einstein["pass"] == true);
  check_schema("t2.schema.json", einstein);

  auto gravity = run({"t2", "--example", "s4", "--check", "gravity", "--killing", "1,0",
                      "--side", "tmin"},
                     0);
  CHECK(gravity["kappa2"].size() > 0);

  auto bolts = run({"t2", "--example", "s2xs2", "--check", "bolts"}, 0);
  CHECK(bolts["rel_error"].get<double>() < 1e-6);
}

TEST_CASE("file-based potential input") {
  std::string path = "tclab_test_potential.json";
  {
    std::ofstream out(path);
    out << R"json({"n": 3,
      "facets": [
        {"mu": [1,0,0], "lambda": "-1"}, {"mu": [-1,0,0], "lambda": "-1"},
        {"mu": [0,1,0], "lambda": "-1"}, {"mu": [0,0,1], "lambda": "-1"},
        {"mu": [-1,-1,0], "lambda": "-1"}, {"mu": [1,0,-1], "lambda": "-1"}],
      "correction_hessian": [
        "(x1^2-10)/((x1^2-4)*(x1^2-7))", "0", "0",
        "0", "0", "0",
        "0", "0", "0"]})json";
  }
  auto report = run({"curvature", "--potential", path, "--points", "0,0,0", "--lambda", "1"}, 0);
  CHECK(report["results"][0]["einstein_zero"] == true);
  std::remove(path.c_str());
}

TEST_CASE("empty sample grid exports a header-only file") {
  std::string path = "tclab_test_empty.csv";
  run({"extremal", "--fiber", "d=2,b=1/2,a=1", "--interval", "-1,1", "--csv", path,
       "--samples", "0"},
      0);
  std::ifstream in(path);
  REQUIRE(in.is_open());
  std::string header, extra;
  CHECK(std::getline(in, header));
  CHECK(header == "x,h,S,A_1");
  CHECK(!std::getline(in, extra));
  std::remove(path.c_str());
}

TEST_CASE("exit codes and determinism") {
  run({"nonsense"}, 2);
  run({"futaki"}, 2);
  run({"extremal", "--fiber", "d=3,b=1,a=1", "--interval", "-1,1"}, 2);

  // Byte-identical output across repeated runs.
  auto a = dispatch({"curvature", "--potential", "catalog:cp2", "--grid", "2"});
  auto b = dispatch({"curvature", "--potential", "catalog:cp2", "--grid", "2"});
  CHECK(a.output == b.output);
  CHECK(thread_cap() >= 1);
}
