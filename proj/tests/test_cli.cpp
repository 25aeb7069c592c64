#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "ssvar/cli/commands.hpp"

using namespace ssvar;
using namespace ssvar::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ssvar_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

const std::string kPlus = R"({"kind":"pure","amplitudes":[[0.7071067811865476,0],[0.7071067811865476,0]]})";
const std::string kHalf = R"({"kind":"density","matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})";
const std::string kBell =
    R"({"kind":"bipartite_pure","dims":[2,2],"amplitudes":[[[0.7071067811865476,0],[0,0]],[[0,0],[0.7071067811865476,0]]]})";

Report compute(const std::string& file, const std::string& quantity) {
  ComputeOptions o;
  o.state_path = write_file(quantity + ".json", file).string();
  o.quantity = quantity;
  o.roof.restarts = 4;
  return cmd_compute(o);
}

bool has_warning(const Report& r, const char* w) {
  return std::find(r.warnings.begin(), r.warnings.end(), std::string(w)) != r.warnings.end();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
  std::ifstream in(p);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("state files parse every kind and round-trip") {
  for (const std::string& text :
       {kPlus, kHalf, kBell, std::string(R"({"kind":"bloch","r":0.5,"theta":1.0,"phi":2.0})")}) {
    const StateFile s = parse_state(json::parse(text));
    const StateFile back = parse_state(to_json(s));
    CHECK(s.kind == back.kind);
    CHECK(testing::max_abs(s.density().matrix() - back.density().matrix()) <= 1e-15);
  }
}

TEST_CASE("state file diagnostics") {
  CHECK_THROWS_WITH_AS(parse_state(json::parse(R"({"kind":"qutrit"})")), doctest::Contains("kind"), InputError);
  CHECK_THROWS_WITH_AS(parse_state(json::parse(R"({"kind":"pure","amplitudes":[[0.6,0],[0.6,0]]})")),
                       doctest::Contains("amplitudes"), InputError);
  CHECK_THROWS_WITH_AS(parse_state(json::parse(R"({"kind":"bloch","r":2,"theta":0,"phi":0})")),
                       doctest::Contains("BadBloch"), InputError);
  CHECK_THROWS_WITH_AS(parse_state(json::parse(R"({"kind":"pure","amplitudes":[[1,0,3],[0,0]]})")),
                       doctest::Contains("amplitudes"), InputError);
  const fs::path broken = write_file("broken.json", "{\n  \"kind\": \"pure\",\n  \"amplitudes\": [ oops ]\n}\n");
  CHECK_THROWS_WITH_AS(load_state(broken), doctest::Contains("line 3"), InputError);
  CHECK_THROWS_AS(load_state(scratch("missing.json")), InputError);
}

TEST_CASE("compute examples") {
  CHECK_NEAR(compute(kPlus, "vhat-pure").value.get<double>(), 0.5, 1e-12);
  CHECK_NEAR(compute(kHalf, "vc").value.get<double>(), 0.0, 1e-8);
  CHECK_NEAR(compute(kBell, "concurrence").value.get<double>(), 1.0, 1e-12);
  CHECK_NEAR(compute(kHalf, "gap").value.get<double>(), 0.5, 1e-6);
  CHECK_NEAR(compute(kHalf, "va").value.get<double>(), 0.5, 1e-8);
  CHECK_NEAR(compute(kHalf, "vhat").value.get<double>(), 0.5, 1e-15);
  // Default observable diag(0, 1): F = 4 Var = 1.
  CHECK_NEAR(compute(kPlus, "qfi").value.get<double>(), 1.0, 1e-12);
  CHECK_NEAR(compute(kBell, "ent-vc").value.get<double>(), 0.5, 1e-8);
  const Report split = compute(kHalf, "split");
  CHECK_NEAR(split.value["classical"].get<double>(), 0.5, 1e-15);

  const Report vc = compute(kHalf, "vc");
  CHECK(vc.details.contains("decomposition"));
  CHECK(vc.details.contains("converged"));
  CHECK(vc.details["decomposition"]["reconstruction_error"].get<double>() <= 1e-8);
}

TEST_CASE("compute attaches discrepancy warnings") {
  CHECK(has_warning(compute(kHalf, "gap"), kGapFormWarning));
  const Report c = compute(kBell, "concurrence");
  CHECK(has_warning(c, kPrefactorWarning));
  CHECK(has_warning(c, kSchmidtNormWarning));
  CHECK_NEAR(c.details["measured_estimate"].get<double>(), 0.5, 1e-12);
  CHECK_NEAR(c.details["measured_estimate_with_inverse_d_prefactor"].get<double>(), 0.25, 1e-12);
  const Report b = compute(R"({"kind":"bloch","r":1,"theta":0,"phi":0})", "vhat");
  CHECK(has_warning(b, kBlochSignWarning));
  CHECK_NEAR(b.value.get<double>(), 0.0, 1e-15);
  CHECK_NEAR(b.details["sign_flipped_form_value"].get<double>(), 1.0, 1e-15);
}

TEST_CASE("compute rejects incompatible requests") {
  CHECK_THROWS_AS(compute(kHalf, "concurrence"), InputError);
  CHECK_THROWS_AS(compute(kBell, "vc"), InputError);
  CHECK_THROWS_AS(compute(kHalf, "vhat-pure"), InputError);
  CHECK_THROWS_AS(compute(kHalf, "nonsense"), InputError);
  CHECK_THROWS_AS(compute(R"({"kind":"density","matrix":[[[0.25,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0.5,0]]]})",
                          "gap"),
                  InputError);
  ComputeOptions o;
  o.state_path = write_file("half.json", kHalf).string();
  o.quantity = "qfi";
  o.observable = write_file("obs.json", R"({"diagonal":[1,2,3]})").string();
  CHECK_THROWS_AS(cmd_compute(o), InputError);
  o.observable = write_file("obs2.json", "[1, -1]").string();
  CHECK_NEAR(cmd_compute(o).value.get<double>(), 0.0, 1e-15);
}

TEST_CASE("parse_dims") {
  CHECK(parse_dims("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
  CHECK(parse_dims("2,3,4") == std::vector<std::size_t>{2, 3, 4});
  CHECK(parse_dims("7") == std::vector<std::size_t>{7});
  CHECK_THROWS_AS(parse_dims("5..2"), InputError);
  CHECK_THROWS_AS(parse_dims("a"), InputError);
  CHECK_THROWS_AS(parse_dims("2,,3"), InputError);
}

TEST_CASE("sweep grid") {
  SweepOptions o;
  o.grid = 5;
  o.spot_checks = 2;
  o.roof.restarts = 4;
  o.out = scratch("sweep.csv");
  const Report r = cmd_sweep(o);
  CHECK(r.passed);
  std::string header;
  const auto rows = read_csv(o.out, header);
  CHECK(header == "r,theta,vhat,vc,va,theta_m,theta_M");
  REQUIRE(rows.size() == 25);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 7);
    if (row[0] == 0.0) {
      CHECK_NEAR(row[2], 0.5, 1e-15);
      CHECK_NEAR(row[3], 0.0, 1e-15);
    }
    if (row[0] == 1.0 && row[1] == 0.0) {
      CHECK_NEAR(row[2], 0.0, 1e-15);
      CHECK_NEAR(row[3], 0.0, 1e-15);
    }
    if (row[0] == 1.0 && std::abs(row[1] - std::numbers::pi / 2) < 1e-12) {
      CHECK_NEAR(row[2], 0.5, 1e-15);
      CHECK_NEAR(row[3], 0.5, 1e-12);
    }
  }
  o.out = "/nonexistent-dir/sweep.csv";
  CHECK_THROWS_AS(cmd_sweep(o), InputError);
  o.grid = 1;
  CHECK_THROWS_AS(cmd_sweep(o), InputError);
}

TEST_CASE("verify reports are deterministic") {
  VerifyOptions o;
  o.suite = "identities";
  o.dims = {3};
  o.trials = 3;
  const Report a = cmd_verify(o);
  const Report b = cmd_verify(o);
  CHECK(a.passed);
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  const json& moments = a.details["suites"]["identities"][0];
  CHECK(moments["max_residual"].get<double>() <= 1e-12);

  o.suite = "theorem1";
  o.dims = {9};
  CHECK_THROWS_AS(cmd_verify(o), InputError);
  o.suite = "unknown";
  CHECK_THROWS_AS(cmd_verify(o), InputError);
}

TEST_CASE("random state files load back") {
  RandomOptions o;
  for (const std::string kind : {"pure", "density", "bloch"}) {
    o.kind = kind;
    o.dims = {kind == "bloch" ? 2u : 3u};
    o.out = scratch("random_" + kind + ".json");
    cmd_random(o);
    CHECK(to_string(load_state(o.out).kind) == kind);
  }
  o.kind = "bipartite_pure";
  o.dims = {2, 3};
  o.out = scratch("random_bp.json");
  cmd_random(o);
  CHECK(std::get<BipartitePureState>(load_state(o.out).payload).dim_b() == 3);
}
