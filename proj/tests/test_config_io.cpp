#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hlbm/config.hpp"
#include "hlbm/field_io.hpp"
#include "hlbm/lattice.hpp"

using namespace hlbm;

namespace {

const char* kMinimal = R"([grid]
nx = 32
ny = 32
[physics]
tau = 0.8
)";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
  const auto r = config::parse_config(kMinimal);
  REQUIRE(r.ok());
  const auto& c = *r.config;
  CHECK(c.sim.nx == 32);
  CHECK(c.sim.tau == 0.8);
  CHECK(std::isinf(c.sim.K));
  CHECK(c.sim.steps == 0);
  CHECK(c.walls == "none");
  CHECK(c.output.csv);
  CHECK(!c.output.vtk);
  CHECK(c.provenance.original_text == kMinimal);
  CHECK(c.provenance.tool_version == config::kToolVersion);
}

TEST_CASE("config round trip: parse(serialize(parse(text))) is stable") {
  const auto r1 = config::parse_config(kMinimal);
  REQUIRE(r1.ok());
  const std::string canon = r1.config->serialize();
  const auto r2 = config::parse_config(canon);
  REQUIRE(r2.ok());
  CHECK(r2.config->serialize() == canon);
}

TEST_CASE("all errors are reported with line numbers") {
  const std::string bad = R"([grid]
nx = 32
ny = 32
bogus_key = 1
[physics]
tau = 0.4
force_x = not_a_number
[porosity]
K = -1
)";
  const auto r = config::parse_config(bad);
  CHECK(!r.ok());
  // unknown key, bad number and tau range must all be present at once
  const std::string text = r.error_text();
  CHECK(text.find("unknown key grid.bogus_key") != std::string::npos);
  CHECK(text.find("line 4") != std::string::npos);
  CHECK(text.find("not a number") != std::string::npos);
  REQUIRE(r.errors.size() >= 2);
}

TEST_CASE("range violations name the constraint and the line") {
  {
    const auto r = config::parse_config("[grid]\nnx = 8\nny = 8\n[physics]\ntau = 0.4\n");
    CHECK(!r.ok());
    CHECK(r.error_text().find("relaxation time must exceed 0.5") != std::string::npos);
    CHECK(r.error_text().find("line 5") != std::string::npos);
  }
  {
    const auto r = config::parse_config("[grid]\nnx = 8\nny = 8\n[physics]\ntau = 0.8\n[porosity]\nK = -1\n");
    CHECK(!r.ok());
    CHECK(r.error_text().find("porosity control") != std::string::npos);
  }
  {
    const auto r = config::parse_config("[grid]\nnx = 8\nny = 8\n");
    CHECK(!r.ok());
    CHECK(r.error_text().find("missing required key physics.tau") != std::string::npos);
  }
}

TEST_CASE("overrides replace file keys and are validated") {
  const auto r = config::parse_config(kMinimal, {"physics.tau=0.9", "porosity.K=100"});
  REQUIRE(r.ok());
  CHECK(r.config->sim.tau == 0.9);
  CHECK(r.config->sim.K == 100.0);
  const auto bad = config::parse_config(kMinimal, {"physics.tau=0.2"});
  CHECK(!bad.ok());
  const auto unknown = config::parse_config(kMinimal, {"physics.quux=1"});
  CHECK(!unknown.ok());
}

TEST_CASE("disk mask area approximates the disk") {
  const auto mask = config::disk_mask(256, 256, 0.5, 0.5, 0.5);
  std::size_t solid = 0;
  for (auto v : mask) solid += v;
  const double frac = static_cast<double>(solid) / (256.0 * 256.0);
  CHECK(frac == doctest::Approx(3.14159265 / 4.0 * 0.25).epsilon(0.01));
}

TEST_CASE("csv: header echo, 17-digit round trip") {
  lattice::SimulationConfig cfg;
  cfg.nx = cfg.ny = 2;
  cfg.tau = 0.8;
  lattice::Simulation sim(cfg);
  sim.set_initial_state([](int i, int j, double& rho, double& ux, double& uy) {
    rho = 1.0 + 0.123456789012345 * (i + 2 * j);
    ux = 1.0 / 3.0 * (i + 1);
    uy = -1.0 / 7.0 * (j + 1);
  });
  const auto fields = sim.macroscopic();

  const std::string path = temp_path("hlbm_io_test.csv");
  io::write_csv(path, fields, 0.25, {"tool test", "key = value"});
  const auto back = io::read_csv(path);
  CHECK(back.fields.nx == 2);
  CHECK(back.fields.ny == 2);
  CHECK(back.dx == 0.25);
  REQUIRE(back.header.size() == 2);
  CHECK(back.header[0] == "tool test");
  for (std::size_t c = 0; c < fields.size(); ++c) {
    // %.17g round-trips doubles exactly
    CHECK(back.fields.rho[c] == fields.rho[c]);
    CHECK(back.fields.ux[c] == fields.ux[c]);
    CHECK(back.fields.uy[c] == fields.uy[c]);
    CHECK(back.fields.p[c] == fields.p[c]);
  }
  std::remove(path.c_str());
}

TEST_CASE("csv output is deterministic for identical configs") {
  auto make_text = [] {
    lattice::SimulationConfig cfg;
    cfg.nx = cfg.ny = 8;
    cfg.tau = 0.77;
    cfg.ax = 1e-6;
    cfg.wall_y = true;
    lattice::Simulation sim(cfg);
    sim.step(100);
    return io::csv_text(sim.macroscopic(), 1.0, {"run"});
  };
  CHECK(make_text() == make_text());
}

TEST_CASE("vtk golden file for a tiny fixed field") {
  lattice::MacroFields f;
  f.nx = 2;
  f.ny = 1;
  f.step = 0;
  f.rho_ref = 1.0;
  f.rho = {1.0, 1.5};
  f.ux = {0.25, -0.5};
  f.uy = {0.0, 1.0};
  f.p = {0.0, 1.0 / 6.0};
  const std::string expected =
      "# vtk DataFile Version 3.0\n"
      "tiny\n"
      "ASCII\n"
      "DATASET STRUCTURED_POINTS\n"
      "DIMENSIONS 2 1 1\n"
      "ORIGIN 0.5 0.5 0\n"
      "SPACING 1 1 1\n"
      "POINT_DATA 2\n"
      "SCALARS rho double 1\n"
      "LOOKUP_TABLE default\n"
      "1\n"
      "1.5\n"
      "VECTORS velocity double\n"
      "0.25 0 0\n"
      "-0.5 1 0\n"
      "SCALARS p double 1\n"
      "LOOKUP_TABLE default\n"
      "0\n"
      "0.16666666666666666\n";
  CHECK(io::vtk_text(f, 1.0, "tiny") == expected);
}
