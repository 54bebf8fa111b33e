// Command-line front end: regime tables, closed-form moment evaluation,
// lattice runs from config files, unit-cell permeability, benchmarks.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlbm/bench.hpp"
#include "hlbm/cellperm.hpp"
#include "hlbm/config.hpp"
#include "hlbm/field_io.hpp"
#include "hlbm/kinetics.hpp"
#include "hlbm/lattice.hpp"
#include "hlbm/regime.hpp"

namespace {

using hlbm::config::format_g17;

std::vector<double> parse_range(const std::string& spec) {
  // "start:stop:count" (inclusive linear range) or "a,b,c" list
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a, b;
    int count;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &count) != 3 || count < 1)
      throw CLI::ValidationError("range must be start:stop:count");
    for (int i = 0; i < count; ++i)
      out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    return out;
  }
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int cmd_regime(int d, double C, int n_select, const std::string& eps_spec, const std::string& format) {
  using namespace hlbm::regime;
  const auto eps_values = parse_range(eps_spec);
  std::vector<int> ns = n_select == 0 ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{n_select};

  const bool csv = format == "csv";
  if (csv)
    std::cout << "n,eps,a_eps,sigma_eps,porosity,case,sigma_limit,porosity_limit\n";
  else
    std::printf("%3s %12s %14s %14s %12s  %-14s %12s %14s\n", "n", "eps", "a_eps", "sigma_eps",
                "porosity", "case", "sigma_limit", "porosity_limit");

  for (const int n : ns) {
    PorousScaling s;
    s.d = d;
    s.law = PowerLaw{C, n};
    const auto report = classify_regime(s);
    const std::string sigma_lim = report.sigma_limit.kind == SigmaLimitKind::Infinite ? "inf"
                                  : report.sigma_limit.kind == SigmaLimitKind::Zero
                                      ? "0"
                                      : format_g17(report.sigma_limit.value);
    for (const double eps : eps_values) {
      s.epsilon = eps;
      const double a = s.obstacle_size();
      const double sigma = power_law_sigma(C, n, eps);
      s.a_eps = a;
      const double phi = porosity(s);
      s.a_eps.reset();
      if (csv) {
        std::cout << n << ',' << format_g17(eps) << ',' << format_g17(a) << ',' << format_g17(sigma)
                  << ',' << format_g17(phi) << ',' << to_string(report.case_label) << ',' << sigma_lim
                  << ',' << format_g17(report.porosity_limit) << "\n";
      } else {
        std::printf("%3d %12.6g %14.8g %14.8g %12.8g  %-14s %12s %14.12g\n", n, eps, a, sigma, phi,
                    to_string(report.case_label), sigma_lim.c_str(), report.porosity_limit);
      }
    }
  }
  return 0;
}

void print_moment_rows(const std::string& name, const hlbm::kinetics::HomogenizedMaxwellian& M) {
  using namespace hlbm::kinetics;
  const int d = M.d;
  // columns: moment,component,i,j,k,l,value
  if (name == "eq" || name == "all") {
    const auto em = equilibrium_moments(M);
    std::cout << "eq,rho,,,,," << format_g17(em.rho) << "\n";
    for (int i = 0; i < d; ++i) std::cout << "eq,u," << i << ",,,," << format_g17(em.u[i]) << "\n";
    std::cout << "eq,p,,,,," << format_g17(em.p) << "\n";
  }
  if (name == "cm2" || name == "all") {
    const auto T = central_moment2(M);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        std::cout << "cm2,P," << i << ',' << j << ",,," << format_g17(T[i][j]) << "\n";
  }
  if (name == "cm3" || name == "all") {
    const auto T = central_moment3(M);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          std::cout << "cm3,T," << i << ',' << j << ',' << k << ",," << format_g17(T[i][j][k]) << "\n";
  }
  if (name == "ccwv" || name == "all") {
    const auto T = mixed_moment_ccwv(M);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            std::cout << "ccwv,Q," << i << ',' << j << ',' << k << ',' << l << ','
                      << format_g17(T[i][j][k][l]) << "\n";
  }
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& out_dir_flag) {
  auto parsed = hlbm::config::parse_config_file(config_path, overrides);
  if (!parsed.ok()) {
    std::cerr << "config errors:\n" << parsed.error_text();
    return 1;
  }
  auto cfg = *parsed.config;
  if (!out_dir_flag.empty()) cfg.output.out_dir = out_dir_flag;
  std::filesystem::create_directories(cfg.output.out_dir);

  std::vector<std::string> header;
  header.push_back(std::string(hlbm::config::kToolVersion));
  {
    std::istringstream ss(cfg.serialize());
    std::string line;
    while (std::getline(ss, line)) header.push_back(line);
  }

  try {
    const auto series = hlbm::lattice::run(cfg.sim);
    for (const auto& snap : series) {
      const std::string base =
          cfg.output.out_dir + "/" + cfg.output.prefix + "_" + std::to_string(snap.step);
      if (cfg.output.csv) hlbm::io::write_csv(base + ".csv", snap, 1.0, header);
      if (cfg.output.vtk) hlbm::io::write_vtk(base + ".vtk", snap, 1.0, cfg.output.prefix);
    }
    const auto& last = series.back();
    double umax = 0.0;
    for (std::size_t c = 0; c < last.size(); ++c)
      umax = std::max(umax, std::hypot(last.ux[c], last.uy[c]));
    std::cout << "completed " << last.step << " steps, " << series.size() << " snapshot(s), max |u| = "
              << umax << " (lattice units)\n";
  } catch (const hlbm::lattice::InstabilityError& ex) {
    std::cerr << "instability: " << ex.what() << "\n";
    return 3;
  }
  return 0;
}

int cmd_cellperm(double delta, const std::string& delta_range, int resolution, double tau, double tol,
                 const std::string& out_dir, bool write_fields) {
  namespace cp = hlbm::cellperm;
  std::vector<double> deltas = delta_range.empty() ? std::vector<double>{delta} : parse_range(delta_range);
  std::cout << "delta,A11,A22,A12,A21,A11_grad,A22_grad,agreement,residual,steps\n";
  for (const double dl : deltas) {
    cp::UnitCellSpec spec;
    spec.resolution = resolution;
    spec.delta = dl;
    spec.tau = tau;
    spec.residual_tol = tol;
    const auto r = cp::permeability_tensor(spec);
    std::cout << format_g17(dl) << ',' << format_g17(r.A[0][0]) << ',' << format_g17(r.A[1][1]) << ','
              << format_g17(r.A[0][1]) << ',' << format_g17(r.A[1][0]) << ','
              << format_g17(r.A_gradient[0][0]) << ',' << format_g17(r.A_gradient[1][1]) << ','
              << format_g17(r.assembly_disagreement()) << ',' << format_g17(r.residual) << ','
              << r.columns[0].steps + r.columns[1].steps << "\n";
    if (write_fields) {
      std::filesystem::create_directories(out_dir);
      for (int axis = 0; axis < 2; ++axis) {
        const auto& col = r.columns[axis];
        hlbm::lattice::MacroFields f;
        f.nx = f.ny = col.n;
        f.rho.assign(col.vx.size(), 1.0);
        f.ux = col.vx;
        f.uy = col.vy;
        f.p = col.p;
        const std::string path = out_dir + "/cell_delta" + std::to_string(dl) + "_v" +
                                 std::to_string(axis + 1) + ".vtk";
        hlbm::io::write_vtk(path, f, 1.0 / col.n, "unit cell solution");
      }
    }
  }
  return 0;
}

int cmd_bench(const std::string& case_name, const std::string& ladder, const std::string& ksweep,
              int sweep_ny) {
  auto c = hlbm::bench::BenchmarkCase::make(case_name);
  if (!ladder.empty()) c.ladder = parse_int_list(ladder);
  if (!ksweep.empty()) {
    const auto Ks = parse_range(ksweep);
    const auto pts = hlbm::bench::boundary_layer_sweep(sweep_ny, Ks, c);
    std::cout << "K,width,predicted,rel_dev\n";
    bool ok = true;
    for (const auto& p : pts) {
      std::cout << format_g17(p.K) << ',' << format_g17(p.width) << ',' << format_g17(p.predicted)
                << ',' << format_g17(p.rel_dev) << "\n";
      ok = ok && p.rel_dev <= 0.2;
    }
    std::cerr << (ok ? "boundary-layer widths track 3*sqrt(K)\n"
                     : "boundary-layer width outside the 20% band\n");
    return ok ? 0 : 2;
  }
  const auto rep = hlbm::bench::run_benchmark(c);
  std::cout << rep.csv();
  std::cerr << rep.summary();
  return rep.within_bands ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogenized lattice Boltzmann solver kit"};
  app.require_subcommand(1);

  // regime
  auto* regime = app.add_subcommand("regime", "scaling-regime table for power-law obstacle sizes");
  int d = 3, n_select = 0;
  double C = 1.0;
  std::string eps_spec = "0.05:0.5:10", format = "csv";
  regime->add_option("--d", d, "spatial dimension");
  regime->add_option("--C", C, "power-law prefactor");
  regime->add_option("--n", n_select, "power-law exponent (0 = all of 1..4)");
  regime->add_option("--eps", eps_spec, "epsilon range start:stop:count or list");
  regime->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  // moments
  auto* moments = app.add_subcommand("moments", "closed-form moments of the damped equilibrium");
  int md = 2;
  double mn = 1.0, mux = 0.0, muy = 0.0, muz = 0.0, mvarpi = 1.0, meps = 1.0, mmass = 1.0;
  std::string which = "all";
  moments->add_option("--d", md, "dimension (1..3)");
  moments->add_option("--n", mn, "particle density");
  moments->add_option("--ux", mux);
  moments->add_option("--uy", muy);
  moments->add_option("--uz", muz);
  moments->add_option("--varpi", mvarpi, "porosity control");
  moments->add_option("--eps", meps, "scaling parameter");
  moments->add_option("--mass", mmass, "particle mass");
  moments->add_option("--which", which)->check(CLI::IsMember({"eq", "cm2", "cm3", "ccwv", "all"}));

  // run
  auto* runc = app.add_subcommand("run", "lattice solver run from a config file");
  std::string config_path, out_dir_flag;
  std::vector<std::string> overrides;
  runc->add_option("--config", config_path, "config file")->required();
  runc->add_option("--set", overrides, "override section.key=value (repeatable)");
  runc->add_option("--out-dir", out_dir_flag, "output directory override");

  // cellperm
  auto* cell = app.add_subcommand("cellperm", "unit-cell permeability tensor");
  double delta = 0.5, cp_tau = 1.0, cp_tol = 1e-10;
  int resolution = 128;
  std::string delta_range, cp_out = ".";
  bool write_fields = false;
  cell->add_option("--delta", delta, "obstacle diameter fraction");
  cell->add_option("--delta-range", delta_range, "sweep start:stop:count or list");
  cell->add_option("--resolution", resolution, "cells per unit length");
  cell->add_option("--tau", cp_tau, "lattice relaxation time");
  cell->add_option("--tol", cp_tol, "steady-state residual tolerance");
  cell->add_option("--out-dir", cp_out, "directory for optional field output");
  cell->add_flag("--write-fields", write_fields, "write v_k fields as VTK");

  // bench
  auto* bench = app.add_subcommand("bench", "analytic benchmarks and convergence orders");
  std::string case_name, ladder, ksweep;
  int sweep_ny = 256;
  bench->add_option("case", case_name, "taylor_green | brinkman_channel | darcy_uniform | poiseuille")
      ->required();
  bench->add_option("--ladder", ladder, "resolution list, e.g. 16,32,64");
  bench->add_option("--k-sweep", ksweep, "permeability list for the boundary-layer sweep");
  bench->add_option("--ny", sweep_ny, "channel resolution for the K sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (regime->parsed()) return cmd_regime(d, C, n_select, eps_spec, format);
    if (moments->parsed()) {
      hlbm::kinetics::HomogenizedMaxwellian M;
      M.d = md;
      M.n = mn;
      M.u = {mux, muy, muz};
      M.varpi = mvarpi;
      M.eps = meps;
      M.m = mmass;
      M.validate();
      std::cout << "moment,component,i,j,k,l,value\n";
      print_moment_rows(which, M);
      return 0;
    }
    if (runc->parsed()) return cmd_run(config_path, overrides, out_dir_flag);
    if (cell->parsed()) return cmd_cellperm(delta, delta_range, resolution, cp_tau, cp_tol, cp_out, write_fields);
    if (bench->parsed()) return cmd_bench(case_name, ladder, ksweep, sweep_ny);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
