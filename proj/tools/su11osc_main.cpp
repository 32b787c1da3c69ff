// su11osc: spectra, wavefunctions, coherent states, matrix elements,
// uncertainty reports and the verification suite for the (2+1)-D Dirac
// oscillator with Aharonov-Casher coupling, in flat and cosmic-string
// spacetime.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
//             2 config or usage error, 3 numerical degeneracy.

#include <CLI11.hpp>

#include <chrono>
#include <clocale>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "su11osc/config_io.hpp"
#include "su11osc/coherent.hpp"
#include "su11osc/observables.hpp"
#include "su11osc/params.hpp"
#include "su11osc/radial.hpp"
#include "su11osc/spectrum.hpp"
#include "su11osc/verification.hpp"

namespace {

using namespace su11osc;

struct CommonOpts {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  int grid_points = 0;  // 0 = default (env SU11_GRID_POINTS or 2048)
  double rmax_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_grid = true) {
  cmd->add_option("--config", o.config_path, "JSON config file")->required();
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out_path, "write output to PATH (with manifest sidecar)");
  if (needs_grid) {
    cmd->add_option("--grid-points", o.grid_points, "radial grid size (default 2048)");
    cmd->add_option("--rmax-scale", o.rmax_scale, "scale factor for the grid extent");
  }
}

int grid_points_or_default(const CommonOpts& o) {
  return o.grid_points > 0 ? o.grid_points : default_grid_points();
}

/// Emit `content`: stdout, or --out file plus manifest sidecar.
void emit(const CommonOpts& o, const std::string& command,
          const OscillatorConfig& cfg, const ordered_json& grid_info,
          const std::string& content, double wall_ms) {
  if (o.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw config_error("cannot open output file: " + o.out_path);
  out << content;
  out.close();

  RunManifest man;
  man.command = command;
  man.config = config_to_json(cfg);
  man.grid = grid_info;
  man.wall_ms = wall_ms;
  man.output_checksum = "fnv1a64:" + fnv1a_hex(content);
  std::ofstream mo(o.out_path + ".manifest.json", std::ios::binary);
  mo << man.to_json().dump(2) << "\n";
}

ordered_json grid_json(int points, double rmax_scale, int nmax_basis) {
  ordered_json g;
  g["points"] = points;
  g["rmax_scale"] = rmax_scale;
  g["nmax_basis"] = nmax_basis;
  return g;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const CommonOpts& o, int nmax, const std::string& branch) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);

  Table tab;
  const bool particle = branch == "both" || branch == "particle";
  const bool antiparticle = branch == "both" || branch == "antiparticle";
  tab.columns = {"n_r", "n_s"};
  if (particle) tab.columns.push_back("E_plus");
  if (antiparticle) tab.columns.push_back("E_minus");
  for (int n_r = 0; n_r <= nmax; ++n_r) {
    const EnergyPair e = energy(cfg, n_r);
    std::vector<std::string> row{std::to_string(n_r),
                                 std::to_string(shifted_index(n_r, cfg.s))};
    if (particle) row.push_back(format_double(e.e_plus));
    if (antiparticle) row.push_back(format_double(e.e_minus));
    tab.add_row(std::move(row));
  }
  const std::string content = o.format == "json" ? tab.to_json() : tab.to_csv();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "spectrum", cfg, {}, content, ms);
  return 0;
}

int cmd_sweep_phase(const CommonOpts& o, int n_r, double phi_min, double phi_max,
                    int phi_points) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  if (phi_points < 1) throw config_error("--phi-points must be >= 1");

  std::vector<double> grid(phi_points);
  for (int i = 0; i < phi_points; ++i)
    grid[i] = phi_points == 1
                  ? phi_min
                  : phi_min + (phi_max - phi_min) * i / (phi_points - 1.0);

  Table tab;
  tab.columns = {"phi_ac", "n_r", "s", "E_plus", "E_minus", "periodicity"};
  for (const auto& row : phase_sweep(cfg, n_r, grid)) {
    tab.add_row({format_double(row.phi_ac), std::to_string(row.n_r),
                 std::to_string(row.s), format_double(row.e_plus),
                 format_double(row.e_minus), row.partner_ok ? "PASS" : "FAIL"});
  }
  const std::string content = o.format == "json" ? tab.to_json() : tab.to_csv();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "sweep-phase", cfg, {}, content, ms);
  return 0;
}

int cmd_wavefunction(const CommonOpts& o, int n_r) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  const int npts = grid_points_or_default(o);
  const int nmax_basis = std::max(20, n_r);
  const RadialGrid grid = radial_grid(cfg, npts, nmax_basis, o.rmax_scale);
  const SturmianFunction phi = sturmian(cfg, n_r, grid);

  Table tab;
  tab.columns = {"rho", "phi_value"};
  for (int i = 0; i < grid.npoints; ++i)
    tab.add_row({format_double(grid.points(i)), format_double(phi.values(i))});
  const std::string content = o.format == "json" ? tab.to_json() : tab.to_csv();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "wavefunction", cfg, grid_json(npts, o.rmax_scale, nmax_basis), content, ms);
  return 0;
}

int cmd_coherent(const CommonOpts& o, double xi_re, double xi_im, double t) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  const cplx xi(xi_re, xi_im);
  if (!(std::abs(xi) < 1.0)) throw config_error("|xi| must be < 1");
  const AlgebraParams p = algebra_params(cfg);
  const int npts = grid_points_or_default(o);

  // widen the box if the profile decays slowly (|xi| near 1 on the real axis)
  double rscale = o.rmax_scale;
  if (std::abs(xi) > 0.0) {
    const double decay = -((xi + 1.0) / (xi - 1.0)).real();  // > 0 on the disk
    if (decay < 1.0) rscale *= std::sqrt(1.0 / decay);
  }
  const RadialGrid grid = radial_grid(p, npts, 20, rscale);
  const CoherentProfile prof = evolve(p, xi, t, grid);

  ordered_json header;
  header["xi_re"] = xi_re;
  header["xi_im"] = xi_im;
  header["k"] = p.k;
  header["t"] = t;
  header["norm"] = prof.norm;

  Table tab;
  tab.json_header_comment = header.dump();
  tab.columns = {"rho", "re", "im", "abs2"};
  for (int i = 0; i < grid.npoints; ++i) {
    const cplx v = prof.samples(i);
    tab.add_row({format_double(grid.points(i)), format_double(v.real()),
                 format_double(v.imag()), format_double(std::norm(v))});
  }
  const std::string content = o.format == "json" ? tab.to_json() : tab.to_csv();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "coherent", cfg, grid_json(npts, rscale, 20), content, ms);
  return 0;
}

int cmd_uncertainty(const CommonOpts& o, double z_re, double z_im) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  const UncertaintyReport rep = uncertainty_report(cfg, cplx(z_re, z_im));

  std::string content;
  if (o.format == "csv") {
    Table tab;
    tab.columns = {"k",   "z_re", "z_im", "dx2", "dy2",
                   "f",   "c",    "lhs",  "rhs", "residual"};
    tab.add_row({format_double(rep.k), format_double(z_re), format_double(z_im),
                 format_double(rep.dx2), format_double(rep.dy2), format_double(rep.f),
                 format_double(rep.c), format_double(rep.lhs), format_double(rep.rhs),
                 format_double(rep.residual)});
    content = tab.to_csv();
  } else {
    ordered_json j;
    j["k"] = rep.k;
    j["z_re"] = z_re;
    j["z_im"] = z_im;
    j["dx2"] = rep.dx2;
    j["dy2"] = rep.dy2;
    j["f"] = rep.f;
    j["c"] = rep.c;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["residual"] = rep.residual;
    content = j.dump(2) + "\n";
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "uncertainty", cfg, {}, content, ms);
  return 0;
}

int cmd_matrix_elements(const CommonOpts& o, int nmax) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  const AlgebraParams p = algebra_params(cfg);
  const Eigen::MatrixXd r2 = rho2_elements(p, nmax);
  const Eigen::MatrixXd rd = rho_ddrho_elements(p, nmax);

  Table tab;
  tab.columns = {"m", "n", "rho2", "rho_ddrho"};
  for (int m = 0; m <= nmax; ++m)
    for (int n = 0; n <= nmax; ++n)
      tab.add_row({std::to_string(m), std::to_string(n), format_double(r2(m, n)),
                   format_double(rd(m, n))});
  const std::string content = o.format == "json" ? tab.to_json() : tab.to_csv();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "matrix-elements", cfg, {}, content, ms);
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& level) {
  const auto t0 = std::chrono::steady_clock::now();
  const OscillatorConfig cfg = load_config(o.config_path);
  VerifyOptions vo;
  vo.level = level == "algebra-only" ? VerifyLevel::AlgebraOnly : VerifyLevel::Full;
  vo.grid_points = grid_points_or_default(o);
  vo.rmax_scale = o.rmax_scale;
  const VerificationReport rep = run_verification(cfg, vo);

  ordered_json j;
  j["level"] = level;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["pass"] = rep.all_pass();
  if (!rep.all_pass())
    j["first_failure"] = rep.first_failure();
  else
    j["first_failure"] = nullptr;

  const std::string content = j.dump(2) + "\n";
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(o, "verify", cfg, grid_json(vo.grid_points, vo.rmax_scale, 20), content, ms);
  if (!rep.all_pass()) {
    std::cerr << "verify: first failing check: " << rep.first_failure() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"su(1,1) toolkit for the Dirac oscillator with Aharonov-Casher "
               "coupling (flat and cosmic-string spacetime)"};
  app.require_subcommand(1);

  CommonOpts o_spec, o_sweep, o_wave, o_coh, o_unc, o_mat, o_ver;
  int nmax_spec = 8, nr_sweep = 0, nr_wave = 0, nmax_mat = 7;
  std::string branch = "both", level = "full";
  double phi_min = 0.0, phi_max = 4.0 * su11osc::kPi;
  int phi_points = 41;
  double xi_re = 0.0, xi_im = 0.0, t_coh = 0.0, z_re = 0.0, z_im = 0.0;

  auto* spec = app.add_subcommand("spectrum", "closed-form energy levels");
  add_common(spec, o_spec, false);
  spec->add_option("--nmax", nmax_spec, "largest radial quantum number");
  spec->add_option("--branch", branch, "both, particle or antiparticle")
      ->check(CLI::IsMember({"both", "particle", "antiparticle"}));

  auto* sweep = app.add_subcommand("sweep-phase", "energies along an AC-phase grid");
  add_common(sweep, o_sweep, false);
  sweep->add_option("--nr", nr_sweep, "radial quantum number");
  sweep->add_option("--phi-min", phi_min, "first phase value");
  sweep->add_option("--phi-max", phi_max, "last phase value");
  sweep->add_option("--phi-points", phi_points, "number of grid points");

  auto* wave = app.add_subcommand("wavefunction", "radial basis function samples");
  add_common(wave, o_wave);
  wave->add_option("--nr", nr_wave, "radial quantum number");

  auto* coh = app.add_subcommand("coherent", "radial coherent-state profile");
  add_common(coh, o_coh);
  coh->add_option("--xi-re", xi_re, "Re xi (unit-disk variable)");
  coh->add_option("--xi-im", xi_im, "Im xi");
  coh->add_option("--t", t_coh, "evolution time");

  auto* unc = app.add_subcommand("uncertainty", "Schroedinger uncertainty report");
  add_common(unc, o_unc, false);
  unc->add_option("--z-re", z_re, "Re z (displacement parameter)");
  unc->add_option("--z-im", z_im, "Im z");

  auto* mat = app.add_subcommand("matrix-elements",
                                 "rho^2 and rho d/drho in the radial basis");
  add_common(mat, o_mat, false);
  mat->add_option("--nmax", nmax_mat, "block size minus one");

  auto* ver = app.add_subcommand("verify", "run the verification suite");
  add_common(ver, o_ver);
  ver->add_option("--level", level, "full or algebra-only")
      ->check(CLI::IsMember({"full", "algebra-only"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage/config errors share exit code 2
  }

  try {
    if (spec->parsed()) return cmd_spectrum(o_spec, nmax_spec, branch);
    if (sweep->parsed())
      return cmd_sweep_phase(o_sweep, nr_sweep, phi_min, phi_max, phi_points);
    if (wave->parsed()) return cmd_wavefunction(o_wave, nr_wave);
    if (coh->parsed()) return cmd_coherent(o_coh, xi_re, xi_im, t_coh);
    if (unc->parsed()) return cmd_uncertainty(o_unc, z_re, z_im);
    if (mat->parsed()) return cmd_matrix_elements(o_mat, nmax_mat);
    if (ver->parsed()) return cmd_verify(o_ver, level);
  } catch (const su11osc::degenerate_frequency_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const su11osc::grid_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const su11osc::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const su11osc::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
