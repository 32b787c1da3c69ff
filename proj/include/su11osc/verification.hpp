#pragma once

// Structured pass/fail verification: every closed-form result is checked
// against an independent numerical route (finite differences, quadrature,
// truncated matrix exponentials).  Thresholds are pinned here; the CLI
// `verify` command and the acceptance suite both consume this module.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "su11osc/coherent.hpp"
#include "su11osc/observables.hpp"
#include "su11osc/params.hpp"
#include "su11osc/radial.hpp"
#include "su11osc/spectrum.hpp"
#include "su11osc/su11.hpp"

namespace su11osc {

namespace thresholds {
inline constexpr double commutator = 1e-5;
inline constexpr double casimir = 1e-5;
inline constexpr double ladder_grid = 1e-5;
inline constexpr double ladder_exact = 1e-12;
inline constexpr double orthonormality = 1e-10;
inline constexpr double calibration = 1e-10;
inline constexpr double rayleigh_rel = 1e-6;
inline constexpr double b3_inversion_rel = 1e-12;
inline constexpr double periodicity_rel = 5e-14;
inline constexpr double coherent_sup = 1e-7;
inline constexpr double generating_function = 1e-10;
inline constexpr double evolution_norm = 1e-8;
inline constexpr double evolution_period = 1e-10;
inline constexpr double similarity = 1e-8;
inline constexpr double expectation = 1e-9;
inline constexpr double uncertainty_rel = 1e-9;
inline constexpr double matrix_elements = 1e-8;
inline constexpr double displacement_oracle = 1e-9;
inline constexpr double unitarity = 1e-9;
inline constexpr double reduction = 0.0;  // eta = 1 must reduce bit-exactly
}  // namespace thresholds

struct VerificationCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  void add(const std::string& name, double residual, double threshold) {
    checks.push_back({name, residual, threshold, residual <= threshold});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return c.name;
    return {};
  }
  void merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

// ---------------------------------------------------------------------------
// Grid-operator algebra
// ---------------------------------------------------------------------------

/// Commutator, Casimir and ladder residuals of the finite-difference
/// operators, measured in the L2(rho drho) norm over phi_0..phi_nmax.
inline VerificationReport verify_algebra(const OscillatorConfig& cfg,
                                         const RadialGrid& grid, int nmax = 8) {
  cfg.validate();
  const AlgebraParams p = algebra_params(cfg);
  const DiscretizedOperator b3 = build_operator(cfg, grid, OperatorLabel::B3prime);
  const LadderPair ladder = canonical_ladder_pair(cfg, grid);
  const auto& bp = ladder.raise;
  const auto& bm = ladder.lower;

  std::vector<Eigen::VectorXd> phi;
  for (int n = 0; n <= nmax + 1; ++n)
    phi.push_back(sturmian(p, n, grid, /*strict_grid=*/false).values);

  double r_eig = 0, r_comm_raise = 0, r_comm_lower = 0, r_close = 0, r_cas = 0,
         r_ladder = 0;
  for (int n = 0; n <= nmax; ++n) {
    const Eigen::VectorXd& f = phi[n];
    const Eigen::VectorXd b3f = b3.apply(f);
    const Eigen::VectorXd bpf = bp.apply(f);
    const Eigen::VectorXd bmf = bm.apply(f);

    r_eig = std::max(r_eig, grid.norm(Eigen::VectorXd(b3f - (p.k + n) * f)));
    r_comm_raise = std::max(
        r_comm_raise, grid.norm(Eigen::VectorXd(b3.apply(bpf) - bp.apply(b3f) - bpf)));
    r_comm_lower = std::max(
        r_comm_lower, grid.norm(Eigen::VectorXd(b3.apply(bmf) - bm.apply(b3f) + bmf)));
    r_close = std::max(
        r_close, grid.norm(Eigen::VectorXd(bm.apply(bpf) - bp.apply(bmf) - 2.0 * b3f)));
    const Eigen::VectorXd cas = b3.apply(b3f) -
                                0.5 * (bp.apply(bmf) + bm.apply(bpf)) -
                                casimir_eigenvalue(p.k) * f;
    r_cas = std::max(r_cas, grid.norm(cas));
    r_ladder = std::max(r_ladder,
                        grid.norm(Eigen::VectorXd(
                            bpf - ladder_up_coeff(p.k, n) * phi[n + 1])));
    if (n > 0)
      r_ladder = std::max(r_ladder,
                          grid.norm(Eigen::VectorXd(
                              bmf - ladder_down_coeff(p.k, n) * phi[n - 1])));
  }
  const double r_annihilate = grid.norm(bm.apply(phi[0]));

  VerificationReport rep;
  rep.add("grid_calibration", std::abs(grid.calibration_residual),
          thresholds::calibration);
  rep.add("commutator_raise", r_comm_raise, thresholds::commutator);
  rep.add("commutator_lower", r_comm_lower, thresholds::commutator);
  rep.add("commutator_closure", r_close, thresholds::commutator);
  rep.add("casimir", r_cas, thresholds::casimir);
  rep.add("b3prime_eigenvalue", r_eig, thresholds::commutator);
  rep.add("ladder_action", r_ladder, thresholds::ladder_grid);
  rep.add("annihilation", r_annihilate, thresholds::ladder_grid);
  return rep;
}

/// Orthonormality of phi_0..phi_nmax (Gram matrix against identity).
inline double gram_residual(const AlgebraParams& p, const RadialGrid& grid,
                            int nmax = 12, bool strict_grid = true) {
  std::vector<Eigen::VectorXd> phi;
  for (int n = 0; n <= nmax; ++n)
    phi.push_back(sturmian(p, n, grid, strict_grid).values);
  double worst = 0.0;
  for (int m = 0; m <= nmax; ++m)
    for (int n = m; n <= nmax; ++n) {
      const double g = grid.inner_product(phi[m], phi[n]);
      worst = std::max(worst, std::abs(g - (m == n ? 1.0 : 0.0)));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Exact su(1,1) identities (no grid)
// ---------------------------------------------------------------------------

/// Q(+-) of the printed ladder action against the representation-theory
/// coefficients, as exact real arithmetic.
inline double ladder_coefficient_residual(double k, int nmax = 50) {
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const double qp = std::sqrt(((n + k) - (k - 1.0)) * ((n + k) + (k - 1.0) + 1.0));
    const double qm = std::sqrt(((n + k) + (k - 1.0)) * ((n + k) - (k - 1.0) - 1.0));
    worst = std::max(worst, std::abs(qp - ladder_up_coeff(k, n)));
    if (n > 0) worst = std::max(worst, std::abs(qm - ladder_down_coeff(k, n)));
  }
  return worst;
}

/// max |entry| over the leading block of a matrix, used for interior-block
/// comparisons of truncated operators.
inline double interior_max_abs(const Eigen::MatrixXcd& m, int keep) {
  return m.topLeftCorner(keep, keep).cwiseAbs().maxCoeff();
}

inline int interior_block(const TruncatedRep& rep) {
  return std::max(16, rep.dim / 4);
}

struct Su11VerifyOptions {
  std::vector<double> k_values{0.5, 1.0, 1.5, 2.0, 3.5};
  std::vector<cplx> z_values{cplx(0.35, 0.0), cplx(0.3, 0.3), cplx(0.0, -0.8),
                             cplx(0.85, 0.85)};  // last one has |z| = 1.202
};

/// Displacement-operator suite: unitarity, normal form, Perelomov column,
/// similarity transformations, generator expectations, uncertainty
/// minimality.  Pure matrix algebra; independent of any radial grid.
inline VerificationReport verify_su11(const Su11VerifyOptions& opt = {}) {
  VerificationReport rep;
  double r_ladder = 0, r_unit = 0, r_col = 0, r_normal = 0, r_sim = 0, r_exp = 0,
         r_unc = 0, r_unc_oracle = 0;
  for (double k : opt.k_values) {
    r_ladder = std::max(r_ladder, ladder_coefficient_residual(k));
    for (cplx z : opt.z_values) {
      // one exponential per sample, sized for the most demanding check
      const Displacement d = displacement_for(k, z, min_dim_for_conjugation(z));
      const int keep = interior_block(d.rep);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d.rep.dim, d.rep.dim);

      r_unit = std::max(r_unit,
                        interior_max_abs(d.matrix.adjoint() * d.matrix - id, keep));

      const CoherentParam cp = xi_from_z(z);
      const Eigen::VectorXcd c = perelomov_coefficients(k, cp.xi, keep - 1);
      r_col = std::max(r_col,
                       (d.matrix.col(0).head(keep) - c).cwiseAbs().maxCoeff());

      // normal form exp(zeta K+) exp(eta K3) exp(-zeta* K-), each factor in
      // closed form.  The factors carry huge high-index entries whose
      // cancellation is exact only in exact arithmetic, so the comparison is
      // restricted to the leading block where every contribution is small.
      constexpr int nf_keep = 12;
      const Eigen::MatrixXcd nf = exp_kplus(d.rep, cp.zeta) *
                                  exp_kthree(d.rep, cp.eta_nf) *
                                  exp_kminus(d.rep, -std::conj(cp.zeta));
      r_normal = std::max(r_normal, interior_max_abs(nf - d.matrix, nf_keep));

      // two-sided conjugation: compare only the leading block that stays
      // clear of the truncation defect
      constexpr int sim_keep = 8;
      for (Generator which : {Generator::Raise, Generator::Lower, Generator::Three}) {
        const Eigen::MatrixXcd lhs = conjugated_generator_block(d, which, sim_keep);
        const Eigen::MatrixXcd rhs =
            similarity_closed_form(d.rep, z, which).topLeftCorner(sim_keep, sim_keep);
        r_sim = std::max(r_sim, (lhs - rhs).cwiseAbs().maxCoeff());
      }

      const GeneratorExpectations closed = generator_expectations(k, z);
      const Eigen::VectorXcd state = d.matrix.col(0);
      const GeneratorExpectations oracle = {
          (state.adjoint() * d.rep.kplus * state)(0, 0),
          (state.adjoint() * d.rep.kminus * state)(0, 0),
          (state.adjoint() * d.rep.kthree * state)(0, 0).real()};
      r_exp = std::max({r_exp, std::abs(closed.kplus - oracle.kplus),
                        std::abs(closed.kminus - oracle.kminus),
                        std::abs(closed.kthree - oracle.kthree)});

      const UncertaintyReport u = uncertainty_report(k, z);
      const UncertaintyReport uo = uncertainty_from_displacement(d);
      r_unc = std::max(r_unc, std::abs(u.residual) / std::abs(u.rhs));
      r_unc_oracle = std::max({r_unc_oracle, std::abs(u.lhs - uo.lhs) / std::abs(u.lhs),
                               std::abs(u.rhs - uo.rhs) / std::abs(u.rhs)});
    }
  }
  rep.add("ladder_coefficients_exact", r_ladder, thresholds::ladder_exact);
  rep.add("displacement_unitarity", r_unit, thresholds::unitarity);
  rep.add("displacement_perelomov_column", r_col, thresholds::displacement_oracle);
  rep.add("displacement_normal_form", r_normal, thresholds::displacement_oracle);
  rep.add("similarity_transformations", r_sim, thresholds::similarity);
  rep.add("generator_expectations", r_exp, thresholds::expectation);
  rep.add("uncertainty_minimality", r_unc, thresholds::uncertainty_rel);
  rep.add("uncertainty_matrix_oracle", r_unc_oracle, thresholds::uncertainty_rel);
  return rep;
}

// ---------------------------------------------------------------------------
// Full per-config verification
// ---------------------------------------------------------------------------

enum class VerifyLevel { AlgebraOnly, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Full;
  int grid_points = default_grid_points();
  double rmax_scale = 1.0;
  int nmax_algebra = 8;
};

inline double sup_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Everything `verify_algebra` covers plus spectrum consistency, coherent
/// three-way equivalence, time evolution, matrix elements and the eta = 1
/// reduction; `AlgebraOnly` runs just the exact (grid-free) identities.
inline VerificationReport run_verification(const OscillatorConfig& cfg,
                                           const VerifyOptions& opt = {}) {
  cfg.validate();
  const AlgebraParams p = algebra_params(cfg);

  // compact matrix-oracle sweep; the config's own Bargmann index is included
  Su11VerifyOptions su11_opt;
  su11_opt.k_values = {0.5, 1.5, p.k};
  su11_opt.z_values = {cplx(0.35, 0.0), cplx(0.3, 0.3), cplx(0.85, 0.85)};
  VerificationReport rep = verify_su11(su11_opt);

  // Bargmann index consistency: k(k-1) = (gamma_eff^2 - 1)/4
  rep.add("casimir_index_identity",
          std::abs(p.k * (p.k - 1.0) - (p.gamma_eff * p.gamma_eff - 1.0) / 4.0),
          1e-14);

  // closed-form spectrum vs the inversion of the algebraic relation
  {
    double worst = 0.0;
    for (int n_r = 0; n_r <= 5; ++n_r) {
      const EnergyPair a = energy(cfg, n_r);
      const EnergyPair b = spectrum_from_b3(cfg, n_r);
      const double scale = std::max(1.0, std::abs(a.e_plus));
      worst = std::max(worst, std::max(std::abs(a.e_plus - b.e_plus),
                                       std::abs(a.e_minus - b.e_minus)) /
                                  scale);
    }
    rep.add("b3_inversion", worst, thresholds::b3_inversion_rel);
  }

  // AC-phase periodicity across a sweep
  {
    std::vector<double> grid(41);
    for (int i = 0; i < 41; ++i) grid[i] = 4.0 * kPi * i / 40.0;
    double worst = 0.0;
    for (const auto& row : phase_sweep(cfg, 1, grid)) worst = std::max(worst, row.partner_deviation);
    rep.add("phase_periodicity", worst, thresholds::periodicity_rel);
  }

  // eta = 1 reduction: a cosmic-string config with eta = 1 must reproduce the
  // flat-space numbers bit-exactly
  {
    OscillatorConfig flat = cfg, cone = cfg;
    flat.spacetime = Spacetime::Minkowski;
    flat.eta = 1.0;
    cone.spacetime = Spacetime::CosmicString;
    cone.eta = 1.0;
    double worst = 0.0;
    const AlgebraParams pf = algebra_params(flat), pc = algebra_params(cone);
    worst = std::max(worst, std::abs(pf.gamma_eff - pc.gamma_eff));
    worst = std::max(worst, std::abs(pf.mu_b_eff - pc.mu_b_eff));
    for (int n_r = 0; n_r <= 5; ++n_r) {
      const EnergyPair a = energy(flat, n_r), b = energy(cone, n_r);
      worst = std::max(worst, std::abs(a.e_plus - b.e_plus));
      worst = std::max(worst, std::abs(a.e_minus - b.e_minus));
    }
    rep.add("flat_limit_reduction", worst, thresholds::reduction);
  }

  if (opt.level == VerifyLevel::AlgebraOnly) return rep;

  p.require_nondegenerate();
  const RadialGrid grid = radial_grid(p, opt.grid_points, 20, opt.rmax_scale);
  rep.merge(verify_algebra(cfg, grid, opt.nmax_algebra));
  rep.add("orthonormality", gram_residual(p, grid, 12, /*strict_grid=*/false),
          thresholds::orthonormality);

  // Rayleigh-quotient route to the spectrum
  {
    double worst = 0.0;
    for (int n_r = 0; n_r <= 5; ++n_r) {
      const RayleighEnergy r = rayleigh_energy(cfg, n_r, grid, /*strict_grid=*/false);
      const EnergyPair e = energy(cfg, n_r);
      worst = std::max(worst, std::abs(r.e_plus - e.e_plus) /
                                  std::max(1.0, std::abs(e.e_plus)));
    }
    rep.add("rayleigh_spectrum", worst, thresholds::rayleigh_rel);
  }

  // coherent states: three-way equivalence on a deeper grid, plus evolution
  {
    const RadialGrid deep = radial_grid(p, std::max(opt.grid_points, 4096), 150,
                                        opt.rmax_scale);
    double worst = 0.0;
    for (double r : {0.3, 0.8}) {
      const cplx xi(r * 0.6, -r * 0.8);
      const CoherentProfile closed = coherent_closed_form(p, xi, deep);
      const CoherentProfile series = coherent_series(p, xi, deep);
      const CoherentProfile recon = coherent_reconstruct(p, xi, deep, 140);
      worst = std::max(worst, sup_diff(closed.samples, series.samples));
      worst = std::max(worst, sup_diff(closed.samples, recon.samples));
      worst = std::max(worst, sup_diff(series.samples, recon.samples));
    }
    rep.add("coherent_threeway", worst, thresholds::coherent_sup);

    const cplx xi(0.4, 0.35);
    double norm_drift = 0.0;
    const double period = kPi / (2.0 * p.m0 * std::abs(p.omega_bar));
    for (int j = 1; j <= 5; ++j) {
      const CoherentProfile ev = evolve(p, xi, 0.37 * j * period, grid);
      norm_drift = std::max(norm_drift, std::abs(ev.norm - 1.0));
    }
    rep.add("evolution_norm", norm_drift, thresholds::evolution_norm);

    const CoherentProfile e0 = evolve(p, xi, 0.31 * period, grid);
    const CoherentProfile e1 = evolve(p, xi, 1.31 * period, grid);
    rep.add("evolution_period",
            (e1.samples.cwiseAbs2() - e0.samples.cwiseAbs2()).cwiseAbs().maxCoeff(),
            thresholds::evolution_period);
  }

  // ladder-algebra matrix elements vs quadrature
  {
    constexpr int nmax = 7;
    const Eigen::MatrixXd r2a = rho2_elements(p, nmax);
    const Eigen::MatrixXd r2q = rho2_quadrature(p, grid, nmax, /*strict_grid=*/false);
    rep.add("rho2_matrix_elements", (r2a - r2q).cwiseAbs().maxCoeff(),
            thresholds::matrix_elements);
    const Eigen::MatrixXd rda = rho_ddrho_elements(p, nmax);
    const Eigen::MatrixXd rdq =
        rho_ddrho_quadrature(p, grid, nmax, /*strict_grid=*/false);
    rep.add("rho_ddrho_matrix_elements", (rda - rdq).cwiseAbs().maxCoeff(),
            thresholds::matrix_elements);
  }

  return rep;
}

}  // namespace su11osc
