#pragma once

// Radial Perelomov coherent states.  Three equivalent constructions, kept
// deliberately independent so each can serve as an oracle for the others:
//
//   closed form   phi(rho,xi) ~ (1-xi)^(-2k) rho^(2k-1)
//                                exp[(a rho^2 / 2)(xi+1)/(xi-1)]
//   series        rho^(2k-1) e^(-a rho^2/2) sum_n xi^n L_n^(2k-1)(a rho^2)
//   reconstruction sum_n c_n(xi) (-1)^n phi_n   (Sturmian basis expansion;
//                  the (-1)^n is the basis phase of radial.hpp's convention)
//
// Time evolution under Hr = 4 m0 |omega_bar| B3' rotates the disk variable,
// xi(t) = xi exp(4 i m0 |omega_bar| t), and multiplies the state by the
// global phase exp(-4 i m0 |omega_bar| k t).

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "su11osc/params.hpp"
#include "su11osc/radial.hpp"
#include "su11osc/su11.hpp"

namespace su11osc {

struct CoherentProfile {
  cplx xi;
  double k = 0.5;
  double time = 0.0;
  Eigen::VectorXcd samples;
  double norm = 0.0;  // L2(rho drho) norm after normalization
};

namespace detail {

inline void require_disk(cplx xi) {
  if (!(std::abs(xi) < 1.0))
    throw std::invalid_argument("coherent state: |xi| must be < 1 (state not normalizable)");
}

// Normalize with a real positive factor only: the analytic prefactor fixes
// the global phase, and all three constructions must agree on it.
inline void normalize_real(CoherentProfile& p, const RadialGrid& grid) {
  p.norm = grid.norm(p.samples);
  p.samples /= p.norm;
  p.norm = grid.norm(p.samples);
}

}  // namespace detail

/// Closed-form profile, Perelomov phase convention.  The analytic
/// normalization is kept as documentation; the returned samples are
/// re-normalized by quadrature (real rescale).
inline CoherentProfile coherent_closed_form(const AlgebraParams& p, cplx xi,
                                            const RadialGrid& grid) {
  detail::require_disk(xi);
  p.require_nondegenerate();
  grid.require_calibrated();
  const double a = grid.scale_a;
  const double k = p.k;
  const cplx w = (xi + 1.0) / (xi - 1.0);  // unit disk -> left half plane
  // (1-|xi|^2)^k (1-xi)^(-2k) sqrt(2 a^(2k) / Gamma(2k))
  const cplx log_pref = k * std::log1p(-std::norm(xi)) -
                        2.0 * k * std::log(cplx(1.0, 0.0) - xi) +
                        0.5 * (std::log(2.0) + 2.0 * k * std::log(a) -
                               std::lgamma(2.0 * k));
  const cplx pref = std::exp(log_pref);

  CoherentProfile prof;
  prof.xi = xi;
  prof.k = k;
  prof.samples.resize(grid.npoints);
  for (int i = 0; i < grid.npoints; ++i) {
    const double rho = grid.points(i);
    const double x = a * rho * rho;
    prof.samples(i) = pref * std::pow(rho, 2.0 * k - 1.0) * std::exp(0.5 * x * w);
  }
  detail::normalize_real(prof, grid);
  return prof;
}

inline CoherentProfile coherent_closed_form(const OscillatorConfig& cfg, cplx xi,
                                            const RadialGrid& grid) {
  return coherent_closed_form(algebra_params(cfg), xi, grid);
}

/// Number of series terms needed for a tail below tol at this |xi|.
inline int coherent_series_terms(double k, cplx xi, double tol = 1e-12) {
  const double r = std::abs(xi);
  if (r == 0.0) return 1;
  if (r > 0.95)
    throw convergence_error("coherent_series: |xi| > 0.95 converges too slowly");
  const int nmax = static_cast<int>(
      std::ceil(std::log(tol * (1.0 - r)) / std::log(r) + 2.0 * k + 10.0));
  if (nmax > 5000)
    throw convergence_error("coherent_series: tail bound needs more than 5000 terms");
  return std::max(1, nmax);
}

/// Partial sum of the pre-resummation series.  Independent oracle for the
/// closed form (they are related by the Laguerre generating function
/// sum_n y^n L_n^nu(x) = exp(-x y/(1-y)) / (1-y)^(nu+1)).
inline CoherentProfile coherent_series(const AlgebraParams& p, cplx xi,
                                       const RadialGrid& grid, int nmax = -1) {
  detail::require_disk(xi);
  p.require_nondegenerate();
  grid.require_calibrated();
  const double a = grid.scale_a;
  const double k = p.k;
  const double nu = 2.0 * k - 1.0;
  if (nmax < 0) nmax = coherent_series_terms(k, xi);

  // sum_n xi^n L_n^nu(x) via the vectorized three-term recurrence
  const Eigen::ArrayXd x = a * grid.points.array().square();
  Eigen::ArrayXd lprev = Eigen::ArrayXd::Ones(grid.npoints);
  Eigen::ArrayXd lcur = 1.0 + nu - x;
  Eigen::ArrayXcd sum = lprev.cast<cplx>();
  cplx xin = xi;
  if (nmax >= 1) sum += xin * lcur.cast<cplx>();
  for (int n = 1; n < nmax; ++n) {
    const Eigen::ArrayXd lnext =
        ((2.0 * n + 1.0 + nu - x) * lcur - (n + nu) * lprev) / (n + 1.0);
    lprev = lcur;
    lcur = lnext;
    xin *= xi;
    sum += xin * lcur.cast<cplx>();
  }

  const double log_pref = k * std::log1p(-std::norm(xi)) +
                          0.5 * (std::log(2.0) + 2.0 * k * std::log(a) -
                                 std::lgamma(2.0 * k));
  const double pref = std::exp(log_pref);

  CoherentProfile prof;
  prof.xi = xi;
  prof.k = k;
  prof.samples = (pref * grid.points.array().pow(nu) * (-0.5 * x).exp()).cast<cplx>() * sum;
  detail::normalize_real(prof, grid);
  return prof;
}

inline CoherentProfile coherent_series(const OscillatorConfig& cfg, cplx xi,
                                       const RadialGrid& grid, int nmax = -1) {
  return coherent_series(algebra_params(cfg), xi, grid, nmax);
}

/// Basis reconstruction sum_n c_n(xi) (-1)^n phi_n.  Requires a grid deep
/// enough to hold basis functions up to the truncation depth.
inline CoherentProfile coherent_reconstruct(const AlgebraParams& p, cplx xi,
                                            const RadialGrid& grid, int nmax) {
  detail::require_disk(xi);
  const Eigen::VectorXcd c = perelomov_coefficients(p.k, xi, nmax);
  CoherentProfile prof;
  prof.xi = xi;
  prof.k = p.k;
  prof.samples = Eigen::VectorXcd::Zero(grid.npoints);
  for (int n = 0; n <= nmax; ++n) {
    const SturmianFunction phi = sturmian(p, n, grid);
    const double basis_phase = (n % 2 == 0) ? 1.0 : -1.0;
    prof.samples += c(n) * basis_phase * phi.values.cast<cplx>();
  }
  detail::normalize_real(prof, grid);
  return prof;
}

/// Unitary time evolution: rotate the disk variable and attach the global
/// phase.  Norm is preserved exactly (unit-modulus factors only).
inline CoherentProfile evolve(const AlgebraParams& p, cplx xi, double t,
                              const RadialGrid& grid) {
  detail::require_disk(xi);
  p.require_nondegenerate();
  const double gamma = 4.0 * p.m0 * std::abs(p.omega_bar);
  const cplx xi_t = xi * std::exp(cplx(0.0, gamma * t));
  CoherentProfile prof = coherent_closed_form(p, xi_t, grid);
  prof.samples *= std::exp(cplx(0.0, -gamma * p.k * t));
  prof.xi = xi_t;
  prof.time = t;
  prof.norm = grid.norm(prof.samples);
  return prof;
}

inline CoherentProfile evolve(const OscillatorConfig& cfg, cplx xi, double t,
                              const RadialGrid& grid) {
  return evolve(algebra_params(cfg), xi, t, grid);
}

}  // namespace su11osc
