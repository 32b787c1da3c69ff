#include <doctest.h>

#include <cmath>
#include <complex>

#include "su11osc/coherent.hpp"
#include "su11osc/params.hpp"
#include "su11osc/radial.hpp"

using namespace su11osc;

namespace {

OscillatorConfig flat_gamma(double gamma) {
  OscillatorConfig c;
  c.ml_numerator = 1;
  c.phi_ac = gamma * kPi;
  return c;
}

AlgebraParams params_for_k(double k) {
  // gamma_eff = 2k - 1 >= 0 picks the plain branch
  return algebra_params(flat_gamma(2.0 * k - 1.0));
}

double sup_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("generating function of the Laguerre polynomials") {
  // sum_n y^n L_n^nu(x) = exp(-x y / (1-y)) / (1-y)^(nu+1); the (nu+1)
  // exponent is what the partial sums converge to
  const double y = 0.4, nu = 1.0, x = 2.0;
  double sum = 0.0;
  for (int n = 0; n <= 200; ++n) sum += std::pow(y, n) * laguerre(n, nu, x);
  const double closed = std::exp(-x * y / (1.0 - y)) / std::pow(1.0 - y, nu + 1.0);
  CHECK(sum == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("closed form at xi = 0 is the lowest basis function") {
  for (double k : {0.5, 1.0, 2.5}) {
    const AlgebraParams p = params_for_k(k);
    const RadialGrid grid = radial_grid(p);
    const CoherentProfile prof = coherent_closed_form(p, 0.0, grid);
    const SturmianFunction f0 = sturmian(p, 0, grid);
    CHECK(prof.norm == doctest::Approx(1.0).epsilon(1e-10));
    double worst = 0.0;
    for (int i = 0; i < grid.npoints; ++i) {
      worst = std::max(worst, std::abs(prof.samples(i).real() - f0.values(i)));
      worst = std::max(worst, std::abs(prof.samples(i).imag()));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("the disk maps to the decaying half plane") {
  // Re[(xi+1)/(xi-1)] < 0 for |xi| < 1, so every profile decays at large rho
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    for (double th : {0.0, 0.8, 2.4, -1.9, kPi}) {
      const cplx xi = std::polar(r, th);
      CHECK(((xi + 1.0) / (xi - 1.0)).real() < 0.0);
    }
  }
}

TEST_CASE("series resummation agrees with the closed form on a 5x5 grid") {
  for (double k : {0.5, 0.75, 1.0, 1.5, 2.5}) {
    const AlgebraParams p = params_for_k(k);
    const RadialGrid grid = radial_grid(p, 2048, 60);
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.85}) {
      const cplx xi = std::polar(r, 0.4 + r);
      const CoherentProfile closed = coherent_closed_form(p, xi, grid);
      const CoherentProfile series = coherent_series(p, xi, grid);
      CHECK(sup_diff(closed.samples, series.samples) <= 1e-8);
    }
  }
}

TEST_CASE("three-way equivalence: closed form, series, basis expansion") {
  // 5x3 sample of (|xi|, k); the reconstruction needs a deep grid
  for (double k : {0.5, 1.0, 2.5}) {
    const AlgebraParams p = params_for_k(k);
    const RadialGrid grid = radial_grid(p, 4096, 150);
    for (double r : {0.1, 0.3, 0.5, 0.65, 0.8}) {
      const cplx xi = std::polar(r, 0.7 - r);
      const CoherentProfile closed = coherent_closed_form(p, xi, grid);
      const CoherentProfile series = coherent_series(p, xi, grid);
      const CoherentProfile recon = coherent_reconstruct(p, xi, grid, 140);
      CHECK(sup_diff(closed.samples, series.samples) <= 1e-7);
      CHECK(sup_diff(closed.samples, recon.samples) <= 1e-7);
      CHECK(sup_diff(series.samples, recon.samples) <= 1e-7);
    }
  }
}

TEST_CASE("series truncation control") {
  CHECK(coherent_series_terms(0.5, 0.0) == 1);
  CHECK_THROWS_AS(coherent_series_terms(0.5, cplx(0.97, 0.0)), convergence_error);
}

TEST_CASE("domain guard: |xi| >= 1 is not normalizable") {
  const AlgebraParams p = params_for_k(1.0);
  const RadialGrid grid = radial_grid(p);
  CHECK_THROWS_AS(coherent_closed_form(p, cplx(1.0, 0.0), grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(coherent_series(p, cplx(0.8, 0.8), grid), std::invalid_argument);
}

TEST_CASE("time evolution") {
  const AlgebraParams p = params_for_k(1.5);
  const RadialGrid grid = radial_grid(p);
  const cplx xi(0.4, 0.2);

  SUBCASE("t = 0 reproduces the unevolved profile exactly") {
    const CoherentProfile a = coherent_closed_form(p, xi, grid);
    const CoherentProfile b = evolve(p, xi, 0.0, grid);
    CHECK(sup_diff(a.samples, b.samples) == 0.0);
  }
  SUBCASE("norm is preserved along the orbit") {
    for (int j = 1; j <= 20; ++j) {
      const CoherentProfile ev = evolve(p, xi, 0.17 * j, grid);
      CHECK(std::abs(ev.norm - 1.0) <= 1e-8);
    }
  }
  SUBCASE("|phi|^2 returns after T = pi / (2 m0 |omega_bar|)") {
    const double period = kPi / (2.0 * p.m0 * std::abs(p.omega_bar));
    const CoherentProfile a = evolve(p, xi, 0.4, grid);
    const CoherentProfile b = evolve(p, xi, 0.4 + period, grid);
    CHECK((a.samples.cwiseAbs2() - b.samples.cwiseAbs2()).cwiseAbs().maxCoeff() <=
          1e-10);
  }
  SUBCASE("phase covariance: evolving twice composes the times") {
    const double t1 = 0.23, t2 = 0.41;
    const CoherentProfile once = evolve(p, xi, t1 + t2, grid);
    // evolve the already-rotated parameter and attach the first phase by hand
    const double gamma = 4.0 * p.m0 * std::abs(p.omega_bar);
    const cplx xi1 = xi * std::exp(cplx(0.0, gamma * t1));
    CoherentProfile twice = evolve(p, xi1, t2, grid);
    twice.samples *= std::exp(cplx(0.0, -gamma * p.k * t1));
    CHECK(sup_diff(once.samples, twice.samples) <= 1e-10);
  }
}

TEST_CASE("eta = 1 cosmic string gives the identical coherent state") {
  OscillatorConfig cone;
  cone.ml_numerator = 1;
  cone.phi_ac = 0.9;
  cone.spacetime = Spacetime::CosmicString;
  cone.eta = 1.0;
  OscillatorConfig flat = cone;
  flat.spacetime = Spacetime::Minkowski;

  const AlgebraParams pc = algebra_params(cone), pf = algebra_params(flat);
  const RadialGrid gc = radial_grid(pc), gf = radial_grid(pf);
  const cplx xi(0.3, -0.45);
  const CoherentProfile a = coherent_closed_form(pc, xi, gc);
  const CoherentProfile b = coherent_closed_form(pf, xi, gf);
  CHECK(sup_diff(a.samples, b.samples) == 0.0);  // bitwise identical path
}
