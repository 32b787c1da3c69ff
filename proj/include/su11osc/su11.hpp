#pragma once

// Abstract su(1,1) discrete-series representation with Bargmann index k > 0:
//
//   K+|k,n> = sqrt((n+1)(2k+n)) |k,n+1>
//   K-|k,n> = sqrt(n(2k+n-1))  |k,n-1>
//   K3|k,n> = (k+n) |k,n>,     C^2 = K3^2 - (K+K- + K-K+)/2 = k(k-1)
//
// plus truncated matrix realizations, a matrix-exponential displacement
// operator D(z) = exp(z K+ - z* K-), and the closed-form Perelomov
// expansion coefficients of D(z)|k,0> in the unit-disk variable xi.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "su11osc/params.hpp"

namespace su11osc {

using cplx = std::complex<double>;

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double ladder_up_coeff(double k, int n) {
  if (!(k > 0) || n < 0) throw std::invalid_argument("ladder_up_coeff: k > 0, n >= 0");
  return std::sqrt((n + 1.0) * (2.0 * k + n));
}

inline double ladder_down_coeff(double k, int n) {
  if (!(k > 0) || n < 0) throw std::invalid_argument("ladder_down_coeff: k > 0, n >= 0");
  if (n == 0) return 0.0;  // lowest state annihilated
  return std::sqrt(n * (2.0 * k + n - 1.0));
}

inline double casimir_eigenvalue(double k) {
  if (!(k > 0)) throw std::invalid_argument("casimir_eigenvalue: k > 0");
  return k * (k - 1.0);
}

/// Basis label of |k,n>.
struct RepBasisState {
  double k;
  int n;
};

/// Dense (N+1)x(N+1) matrices of K+, K-, K3 in the number basis.  kminus is
/// the conjugate transpose of kplus; the commutator [K-,K+] = 2 K3 holds
/// exactly except in the last row/column (truncation edge).
struct TruncatedRep {
  double k = 0.5;
  int dim = 0;
  Eigen::MatrixXcd kplus, kminus, kthree;
};

inline TruncatedRep truncated_rep(double k, int dim) {
  if (!(k > 0)) throw std::invalid_argument("truncated_rep: k > 0");
  if (dim < 2) throw std::invalid_argument("truncated_rep: dim >= 2");
  TruncatedRep rep;
  rep.k = k;
  rep.dim = dim;
  rep.kplus = Eigen::MatrixXcd::Zero(dim, dim);
  rep.kthree = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) rep.kplus(n + 1, n) = ladder_up_coeff(k, n);
  for (int n = 0; n < dim; ++n) rep.kthree(n, n) = k + n;
  rep.kminus = rep.kplus.adjoint();
  return rep;
}

inline Eigen::MatrixXcd casimir_matrix(const TruncatedRep& rep) {
  return rep.kthree * rep.kthree -
         0.5 * (rep.kplus * rep.kminus + rep.kminus * rep.kplus);
}

/// exp(z K+ - z* K-) on the truncated representation.  The generator is
/// exactly anti-Hermitian for any truncation, so the result is unitary up to
/// the matrix-exponential tolerance; truncation shows up only as a deviation
/// of the columns from the infinite-dimensional ladder action.
inline Eigen::MatrixXcd displacement_matrix(const TruncatedRep& rep, cplx z) {
  Eigen::MatrixXcd gen = z * rep.kplus - std::conj(z) * rep.kminus;
  return gen.exp();
}

/// |c_n| of the Perelomov expansion, log-scale evaluation.
inline double perelomov_coeff_abs(double k, double abs_xi, int n) {
  if (abs_xi == 0.0) return n == 0 ? 1.0 : 0.0;
  const double lg =
      0.5 * (std::lgamma(n + 2.0 * k) - std::lgamma(n + 1.0) - std::lgamma(2.0 * k));
  return std::exp(k * std::log1p(-abs_xi * abs_xi) + lg + n * std::log(abs_xi));
}

/// Coefficients c_0..c_nmax of D(z)|k,0> = sum_n c_n |k,n> in the disk
/// variable xi = (z/|z|) tanh|z|:
///
///   c_n = (1-|xi|^2)^k sqrt(Gamma(n+2k) / (n! Gamma(2k))) xi^n
///
/// Gamma ratios go through lgamma so large n does not overflow.
inline Eigen::VectorXcd perelomov_coefficients(double k, cplx xi, int nmax) {
  if (!(k > 0)) throw std::invalid_argument("perelomov_coefficients: k > 0");
  if (nmax < 0) throw std::invalid_argument("perelomov_coefficients: nmax >= 0");
  if (!(std::abs(xi) < 1.0))
    throw std::invalid_argument("perelomov_coefficients: |xi| must be < 1");
  Eigen::VectorXcd c(nmax + 1);
  const double r = std::abs(xi);
  if (r == 0.0) {
    c.setZero();
    c(0) = 1.0;
    return c;
  }
  const cplx phase = xi / r;
  cplx phase_n = 1.0;
  for (int n = 0; n <= nmax; ++n) {
    c(n) = perelomov_coeff_abs(k, r, n) * phase_n;
    phase_n *= phase;
  }
  return c;
}

/// Displacement parameter z together with its unit-disk image.  The normal
/// form D(z) = exp(zeta K+) exp(eta_nf K3) exp(-zeta* K-) uses the same disk
/// variable: zeta = xi = (z/|z|) tanh|z|, eta_nf = ln(1-|zeta|^2).  This sign
/// convention is the one validated by the matrix oracle (column 0 of the
/// exponential reproduces the c_n above).
struct CoherentParam {
  cplx z;
  cplx xi;
  cplx zeta;
  double eta_nf;
};

inline CoherentParam xi_from_z(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("xi_from_z: z must be finite");
  const double r = std::abs(z);
  if (r == 0.0) return {z, 0.0, 0.0, 0.0};
  const cplx xi = (z / r) * std::tanh(r);
  return {z, xi, xi, std::log1p(-std::norm(xi))};
}

inline cplx z_from_xi(cplx xi) {
  const double r = std::abs(xi);
  if (!(r < 1.0)) throw std::invalid_argument("z_from_xi: |xi| must be < 1");
  if (r == 0.0) return 0.0;
  return (xi / r) * std::atanh(r);
}

/// Truncation size for D(z): start from a growth heuristic, then double until
/// the analytic coefficient tail drops below tail_tol.
inline int displacement_auto_dim(double k, cplx z, double tail_tol = 1e-12,
                                 int hard_cap = 4096) {
  const double r = std::abs(z);
  int dim = std::max<int>(64, static_cast<int>(
                                  std::ceil(2.0 * k + 20.0 + 15.0 * r * std::exp(r))));
  const double abs_xi = std::tanh(r);
  auto tail_small = [&](int d) {
    if (abs_xi == 0.0) return true;
    const int lo = std::max(1, d - std::max(4, d / 16));
    double worst = 0.0;
    for (int n = lo; n < d; ++n)
      worst = std::max(worst, perelomov_coeff_abs(k, abs_xi, n));
    return worst < tail_tol;
  };
  while (!tail_small(dim)) {
    if (dim >= hard_cap)
      throw convergence_error("displacement_auto_dim: |z| needs dim beyond the hard cap");
    dim = std::min(hard_cap, 2 * dim);
  }
  return dim;
}

/// exp(zeta K+) in closed form (lower triangular; the series terminates on a
/// truncated representation).  Entry (m,n), m >= n:
///   zeta^(m-n) / (m-n)! * sqrt( m! Gamma(m+2k) / (n! Gamma(n+2k)) ).
inline Eigen::MatrixXcd exp_kplus(const TruncatedRep& rep, cplx zeta) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (int n = 0; n < rep.dim; ++n) {
    for (int m = n; m < rep.dim; ++m) {
      const int d = m - n;
      const double lg = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0) +
                               std::lgamma(m + 2.0 * rep.k) -
                               std::lgamma(n + 2.0 * rep.k)) -
                        std::lgamma(d + 1.0);
      e(m, n) = std::pow(zeta, d) * std::exp(lg);
    }
  }
  return e;
}

/// exp(w K-) = exp(w K+)^T: the ladder coefficients are real and K- is the
/// transpose of K+ in this basis.
inline Eigen::MatrixXcd exp_kminus(const TruncatedRep& rep, cplx w) {
  return exp_kplus(rep, w).transpose();
}

inline Eigen::MatrixXcd exp_kthree(const TruncatedRep& rep, cplx w) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (int n = 0; n < rep.dim; ++n) e(n, n) = std::exp(w * (rep.k + n));
  return e;
}

struct Displacement {
  TruncatedRep rep;
  cplx z;
  Eigen::MatrixXcd matrix;
};

inline Displacement displacement_for(double k, cplx z, int min_dim = 0) {
  int dim = std::max(min_dim, displacement_auto_dim(k, z));
  Displacement d{truncated_rep(k, dim), z, {}};
  d.matrix = displacement_matrix(d.rep, z);
  return d;
}

}  // namespace su11osc
