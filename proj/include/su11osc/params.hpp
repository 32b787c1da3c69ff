#pragma once

// Physical parameters of the (2+1)-dimensional Dirac oscillator coupled to an
// Aharonov-Casher field, in flat (Minkowski) or conical (cosmic-string)
// spacetime, plus the derived quantities every other module consumes.
// Natural units hbar = c = 1 throughout.

#include <cmath>
#include <stdexcept>
#include <string>

namespace su11osc {

inline constexpr double kPi = 3.14159265358979323846;

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by operations that divide by omega_bar when omega_bar == 0.  The
// constructor accepts such configs; the free-fall limit is not implemented.
struct degenerate_frequency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Spacetime { Minkowski, CosmicString };

inline std::string to_string(Spacetime st) {
  return st == Spacetime::Minkowski ? "Minkowski" : "CosmicString";
}

/// All physical inputs.  m_l is kept as an exact half-odd integer
/// (ml_numerator/2) so that phase-periodicity identities stay exact.
struct OscillatorConfig {
  double m0 = 1.0;          // rest mass
  double omega = 1.0;       // oscillator frequency
  double omega_ac = 0.0;    // Aharonov-Casher frequency  mu*lambda2/m0
  double phi_ac = 0.0;      // Aharonov-Casher phase (radians)
  double mu_moment = 0.0;   // magnetic dipole moment
  double b_field = 0.0;     // magnetic field strength B
  int s = +1;               // spin projection, +1 or -1
  int ml_numerator = 1;     // odd integer p, m_l = p/2
  double eta = 1.0;         // deficit-angle parameter, (0,1]; 1 in Minkowski
  Spacetime spacetime = Spacetime::Minkowski;

  double ml() const { return 0.5 * ml_numerator; }
  double omega_bar() const { return omega - 0.5 * omega_ac; }

  void validate() const {
    if (!(m0 > 0)) throw config_error("m0 must be positive");
    if (s != 1 && s != -1) throw config_error("s must be +1 or -1");
    if (ml_numerator % 2 == 0)
      throw config_error("ml_numerator must be odd (m_l half-odd integer)");
    if (!(omega_bar() >= 0))
      throw config_error("omega - omega_ac/2 must be >= 0");
    if (!(eta > 0.0) || eta > 1.0)
      throw config_error("eta must lie in (0, 1]");
    if (spacetime == Spacetime::Minkowski && eta != 1.0)
      throw config_error("eta must equal 1 exactly in Minkowski spacetime");
    if (!std::isfinite(phi_ac) || !std::isfinite(b_field) ||
        !std::isfinite(mu_moment) || !std::isfinite(omega))
      throw config_error("non-finite parameter");
  }

  OscillatorConfig validated() const {
    validate();
    return *this;
  }
};

/// Effective parameters of the su(1,1) realization.  One abstraction covers
/// both spacetimes: the cosmic string only deforms gamma_eff and the magnetic
/// shift.  k is the Bargmann index of the discrete-series representation.
struct AlgebraParams {
  double gamma_eff;   // Gamma_s (flat) or gamma_s/eta (cosmic string)
  double k;           // |gamma_eff|/2 + 1/2
  double omega_bar;   // omega - omega_ac/2, >= 0
  double m0;
  double mu_b_eff;    // mu*B (flat) or mu*B/eta (cosmic string)

  // scale of the Gaussian weight, m0*|omega_bar|
  double scale_a() const { return m0 * std::abs(omega_bar); }

  void require_nondegenerate() const {
    if (omega_bar == 0.0)
      throw degenerate_frequency_error(
          "omega_bar = 0: spectrum and basis are undefined (1/omega_bar)");
  }
};

/// Gamma_s = m_l + s*Phi_AC/pi - s/2 (flat spacetime).
inline double gamma_ms(const OscillatorConfig& cfg) {
  cfg.validate();
  if (cfg.spacetime != Spacetime::Minkowski)
    throw config_error("gamma_ms requires a Minkowski config (use gamma_css)");
  return cfg.ml() + cfg.s * (cfg.phi_ac / kPi) - cfg.s * 0.5;
}

struct GammaCss {
  double gamma_s;  // m_l + s*Phi_AC/pi - s*eta/2
  double ratio;    // gamma_s / eta, the effective angular number
};

/// gamma_s and gamma_s/eta (cosmic-string spacetime).  At eta = 1 this
/// reduces bit-exactly to gamma_ms of the matching flat config.
inline GammaCss gamma_css(const OscillatorConfig& cfg) {
  cfg.validate();
  if (cfg.spacetime != Spacetime::CosmicString)
    throw config_error("gamma_css requires a CosmicString config (use gamma_ms)");
  const double g = cfg.ml() + cfg.s * (cfg.phi_ac / kPi) - cfg.s * (cfg.eta * 0.5);
  return {g, g / cfg.eta};
}

inline double bargmann_k(double gamma_eff) {
  return 0.5 * std::abs(gamma_eff) + 0.5;
}

inline AlgebraParams algebra_params(const OscillatorConfig& cfg) {
  cfg.validate();
  double gamma_eff, mu_b_eff;
  if (cfg.spacetime == Spacetime::Minkowski) {
    gamma_eff = gamma_ms(cfg);
    mu_b_eff = cfg.mu_moment * cfg.b_field;
  } else {
    gamma_eff = gamma_css(cfg).ratio;
    mu_b_eff = (cfg.mu_moment * cfg.b_field) / cfg.eta;
  }
  return {gamma_eff, bargmann_k(gamma_eff), cfg.omega_bar(), cfg.m0, mu_b_eff};
}

}  // namespace su11osc
