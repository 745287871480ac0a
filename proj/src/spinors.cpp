#include "aads/spinors.hpp"

#include <cmath>
#include <string>

namespace aads {

SpinorProfiles profiles(const KillingParams& lambda, double theta, double psi, double phi) {
  const Complex i{0.0, 1.0};
  const Complex em = std::exp(-0.5 * i * phi);
  const Complex ep = std::exp(0.5 * i * phi);
  const double cpsi = std::cos(0.5 * psi);
  const double spsi = std::sin(0.5 * psi);
  const double cth = std::cos(0.5 * theta);
  const double sth = std::sin(0.5 * theta);
  const auto& [l1, l2, l3, l4] = lambda;

  const Complex a12 = l1 * em * cpsi + l2 * ep * spsi;
  const Complex a34 = l3 * em * cpsi + l4 * ep * spsi;
  const Complex b12 = -l1 * em * spsi + l2 * ep * cpsi;
  const Complex b34 = l3 * em * spsi - l4 * ep * cpsi;

  SpinorProfiles out;
  out.u_plus = a12 * cth + a34 * sth;
  out.u_minus = -i * a12 * sth + i * a34 * cth;
  out.v_plus = i * b12 * cth + i * b34 * sth;
  out.v_minus = -b12 * sth + b34 * cth;
  return out;
}

Spinor killing_spinor(const KillingParams& lambda, const SlicePoint& p, const ModelConstants& k) {
  const SpinorProfiles f = profiles(lambda, p.theta, p.psi, p.phi);
  const Complex i{0.0, 1.0};
  const double grow = std::exp(0.5 * k.kappa() * p.r);
  const double decay = 1.0 / grow;
  Spinor out;
  out << f.u_plus * grow + f.u_minus * decay, f.v_plus * grow + f.v_minus * decay,
      i * (f.u_plus * grow - f.u_minus * decay), i * (f.v_plus * grow - f.v_minus * decay);
  return out;
}

Spinor spinor_connection_term(const ConnectionCoefficients& w, int direction, const Spinor& phi) {
  // ¼ Σ_{b,c} ⟨∇_a ĕ_b, ĕ_c⟩ γ_b γ_c, i.e. ω_{cb a} γ_b γ_c in the storage convention.
  Spinor out = Spinor::Zero();
  for (int b = 1; b <= 4; ++b) {
    for (int c = 1; c <= 4; ++c) {
      const double coeff = w(c, b, direction);
      if (coeff == 0.0) continue;
      out += 0.25 * coeff * (gamma(b).entries.to_complex() * (gamma(c).entries.to_complex() * phi));
    }
  }
  return out;
}

double killing_spinor_residual(const KillingParams& lambda, const SlicePoint& p, int direction, double h,
                               const ModelConstants& k) {
  if (direction < 1 || direction > 4) {
    throw InvalidIndexError("killing_spinor_residual: direction " + std::to_string(direction) +
                            " outside 1..4");
  }
  if (!(h > 0.0)) throw DomainError("killing_spinor_residual: step must be positive");
  const ConnectionCoefficients w = spin_connection(p, k);
  const double scale = frame_scale(direction, p, k);
  const Spinor plus = killing_spinor(lambda, p.shifted(direction, h), k);
  const Spinor minus = killing_spinor(lambda, p.shifted(direction, -h), k);
  const Spinor phi = killing_spinor(lambda, p, k);
  const Spinor derivative = (plus - minus) / (2.0 * h * scale);
  const Complex i{0.0, 1.0};
  const Spinor clifford = 0.5 * k.kappa() * i * (gamma(direction).entries.to_complex() * phi);
  return (derivative + spinor_connection_term(w, direction, phi) + clifford).norm();
}

}  // namespace aads
