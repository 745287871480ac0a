#pragma once

#include <array>

#include "aads/clifford.hpp"
#include "aads/geometry.hpp"

namespace aads {

/// Free parameters λ₁..λ₄ of the imaginary Killing spinors.
using KillingParams = std::array<Complex, 4>;

/// Leading (u⁺, v⁺) and subleading (u⁻, v⁻) angular profiles.
struct SpinorProfiles {
  Complex u_plus;
  Complex u_minus;
  Complex v_plus;
  Complex v_minus;
};

SpinorProfiles profiles(const KillingParams& lambda, double theta, double psi, double phi);

/// Φ₀ = (u⁺e^{κr/2} + u⁻e^{−κr/2}, v⁺e^{κr/2} + v⁻e^{−κr/2},
///       √−1(u⁺e^{κr/2} − u⁻e^{−κr/2}), √−1(v⁺e^{κr/2} − v⁻e^{−κr/2})).
Spinor killing_spinor(const KillingParams& lambda, const SlicePoint& p, const ModelConstants& k);

/// Spinor covariant derivative ∇̆_{ĕ_a}Φ with ĕ_a(Φ) supplied by the caller.
Spinor spinor_connection_term(const ConnectionCoefficients& w, int direction, const Spinor& phi);

/// |∇_{ĕ_a}Φ₀ + (κ√−1/2) γ_a Φ₀| with ĕ_a(Φ₀) taken by central differences of step h
/// along the coordinate line of axis `direction` (1..4).
double killing_spinor_residual(const KillingParams& lambda, const SlicePoint& p, int direction, double h,
                               const ModelConstants& k);

}  // namespace aads
