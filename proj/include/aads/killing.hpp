#pragma once

#include <array>
#include <string>
#include <vector>

#include "aads/geometry.hpp"

namespace aads {

/// U_{αβ} for 0 ≤ α ≠ β ≤ 5; U_{βα} = −U_{αβ}.
struct KillingLabel {
  int alpha = 0;
  int beta = 0;

  /// Throws InvalidIndexError for α = β or indices outside 0..5.
  static KillingLabel make(int alpha, int beta);
  /// Parses "a,b".
  static KillingLabel parse(const std::string& text);
  std::string str() const;
  friend bool operator==(const KillingLabel&, const KillingLabel&) = default;
};

/// The fifteen fields in their tabulated orientation:
/// U50, U10..U40, U15..U45, U12, U13, U14, U23, U24, U34.
const std::vector<KillingLabel>& killing_labels();

/// Components along (∂t, ∂r, ∂θ, ∂ψ, ∂φ).
using CoordVector = std::array<double, 5>;
/// Components U^{(γ)} along ĕ₀..ĕ₄.
using FrameVector = std::array<double, 5>;

/// Coordinate components on the t = 0 slice, exactly as tabulated.
/// Throws DegenerateCoordinateError where a tabulated coefficient is singular.
CoordVector killing_vector_coord(const KillingLabel& label, const SlicePoint& p, const ModelConstants& k);

/// Extension off the slice. Time translation rotates the (y⁰, y⁵) plane of the
/// embedding, so U_{i0} and U_{i5} mix with angle κt; the rest are t-independent.
CoordVector killing_vector_coord(const KillingLabel& label, const SpacetimePoint& p, const ModelConstants& k);

FrameVector killing_vector_frame(const KillingLabel& label, const SlicePoint& p, const ModelConstants& k);

/// Diagonal static AdS metric −cosh²(κr)dt² + dr² + (sinh²(κr)/κ²)dσ²₃.
std::array<double, 5> ads_metric_diagonal(const SpacetimePoint& p, const ModelConstants& k);

/// max_{μν} |(L_U g)(ĕ_μ, ĕ_ν)| with all derivatives by central differences of step h.
double killing_residual(const KillingLabel& label, const SpacetimePoint& p, double h, const ModelConstants& k);

/// Coordinate components of [U_a, U_b] by central differences.
CoordVector lie_bracket(const KillingLabel& a, const KillingLabel& b, const SpacetimePoint& p, double h,
                        const ModelConstants& k);

}  // namespace aads
