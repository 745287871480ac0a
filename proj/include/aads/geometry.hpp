#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "aads/errors.hpp"

namespace aads {

/// Curvature scale κ > 0 of the hyperbolic slice; Λ = −6κ².
class ModelConstants {
 public:
  explicit ModelConstants(double kappa = 1.0);

  double kappa() const { return kappa_; }
  double lambda() const { return -6.0 * kappa_ * kappa_; }

 private:
  double kappa_;
};

/// (r, θ, ψ, φ) on the t = 0 slice.
struct SlicePoint {
  double r = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double phi = 0.0;

  double coord(int axis) const;        // axis 1..4 → r, θ, ψ, φ
  SlicePoint shifted(int axis, double h) const;
  std::string str() const;
};

/// (t, r, θ, ψ, φ) in static AdS coordinates.
struct SpacetimePoint {
  double t = 0.0;
  SlicePoint x;

  double coord(int mu) const;          // mu 0..4 → t, r, θ, ψ, φ
  SpacetimePoint shifted(int mu, double h) const;
};

/// Coordinate-to-frame factor: ∂_{x_a} = frame_scale(a) · ĕ_a for a = 1..4.
/// Throws DegenerateCoordinateError where the factor vanishes (r = 0 or a pole).
double frame_scale(int axis, const SlicePoint& p, const ModelConstants& k);

/// Same factor without the degeneracy check; used when converting vectors whose
/// component along a degenerate axis is zero anyway.
double frame_scale_unchecked(int axis, const SlicePoint& p, const ModelConstants& k);

/// ∂_t = cosh(κr) ĕ₀.
double time_scale(const SlicePoint& p, const ModelConstants& k);

/// Density of ω̆ = ĕ²∧ĕ³∧ĕ⁴ against dθ dψ dφ: (sinh(κr)/κ)³ sin²θ sinψ.
double sphere_measure_density(const SlicePoint& p, const ModelConstants& k);

/// ω_{ab c} = ⟨∇̆_{ĕ_c} ĕ_b, ĕ_a⟩ for a, b, c = 1..4.
class ConnectionCoefficients {
 public:
  double operator()(int a, int b, int c) const { return w_[index(a, b, c)]; }
  double& operator()(int a, int b, int c) { return w_[index(a, b, c)]; }

 private:
  static std::size_t index(int a, int b, int c);
  std::array<double, 64> w_{};
};

/// Closed-form Levi-Civita connection of the hyperbolic slice in the frame ĕ₁..ĕ₄.
ConnectionCoefficients spin_connection(const SlicePoint& p, const ModelConstants& k);

/// Max over (a, μ, ν) of |de^a + ω^a_b ∧ e^b| in coordinate components, with the
/// coframe derivative taken by central differences of step h.
double torsion_residual(const SlicePoint& p, const ModelConstants& k, double h);

/// Max |ω_{ab c} + ω_{ba c}|.
double metric_compatibility_residual(const ConnectionCoefficients& w);

/// Gauss–Legendre nodes and weights on [−1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

struct QuadratureSpec {
  int n_theta = 16;
  int n_psi = 16;
  int n_phi = 16;
  std::vector<double> radii{4.0, 5.0, 6.0, 7.0};  // dimensionless κr
  double rel_tol = 1e-8;
  bool refine = true;

  /// Throws DomainError when the invariants (counts, ordering, tolerance) fail.
  void validate() const;
  QuadratureSpec doubled() const;
};

/// Product grid: Gauss–Legendre in θ and ψ mapped to [0, π], uniform in φ.
struct SphereNode {
  double theta;
  double psi;
  double phi;
  double weight;  // dθ dψ dφ weight, excluding the measure density
};
std::vector<double> theta_nodes(int n);  // open Gauss–Legendre nodes on (0, π)
std::vector<double> phi_nodes(int n);    // 2πk/n
std::vector<SphereNode> sphere_grid(int n_theta, int n_psi, int n_phi);

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
struct SurfaceIntegral {
  Vec<Scalar> value;             // base grid
  Vec<Scalar> refined;           // doubled grid (equal to value when refinement is off)
  Eigen::VectorXd magnitude;     // ∫|f| ω̆ on the base grid
  std::vector<bool> converged;   // per component: |refined − value| < rel_tol · magnitude
  bool refinement_performed = false;

  bool all_converged() const;
};

namespace detail {

template <class Scalar>
bool is_finite(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class Scalar, class F>
void integrate_on_grid(F& f, std::size_t n_components, double r, int nt, int np, int nf,
                       const ModelConstants& k, Vec<Scalar>& value, Eigen::VectorXd& magnitude) {
  value = Vec<Scalar>::Zero(static_cast<Eigen::Index>(n_components));
  magnitude = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_components));
  for (const SphereNode& node : sphere_grid(nt, np, nf)) {
    const SlicePoint p{r, node.theta, node.psi, node.phi};
    const Vec<Scalar> fv = f(p);
    if (static_cast<std::size_t>(fv.size()) != n_components) {
      throw ContractViolation("surface_integrate: integrand returned wrong number of components");
    }
    const double w = node.weight * sphere_measure_density(p, k);
    for (Eigen::Index c = 0; c < fv.size(); ++c) {
      if (!is_finite(fv[c])) {
        throw EvaluationError("surface_integrate: non-finite integrand at node " + p.str());
      }
      value[c] += w * fv[c];
      magnitude[c] += w * std::abs(fv[c]);
    }
  }
}

}  // namespace detail

/// Integrates a vector-valued integrand against ω̆ over S_r. The integrand is called as
/// f(SlicePoint) and must return Vec<Scalar> of length n_components. Nodes are visited in
/// a fixed order, so repeated calls are bit-identical.
template <class Scalar, class F>
SurfaceIntegral<Scalar> surface_integrate(F&& f, std::size_t n_components, double r,
                                          const QuadratureSpec& q, const ModelConstants& k) {
  q.validate();
  if (!(r > 0.0)) throw DomainError("surface_integrate: radius must be positive");
  SurfaceIntegral<Scalar> out;
  detail::integrate_on_grid<Scalar>(f, n_components, r, q.n_theta, q.n_psi, q.n_phi, k, out.value,
                                    out.magnitude);
  out.converged.assign(n_components, true);
  out.refined = out.value;
  if (q.refine) {
    Eigen::VectorXd refined_magnitude;
    const QuadratureSpec fine = q.doubled();
    detail::integrate_on_grid<Scalar>(f, n_components, r, fine.n_theta, fine.n_psi, fine.n_phi, k,
                                      out.refined, refined_magnitude);
    out.refinement_performed = true;
    for (std::size_t c = 0; c < n_components; ++c) {
      const auto i = static_cast<Eigen::Index>(c);
      out.converged[c] = std::abs(out.refined[i] - out.value[i]) <= q.rel_tol * out.magnitude[i];
    }
  }
  return out;
}

/// Scalar convenience wrapper.
template <class Scalar, class F>
SurfaceIntegral<Scalar> surface_integrate_scalar(F&& f, double r, const QuadratureSpec& q,
                                                 const ModelConstants& k) {
  auto wrapped = [&f](const SlicePoint& p) {
    Vec<Scalar> v(1);
    v[0] = f(p);
    return v;
  };
  return surface_integrate<Scalar>(wrapped, 1, r, q, k);
}

enum class RadialScheme {
  kThreePoint,         // L + b e^{−βκr}, β fitted from the last three radii
  kExponentialLadder,  // polynomial in e^{−κr}, evaluated at e^{−κr} = 0
};

std::string to_string(RadialScheme s);
RadialScheme radial_scheme_from_string(const std::string& s);

struct RadialLimit {
  double limit = 0.0;
  double residual = 0.0;     // disagreement with the estimate from one fewer radius
  bool divergent = false;
  double beta = 0.0;         // fitted exponent (three-point scheme only)
  RadialScheme scheme = RadialScheme::kThreePoint;

  bool converged(double rel_tol) const;
};

/// Extrapolates lim_{r→∞} v(r) from samples at increasing radii.
/// noise_floor: values below it in magnitude are treated as numerically zero and never
/// reported as divergent.
RadialLimit radial_limit(std::span<const double> radii, std::span<const double> values,
                         const ModelConstants& k, double rel_tol,
                         RadialScheme scheme = RadialScheme::kThreePoint, double noise_floor = 0.0);

}  // namespace aads
