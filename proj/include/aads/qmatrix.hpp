#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aads/charges.hpp"
#include "aads/clifford.hpp"
#include "aads/spinors.hpp"

namespace aads {

/// Q = [[E, L], [L†, Ê]].
struct QMatrix {
  Eigen::Matrix2cd e;
  Eigen::Matrix2cd e_hat;
  Eigen::Matrix2cd l;

  ComplexMatrix4 full() const;
};

QMatrix assemble_q(const ChargeSet& cs);

struct PsdReport {
  bool psd = false;               // eigenvalue test
  double min_eigenvalue = 0.0;
  Eigen::Vector4d eigenvalues = Eigen::Vector4d::Zero();  // ascending
  double tolerance = 0.0;         // 1e-10 · ‖Q‖_F
  std::vector<double> principal_minors;  // all 15, subsets in lexicographic bitmask order
  bool minors_nonnegative = false;
  bool consistent() const { return psd == minors_nonnegative; }
};

/// Throws ContractViolation unless q is Hermitian.
PsdReport psd_check(const ComplexMatrix4& q);
inline PsdReport psd_check(const QMatrix& q) { return psd_check(q.full()); }

enum class BoundVariant { kProof, kText };
std::string to_string(BoundVariant v);
BoundVariant bound_variant_from_string(const std::string& s);

struct BoundsReport {
  BoundVariant variant = BoundVariant::kProof;
  double e0 = 0.0;
  std::array<double, 5> b{};
  double f = 0.0;
  double f_plus = 0.0;
  double w = 0.0;
  double a = 0.0;
  double l2 = 0.0;
  /// A − 2√2·W before clamping.
  double b4_radicand = 0.0;

  double max_bound() const;
  bool verdict(double tol = 0.0) const { return e0 + tol >= max_bound(); }
};

BoundsReport theorem_bounds(const ChargeSet& cs, BoundVariant variant = BoundVariant::kProof);

/// Right-hand sides of the two second-order-minor inequalities (square roots).
struct SecondMinorBounds {
  double first = 0.0;   // (c₄² + ½Σ(cᵢ² + Ĵᵢ²) + ½c′₄²)^½
  double second = 0.0;  // (½Σ(c′ᵢ² + J_{i4}²) + ¼Σ(cᵢ² + Ĵᵢ²) + ¼c′₄²)^½
};
SecondMinorBounds second_minor_bounds(const ChargeSet& cs);

/// Sum of the third-order principal minors divided by 4.
double third_minor_sum(const ChargeSet& cs);
/// Closed-form det Q.
double det_closed_form(const ChargeSet& cs);

enum class RigidityStatus { kRigid, kViolated, kNotInDomain };
std::string to_string(RigidityStatus s);

struct RigidityResult {
  RigidityStatus status = RigidityStatus::kNotInDomain;
  double q_norm = 0.0;  // ‖Q‖_F
  bool holds() const { return status != RigidityStatus::kViolated; }
};

/// Applies when E₀ ≤ tol and Q is PSD; then requires ‖Q‖_F ≤ tol_q.
RigidityResult rigidity_check(const ChargeSet& cs, double tol = 1e-12, double tol_q = 1e-9);

/// Sample i draws from mt19937_64 seeded with seed_seq{seed, i}, so the stream does not
/// depend on how samples are scheduled. δ = 0 for even i (boundary of the PSD cone).
ChargeSet sample_psd_charge(std::uint64_t seed, std::uint64_t index);
std::vector<ChargeSet> sample_psd_charges(std::uint64_t seed, std::size_t n);

enum class IdentityMode { kLeading, kExact };
std::string to_string(IdentityMode m);
IdentityMode identity_mode_from_string(const std::string& s);

struct IdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // |lhs − rhs| / max(|lhs|, |rhs|, 1e-10·max_r ∫|f|ω̆), 0 when all vanish
  std::vector<double> radii;   // κr
  std::vector<double> values;  // surface integral per radius
  RadialLimit limit;
  ChargeSet charges;
  bool divergent = false;
};

/// Boundary integrand of the Weitzenböck identity at one point.
double boundary_integrand(const InitialDataModel& model, const KillingParams& lambda, const SlicePoint& p,
                          IdentityMode mode);

/// lhs: the radial limit of the boundary integral; rhs: 8π λ†Qλ from compute_charges,
/// or from `charges` when supplied.
IdentityResult boundary_identity(const InitialDataModel& model, const KillingParams& lambda,
                                 const QuadratureSpec& q, IdentityMode mode,
                                 const ChargeSet* charges = nullptr);

}  // namespace aads
