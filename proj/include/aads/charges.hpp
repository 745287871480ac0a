#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "aads/geometry.hpp"
#include "aads/initial_data.hpp"

namespace aads {

/// Per-charge record of the radial sequence and its extrapolation.
struct ChargeDiagnostic {
  std::string name;
  std::vector<double> values;   // prefactor included, one per radius
  RadialLimit limit;
  bool quadrature_converged = true;
};

/// E₀, c₁..c₄, c′₁..c′₄ and J_ij (i < j), stored in the order of charge_names().
struct ChargeSet {
  double e0 = 0.0;
  std::array<double, 4> c{};
  std::array<double, 4> cp{};
  std::array<double, 6> j{};  // J12, J13, J14, J23, J24, J34

  std::vector<ChargeDiagnostic> diagnostics;  // empty for hand-built sets
  nlohmann::ordered_json config;              // resolved model and quadrature, if computed

  /// Antisymmetric accessor, 1 ≤ a, b ≤ 4; J(a, a) = 0.
  double J(int a, int b) const;
  void set_J(int a, int b, double value);

  /// The 15 values in charge_names() order, and the inverse.
  std::array<double, 15> values() const;
  static ChargeSet from_values(const std::array<double, 15>& v);

  bool any_divergent() const;
  bool quadrature_converged() const;
};

/// e0, c1..c4, cp1..cp4, j12, j13, j14, j23, j24, j34.
const std::array<std::string, 15>& charge_names();

nlohmann::ordered_json to_json(const ChargeSet& cs);
/// Accepts the format written by to_json (diagnostics ignored). Missing charges are 0.
ChargeSet charge_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const QuadratureSpec& q);

/// Integrand of all 15 charges at one point, without the κ/16π and κ/8π prefactors.
Eigen::VectorXd charge_integrand(const InitialDataModel& model, const SlicePoint& p);

/// Surface integrals at every radius of q (κr values) followed by radial extrapolation.
/// A model with a native grid overrides the angular grid and radii of q.
ChargeSet compute_charges(const InitialDataModel& model, const QuadratureSpec& q,
                          RadialScheme scheme = RadialScheme::kThreePoint);

struct DerivedCharges {
  std::array<double, 3> j_hat{};  // (J23, −J13, J12)
  std::array<double, 3> j4{};     // (J14, J24, J34)
  std::array<double, 3> c{};
  std::array<double, 3> cp{};
  double c4 = 0.0;
  double cp4 = 0.0;
  double l2 = 0.0;  // |L|²
  double a = 0.0;   // A
};

DerivedCharges derived(const ChargeSet& cs);

}  // namespace aads
