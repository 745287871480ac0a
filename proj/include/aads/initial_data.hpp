#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "aads/geometry.hpp"

namespace aads {

/// Symmetric 4×4 frame components; index 0 ↔ ĕ₁.
using SymTensor = Eigen::Matrix4d;
using TensorPartials = std::array<SymTensor, 4>;  // ∂_r, ∂_θ, ∂_ψ, ∂_φ of frame components

/// Named angular weight W(θ, ψ, φ) with its coordinate gradient.
struct AngularProfile {
  std::string name;
  double (*value)(double theta, double psi, double phi);
  std::array<double, 3> (*gradient)(double theta, double psi, double phi);
};

/// one, sin_theta, cos_theta, cos_psi, n1, n2, n3, n4 (embedding directions of S³).
const AngularProfile& angular_profile(const std::string& name);
std::vector<std::string> angular_profile_names();

enum class DerivativeMode { kAnalytic, kFiniteDifference };

/// Perturbation fields a_ij = g_ij − δ_ij and h_ij (second fundamental form), both in the
/// orthonormal frame of the hyperbolic background.
class InitialDataModel {
 public:
  explicit InitialDataModel(ModelConstants k) : k_(k) {}
  virtual ~InitialDataModel() = default;

  const ModelConstants& constants() const { return k_; }

  virtual std::string name() const = 0;
  virtual nlohmann::ordered_json config() const = 0;
  /// Declared decay order τ (infinity for vanishing data).
  virtual double decay_order() const = 0;

  virtual SymTensor a(const SlicePoint& p) const = 0;
  virtual SymTensor h(const SlicePoint& p) const = 0;

  /// Coordinate derivatives of a_ij: analytic when the model provides them and the mode
  /// allows it, otherwise second-order central differences of step fd_step().
  TensorPartials a_partials(const SlicePoint& p) const;
  virtual bool has_analytic_derivatives() const { return false; }

  void set_derivative_mode(DerivativeMode mode) { mode_ = mode; }
  DerivativeMode derivative_mode() const { return mode_; }
  void set_fd_step(double h);
  double fd_step() const { return fd_step_; }

  /// Sampled models fix the angular grid and radii they can be evaluated on.
  virtual std::optional<QuadratureSpec> native_grid() const { return std::nullopt; }

 protected:
  virtual TensorPartials analytic_a_partials(const SlicePoint& p) const;
  virtual TensorPartials numeric_a_partials(const SlicePoint& p) const;

 private:
  ModelConstants k_;
  DerivativeMode mode_ = DerivativeMode::kAnalytic;
  double fd_step_ = 1e-4;
};

using ModelPtr = std::shared_ptr<InitialDataModel>;

class AdsExactModel final : public InitialDataModel {
 public:
  explicit AdsExactModel(ModelConstants k) : InitialDataModel(k) {}
  std::string name() const override { return "ads_exact"; }
  nlohmann::ordered_json config() const override;
  double decay_order() const override;
  SymTensor a(const SlicePoint&) const override { return SymTensor::Zero(); }
  SymTensor h(const SlicePoint&) const override { return SymTensor::Zero(); }
  bool has_analytic_derivatives() const override { return true; }

 protected:
  TensorPartials analytic_a_partials(const SlicePoint&) const override;
};

/// a_ij = m e^{−σκr} W δ_ij, h = 0.
class RadialBumpModel final : public InitialDataModel {
 public:
  RadialBumpModel(ModelConstants k, double m, double sigma, const std::string& profile = "one");
  std::string name() const override { return "radial_bump"; }
  nlohmann::ordered_json config() const override;
  double decay_order() const override { return sigma_; }
  SymTensor a(const SlicePoint& p) const override;
  SymTensor h(const SlicePoint&) const override { return SymTensor::Zero(); }
  bool has_analytic_derivatives() const override { return true; }

 protected:
  TensorPartials analytic_a_partials(const SlicePoint& p) const override;

 private:
  double m_;
  double sigma_;
  const AngularProfile* profile_;
};

/// h_{1k} = h_{k1} = q e^{−σκr} W for one k ∈ {2,3,4}; a = 0.
class OffdiagMomentumModel final : public InitialDataModel {
 public:
  OffdiagMomentumModel(ModelConstants k, double q, int axis, const std::string& profile, double sigma = 4.0);
  std::string name() const override { return "offdiag_momentum"; }
  nlohmann::ordered_json config() const override;
  double decay_order() const override { return sigma_; }
  SymTensor a(const SlicePoint&) const override { return SymTensor::Zero(); }
  SymTensor h(const SlicePoint& p) const override;
  bool has_analytic_derivatives() const override { return true; }

 protected:
  TensorPartials analytic_a_partials(const SlicePoint&) const override;

 private:
  double q_;
  int axis_;
  const AngularProfile* profile_;
  double sigma_;
};

/// Superposition of models sharing κ.
class MixModel final : public InitialDataModel {
 public:
  explicit MixModel(std::vector<ModelPtr> components);
  std::string name() const override { return "mix"; }
  nlohmann::ordered_json config() const override;
  double decay_order() const override;
  SymTensor a(const SlicePoint& p) const override;
  SymTensor h(const SlicePoint& p) const override;
  bool has_analytic_derivatives() const override;

 protected:
  TensorPartials analytic_a_partials(const SlicePoint& p) const override;

 private:
  std::vector<ModelPtr> components_;
};

/// Data sampled on a product grid (text format "aads-id 1"). Evaluation is only defined at
/// the stored nodes. Angular derivatives are spectral (Lagrange through the Gauss–Legendre
/// nodes in θ, ψ; trigonometric in φ); radial derivatives differentiate e^{τκr}a with a
/// three-point Lagrange stencil over neighbouring radii.
class GridModel final : public InitialDataModel {
 public:
  struct Header {
    double kappa = 1.0;
    double tau = 4.0;
    int n_r = 0;
    int n_theta = 0;
    int n_psi = 0;
    int n_phi = 0;
    std::vector<double> radii;  // coordinate r
  };

  GridModel(Header header, std::vector<std::array<double, 20>> values, std::string source = {});

  std::string name() const override { return "grid"; }
  nlohmann::ordered_json config() const override;
  double decay_order() const override { return header_.tau; }
  SymTensor a(const SlicePoint& p) const override;
  SymTensor h(const SlicePoint& p) const override;
  bool has_analytic_derivatives() const override { return true; }
  std::optional<QuadratureSpec> native_grid() const override;
  const Header& header() const { return header_; }

 protected:
  TensorPartials analytic_a_partials(const SlicePoint& p) const override;
  TensorPartials numeric_a_partials(const SlicePoint& p) const override;

 private:
  struct NodeIndex {
    std::size_t r, t, s, f;
  };
  NodeIndex locate(const SlicePoint& p) const;
  const std::array<double, 20>& at(std::size_t r, std::size_t t, std::size_t s, std::size_t f) const;
  SymTensor tensor_at(const NodeIndex& n, std::size_t offset) const;

  Header header_;
  std::vector<std::array<double, 20>> values_;
  std::string source_;
  std::vector<double> theta_;
  std::vector<double> psi_;
  std::vector<double> phi_;
  Eigen::MatrixXd d_theta_;
  Eigen::MatrixXd d_psi_;
  Eigen::MatrixXd d_phi_;
};

/// Order of the 10 independent components in grid files: 11,12,13,14,22,23,24,33,34,44.
const std::array<std::pair<int, int>, 10>& grid_component_order();

ModelPtr read_grid_model(std::istream& in, const std::string& source = {});
ModelPtr load_grid_model(const std::string& path);
/// Samples `model` on the nodes of the given angular grid at coordinate radii `radii`.
void write_grid_file(std::ostream& out, const InitialDataModel& model, std::span<const double> radii,
                     int n_theta, int n_psi, int n_phi);

/// Builds a model from {"name": ..., "params": {...}}. Names: ads_exact, radial_bump,
/// offdiag_momentum, grid, mix. Generators reject σ ≤ 2.
ModelPtr model_registry(const std::string& name, const nlohmann::json& params);
ModelPtr model_from_json(const nlohmann::json& config);

/// Pointwise aspect quantities.
struct AspectValues {
  std::array<double, 4> mass{};               // ℰ_i
  Eigen::Matrix4d momentum = Eigen::Matrix4d::Zero();  // 𝒫_{ki}, row k, column i
  std::array<double, 4> divergence_term{};    // ∇̆^j g_ij − ∇̆_i tr g
  SymTensor a = SymTensor::Zero();
  SymTensor h = SymTensor::Zero();
  double trace_a = 0.0;
  double trace_h = 0.0;
};

/// (∇̆_{ĕ_c} a)_{ij}, indexed [c](i, j).
std::array<SymTensor, 4> covariant_derivative_a(const InitialDataModel& model, const SlicePoint& p);

AspectValues aspects(const InitialDataModel& model, const SlicePoint& p);
std::array<double, 4> mass_aspect(const InitialDataModel& model, const SlicePoint& p);
Eigen::Matrix4d momentum_aspect(const InitialDataModel& model, const SlicePoint& p);

struct DecayFieldReport {
  std::string field;           // "a", "grad_a", "h"
  std::vector<double> norms;   // max-norm over sphere samples at each radius
  double sigma_hat = 0.0;      // fitted −d log‖·‖ / d(κr)
  bool vacuous = false;
  bool pass = false;
};

struct DecayReport {
  double tau = 0.0;
  std::vector<double> radii;  // κr
  std::vector<DecayFieldReport> fields;
  bool pass = false;
};

/// Empirical decay exponents along radii (κr values). Passes iff τ > 2 and every non-vacuous
/// field has σ̂ ≥ τ − 0.1.
DecayReport decay_validate(const InitialDataModel& model, std::span<const double> kappa_radii,
                           int n_angular = 8);

}  // namespace aads
