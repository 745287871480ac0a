#include "aads/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace aads {
namespace {

using Grad3 = std::array<double, 3>;

const std::vector<AngularProfile>& profile_table() {
  static const std::vector<AngularProfile> table = {
      {"one", [](double, double, double) { return 1.0; },
       [](double, double, double) { return Grad3{0.0, 0.0, 0.0}; }},
      {"sin_theta", [](double t, double, double) { return std::sin(t); },
       [](double t, double, double) { return Grad3{std::cos(t), 0.0, 0.0}; }},
      {"cos_theta", [](double t, double, double) { return std::cos(t); },
       [](double t, double, double) { return Grad3{-std::sin(t), 0.0, 0.0}; }},
      {"cos_psi", [](double, double s, double) { return std::cos(s); },
       [](double, double s, double) { return Grad3{0.0, -std::sin(s), 0.0}; }},
      {"n1", [](double t, double s, double f) { return std::sin(t) * std::sin(s) * std::cos(f); },
       [](double t, double s, double f) {
         return Grad3{std::cos(t) * std::sin(s) * std::cos(f), std::sin(t) * std::cos(s) * std::cos(f),
                      -std::sin(t) * std::sin(s) * std::sin(f)};
       }},
      {"n2", [](double t, double s, double f) { return std::sin(t) * std::sin(s) * std::sin(f); },
       [](double t, double s, double f) {
         return Grad3{std::cos(t) * std::sin(s) * std::sin(f), std::sin(t) * std::cos(s) * std::sin(f),
                      std::sin(t) * std::sin(s) * std::cos(f)};
       }},
      {"n3", [](double t, double s, double) { return std::sin(t) * std::cos(s); },
       [](double t, double s, double) {
         return Grad3{std::cos(t) * std::cos(s), -std::sin(t) * std::sin(s), 0.0};
       }},
      {"n4", [](double t, double, double) { return std::cos(t); },
       [](double t, double, double) { return Grad3{-std::sin(t), 0.0, 0.0}; }},
  };
  return table;
}

void check_sigma(double sigma) {
  if (!(sigma > 2.0)) {
    throw DomainError("decay rate sigma must exceed 2 (asymptotically AdS of order tau > 2)");
  }
}

// Lagrange differentiation matrix on arbitrary distinct nodes (barycentric form).
Eigen::MatrixXd lagrange_differentiation(const std::vector<double>& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j) w[j] /= (x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(k)]);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (w[j] / w[i]) / (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

// Spectral derivative on a uniform periodic grid with an even number of points.
Eigen::MatrixXd periodic_differentiation(int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double hstep = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * (i - j) * hstep);
    }
  }
  return d;
}

std::size_t match_node(const std::vector<double>& nodes, double x, double tol, const char* what,
                       const SlicePoint& p) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(nodes[i] - x) <= tol) return i;
  }
  throw DomainError(std::string("grid model: ") + what + " of " + p.str() + " is not a stored node");
}

double json_number(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number()) throw ParseError(std::string("model parameter '") + key + "' must be a number");
  return params.at(key).get<double>();
}

std::string json_string(const nlohmann::json& params, const char* key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_string()) throw ParseError(std::string("model parameter '") + key + "' must be a string");
  return params.at(key).get<std::string>();
}

}  // namespace

const AngularProfile& angular_profile(const std::string& name) {
  for (const AngularProfile& p : profile_table()) {
    if (p.name == name) return p;
  }
  throw ParseError("unknown angular profile '" + name + "'");
}

std::vector<std::string> angular_profile_names() {
  std::vector<std::string> out;
  for (const AngularProfile& p : profile_table()) out.push_back(p.name);
  return out;
}

void InitialDataModel::set_fd_step(double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  fd_step_ = h;
}

TensorPartials InitialDataModel::a_partials(const SlicePoint& p) const {
  if (mode_ == DerivativeMode::kAnalytic && has_analytic_derivatives()) return analytic_a_partials(p);
  return numeric_a_partials(p);
}

TensorPartials InitialDataModel::analytic_a_partials(const SlicePoint& p) const {
  return numeric_a_partials(p);
}

TensorPartials InitialDataModel::numeric_a_partials(const SlicePoint& p) const {
  TensorPartials out;
  for (int axis = 1; axis <= 4; ++axis) {
    out[static_cast<std::size_t>(axis - 1)] =
        (a(p.shifted(axis, fd_step_)) - a(p.shifted(axis, -fd_step_))) / (2.0 * fd_step_);
  }
  return out;
}

nlohmann::ordered_json AdsExactModel::config() const {
  return {{"name", name()}, {"params", {{"kappa", constants().kappa()}}}};
}

double AdsExactModel::decay_order() const { return std::numeric_limits<double>::infinity(); }

TensorPartials AdsExactModel::analytic_a_partials(const SlicePoint&) const {
  TensorPartials out;
  out.fill(SymTensor::Zero());
  return out;
}

RadialBumpModel::RadialBumpModel(ModelConstants k, double m, double sigma, const std::string& profile)
    : InitialDataModel(k), m_(m), sigma_(sigma), profile_(&angular_profile(profile)) {
  check_sigma(sigma);
}

nlohmann::ordered_json RadialBumpModel::config() const {
  return {{"name", name()},
          {"params",
           {{"kappa", constants().kappa()}, {"m", m_}, {"sigma", sigma_}, {"profile", profile_->name}}}};
}

SymTensor RadialBumpModel::a(const SlicePoint& p) const {
  const double f = m_ * std::exp(-sigma_ * constants().kappa() * p.r) * profile_->value(p.theta, p.psi, p.phi);
  return f * SymTensor::Identity();
}

TensorPartials RadialBumpModel::analytic_a_partials(const SlicePoint& p) const {
  const double radial = m_ * std::exp(-sigma_ * constants().kappa() * p.r);
  const double w = profile_->value(p.theta, p.psi, p.phi);
  const Grad3 dw = profile_->gradient(p.theta, p.psi, p.phi);
  TensorPartials out;
  out[0] = -sigma_ * constants().kappa() * radial * w * SymTensor::Identity();
  for (std::size_t i = 0; i < 3; ++i) out[i + 1] = radial * dw[i] * SymTensor::Identity();
  return out;
}

OffdiagMomentumModel::OffdiagMomentumModel(ModelConstants k, double q, int axis, const std::string& profile,
                                           double sigma)
    : InitialDataModel(k), q_(q), axis_(axis), profile_(&angular_profile(profile)), sigma_(sigma) {
  if (axis < 2 || axis > 4) throw DomainError("offdiag_momentum: axis must be 2, 3 or 4");
  check_sigma(sigma);
}

nlohmann::ordered_json OffdiagMomentumModel::config() const {
  return {{"name", name()},
          {"params",
           {{"kappa", constants().kappa()},
            {"q", q_},
            {"axis", axis_},
            {"profile", profile_->name},
            {"sigma", sigma_}}}};
}

SymTensor OffdiagMomentumModel::h(const SlicePoint& p) const {
  const double f = q_ * std::exp(-sigma_ * constants().kappa() * p.r) * profile_->value(p.theta, p.psi, p.phi);
  SymTensor out = SymTensor::Zero();
  out(0, axis_ - 1) = f;
  out(axis_ - 1, 0) = f;
  return out;
}

TensorPartials OffdiagMomentumModel::analytic_a_partials(const SlicePoint&) const {
  TensorPartials out;
  out.fill(SymTensor::Zero());
  return out;
}

MixModel::MixModel(std::vector<ModelPtr> components)
    : InitialDataModel(components.empty() ? ModelConstants{} : components.front()->constants()),
      components_(std::move(components)) {
  if (components_.empty()) throw DomainError("mix: at least one component required");
  for (const ModelPtr& c : components_) {
    if (c->constants().kappa() != constants().kappa()) {
      throw DomainError("mix: all components must share kappa");
    }
    if (c->native_grid()) throw DomainError("mix: sampled grid models cannot be mixed");
  }
}

nlohmann::ordered_json MixModel::config() const {
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const ModelPtr& c : components_) parts.push_back(c->config());
  return {{"name", name()}, {"params", {{"components", parts}}}};
}

double MixModel::decay_order() const {
  double tau = std::numeric_limits<double>::infinity();
  for (const ModelPtr& c : components_) tau = std::min(tau, c->decay_order());
  return tau;
}

SymTensor MixModel::a(const SlicePoint& p) const {
  SymTensor out = SymTensor::Zero();
  for (const ModelPtr& c : components_) out += c->a(p);
  return out;
}

SymTensor MixModel::h(const SlicePoint& p) const {
  SymTensor out = SymTensor::Zero();
  for (const ModelPtr& c : components_) out += c->h(p);
  return out;
}

bool MixModel::has_analytic_derivatives() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ModelPtr& c) { return c->has_analytic_derivatives(); });
}

TensorPartials MixModel::analytic_a_partials(const SlicePoint& p) const {
  TensorPartials out;
  out.fill(SymTensor::Zero());
  for (const ModelPtr& c : components_) {
    const TensorPartials d = c->a_partials(p);
    for (std::size_t i = 0; i < 4; ++i) out[i] += d[i];
  }
  return out;
}

const std::array<std::pair<int, int>, 10>& grid_component_order() {
  static const std::array<std::pair<int, int>, 10> order = {{
      {1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 4},
  }};
  return order;
}

GridModel::GridModel(Header header, std::vector<std::array<double, 20>> values, std::string source)
    : InitialDataModel(ModelConstants(header.kappa)),
      header_(std::move(header)),
      values_(std::move(values)),
      source_(std::move(source)) {
  if (header_.n_r < 1 || static_cast<std::size_t>(header_.n_r) != header_.radii.size()) {
    throw ParseError("grid model: radii count does not match grid header");
  }
  if (header_.n_theta < 4 || header_.n_psi < 4 || header_.n_phi < 4 || header_.n_phi % 2 != 0) {
    throw ParseError("grid model: angular grid must have ntheta, npsi >= 4 and even nphi >= 4");
  }
  for (std::size_t i = 1; i < header_.radii.size(); ++i) {
    if (!(header_.radii[i] > header_.radii[i - 1])) throw ParseError("grid model: radii must increase");
  }
  const std::size_t expected = static_cast<std::size_t>(header_.n_r) * static_cast<std::size_t>(header_.n_theta) *
                               static_cast<std::size_t>(header_.n_psi) * static_cast<std::size_t>(header_.n_phi);
  if (values_.size() != expected) {
    throw ParseError("grid model: expected " + std::to_string(expected) + " node lines, got " +
                     std::to_string(values_.size()));
  }
  theta_ = theta_nodes(header_.n_theta);
  psi_ = theta_nodes(header_.n_psi);
  phi_ = phi_nodes(header_.n_phi);
  d_theta_ = lagrange_differentiation(theta_);
  d_psi_ = lagrange_differentiation(psi_);
  d_phi_ = periodic_differentiation(header_.n_phi);
}

nlohmann::ordered_json GridModel::config() const {
  return {{"name", name()},
          {"params",
           {{"file", source_},
            {"kappa", header_.kappa},
            {"tau", header_.tau},
            {"grid", {header_.n_r, header_.n_theta, header_.n_psi, header_.n_phi}}}}};
}

std::optional<QuadratureSpec> GridModel::native_grid() const {
  QuadratureSpec q;
  q.n_theta = header_.n_theta;
  q.n_psi = header_.n_psi;
  q.n_phi = header_.n_phi;
  q.radii.clear();
  for (double r : header_.radii) q.radii.push_back(r * header_.kappa);
  q.refine = false;
  return q;
}

GridModel::NodeIndex GridModel::locate(const SlicePoint& p) const {
  NodeIndex n{};
  n.r = match_node(header_.radii, p.r, 1e-9 * std::max(1.0, std::abs(p.r)), "radius", p);
  n.t = match_node(theta_, p.theta, 1e-12, "theta", p);
  n.s = match_node(psi_, p.psi, 1e-12, "psi", p);
  double phi = std::fmod(p.phi, 2.0 * M_PI);
  if (phi < 0.0) phi += 2.0 * M_PI;
  if (2.0 * M_PI - phi < 1e-12) phi = 0.0;
  n.f = match_node(phi_, phi, 1e-12, "phi", p);
  return n;
}

const std::array<double, 20>& GridModel::at(std::size_t r, std::size_t t, std::size_t s, std::size_t f) const {
  const auto nt = static_cast<std::size_t>(header_.n_theta);
  const auto ns = static_cast<std::size_t>(header_.n_psi);
  const auto nf = static_cast<std::size_t>(header_.n_phi);
  return values_[((r * nt + t) * ns + s) * nf + f];
}

SymTensor GridModel::tensor_at(const NodeIndex& n, std::size_t offset) const {
  const std::array<double, 20>& row = at(n.r, n.t, n.s, n.f);
  SymTensor out;
  const auto& order = grid_component_order();
  for (std::size_t c = 0; c < order.size(); ++c) {
    const int i = order[c].first - 1;
    const int j = order[c].second - 1;
    out(i, j) = row[offset + c];
    out(j, i) = row[offset + c];
  }
  return out;
}

SymTensor GridModel::a(const SlicePoint& p) const { return tensor_at(locate(p), 0); }

SymTensor GridModel::h(const SlicePoint& p) const { return tensor_at(locate(p), 10); }

TensorPartials GridModel::numeric_a_partials(const SlicePoint& p) const { return analytic_a_partials(p); }

TensorPartials GridModel::analytic_a_partials(const SlicePoint& p) const {
  const NodeIndex n = locate(p);
  TensorPartials out;
  out.fill(SymTensor::Zero());

  // Radial: differentiate the rescaled field e^{τκr} a, which varies slowly for data
  // decaying at the declared rate.
  const auto nr = header_.radii.size();
  if (nr >= 2) {
    const double rate = header_.tau * header_.kappa;
    std::size_t lo = 0;
    std::size_t count = std::min<std::size_t>(3, nr);
    if (count == 3) lo = std::clamp<std::size_t>(n.r, 1, nr - 2) - 1;
    else lo = 0;
    const double x = header_.radii[n.r];
    for (std::size_t j = lo; j < lo + count; ++j) {
      // d/dx of the Lagrange basis polynomial ℓ_j at x.
      double deriv = 0.0;
      for (std::size_t m = lo; m < lo + count; ++m) {
        if (m == j) continue;
        double term = 1.0 / (header_.radii[j] - header_.radii[m]);
        for (std::size_t l = lo; l < lo + count; ++l) {
          if (l == j || l == m) continue;
          term *= (x - header_.radii[l]) / (header_.radii[j] - header_.radii[l]);
        }
        deriv += term;
      }
      const SymTensor aj = tensor_at({j, n.t, n.s, n.f}, 0);
      out[0] += deriv * std::exp(rate * (header_.radii[j] - x)) * aj;
    }
    out[0] -= rate * tensor_at(n, 0);
  }
  for (std::size_t j = 0; j < theta_.size(); ++j) {
    const double d = d_theta_(static_cast<Eigen::Index>(n.t), static_cast<Eigen::Index>(j));
    if (d != 0.0) out[1] += d * tensor_at({n.r, j, n.s, n.f}, 0);
  }
  for (std::size_t j = 0; j < psi_.size(); ++j) {
    const double d = d_psi_(static_cast<Eigen::Index>(n.s), static_cast<Eigen::Index>(j));
    if (d != 0.0) out[2] += d * tensor_at({n.r, n.t, j, n.f}, 0);
  }
  for (std::size_t j = 0; j < phi_.size(); ++j) {
    const double d = d_phi_(static_cast<Eigen::Index>(n.f), static_cast<Eigen::Index>(j));
    if (d != 0.0) out[3] += d * tensor_at({n.r, n.t, n.s, j}, 0);
  }
  return out;
}

ModelPtr read_grid_model(std::istream& in, const std::string& source) {
  GridModel::Header header;
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      const auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      return true;
    }
    return false;
  };
  auto expect_key = [&](const std::string& key) {
    if (!next_line(line)) throw ParseError("grid file: missing '" + key + "' line");
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(0, eq) != key) {
      throw ParseError("grid file: expected '" + key + "=...', got '" + line + "'");
    }
    return std::istringstream(line.substr(eq + 1));
  };
  if (!next_line(line)) throw ParseError("grid file: empty input");
  {
    std::istringstream magic(line);
    std::string tag;
    int version = 0;
    if (!(magic >> tag >> version) || tag != "aads-id" || version != 1) {
      throw ParseError("grid file: expected header 'aads-id 1'");
    }
  }
  if (!(expect_key("kappa") >> header.kappa)) throw ParseError("grid file: bad kappa");
  if (!(expect_key("tau") >> header.tau)) throw ParseError("grid file: bad tau");
  {
    auto is = expect_key("grid");
    if (!(is >> header.n_r >> header.n_theta >> header.n_psi >> header.n_phi)) {
      throw ParseError("grid file: bad grid line");
    }
  }
  {
    auto is = expect_key("radii");
    double r = 0.0;
    while (is >> r) header.radii.push_back(r);
  }
  std::vector<std::array<double, 20>> values;
  std::size_t line_no = 0;
  while (next_line(line)) {
    ++line_no;
    std::istringstream is(line);
    std::array<double, 20> row{};
    for (double& v : row) {
      if (!(is >> v)) throw ParseError("grid file: node line " + std::to_string(line_no) + " needs 20 numbers");
    }
    double extra = 0.0;
    if (is >> extra) throw ParseError("grid file: node line " + std::to_string(line_no) + " has extra values");
    values.push_back(row);
  }
  return std::make_shared<GridModel>(std::move(header), std::move(values), source);
}

ModelPtr load_grid_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file '" + path + "'");
  return read_grid_model(in, path);
}

void write_grid_file(std::ostream& out, const InitialDataModel& model, std::span<const double> radii, int n_theta,
                     int n_psi, int n_phi) {
  out << "aads-id 1\n";
  out << std::setprecision(17);
  out << "kappa=" << model.constants().kappa() << "\n";
  out << "tau=" << model.decay_order() << "\n";
  out << "grid=" << radii.size() << " " << n_theta << " " << n_psi << " " << n_phi << "\n";
  out << "radii=";
  for (std::size_t i = 0; i < radii.size(); ++i) out << (i ? " " : "") << radii[i];
  out << "\n";
  const std::vector<double> th = theta_nodes(n_theta);
  const std::vector<double> ps = theta_nodes(n_psi);
  const std::vector<double> ph = phi_nodes(n_phi);
  const auto& order = grid_component_order();
  for (double r : radii)
    for (double t : th)
      for (double s : ps)
        for (double f : ph) {
          const SlicePoint p{r, t, s, f};
          const SymTensor a = model.a(p);
          const SymTensor h = model.h(p);
          for (std::size_t c = 0; c < order.size(); ++c) {
            out << (c ? " " : "") << a(order[c].first - 1, order[c].second - 1);
          }
          for (const auto& [i, j] : order) out << " " << h(i - 1, j - 1);
          out << "\n";
        }
}

ModelPtr model_registry(const std::string& name, const nlohmann::json& params) {
  if (!params.is_object() && !params.is_null()) throw ParseError("model params must be a JSON object");
  const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  const ModelConstants k(json_number(p, "kappa", 1.0));
  ModelPtr model;
  if (name == "ads_exact") {
    model = std::make_shared<AdsExactModel>(k);
  } else if (name == "radial_bump") {
    model = std::make_shared<RadialBumpModel>(k, json_number(p, "m", 0.1), json_number(p, "sigma", 4.0),
                                              json_string(p, "profile", "one"));
  } else if (name == "offdiag_momentum") {
    const double axis = json_number(p, "axis", 2.0);
    if (axis != std::floor(axis)) throw ParseError("offdiag_momentum: axis must be an integer");
    model = std::make_shared<OffdiagMomentumModel>(k, json_number(p, "q", 0.1), static_cast<int>(axis),
                                                   json_string(p, "profile", "sin_theta"),
                                                   json_number(p, "sigma", 4.0));
  } else if (name == "grid") {
    if (!p.contains("file")) throw ParseError("grid model requires params.file");
    model = load_grid_model(json_string(p, "file", ""));
  } else if (name == "mix") {
    if (!p.contains("components") || !p.at("components").is_array()) {
      throw ParseError("mix model requires params.components array");
    }
    std::vector<ModelPtr> parts;
    for (const nlohmann::json& c : p.at("components")) parts.push_back(model_from_json(c));
    model = std::make_shared<MixModel>(std::move(parts));
  } else {
    throw ParseError("unknown model name '" + name + "'");
  }
  const std::string deriv = json_string(p, "derivatives", "analytic");
  if (deriv == "fd") {
    model->set_derivative_mode(DerivativeMode::kFiniteDifference);
  } else if (deriv != "analytic") {
    throw ParseError("derivatives must be 'analytic' or 'fd'");
  }
  if (p.contains("fd_step")) model->set_fd_step(json_number(p, "fd_step", 1e-4));
  return model;
}

ModelPtr model_from_json(const nlohmann::json& config) {
  if (!config.is_object() || !config.contains("name") || !config.at("name").is_string()) {
    throw ParseError("model config must be an object with a string 'name'");
  }
  return model_registry(config.at("name").get<std::string>(),
                        config.contains("params") ? config.at("params") : nlohmann::json::object());
}

std::array<SymTensor, 4> covariant_derivative_a(const InitialDataModel& model, const SlicePoint& p) {
  const ModelConstants& k = model.constants();
  const ConnectionCoefficients w = spin_connection(p, k);
  const SymTensor a = model.a(p);
  const TensorPartials d = model.a_partials(p);
  std::array<SymTensor, 4> out;
  for (int c = 1; c <= 4; ++c) {
    SymTensor cov = d[static_cast<std::size_t>(c - 1)] / frame_scale(c, p, k);
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        double corr = 0.0;
        for (int m = 1; m <= 4; ++m) corr += w(m, i, c) * a(m - 1, j - 1) + w(m, j, c) * a(i - 1, m - 1);
        cov(i - 1, j - 1) -= corr;
      }
    }
    out[static_cast<std::size_t>(c - 1)] = cov;
  }
  return out;
}

AspectValues aspects(const InitialDataModel& model, const SlicePoint& p) {
  AspectValues out;
  out.a = model.a(p);
  out.h = model.h(p);
  out.trace_a = out.a.trace();
  out.trace_h = out.h.trace();
  const std::array<SymTensor, 4> cov = covariant_derivative_a(model, p);
  const SymTensor g = SymTensor::Identity() + out.a;
  const double kappa = model.constants().kappa();
  for (int i = 0; i < 4; ++i) {
    double divergence = 0.0;
    for (int j = 0; j < 4; ++j) divergence += cov[static_cast<std::size_t>(j)](i, j);
    const double trace_gradient = cov[static_cast<std::size_t>(i)].trace();
    out.divergence_term[static_cast<std::size_t>(i)] = divergence - trace_gradient;
    out.mass[static_cast<std::size_t>(i)] =
        divergence - trace_gradient - kappa * (out.a(0, i) - g(0, i) * out.trace_a);
  }
  out.momentum = out.h - g * out.trace_h;
  return out;
}

std::array<double, 4> mass_aspect(const InitialDataModel& model, const SlicePoint& p) {
  return aspects(model, p).mass;
}

Eigen::Matrix4d momentum_aspect(const InitialDataModel& model, const SlicePoint& p) {
  const SymTensor h = model.h(p);
  const SymTensor g = SymTensor::Identity() + model.a(p);
  return h - g * h.trace();
}

DecayReport decay_validate(const InitialDataModel& model, std::span<const double> kappa_radii, int n_angular) {
  if (kappa_radii.size() < 3) throw DomainError("decay_validate: at least three radii required");
  const double kappa = model.constants().kappa();
  DecayReport report;
  report.tau = model.decay_order();
  report.radii.assign(kappa_radii.begin(), kappa_radii.end());
  const int n_phi = n_angular % 2 == 0 ? n_angular : n_angular + 1;
  const std::vector<SphereNode> nodes = sphere_grid(n_angular, n_angular, n_phi);

  DecayFieldReport fa{"a", {}, 0.0, false, false};
  DecayFieldReport fg{"grad_a", {}, 0.0, false, false};
  DecayFieldReport fh{"h", {}, 0.0, false, false};
  for (double kr : kappa_radii) {
    double na = 0.0;
    double ng = 0.0;
    double nh = 0.0;
    for (const SphereNode& node : nodes) {
      const SlicePoint p{kr / kappa, node.theta, node.psi, node.phi};
      na = std::max(na, model.a(p).cwiseAbs().maxCoeff());
      nh = std::max(nh, model.h(p).cwiseAbs().maxCoeff());
      for (const SymTensor& c : covariant_derivative_a(model, p)) ng = std::max(ng, c.cwiseAbs().maxCoeff());
    }
    fa.norms.push_back(na);
    fg.norms.push_back(ng);
    fh.norms.push_back(nh);
  }
  const bool tau_ok = report.tau > 2.0;
  report.pass = tau_ok;
  for (DecayFieldReport* f : {&fa, &fg, &fh}) {
    // Least-squares slope of log‖·‖ against κr over the radii with nonzero norms.
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < f->norms.size(); ++i) {
      if (f->norms[i] > 0.0) {
        xs.push_back(kappa_radii[i]);
        ys.push_back(std::log(f->norms[i]));
      }
    }
    if (xs.size() < 2) {
      f->vacuous = true;
      f->pass = tau_ok;
    } else {
      const double n = static_cast<double>(xs.size());
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      f->sigma_hat = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
      f->pass = tau_ok && f->sigma_hat >= report.tau - 0.1;
    }
    report.pass = report.pass && f->pass;
    report.fields.push_back(*f);
  }
  return report;
}

}  // namespace aads
