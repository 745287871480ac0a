#include "aads/charges.hpp"

#include <cmath>

#include "aads/errors.hpp"
#include "aads/killing.hpp"

namespace aads {
namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs = {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

std::size_t pair_index(int a, int b) {
  for (std::size_t i = 0; i < kPairs.size(); ++i) {
    if (kPairs[i].first == a && kPairs[i].second == b) return i;
  }
  throw InvalidIndexError("J index pair out of range");
}

double charge_prefactor(std::size_t index, double kappa) {
  return index < 5 ? kappa / (16.0 * M_PI) : kappa / (8.0 * M_PI);
}

}  // namespace

const std::array<std::string, 15>& charge_names() {
  static const std::array<std::string, 15> names = {"e0",  "c1",  "c2",  "c3",  "c4",  "cp1", "cp2", "cp3",
                                                    "cp4", "j12", "j13", "j14", "j23", "j24", "j34"};
  return names;
}

double ChargeSet::J(int a, int b) const {
  if (a < 1 || a > 4 || b < 1 || b > 4) throw InvalidIndexError("J indices must lie in 1..4");
  if (a == b) return 0.0;
  if (a < b) return j[pair_index(a, b)];
  return -j[pair_index(b, a)];
}

void ChargeSet::set_J(int a, int b, double value) {
  if (a < 1 || a > 4 || b < 1 || b > 4 || a == b) throw InvalidIndexError("J indices must be distinct in 1..4");
  if (a < b) {
    j[pair_index(a, b)] = value;
  } else {
    j[pair_index(b, a)] = -value;
  }
}

std::array<double, 15> ChargeSet::values() const {
  std::array<double, 15> v{};
  v[0] = e0;
  for (std::size_t i = 0; i < 4; ++i) {
    v[1 + i] = c[i];
    v[5 + i] = cp[i];
  }
  for (std::size_t i = 0; i < 6; ++i) v[9 + i] = j[i];
  return v;
}

ChargeSet ChargeSet::from_values(const std::array<double, 15>& v) {
  ChargeSet cs;
  cs.e0 = v[0];
  for (std::size_t i = 0; i < 4; ++i) {
    cs.c[i] = v[1 + i];
    cs.cp[i] = v[5 + i];
  }
  for (std::size_t i = 0; i < 6; ++i) cs.j[i] = v[9 + i];
  return cs;
}

bool ChargeSet::any_divergent() const {
  for (const ChargeDiagnostic& d : diagnostics) {
    if (d.limit.divergent) return true;
  }
  return false;
}

bool ChargeSet::quadrature_converged() const {
  for (const ChargeDiagnostic& d : diagnostics) {
    if (!d.quadrature_converged) return false;
  }
  return true;
}

nlohmann::ordered_json to_json(const QuadratureSpec& q) {
  return {{"ntheta", q.n_theta}, {"npsi", q.n_psi}, {"nphi", q.n_phi},
          {"radii_kappa_r", q.radii}, {"rtol", q.rel_tol}, {"refine", q.refine}};
}

nlohmann::ordered_json to_json(const ChargeSet& cs) {
  nlohmann::ordered_json out;
  out["e0"] = cs.e0;
  out["c"] = cs.c;
  out["cp"] = cs.cp;
  nlohmann::ordered_json jj;
  for (std::size_t i = 0; i < kPairs.size(); ++i) {
    jj[std::to_string(kPairs[i].first) + std::to_string(kPairs[i].second)] = cs.j[i];
  }
  out["j"] = jj;
  nlohmann::ordered_json diag = nlohmann::ordered_json::object();
  for (const ChargeDiagnostic& d : cs.diagnostics) {
    diag[d.name] = {{"values", d.values},
                    {"limit", d.limit.limit},
                    {"residual", d.limit.residual},
                    {"beta", d.limit.beta},
                    {"scheme", to_string(d.limit.scheme)},
                    {"divergent", d.limit.divergent},
                    {"quadrature_converged", d.quadrature_converged}};
  }
  out["diagnostics"] = diag;
  if (!cs.config.is_null()) out["config"] = cs.config;
  return out;
}

ChargeSet charge_set_from_json(const nlohmann::json& in) {
  if (!in.is_object()) throw ParseError("charge set must be a JSON object");
  auto number = [](const nlohmann::json& v, const std::string& what) {
    if (!v.is_number()) throw ParseError("charge '" + what + "' must be a number");
    return v.get<double>();
  };
  ChargeSet cs;
  if (in.contains("e0")) cs.e0 = number(in.at("e0"), "e0");
  for (const char* key : {"c", "cp"}) {
    if (!in.contains(key)) continue;
    const nlohmann::json& arr = in.at(key);
    if (!arr.is_array() || arr.size() != 4) throw ParseError(std::string("'") + key + "' must have 4 entries");
    std::array<double, 4>& dst = std::string(key) == "c" ? cs.c : cs.cp;
    for (std::size_t i = 0; i < 4; ++i) dst[i] = number(arr[i], key);
  }
  if (in.contains("j")) {
    const nlohmann::json& jj = in.at("j");
    if (!jj.is_object()) throw ParseError("'j' must be an object keyed 12..34");
    for (const auto& [key, value] : jj.items()) {
      if (key.size() != 2) throw ParseError("bad J key '" + key + "'");
      cs.set_J(key[0] - '0', key[1] - '0', number(value, "j" + key));
    }
  }
  if (in.contains("config")) cs.config = in.at("config");
  return cs;
}

Eigen::VectorXd charge_integrand(const InitialDataModel& model, const SlicePoint& p) {
  const ModelConstants& k = model.constants();
  const AspectValues asp = aspects(model, p);
  const double e1 = asp.mass[0];
  auto frame = [&](int a, int b) { return killing_vector_frame(KillingLabel::make(a, b), p, k); };
  // Σ_{k=2..4} 𝒫_{k1} U^{(k)}
  auto momentum_contraction = [&](const FrameVector& u) {
    double s = 0.0;
    for (int m = 2; m <= 4; ++m) s += asp.momentum(m - 1, 0) * u[static_cast<std::size_t>(m)];
    return s;
  };
  Eigen::VectorXd out(15);
  out[0] = e1 * frame(5, 0)[0];
  for (int i = 1; i <= 4; ++i) out[i] = e1 * frame(i, 5)[0];
  for (int i = 1; i <= 4; ++i) out[4 + i] = momentum_contraction(frame(i, 0));
  for (std::size_t n = 0; n < kPairs.size(); ++n) {
    out[static_cast<Eigen::Index>(9 + n)] = momentum_contraction(frame(kPairs[n].first, kPairs[n].second));
  }
  return out;
}

ChargeSet compute_charges(const InitialDataModel& model, const QuadratureSpec& q, RadialScheme scheme) {
  const QuadratureSpec spec = model.native_grid().value_or(q);
  spec.validate();
  const ModelConstants& k = model.constants();
  const double kappa = k.kappa();

  std::vector<double> radii;
  std::array<std::vector<double>, 15> series;
  std::array<bool, 15> converged{};
  converged.fill(true);
  double scale = 0.0;
  for (double kr : spec.radii) {
    const double r = kr / kappa;
    radii.push_back(r);
    const SurfaceIntegral<double> s = surface_integrate<double>(
        [&](const SlicePoint& p) { return charge_integrand(model, p); }, 15, r, spec, k);
    for (std::size_t c = 0; c < 15; ++c) {
      const auto i = static_cast<Eigen::Index>(c);
      const double pre = charge_prefactor(c, kappa);
      series[c].push_back(pre * s.refined[i]);
      converged[c] = converged[c] && s.converged[c];
      scale = std::max(scale, pre * s.magnitude[i]);
    }
  }

  // Charges whose samples sit at rounding level relative to the largest integrand are zero.
  const double noise_floor = 1e-12 * scale;
  std::array<double, 15> limits{};
  ChargeSet cs;
  for (std::size_t c = 0; c < 15; ++c) {
    ChargeDiagnostic d;
    d.name = charge_names()[c];
    d.values = series[c];
    d.limit = radial_limit(radii, series[c], k, spec.rel_tol, scheme, noise_floor);
    d.quadrature_converged = converged[c];
    limits[c] = d.limit.limit;
    cs.diagnostics.push_back(std::move(d));
  }
  std::vector<ChargeDiagnostic> diag = std::move(cs.diagnostics);
  cs = ChargeSet::from_values(limits);
  cs.diagnostics = std::move(diag);
  cs.config = {{"model", model.config()}, {"quadrature", to_json(spec)}, {"scheme", to_string(scheme)}};
  return cs;
}

DerivedCharges derived(const ChargeSet& cs) {
  DerivedCharges d;
  d.j_hat = {cs.J(2, 3), -cs.J(1, 3), cs.J(1, 2)};
  d.j4 = {cs.J(1, 4), cs.J(2, 4), cs.J(3, 4)};
  d.c = {cs.c[0], cs.c[1], cs.c[2]};
  d.cp = {cs.cp[0], cs.cp[1], cs.cp[2]};
  d.c4 = cs.c[3];
  d.cp4 = cs.cp[3];
  auto sq = [](const std::array<double, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
  d.l2 = 2.0 * (sq(d.c) + sq(d.j_hat) + d.cp4 * d.cp4);
  d.a = d.c4 * d.c4 + d.cp4 * d.cp4 + sq(d.c) + sq(d.cp) + sq(d.j_hat) + sq(d.j4);
  return d;
}

}  // namespace aads
