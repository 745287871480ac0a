#include "aads/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>

namespace aads {
namespace {

constexpr double kPoleTolerance = 1e-12;

}  // namespace

ModelConstants::ModelConstants(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("ModelConstants: kappa must be positive and finite");
  }
}

double SlicePoint::coord(int axis) const {
  switch (axis) {
    case 1: return r;
    case 2: return theta;
    case 3: return psi;
    case 4: return phi;
    default: throw InvalidIndexError("SlicePoint::coord: axis outside 1..4");
  }
}

SlicePoint SlicePoint::shifted(int axis, double h) const {
  SlicePoint out = *this;
  switch (axis) {
    case 1: out.r += h; break;
    case 2: out.theta += h; break;
    case 3: out.psi += h; break;
    case 4: out.phi += h; break;
    default: throw InvalidIndexError("SlicePoint::shifted: axis outside 1..4");
  }
  return out;
}

std::string SlicePoint::str() const {
  std::ostringstream os;
  os << std::setprecision(17) << "(r=" << r << ", theta=" << theta << ", psi=" << psi
     << ", phi=" << phi << ")";
  return os.str();
}

double SpacetimePoint::coord(int mu) const { return mu == 0 ? t : x.coord(mu); }

SpacetimePoint SpacetimePoint::shifted(int mu, double h) const {
  SpacetimePoint out = *this;
  if (mu == 0) {
    out.t += h;
  } else {
    out.x = x.shifted(mu, h);
  }
  return out;
}

double frame_scale_unchecked(int axis, const SlicePoint& p, const ModelConstants& k) {
  const double s = std::sinh(k.kappa() * p.r) / k.kappa();
  switch (axis) {
    case 1: return 1.0;
    case 2: return s;
    case 3: return s * std::sin(p.theta);
    case 4: return s * std::sin(p.theta) * std::sin(p.psi);
    default: throw InvalidIndexError("frame_scale: axis outside 1..4");
  }
}

double frame_scale(int axis, const SlicePoint& p, const ModelConstants& k) {
  const double v = frame_scale_unchecked(axis, p, k);
  if (axis > 1 && std::abs(v) < kPoleTolerance) {
    throw DegenerateCoordinateError("frame_scale: degenerate coordinates at " + p.str());
  }
  return v;
}

double time_scale(const SlicePoint& p, const ModelConstants& k) { return std::cosh(k.kappa() * p.r); }

double sphere_measure_density(const SlicePoint& p, const ModelConstants& k) {
  if (!(p.r > 0.0)) throw DomainError("sphere_measure_density: r must be positive");
  const double s = std::sinh(k.kappa() * p.r) / k.kappa();
  const double st = std::sin(p.theta);
  return s * s * s * st * st * std::sin(p.psi);
}

std::size_t ConnectionCoefficients::index(int a, int b, int c) {
  if (a < 1 || a > 4 || b < 1 || b > 4 || c < 1 || c > 4) {
    throw InvalidIndexError("ConnectionCoefficients: index outside 1..4");
  }
  return static_cast<std::size_t>(16 * (a - 1) + 4 * (b - 1) + (c - 1));
}

ConnectionCoefficients spin_connection(const SlicePoint& p, const ModelConstants& k) {
  const double kap = k.kappa();
  const double st = std::sin(p.theta);
  const double sp = std::sin(p.psi);
  if (!(p.r > 0.0) || std::abs(st) < kPoleTolerance || std::abs(sp) < kPoleTolerance) {
    throw DegenerateCoordinateError("spin_connection: degenerate coordinates at " + p.str());
  }
  const double s = std::sinh(kap * p.r) / kap;
  const double radial = kap / std::tanh(kap * p.r);
  const double polar = std::cos(p.theta) / (st * s);
  const double azimuthal = std::cos(p.psi) / (sp * st * s);

  // Warped product dr² + s² dσ²: ∇_{ĕ_a} ĕ₁ = κ coth(κr) ĕ_a, plus the round S³ terms.
  ConnectionCoefficients w;
  for (int a = 2; a <= 4; ++a) {
    w(a, 1, a) = radial;
    w(1, a, a) = -radial;
  }
  for (int a = 3; a <= 4; ++a) {
    w(a, 2, a) = polar;
    w(2, a, a) = -polar;
  }
  w(4, 3, 4) = azimuthal;
  w(3, 4, 4) = -azimuthal;
  return w;
}

double torsion_residual(const SlicePoint& p, const ModelConstants& k, double h) {
  // Coframe e^a = scale_a dx^a is diagonal in coordinates.
  auto coframe = [&k](const SlicePoint& q, int a) { return frame_scale(a, q, k); };
  const ConnectionCoefficients w = spin_connection(p, k);
  double worst = 0.0;
  for (int a = 1; a <= 4; ++a) {
    for (int mu = 1; mu <= 4; ++mu) {
      for (int nu = mu + 1; nu <= 4; ++nu) {
        // (de^a)_{μν} = ∂_μ E^a_ν − ∂_ν E^a_μ; only E^a_a is nonzero.
        double de = 0.0;
        if (nu == a) {
          de += (coframe(p.shifted(mu, h), a) - coframe(p.shifted(mu, -h), a)) / (2.0 * h);
        }
        if (mu == a) {
          de -= (coframe(p.shifted(nu, h), a) - coframe(p.shifted(nu, -h), a)) / (2.0 * h);
        }
        // (ω^a_b ∧ e^b)_{μν} = ω^a_b(∂_μ) E^b_ν − ω^a_b(∂_ν) E^b_μ with ω^a_b(∂_μ) = ω_{ab μ} E^μ_μ.
        const double wedge = w(a, nu, mu) * coframe(p, mu) * coframe(p, nu) -
                             w(a, mu, nu) * coframe(p, nu) * coframe(p, mu);
        worst = std::max(worst, std::abs(de + wedge));
      }
    }
  }
  return worst;
}

double metric_compatibility_residual(const ConnectionCoefficients& w) {
  double worst = 0.0;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) worst = std::max(worst, std::abs(w(a, b, c) + w(b, a, c)));
  return worst;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = wgt;
    rule.weights[hi] = wgt;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

void QuadratureSpec::validate() const {
  if (n_theta < 4 || n_psi < 4) throw DomainError("QuadratureSpec: ntheta and npsi must be >= 4");
  if (n_phi < 4 || n_phi % 2 != 0) throw DomainError("QuadratureSpec: nphi must be even and >= 4");
  if (radii.size() < 3) throw DomainError("QuadratureSpec: at least three radii required");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw DomainError("QuadratureSpec: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw DomainError("QuadratureSpec: radii must be strictly increasing");
    }
  }
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec out = *this;
  out.n_theta *= 2;
  out.n_psi *= 2;
  out.n_phi *= 2;
  out.refine = false;
  return out;
}

std::vector<double> theta_nodes(int n) {
  const GaussLegendreRule rule = gauss_legendre(n);
  std::vector<double> out(rule.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
  return out;
}

std::vector<double> phi_nodes(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / n;
  return out;
}

std::vector<SphereNode> sphere_grid(int n_theta, int n_psi, int n_phi) {
  const GaussLegendreRule rt = gauss_legendre(n_theta);
  const GaussLegendreRule rp = gauss_legendre(n_psi);
  const std::vector<double> th = theta_nodes(n_theta);
  const std::vector<double> ps = theta_nodes(n_psi);
  const std::vector<double> ph = phi_nodes(n_phi);
  const double half_pi = 0.5 * std::numbers::pi;
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  std::vector<SphereNode> nodes;
  nodes.reserve(th.size() * ps.size() * ph.size());
  for (std::size_t i = 0; i < th.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j)
      for (std::size_t l = 0; l < ph.size(); ++l)
        nodes.push_back({th[i], ps[j], ph[l], half_pi * rt.weights[i] * half_pi * rp.weights[j] * wphi});
  return nodes;
}

template <>
bool SurfaceIntegral<double>::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

template <>
bool SurfaceIntegral<std::complex<double>>::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

std::string to_string(RadialScheme s) {
  return s == RadialScheme::kThreePoint ? "three-point" : "ladder";
}

RadialScheme radial_scheme_from_string(const std::string& s) {
  if (s == "three-point") return RadialScheme::kThreePoint;
  if (s == "ladder") return RadialScheme::kExponentialLadder;
  throw ParseError("unknown radial extrapolation scheme '" + s + "'");
}

bool RadialLimit::converged(double rel_tol) const {
  return !divergent && residual <= rel_tol * std::max(1.0, std::abs(limit));
}

namespace {

// L for v = L + b e^{-β x} through three points; nullopt-like flag when the
// differences do not form a decaying geometric pattern.
bool three_point(double x1, double x2, double x3, double v1, double v2, double v3, double& limit,
                 double& beta) {
  const double d1 = v2 - v1;
  const double d2 = v3 - v2;
  if (d1 == 0.0 || d2 == 0.0) return false;
  const double ratio = d2 / d1;
  if (!(ratio > 0.0 && ratio < 1.0)) return false;
  const double h1 = x2 - x1;
  const double h2 = x3 - x2;
  if (std::abs(h1 - h2) <= 1e-12 * std::max(h1, h2)) {
    beta = -std::log(ratio) / h1;
  } else {
    // Solve (e^{-β h2} (1 − e^{-β h2}))... by bisection on g(β) = (1−e^{−βh2})e^{−βh1}/(1−e^{−βh1}) − ratio.
    auto g = [&](double b) {
      return (-std::expm1(-b * h2)) * std::exp(-b * h1) / (-std::expm1(-b * h1)) - ratio;
    };
    double lo = 1e-8;
    double hi = 200.0 / std::min(h1, h2);
    if (g(lo) * g(hi) > 0.0) return false;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
    }
    beta = 0.5 * (lo + hi);
  }
  // v3 − L = b e^{−β x3};  d2 = b e^{−β x3}(1 − e^{β h2}) ⇒ v3 − L = d2 / (1 − e^{β h2}).
  limit = v3 - d2 / (-std::expm1(beta * h2));
  return true;
}

// Neville evaluation at x = 0 of the interpolating polynomial through (x_i, v_i).
double neville_at_zero(std::vector<double> x, std::vector<double> v) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      v[i] = (x[i + level] * v[i] - x[i] * v[i + 1]) / (x[i + level] - x[i]);
    }
  }
  return v[0];
}

}  // namespace

RadialLimit radial_limit(std::span<const double> radii, std::span<const double> values,
                         const ModelConstants& k, double rel_tol, RadialScheme scheme,
                         double noise_floor) {
  if (radii.size() != values.size()) throw ContractViolation("radial_limit: size mismatch");
  if (radii.size() < 3) throw DomainError("radial_limit: at least three radii required");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("radial_limit: radii must be increasing");
  }
  (void)rel_tol;
  const std::size_t m = values.size();
  RadialLimit out;
  out.scheme = scheme;

  const double a1 = std::abs(values[m - 3]);
  const double a2 = std::abs(values[m - 2]);
  const double a3 = std::abs(values[m - 1]);
  if (a3 > noise_floor && a1 < a2 && a2 < a3 && a3 > 1.5 * a1) {
    out.divergent = true;
    out.limit = values[m - 1];
    out.residual = std::abs(values[m - 1] - values[m - 2]);
    return out;
  }
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak <= noise_floor) {
    out.limit = values[m - 1];
    out.residual = peak;
    return out;
  }

  const double kap = k.kappa();
  if (scheme == RadialScheme::kThreePoint) {
    auto estimate = [&](std::size_t end, double& limit, double& beta) {
      return three_point(kap * radii[end - 3], kap * radii[end - 2], kap * radii[end - 1],
                         values[end - 3], values[end - 2], values[end - 1], limit, beta);
    };
    double limit = 0.0;
    double beta = 0.0;
    if (!estimate(m, limit, beta)) {
      out.limit = values[m - 1];
      out.residual = std::abs(values[m - 1] - values[m - 2]);
      return out;
    }
    out.limit = limit;
    out.beta = beta;
    double prev = 0.0;
    double prev_beta = 0.0;
    if (m >= 4 && estimate(m - 1, prev, prev_beta)) {
      out.residual = std::abs(limit - prev);
    } else {
      out.residual = std::abs(values[m - 1] - limit);
    }
    return out;
  }

  // Ladder: the last (up to) five samples as a polynomial in x = e^{-κr}.
  const std::size_t n = std::min<std::size_t>(m, 5);
  std::vector<double> x;
  std::vector<double> v;
  for (std::size_t i = m - n; i < m; ++i) {
    x.push_back(std::exp(-kap * radii[i]));
    v.push_back(values[i]);
  }
  out.limit = neville_at_zero(x, v);
  const double lower = neville_at_zero({x.begin() + 1, x.end()}, {v.begin() + 1, v.end()});
  out.residual = std::abs(out.limit - lower);
  return out;
}

}  // namespace aads
