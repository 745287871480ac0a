#include "aads/killing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aads {
namespace {

constexpr double kPoleTolerance = 1e-12;

const std::vector<KillingLabel>& labels_storage() {
  static const std::vector<KillingLabel> labels = {
      {5, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {1, 5}, {2, 5}, {3, 5},
      {4, 5}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
  };
  return labels;
}

// Orientation relative to the tabulated representative: +1, −1.
int canonicalize(const KillingLabel& in, KillingLabel& out) {
  for (const KillingLabel& l : labels_storage()) {
    if (l.alpha == in.alpha && l.beta == in.beta) {
      out = l;
      return 1;
    }
    if (l.alpha == in.beta && l.beta == in.alpha) {
      out = l;
      return -1;
    }
  }
  throw InvalidIndexError("unknown Killing label " + in.str());
}

void require(bool ok, const KillingLabel& l, const SlicePoint& p) {
  if (!ok) {
    throw DegenerateCoordinateError("Killing vector U" + l.str() + " singular at " + p.str());
  }
}

bool off_zero(double v) { return std::abs(v) >= kPoleTolerance; }

// Tabulated field on the t = 0 slice for a canonical label.
CoordVector tabulated_field(const KillingLabel& l, const SlicePoint& p, const ModelConstants& k) {
  const double kinv = 1.0 / k.kappa();
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double sp = std::sin(p.psi);
  const double cp = std::cos(p.psi);
  const double sf = std::sin(p.phi);
  const double cf = std::cos(p.phi);
  const double kr = k.kappa() * p.r;
  CoordVector u{};

  if (l.alpha == 5 && l.beta == 0) {
    u[0] = kinv;
    return u;
  }
  if (l.beta == 5) {
    const double th = std::tanh(kr);
    switch (l.alpha) {
      case 1: u[0] = kinv * th * st * sp * cf; break;
      case 2: u[0] = kinv * th * st * sp * sf; break;
      case 3: u[0] = kinv * th * st * cp; break;
      case 4: u[0] = kinv * th * ct; break;
      default: break;
    }
    return u;
  }
  if (l.beta == 0) {
    require(p.r > 0.0, l, p);
    const double coth = 1.0 / std::tanh(kr);
    switch (l.alpha) {
      case 1:
        require(off_zero(st) && off_zero(sp), l, p);
        u[1] = kinv * st * sp * cf;
        u[2] = coth * ct * sp * cf;
        u[3] = coth * cp * cf / st;
        u[4] = -coth * sf / (st * sp);
        break;
      case 2:
        require(off_zero(st) && off_zero(sp), l, p);
        u[1] = kinv * st * sp * sf;
        u[2] = coth * ct * sp * sf;
        u[3] = coth * cp * sf / st;
        u[4] = coth * cf / (st * sp);
        break;
      case 3:
        require(off_zero(st), l, p);
        u[1] = kinv * st * cp;
        u[2] = coth * ct * cp;
        u[3] = -coth * sp / st;
        break;
      case 4:
        u[1] = kinv * ct;
        u[2] = -coth * st;
        break;
      default: break;
    }
    return u;
  }
  // Rotations U_{ij}, i < j ≤ 4.
  const int key = 10 * l.alpha + l.beta;
  switch (key) {
    case 12:
      u[4] = 1.0;
      break;
    case 13:
      require(off_zero(sp), l, p);
      u[3] = -cf;
      u[4] = cp * sf / sp;
      break;
    case 14:
      require(off_zero(st) && off_zero(sp), l, p);
      u[2] = -sp * cf;
      u[3] = -ct * cp * cf / st;
      u[4] = ct * sf / (st * sp);
      break;
    case 23:
      require(off_zero(sp), l, p);
      u[3] = -sf;
      u[4] = -cp * cf / sp;
      break;
    case 24:
      require(off_zero(st) && off_zero(sp), l, p);
      u[2] = -sp * sf;
      u[3] = -ct * cp * sf / st;
      u[4] = -ct * cf / (st * sp);
      break;
    case 34:
      require(off_zero(st), l, p);
      u[2] = -cp;
      u[3] = ct * sp / st;
      break;
    default:
      throw InvalidIndexError("unknown Killing label " + l.str());
  }
  return u;
}

CoordVector scaled(const CoordVector& v, double s) {
  CoordVector out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = s * v[i];
  return out;
}

CoordVector combine(const CoordVector& a, double ca, const CoordVector& b, double cb) {
  CoordVector out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

}  // namespace

KillingLabel KillingLabel::make(int alpha, int beta) {
  if (alpha < 0 || alpha > 5 || beta < 0 || beta > 5 || alpha == beta) {
    throw InvalidIndexError("KillingLabel: need 0 <= alpha != beta <= 5");
  }
  return {alpha, beta};
}

KillingLabel KillingLabel::parse(const std::string& text) {
  std::istringstream is(text);
  int a = -1;
  int b = -1;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',') {
    throw ParseError("KillingLabel: expected 'a,b', got '" + text + "'");
  }
  return make(a, b);
}

std::string KillingLabel::str() const { return std::to_string(alpha) + std::to_string(beta); }

const std::vector<KillingLabel>& killing_labels() { return labels_storage(); }

CoordVector killing_vector_coord(const KillingLabel& label, const SlicePoint& p, const ModelConstants& k) {
  KillingLabel canon;
  const int sign = canonicalize(label, canon);
  return scaled(tabulated_field(canon, p, k), sign);
}

CoordVector killing_vector_coord(const KillingLabel& label, const SpacetimePoint& p, const ModelConstants& k) {
  KillingLabel canon;
  const int sign = canonicalize(label, canon);
  const bool boost = canon.beta == 0 && canon.alpha != 5;
  const bool translation = canon.beta == 5;
  if (!boost && !translation) return scaled(tabulated_field(canon, p.x, k), sign);
  const double c = std::cos(k.kappa() * p.t);
  const double s = std::sin(k.kappa() * p.t);
  const CoordVector u_i0 = tabulated_field({canon.alpha, 0}, p.x, k);
  const CoordVector u_i5 = tabulated_field({canon.alpha, 5}, p.x, k);
  // U_{i0}(t) = cos κt U_{i0} − sin κt U_{i5};  U_{i5}(t) = cos κt U_{i5} + sin κt U_{i0}.
  const CoordVector v = boost ? combine(u_i0, c, u_i5, -s) : combine(u_i5, c, u_i0, s);
  return scaled(v, sign);
}

FrameVector killing_vector_frame(const KillingLabel& label, const SlicePoint& p, const ModelConstants& k) {
  const CoordVector u = killing_vector_coord(label, p, k);
  FrameVector out{};
  out[0] = time_scale(p, k) * u[0];
  for (int a = 1; a <= 4; ++a) {
    const auto i = static_cast<std::size_t>(a);
    out[i] = u[i] == 0.0 ? 0.0 : frame_scale_unchecked(a, p, k) * u[i];
  }
  return out;
}

std::array<double, 5> ads_metric_diagonal(const SpacetimePoint& p, const ModelConstants& k) {
  const double kr = k.kappa() * p.x.r;
  const double s = std::sinh(kr) / k.kappa();
  const double st = std::sin(p.x.theta);
  const double sp = std::sin(p.x.psi);
  const double ch = std::cosh(kr);
  return {-ch * ch, 1.0, s * s, s * s * st * st, s * s * st * st * sp * sp};
}

double killing_residual(const KillingLabel& label, const SpacetimePoint& p, double h, const ModelConstants& k) {
  if (!(h > 0.0)) throw DomainError("killing_residual: step must be positive");
  const std::array<double, 5> g = ads_metric_diagonal(p, k);
  const CoordVector u = killing_vector_coord(label, p, k);
  // du[rho][mu] = ∂_rho U^mu; dg[rho][mu] = ∂_rho g_{mu mu}.
  std::array<CoordVector, 5> du{};
  std::array<std::array<double, 5>, 5> dg{};
  for (int rho = 0; rho < 5; ++rho) {
    const SpacetimePoint plus = p.shifted(rho, h);
    const SpacetimePoint minus = p.shifted(rho, -h);
    const CoordVector up = killing_vector_coord(label, plus, k);
    const CoordVector um = killing_vector_coord(label, minus, k);
    const std::array<double, 5> gp = ads_metric_diagonal(plus, k);
    const std::array<double, 5> gm = ads_metric_diagonal(minus, k);
    for (std::size_t mu = 0; mu < 5; ++mu) {
      du[static_cast<std::size_t>(rho)][mu] = (up[mu] - um[mu]) / (2.0 * h);
      dg[static_cast<std::size_t>(rho)][mu] = (gp[mu] - gm[mu]) / (2.0 * h);
    }
  }
  double worst = 0.0;
  for (std::size_t mu = 0; mu < 5; ++mu) {
    for (std::size_t nu = mu; nu < 5; ++nu) {
      double lie = g[nu] * du[mu][nu] + g[mu] * du[nu][mu];
      if (mu == nu) {
        for (std::size_t rho = 0; rho < 5; ++rho) lie += u[rho] * dg[rho][mu];
      }
      worst = std::max(worst, std::abs(lie) / std::sqrt(std::abs(g[mu] * g[nu])));
    }
  }
  return worst;
}

CoordVector lie_bracket(const KillingLabel& a, const KillingLabel& b, const SpacetimePoint& p, double h,
                        const ModelConstants& k) {
  const CoordVector ua = killing_vector_coord(a, p, k);
  const CoordVector ub = killing_vector_coord(b, p, k);
  CoordVector out{};
  for (int rho = 0; rho < 5; ++rho) {
    const SpacetimePoint plus = p.shifted(rho, h);
    const SpacetimePoint minus = p.shifted(rho, -h);
    const CoordVector da = combine(killing_vector_coord(a, plus, k), 1.0 / (2.0 * h),
                                   killing_vector_coord(a, minus, k), -1.0 / (2.0 * h));
    const CoordVector db = combine(killing_vector_coord(b, plus, k), 1.0 / (2.0 * h),
                                   killing_vector_coord(b, minus, k), -1.0 / (2.0 * h));
    const auto r = static_cast<std::size_t>(rho);
    for (std::size_t mu = 0; mu < 5; ++mu) out[mu] += ua[r] * db[mu] - ub[r] * da[mu];
  }
  return out;
}

}  // namespace aads
