#include "aads/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "aads/errors.hpp"

namespace aads {
namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// ε_{ijk} a_i b_j c_k
double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// Σᵢ(c₄c′ᵢ − c′₄cᵢ)²
double mixed_square(const DerivedCharges& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = d.c4 * d.cp[i] - d.cp4 * d.c[i];
    s += t * t;
  }
  return s;
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

ComplexMatrix4 QMatrix::full() const {
  ComplexMatrix4 q;
  q.block<2, 2>(0, 0) = e;
  q.block<2, 2>(0, 2) = l;
  q.block<2, 2>(2, 0) = l.adjoint();
  q.block<2, 2>(2, 2) = e_hat;
  return q;
}

QMatrix assemble_q(const ChargeSet& cs) {
  const double e0 = cs.e0;
  const double c1 = cs.c[0], c2 = cs.c[1], c3 = cs.c[2], c4 = cs.c[3];
  const double p1 = cs.cp[0], p2 = cs.cp[1], p3 = cs.cp[2], p4 = cs.cp[3];
  const double j12 = cs.J(1, 2), j13 = cs.J(1, 3), j14 = cs.J(1, 4);
  const double j23 = cs.J(2, 3), j24 = cs.J(2, 4), j34 = cs.J(3, 4);
  QMatrix q;
  const Complex e12 = Complex(p1 - j14, p2 - j24);
  q.e << Complex(e0 + c4 + p3 - j34), e12, std::conj(e12), Complex(e0 + c4 - p3 + j34);
  const Complex eh12 = Complex(-p1 - j14, -p2 - j24);
  q.e_hat << Complex(e0 - c4 - p3 - j34), eh12, std::conj(eh12), Complex(e0 - c4 + p3 + j34);
  q.l << Complex(c3 - p4, j12), Complex(c1 + j13, c2 + j23), Complex(c1 - j13, -c2 + j23),
      Complex(-c3 - p4, -j12);
  return q;
}

PsdReport psd_check(const ComplexMatrix4& q) {
  const double norm = q.norm();
  if ((q - q.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, norm)) {
    throw ContractViolation("psd_check: matrix is not Hermitian");
  }
  PsdReport out;
  out.tolerance = 1e-10 * norm;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix4> solver(q, Eigen::EigenvaluesOnly);
  out.eigenvalues = solver.eigenvalues();
  out.min_eigenvalue = out.eigenvalues[0];
  out.psd = out.min_eigenvalue >= -out.tolerance;
  out.minors_nonnegative = true;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = q(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    const double minor = sub.determinant().real();
    out.principal_minors.push_back(minor);
    // A k×k minor scales like ‖Q‖^k.
    if (minor < -1e-10 * std::pow(norm, static_cast<double>(n))) out.minors_nonnegative = false;
  }
  return out;
}

std::string to_string(BoundVariant v) { return v == BoundVariant::kProof ? "proof" : "text"; }

BoundVariant bound_variant_from_string(const std::string& s) {
  if (s == "proof") return BoundVariant::kProof;
  if (s == "text" || s == "theorem-text") return BoundVariant::kText;
  throw ParseError("variant must be 'proof' or 'text'");
}

double BoundsReport::max_bound() const { return *std::max_element(b.begin(), b.end()); }

BoundsReport theorem_bounds(const ChargeSet& cs, BoundVariant variant) {
  const DerivedCharges d = derived(cs);
  BoundsReport out;
  out.variant = variant;
  out.e0 = cs.e0;
  out.a = d.a;
  out.l2 = d.l2;
  const Vec3 cxj = cross(d.c, d.j_hat);
  const double mixed = mixed_square(d);
  out.w = std::sqrt(mixed + dot(cxj, cxj));
  const double ncp = std::sqrt(dot(d.cp, d.cp));
  const double nj4 = std::sqrt(dot(d.j4, d.j4));
  const double sqrt2 = std::sqrt(2.0);

  out.b[0] = std::sqrt(d.c4 * d.c4 + d.l2 / 4.0);
  const double lead = variant == BoundVariant::kProof ? dot(d.cp, d.cp) : dot(d.c, d.c);
  out.b[1] = std::sqrt(0.5 * (lead + dot(d.j4, d.j4)) + d.l2 / 8.0);
  out.b[2] = std::sqrt(d.a + ncp * ncp + nj4 * nj4) - ncp - nj4;
  out.b4_radicand = d.a - 2.0 * sqrt2 * out.w;
  out.b[3] = std::sqrt(std::max(out.b4_radicand, 0.0));

  const Vec3 cxcp = cross(d.c, d.cp);
  const Vec3 cpxj = cross(d.cp, d.j_hat);
  const double j4cp = dot(d.j4, d.cp);
  const double j4j = dot(d.j4, d.j_hat);
  const double j4c = dot(d.j4, d.c);
  out.f = -8.0 * sqrt2 * out.w * d.a + 36.0 * dot(cxj, cxj) + 4.0 * dot(cxcp, cxcp) + 36.0 * mixed +
          4.0 * (j4cp * j4cp + j4j * j4j + j4c * j4c) + 4.0 * dot(cpxj, cpxj) +
          4.0 * dot(d.j4, d.j4) * (d.c4 * d.c4 + d.cp4 * d.cp4) + 8.0 * d.c4 * triple(d.c, d.j_hat, d.j4) +
          8.0 * d.cp4 * triple(d.cp, d.j_hat, d.j4);
  out.f_plus = std::max(out.f, 0.0);
  out.b[4] = std::sqrt(std::max(d.a - 4.0 * sqrt2 * out.w + std::sqrt(out.f_plus), 0.0));
  return out;
}

SecondMinorBounds second_minor_bounds(const ChargeSet& cs) {
  const DerivedCharges d = derived(cs);
  const double rot = dot(d.c, d.c) + dot(d.j_hat, d.j_hat);
  SecondMinorBounds out;
  out.first = std::sqrt(d.c4 * d.c4 + 0.5 * rot + 0.5 * d.cp4 * d.cp4);
  out.second = std::sqrt(0.5 * (dot(d.cp, d.cp) + dot(d.j4, d.j4)) + 0.25 * rot + 0.25 * d.cp4 * d.cp4);
  return out;
}

double third_minor_sum(const ChargeSet& cs) {
  const DerivedCharges d = derived(cs);
  const double e0 = cs.e0;
  return e0 * (e0 * e0 - d.a) + 2.0 * d.cp4 * dot(d.c, d.j4) + 2.0 * triple(d.c, d.cp, d.j_hat) -
         2.0 * d.c4 * dot(d.cp, d.j4);
}

double det_closed_form(const ChargeSet& cs) {
  const DerivedCharges d = derived(cs);
  const double e0 = cs.e0;
  const Vec3 cxcp = cross(d.c, d.cp);
  const Vec3 cxj = cross(d.c, d.j_hat);
  const Vec3 cpxj = cross(d.cp, d.j_hat);
  const double j4cp = dot(d.j4, d.cp);
  const double j4j = dot(d.j4, d.j_hat);
  const double j4c = dot(d.j4, d.c);
  double det = (e0 * e0 - d.a) * (e0 * e0 - d.a);
  det += 8.0 * e0 * (d.cp4 * j4c - d.c4 * j4cp) + 8.0 * e0 * triple(d.c, d.cp, d.j_hat);
  det -= 4.0 * dot(cxcp, cxcp) + 4.0 * dot(cxj, cxj) + 4.0 * dot(cpxj, cpxj) +
         4.0 * dot(d.j4, d.j4) * (d.c4 * d.c4 + d.cp4 * d.cp4);
  det -= 4.0 * mixed_square(d) + 4.0 * (j4cp * j4cp + j4j * j4j + j4c * j4c);
  det -= 8.0 * d.c4 * triple(d.c, d.j_hat, d.j4) + 8.0 * d.cp4 * triple(d.cp, d.j_hat, d.j4);
  return det;
}

std::string to_string(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::kRigid:
      return "rigid";
    case RigidityStatus::kViolated:
      return "violated";
    case RigidityStatus::kNotInDomain:
      break;
  }
  return "not in rigidity domain";
}

RigidityResult rigidity_check(const ChargeSet& cs, double tol, double tol_q) {
  RigidityResult out;
  const ComplexMatrix4 q = assemble_q(cs).full();
  out.q_norm = q.norm();
  if (cs.e0 > tol || !psd_check(q).psd) {
    out.status = RigidityStatus::kNotInDomain;
    return out;
  }
  const std::array<double, 15> v = cs.values();
  const bool all_vanish =
      std::all_of(v.begin(), v.end(), [tol_q](double x) { return std::abs(x) <= tol_q; });
  out.status = (out.q_norm <= tol_q && all_vanish) ? RigidityStatus::kRigid : RigidityStatus::kViolated;
  return out;
}

ChargeSet sample_psd_charge(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 15> v{};
  for (std::size_t i = 1; i < 15; ++i) v[i] = normal(gen);
  ChargeSet cs = ChargeSet::from_values(v);
  const double lambda_min =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix4>(assemble_q(cs).full(), Eigen::EigenvaluesOnly).eigenvalues()[0];
  const double delta = index % 2 == 0 ? 0.0 : std::abs(normal(gen));
  cs.e0 = -lambda_min + delta;
  return cs;
}

std::vector<ChargeSet> sample_psd_charges(std::uint64_t seed, std::size_t n) {
  if (n < 1) throw DomainError("sample_psd_charges: n must be at least 1");
  std::vector<ChargeSet> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_psd_charge(seed, i));
  return out;
}

std::string to_string(IdentityMode m) { return m == IdentityMode::kLeading ? "leading" : "exact"; }

IdentityMode identity_mode_from_string(const std::string& s) {
  if (s == "leading") return IdentityMode::kLeading;
  if (s == "exact") return IdentityMode::kExact;
  throw ParseError("mode must be 'leading' or 'exact'");
}

double boundary_integrand(const InitialDataModel& model, const KillingParams& lambda, const SlicePoint& p,
                          IdentityMode mode) {
  const ModelConstants& k = model.constants();
  const AspectValues asp = aspects(model, p);
  if (mode == IdentityMode::kLeading) {
    const SpinorProfiles pr = profiles(lambda, p.theta, p.psi, p.phi);
    const double grow = std::exp(k.kappa() * p.r);
    const double uu = std::norm(pr.u_plus);
    const double vv = std::norm(pr.v_plus);
    const Complex uv = std::conj(pr.u_plus) * pr.v_plus;
    // −√−1(ūv − v̄u) = 2 Im(ūv);  ūv + v̄u = 2 Re(ūv)
    return grow * (0.5 * asp.mass[0] * (uu + vv) + asp.momentum(1, 0) * (uu - vv) +
                   asp.momentum(2, 0) * 2.0 * uv.imag() + asp.momentum(3, 0) * 2.0 * uv.real());
  }
  static const std::array<ComplexMatrix4, 4> i_gamma = [] {
    std::array<ComplexMatrix4, 4> m;
    for (int a = 1; a <= 4; ++a) m[static_cast<std::size_t>(a - 1)] = kI * gamma(a).entries.to_complex();
    return m;
  }();
  static const std::array<ComplexMatrix4, 4> g0_gamma = [] {
    std::array<ComplexMatrix4, 4> m;
    const ComplexMatrix4 g0 = gamma(0).entries.to_complex();
    for (int a = 1; a <= 4; ++a) m[static_cast<std::size_t>(a - 1)] = g0 * gamma(a).entries.to_complex();
    return m;
  }();
  const Spinor phi = killing_spinor(lambda, p, k);
  const SymTensor g = SymTensor::Identity() + asp.a;
  double value = 0.25 * asp.divergence_term[0] * norm2(phi);
  for (std::size_t a = 0; a < 4; ++a) {
    const auto i = static_cast<Eigen::Index>(a);
    value += 0.25 * k.kappa() * (asp.a(i, 0) - g(i, 0) * asp.trace_a) * bilinear(phi, i_gamma[a], phi).real();
    value -= 0.5 * asp.momentum(i, 0) * bilinear(phi, g0_gamma[a], phi).real();
  }
  return value;
}

IdentityResult boundary_identity(const InitialDataModel& model, const KillingParams& lambda,
                                 const QuadratureSpec& q, IdentityMode mode, const ChargeSet* charges) {
  const QuadratureSpec spec = model.native_grid().value_or(q);
  spec.validate();
  const ModelConstants& k = model.constants();
  IdentityResult out;
  std::vector<double> physical;
  double scale = 0.0;
  for (double kr : spec.radii) {
    const double r = kr / k.kappa();
    physical.push_back(r);
    const SurfaceIntegral<double> s = surface_integrate_scalar<double>(
        [&](const SlicePoint& p) { return boundary_integrand(model, lambda, p, mode); }, r, spec, k);
    out.radii.push_back(kr);
    out.values.push_back(s.refined[0]);
    scale = std::max(scale, s.magnitude[0]);
  }
  out.limit = radial_limit(physical, out.values, k, spec.rel_tol, RadialScheme::kThreePoint, 1e-12 * scale);
  out.lhs = out.limit.limit;
  out.charges = charges ? *charges : compute_charges(model, q);
  out.divergent = out.limit.divergent || out.charges.any_divergent();
  Eigen::Vector4cd l;
  for (std::size_t i = 0; i < 4; ++i) l[static_cast<Eigen::Index>(i)] = lambda[i];
  out.rhs = 8.0 * M_PI * l.dot(assemble_q(out.charges).full() * l).real();
  // Both sides vanish for data whose charges cancel by parity; the floor keeps the gap
  // from dividing rounding noise by rounding noise.
  const double denom = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-10 * scale});
  out.gap = denom > 0.0 ? std::abs(out.lhs - out.rhs) / denom : 0.0;
  return out;
}

}  // namespace aads
