#include <doctest.h>

#include <cmath>
#include <random>

#include "aads/errors.hpp"
#include "aads/qmatrix.hpp"

using namespace aads;

namespace {

ChargeSet random_charges(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<double, 15> v{};
  for (double& x : v) x = n(gen);
  return ChargeSet::from_values(v);
}

ChargeSet with(double e0, int which, double value) {
  std::array<double, 15> v{};
  v[0] = e0;
  if (which > 0) v[static_cast<std::size_t>(which)] = value;
  return ChargeSet::from_values(v);
}

constexpr int kC4 = 4;
constexpr int kCp3 = 7;

}  // namespace

TEST_CASE("assembly examples") {
  CHECK(assemble_q(with(1.0, 0, 0.0)).full() == ComplexMatrix4::Identity());
  ComplexMatrix4 d = ComplexMatrix4::Zero();
  d.diagonal() << 2.0, 2.0, 0.0, 0.0;
  CHECK(assemble_q(with(1.0, kC4, 1.0)).full() == d);
  d.diagonal() << 2.0, 0.0, 0.0, 2.0;
  CHECK(assemble_q(with(1.0, kCp3, 1.0)).full() == d);
}

TEST_CASE("block structure") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 100; ++t) {
    ChargeSet cs = random_charges(gen);
    const ComplexMatrix4 q = assemble_q(cs).full();
    CHECK(q == q.adjoint());
    const ComplexMatrix4 shifted = q - cs.e0 * ComplexMatrix4::Identity();
    cs.e0 = 3.7;
    CHECK((assemble_q(cs).full() - 3.7 * ComplexMatrix4::Identity() - shifted).norm() < 1e-14);
    CHECK(assemble_q(cs).l.squaredNorm() == doctest::Approx(derived(cs).l2).epsilon(1e-13));
  }
}

TEST_CASE("PSD check") {
  const PsdReport id = psd_check(ComplexMatrix4(ComplexMatrix4::Identity()));
  CHECK(id.psd);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));
  CHECK(id.principal_minors.size() == 15);
  const PsdReport d = psd_check(assemble_q(with(1.0, kC4, 1.0)));
  CHECK(d.psd);
  CHECK(d.min_eigenvalue == doctest::Approx(0.0).scale(1.0));
  CHECK(d.consistent());
  const PsdReport neg = psd_check(assemble_q(with(-1.0, 0, 0.0)));
  CHECK_FALSE(neg.psd);
  CHECK_FALSE(neg.minors_nonnegative);
  ComplexMatrix4 skew = ComplexMatrix4::Identity();
  skew(0, 1) = Complex(0.0, 1.0);
  CHECK_THROWS_AS(psd_check(skew), ContractViolation);
}

TEST_CASE("bound examples") {
  const BoundsReport zero = theorem_bounds(with(2.0, 0, 0.0));
  for (double b : zero.b) CHECK(b == 0.0);
  CHECK(zero.verdict());
  const BoundsReport c4 = theorem_bounds(with(1.0, kC4, 1.0));
  CHECK(std::abs(c4.b[0] - 1.0) < 1e-12);
  const BoundsReport cp3 = theorem_bounds(with(1.0, kCp3, 1.0));
  CHECK(cp3.a == 1.0);
  CHECK(cp3.w == 0.0);
  CHECK(cp3.f == 0.0);
  CHECK(std::abs(cp3.b[2] - (std::sqrt(2.0) - 1.0)) < 1e-12);
  CHECK(std::abs(cp3.b[3] - 1.0) < 1e-12);
  CHECK(std::abs(cp3.b[4] - 1.0) < 1e-12);
  CHECK(bound_variant_from_string("text") == BoundVariant::kText);
  CHECK(bound_variant_from_string("theorem-text") == BoundVariant::kText);
  CHECK_THROWS_AS(bound_variant_from_string("paper"), ParseError);
}

TEST_CASE("second-minor bounds coincide with B1 and the proof form of B2") {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 50; ++t) {
    const ChargeSet cs = random_charges(gen);
    const SecondMinorBounds s = second_minor_bounds(cs);
    const BoundsReport b = theorem_bounds(cs);
    CHECK(s.first == doctest::Approx(b.b[0]).epsilon(1e-13));
    CHECK(s.second == doctest::Approx(b.b[1]).epsilon(1e-13));
  }
}

TEST_CASE("closed forms against the eigensolver") {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 500; ++t) {
    const ChargeSet cs = random_charges(gen);
    const ComplexMatrix4 q = assemble_q(cs).full();
    const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix4>(q).eigenvalues();
    const double det = ev.prod();
    const double scale = std::pow(q.norm(), 4);
    CHECK(std::abs(det_closed_form(cs) - det) <= 1e-8 * std::max(std::abs(det), 1e-6 * scale));
    // e₃ = Σ of triple products of eigenvalues = Σ of 3×3 principal minors.
    const double e3 = ev[0] * ev[1] * ev[2] + ev[0] * ev[1] * ev[3] + ev[0] * ev[2] * ev[3] + ev[1] * ev[2] * ev[3];
    CHECK(4.0 * third_minor_sum(cs) == doctest::Approx(e3).epsilon(1e-9).scale(std::pow(q.norm(), 3)));
    const PsdReport r = psd_check(q);
    double minors3 = 0.0;
    for (int mask = 1; mask < 16; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) == 3) minors3 += r.principal_minors[static_cast<std::size_t>(mask - 1)];
    }
    CHECK(minors3 == doctest::Approx(e3).epsilon(1e-9).scale(std::pow(q.norm(), 3)));
  }
}

TEST_CASE("sampler") {
  const std::vector<ChargeSet> s = sample_psd_charges(7, 200);
  CHECK(s.size() == 200);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const PsdReport r = psd_check(assemble_q(s[i]));
    CHECK(r.psd);
    if (i % 2 == 0) CHECK(std::abs(r.min_eigenvalue) < 1e-10);
    CHECK(theorem_bounds(s[i]).max_bound() <= s[i].e0 + 1e-9);
    CHECK(third_minor_sum(s[i]) >= -1e-9);
  }
  CHECK(sample_psd_charge(7, 13).values() == s[13].values());
  CHECK(sample_psd_charge(8, 13).values() != s[13].values());
  CHECK_THROWS_AS(sample_psd_charges(1, 0), DomainError);
  // Zero momenta: the construction gives E₀ = 0 and Q = 0.
  const ChargeSet zero;
  const double lmin =
      Eigen::SelfAdjointEigenSolver<ComplexMatrix4>(assemble_q(zero).full()).eigenvalues()[0];
  CHECK(lmin == 0.0);
}

TEST_CASE("rigidity") {
  CHECK(rigidity_check(ChargeSet{}).status == RigidityStatus::kRigid);
  CHECK(rigidity_check(with(0.0, kC4, 1.0)).status == RigidityStatus::kNotInDomain);
  CHECK(rigidity_check(with(1e-14, 0, 0.0)).status == RigidityStatus::kRigid);
  CHECK(rigidity_check(with(1.0, 0, 0.0)).status == RigidityStatus::kNotInDomain);
  CHECK(to_string(RigidityStatus::kNotInDomain) == "not in rigidity domain");
}

TEST_CASE("boundary identity") {
  const KillingParams e1 = {Complex(1), Complex(0), Complex(0), Complex(0)};
  const ModelPtr ads = model_from_json(nlohmann::json::parse(R"({"name":"ads_exact"})"));
  for (IdentityMode mode : {IdentityMode::kLeading, IdentityMode::kExact}) {
    const IdentityResult r = boundary_identity(*ads, e1, QuadratureSpec{}, mode);
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.gap == 0.0);
  }
  const ModelPtr bump = model_from_json(nlohmann::json::parse(R"({"name":"radial_bump","params":{"m":0.1}})"));
  const ChargeSet cs = compute_charges(*bump, QuadratureSpec{});
  for (IdentityMode mode : {IdentityMode::kLeading, IdentityMode::kExact}) {
    const IdentityResult r = boundary_identity(*bump, e1, QuadratureSpec{}, mode, &cs);
    CHECK(r.rhs == doctest::Approx(8.0 * M_PI * cs.e0).epsilon(1e-14));
    CHECK(r.gap < 1e-5);
    CHECK_FALSE(r.divergent);
  }
  CHECK(identity_mode_from_string("exact") == IdentityMode::kExact);
  CHECK_THROWS_AS(identity_mode_from_string("full"), ParseError);
}
