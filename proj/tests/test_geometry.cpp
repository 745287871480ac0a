#include <doctest.h>

#include <cmath>
#include <vector>

#include "aads/geometry.hpp"
#include "oracles/oracle.hpp"

using namespace aads;

TEST_CASE("model constants") {
  CHECK(ModelConstants(2.0).lambda() == -24.0);
  CHECK_THROWS_AS(ModelConstants(0.0), DomainError);
  CHECK_THROWS_AS(ModelConstants(-1.0), DomainError);
}

TEST_CASE("frame scales") {
  const ModelConstants k(1.0);
  const SlicePoint p{1.3, 0.7, 2.1, 0.4};
  CHECK(frame_scale(1, p, k) == 1.0);
  CHECK(frame_scale(2, p, k) == doctest::Approx(std::sinh(1.3)));
  CHECK(frame_scale(4, {1.3, M_PI / 2, M_PI / 2, 0.0}, k) == doctest::Approx(std::sinh(1.3)));
  CHECK_THROWS_AS(frame_scale(3, {1.0, 0.0, 1.0, 0.0}, k), DegenerateCoordinateError);
  CHECK_THROWS_AS(frame_scale(2, {0.0, 1.0, 1.0, 0.0}, k), DegenerateCoordinateError);
  CHECK_THROWS_AS(frame_scale(5, p, k), InvalidIndexError);
}

TEST_CASE("measure density") {
  const ModelConstants k(1.5);
  const double s = std::sinh(1.5 * 0.8) / 1.5;
  CHECK(sphere_measure_density({0.8, M_PI / 2, M_PI / 2, 0.0}, k) == doctest::Approx(s * s * s));
  CHECK(sphere_measure_density({0.8, 0.0, 1.0, 0.0}, k) == 0.0);
  CHECK_THROWS_AS(sphere_measure_density({0.0, 1.0, 1.0, 0.0}, k), DomainError);
}

TEST_CASE("connection coefficients") {
  const ModelConstants k(1.0);
  const double r = 0.9;
  const ConnectionCoefficients w = spin_connection({r, M_PI / 2, M_PI / 2, 0.0}, k);
  CHECK(w(2, 1, 2) == doctest::Approx(1.0 / std::tanh(r)));
  const SlicePoint p{1.1, 0.8, 1.9, 2.5};
  const ConnectionCoefficients w2 = spin_connection(p, k);
  CHECK(metric_compatibility_residual(w2) == 0.0);
  CHECK_THROWS_AS(spin_connection({1.0, 0.0, 1.0, 0.0}, k), DegenerateCoordinateError);
}

TEST_CASE("torsion residual converges at second order") {
  const ModelConstants k(0.7);
  for (const SlicePoint& p : {SlicePoint{1.1, 0.8, 1.9, 2.5}, SlicePoint{2.3, 2.2, 0.6, 5.0}}) {
    const double r1 = torsion_residual(p, k, 1e-3);
    const double r2 = torsion_residual(p, k, 5e-4);
    CHECK(r1 < 1e-5);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("Gauss-Legendre rule agrees with the Golub-Welsch oracle") {
  for (int n : {4, 16, 33}) {
    const GaussLegendreRule g = gauss_legendre(n);
    std::vector<double> x, w;
    oracle::golub_welsch(n, x, w);
    for (int i = 0; i < n; ++i) {
      const double mapped = 0.5 * M_PI * (g.nodes[static_cast<std::size_t>(i)] + 1.0);
      CHECK(mapped == doctest::Approx(x[static_cast<std::size_t>(i)]).epsilon(1e-13));
      CHECK(0.5 * M_PI * g.weights[static_cast<std::size_t>(i)] ==
            doctest::Approx(w[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sphere quadrature") {
  const ModelConstants k(1.0);
  QuadratureSpec q;
  const double s = std::sinh(1.0);
  const auto vol = surface_integrate_scalar<double>([](const SlicePoint&) { return 1.0; }, 1.0, q, k);
  CHECK(vol.value[0] == doctest::Approx(2.0 * M_PI * M_PI * s * s * s).epsilon(1e-12));
  CHECK(vol.all_converged());
  CHECK(vol.refinement_performed);
  const auto odd = surface_integrate_scalar<double>([](const SlicePoint& p) { return std::cos(p.theta); }, 1.0, q, k);
  CHECK(std::abs(odd.value[0]) < 1e-12);
  const auto harmonic =
      surface_integrate_scalar<double>([](const SlicePoint& p) { return std::sin(p.phi); }, 1.0, q, k);
  CHECK(std::abs(harmonic.value[0]) < 1e-13);
  const auto cplx = surface_integrate_scalar<std::complex<double>>(
      [](const SlicePoint& p) { return std::complex<double>(1.0, std::cos(p.psi)); }, 1.0, q, k);
  CHECK(cplx.value[0].real() == doctest::Approx(2.0 * M_PI * M_PI * s * s * s));
  CHECK(std::abs(cplx.value[0].imag()) < 1e-12);
}

TEST_CASE("quadrature failure modes") {
  const ModelConstants k(1.0);
  QuadratureSpec q;
  CHECK_THROWS_AS(surface_integrate_scalar<double>([](const SlicePoint&) { return NAN; }, 1.0, q, k),
                  EvaluationError);
  QuadratureSpec bad = q;
  bad.radii = {5.0, 4.0, 6.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = q;
  bad.n_phi = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  // Unresolved integrand: refinement flags it.
  QuadratureSpec coarse = q;
  coarse.n_theta = coarse.n_psi = coarse.n_phi = 4;
  const auto rough = surface_integrate_scalar<double>(
      [](const SlicePoint& p) { return std::cos(4.0 * p.phi); }, 1.0, coarse, k);
  CHECK_FALSE(rough.all_converged());
}

TEST_CASE("radial extrapolation") {
  const ModelConstants k(1.0);
  const std::vector<double> radii = {3, 4, 5, 6};
  std::vector<double> constant(4, 3.0);
  CHECK(radial_limit(radii, constant, k, 1e-8).limit == 3.0);
  std::vector<double> v;
  for (double r : radii) v.push_back(5.0 + std::exp(-2.0 * r));
  const RadialLimit l = radial_limit(radii, v, k, 1e-8);
  CHECK(std::abs(l.limit - 5.0) < 1e-6);
  CHECK_FALSE(l.divergent);
  CHECK(l.beta == doctest::Approx(2.0).epsilon(1e-6));
  const RadialLimit ladder = radial_limit(radii, v, k, 1e-8, RadialScheme::kExponentialLadder);
  CHECK(std::abs(ladder.limit - 5.0) < 1e-6);
  std::vector<double> grow;
  for (double r : radii) grow.push_back(std::exp(r));
  CHECK(radial_limit(radii, grow, k, 1e-8).divergent);
  std::vector<double> zeros(4, 0.0);
  const RadialLimit z = radial_limit(radii, zeros, k, 1e-8);
  CHECK(z.limit == 0.0);
  CHECK_FALSE(z.divergent);
  CHECK_THROWS_AS(radial_limit(std::vector<double>{1, 2}, std::vector<double>{1, 2}, k, 1e-8), DomainError);
  CHECK(radial_scheme_from_string("ladder") == RadialScheme::kExponentialLadder);
  CHECK_THROWS(radial_scheme_from_string("spline"));
}

TEST_CASE("ladder removes mixed exponentials") {
  const ModelConstants k(1.0);
  const std::vector<double> radii = {4, 5, 6, 7};
  std::vector<double> v;
  for (double r : radii) v.push_back(1.0 + 0.14 * std::exp(-r) - 30.0 * std::exp(-2.0 * r));
  CHECK(std::abs(radial_limit(radii, v, k, 1e-8, RadialScheme::kExponentialLadder).limit - 1.0) < 1e-6);
}
