#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "aads/errors.hpp"
#include "aads/initial_data.hpp"
#include "oracles/oracle.hpp"

using namespace aads;

namespace {

// Arbitrary smooth fields, differentiated by the library's finite differences.
class LambdaModel final : public InitialDataModel {
 public:
  using Fn = std::function<SymTensor(const SlicePoint&)>;
  LambdaModel(ModelConstants k, double tau, Fn a, Fn h) : InitialDataModel(k), tau_(tau), a_(a), h_(h) {}
  std::string name() const override { return "lambda"; }
  nlohmann::ordered_json config() const override { return {{"name", "lambda"}}; }
  double decay_order() const override { return tau_; }
  SymTensor a(const SlicePoint& p) const override { return a_(p); }
  SymTensor h(const SlicePoint& p) const override { return h_(p); }

 private:
  double tau_;
  Fn a_;
  Fn h_;
};

SymTensor generic_a(double kappa, double r, double th, double ps, double ph) {
  const double f = 0.2 * std::exp(-4.0 * kappa * r);
  SymTensor a;
  a << 1.0 + 0.3 * std::cos(th), 0.5 * std::sin(th) * std::sin(ps) * std::sin(ph), 0.2 * std::cos(ps),
      0.1 * std::sin(ph),  //
      0.0, 0.7 - 0.2 * std::sin(th) * std::cos(ps), 0.4 * std::cos(ps), -0.3 * std::cos(th),  //
      0.0, 0.0, 0.9 + 0.1 * std::cos(ph), 0.25 * std::sin(th),  //
      0.0, 0.0, 0.0, 1.1 + 0.2 * std::cos(th) * std::cos(ps);
  a = a.selfadjointView<Eigen::Upper>();
  return f * a;
}

}  // namespace

TEST_CASE("generator models") {
  const ModelConstants k(1.0);
  const SlicePoint p{2.0, 0.8, 1.3, 2.2};
  const AdsExactModel ads(k);
  CHECK(ads.a(p).isZero());
  CHECK(ads.h(p).isZero());
  const RadialBumpModel bump(k, 0.1, 4.0);
  CHECK(bump.a(p)(0, 0) == doctest::Approx(0.1 * std::exp(-8.0)));
  const OffdiagMomentumModel off(k, 0.3, 2, "sin_theta");
  CHECK(off.h(p)(0, 1) == doctest::Approx(0.3 * std::exp(-8.0) * std::sin(0.8)));
  CHECK(off.h(p)(1, 0) == off.h(p)(0, 1));
  CHECK(off.h(p).trace() == 0.0);
}

TEST_CASE("mass aspect of the radial bump") {
  for (const double kappa : {1.0, 1.7}) {
    const ModelConstants k(kappa);
    const RadialBumpModel bump(k, 0.2, 4.0);
    const SlicePoint p{0.9, 1.0, 2.0, 3.0};
    const double f = 0.2 * std::exp(-4.0 * kappa * p.r);
    const AspectValues asp = aspects(bump, p);
    CHECK(asp.mass[0] == doctest::Approx(15.0 * kappa * f + 4.0 * kappa * f * f).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(asp.mass[static_cast<std::size_t>(i)]) < 1e-14);
    CHECK(aspects(AdsExactModel(k), p).mass == std::array<double, 4>{});
  }
}

TEST_CASE("mass aspect matches the coordinate-Christoffel oracle") {
  for (const double kappa : {1.0, 0.8}) {
    const ModelConstants k(kappa);
    const LambdaModel model(
        k, 4.0, [kappa](const SlicePoint& p) { return generic_a(kappa, p.r, p.theta, p.psi, p.phi); },
        [](const SlicePoint&) { return SymTensor(SymTensor::Zero()); });
    const oracle::Field af = [kappa](const std::array<double, 4>& x) {
      return Eigen::Matrix4d(generic_a(kappa, x[0], x[1], x[2], x[3]));
    };
    for (const SlicePoint& p : {SlicePoint{0.7, 0.9, 2.0, 1.0}, SlicePoint{1.5, 2.4, 0.5, 4.4},
                                SlicePoint{0.4, 1.6, 1.6, 0.1}}) {
      const double mine = mass_aspect(model, p)[0];
      const oracle::Aspects ref = oracle::aspects(af, oracle::zero_field(), {p.r, p.theta, p.psi, p.phi}, kappa);
      CHECK(mine == doctest::Approx(ref.mass1).epsilon(1e-7));
    }
  }
}

TEST_CASE("momentum aspect") {
  const ModelConstants k(1.0);
  const SlicePoint p{1.0, 1.0, 1.0, 1.0};
  const OffdiagMomentumModel off(k, 0.5, 2, "sin_theta");
  CHECK(momentum_aspect(off, p)(1, 0) == doctest::Approx(0.5 * std::exp(-4.0) * std::sin(1.0)));
  const LambdaModel iso(
      k, 4.0, [](const SlicePoint&) { return SymTensor(SymTensor::Zero()); },
      [](const SlicePoint&) { return SymTensor(0.25 * SymTensor::Identity()); });
  CHECK(momentum_aspect(iso, p).isApprox(-0.75 * Eigen::Matrix4d::Identity()));
}

TEST_CASE("analytic and finite-difference derivatives agree") {
  const ModelConstants k(1.2);
  for (const std::string& profile : angular_profile_names()) {
    RadialBumpModel bump(k, 0.3, 4.0, profile);
    const SlicePoint p{0.8, 1.1, 2.3, 4.0};
    const TensorPartials an = bump.a_partials(p);
    bump.set_derivative_mode(DerivativeMode::kFiniteDifference);
    const TensorPartials fd = bump.a_partials(p);
    for (std::size_t i = 0; i < 4; ++i) {
      INFO("profile " << profile << " axis " << i);
      CHECK((an[i] - fd[i]).norm() < 1e-8 * (1.0 + an[i].norm()));
    }
  }
  CHECK_THROWS_AS(angular_profile("tan_theta"), ParseError);
}

TEST_CASE("registry") {
  const ModelPtr bump = model_from_json(nlohmann::json::parse(R"({"name":"radial_bump","params":{"m":0.2}})"));
  CHECK(bump->decay_order() == 4.0);
  CHECK(bump->config()["params"]["m"] == 0.2);
  CHECK_THROWS_AS(model_registry("radial_bump", {{"sigma", 2.0}}), DomainError);
  CHECK_THROWS_AS(model_registry("offdiag_momentum", {{"sigma", 1.5}}), DomainError);
  CHECK_THROWS_AS(model_registry("kerr", {}), ParseError);
  CHECK_THROWS_AS(model_registry("radial_bump", {{"m", "big"}}), ParseError);
  CHECK_THROWS_AS(model_registry("offdiag_momentum", {{"axis", 1}}), DomainError);
  const ModelPtr fd = model_registry("radial_bump", {{"derivatives", "fd"}, {"fd_step", 1e-3}});
  CHECK(fd->derivative_mode() == DerivativeMode::kFiniteDifference);
  CHECK(fd->fd_step() == 1e-3);
  const ModelPtr mix = model_from_json(nlohmann::json::parse(
      R"({"name":"mix","params":{"components":[{"name":"radial_bump","params":{"m":0.1}},
          {"name":"offdiag_momentum","params":{"q":0.2,"axis":3,"profile":"n2"}}]}})"));
  const SlicePoint p{1.0, 1.0, 1.0, 1.0};
  CHECK(mix->a(p)(0, 0) == doctest::Approx(0.1 * std::exp(-4.0)));
  CHECK(mix->h(p)(0, 2) != 0.0);
  CHECK(model_from_json(mix->config())->config() == mix->config());
}

TEST_CASE("decay validation") {
  const ModelConstants k(1.0);
  const std::vector<double> radii = {4, 5, 6, 7};
  const DecayReport bump = decay_validate(RadialBumpModel(k, 0.1, 4.0), radii);
  CHECK(bump.pass);
  CHECK(bump.fields[0].sigma_hat == doctest::Approx(4.0).epsilon(0.0025));
  CHECK(bump.fields[2].vacuous);
  const DecayReport ads = decay_validate(AdsExactModel(k), radii);
  CHECK(ads.pass);
  CHECK(ads.fields[0].vacuous);
  const LambdaModel slow(
      k, 1.0, [](const SlicePoint& p) { return SymTensor(std::exp(-p.r) * SymTensor::Identity()); },
      [](const SlicePoint&) { return SymTensor(SymTensor::Zero()); });
  const DecayReport bad = decay_validate(slow, radii);
  CHECK_FALSE(bad.pass);
  CHECK(bad.fields[0].sigma_hat == doctest::Approx(1.0).epsilon(0.01));
  // Declared τ = 4 but the data only decays like e^{−3κr}.
  const LambdaModel liar(
      k, 4.0, [](const SlicePoint& p) { return SymTensor(std::exp(-3.0 * p.r) * SymTensor::Identity()); },
      [](const SlicePoint&) { return SymTensor(SymTensor::Zero()); });
  CHECK_FALSE(decay_validate(liar, radii).pass);
}

TEST_CASE("grid files round-trip and differentiate spectrally") {
  const ModelConstants k(1.0);
  const ModelPtr source = model_from_json(nlohmann::json::parse(
      R"({"name":"mix","params":{"components":[{"name":"radial_bump","params":{"m":0.1,"profile":"n1"}},
          {"name":"radial_bump","params":{"m":0.05,"profile":"cos_theta"}},
          {"name":"offdiag_momentum","params":{"q":0.2,"axis":4,"profile":"n3"}}]}})"));
  const std::vector<double> radii = {3, 4, 5, 6, 7, 8};
  std::stringstream file;
  write_grid_file(file, *source, radii, 12, 12, 12);
  const ModelPtr grid = read_grid_model(file, "memory");
  CHECK(grid->native_grid()->radii == radii);
  CHECK_FALSE(grid->native_grid()->refine);
  const std::vector<double> th = theta_nodes(12), ph = phi_nodes(12);
  for (std::size_t ir : {0u, 2u, 5u}) {
    const SlicePoint p{radii[ir], th[3], th[8], ph[5]};
    CHECK((grid->a(p) - source->a(p)).norm() < 1e-15);
    CHECK((grid->h(p) - source->h(p)).norm() < 1e-15);
    const TensorPartials g = grid->a_partials(p);
    const TensorPartials s = source->a_partials(p);
    for (std::size_t i = 0; i < 4; ++i) {
      INFO("radius index " << ir << " axis " << i);
      CHECK((g[i] - s[i]).norm() <= 1e-8 * s[i].norm() + 1e-14 * grid->a(p).norm());
    }
  }
  CHECK_THROWS_AS(grid->a({4.5, th[3], th[8], ph[5]}), DomainError);
}

TEST_CASE("grid file errors") {
  std::stringstream empty;
  CHECK_THROWS_AS(read_grid_model(empty), ParseError);
  std::stringstream wrong_magic("aads-id 2\n");
  CHECK_THROWS_AS(read_grid_model(wrong_magic), ParseError);
  std::stringstream short_file("aads-id 1\nkappa=1\ntau=4\ngrid=1 4 4 4\nradii=5\n0 0 0\n");
  CHECK_THROWS_AS(read_grid_model(short_file), ParseError);
  std::stringstream missing("aads-id 1\nkappa=1\ntau=4\ngrid=1 4 4 4\nradii=5\n");
  CHECK_THROWS_AS(read_grid_model(missing), ParseError);
  CHECK_THROWS_AS(load_grid_model("/nonexistent/file.grid"), ParseError);
}
