#include "aads/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "aads/charges.hpp"
#include "aads/clifford.hpp"
#include "aads/errors.hpp"
#include "aads/geometry.hpp"
#include "aads/initial_data.hpp"
#include "aads/killing.hpp"
#include "aads/qmatrix.hpp"
#include "aads/spinors.hpp"

namespace aads {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string suite;
  std::string model;
  std::string charges;
  std::optional<int> n_theta;
  std::optional<int> n_psi;
  std::optional<int> n_phi;
  std::string radii;
  std::optional<double> rtol;
  std::uint64_t seed = 7;
  std::size_t n = 1000;
  std::string lambda = "1,0,0,0,0,0,0,0";
  std::string mode = "leading";
  std::string variant = "proof";
  std::string out;
  bool quiet = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  return v;
}

QuadratureSpec quadrature_from(const RunConfig& cfg) {
  QuadratureSpec q;
  if (cfg.n_theta) q.n_theta = *cfg.n_theta;
  if (cfg.n_psi) q.n_psi = *cfg.n_psi;
  if (cfg.n_phi) q.n_phi = *cfg.n_phi;
  if (cfg.rtol) q.rel_tol = *cfg.rtol;
  if (!cfg.radii.empty()) q.radii = parse_numbers(cfg.radii, "--radii");
  q.validate();
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json_arg(const std::string& text, const char* what) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const std::string body = (first != std::string::npos && text[first] == '{') ? text : read_file(text);
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

ModelPtr load_model(const std::string& arg) {
  if (arg.empty()) throw UsageError("--model is required for this command");
  const auto first = arg.find_first_not_of(" \t");
  if (first == std::string::npos || arg[first] != '{') {
    std::ifstream in(arg);
    std::string head;
    if (in && (in >> head) && head == "aads-id") return load_grid_model(arg);
  }
  return model_from_json(parse_json_arg(arg, "--model"));
}

KillingParams parse_lambda(const std::string& text) {
  const std::vector<double> v = parse_numbers(text, "--lambda");
  if (v.size() != 8) throw UsageError("--lambda needs 8 numbers (re,im for λ₁..λ₄)");
  KillingParams l;
  for (std::size_t i = 0; i < 4; ++i) l[i] = Complex(v[2 * i], v[2 * i + 1]);
  return l;
}

Json resolved_config(const RunConfig& cfg, const std::optional<QuadratureSpec>& q, const ModelPtr& model) {
  Json c;
  c["command"] = cfg.command;
  if (!cfg.suite.empty()) c["suite"] = cfg.suite;
  c["model"] = model ? model->config() : Json(nullptr);
  c["quadrature"] = q ? to_json(*q) : Json(nullptr);
  c["seed"] = cfg.seed;
  c["n"] = cfg.n;
  c["lambda"] = parse_numbers(cfg.lambda, "--lambda");
  c["mode"] = cfg.mode;
  c["variant"] = cfg.variant;
  return c;
}

void write_report(const RunConfig& cfg, const Json& report) {
  if (cfg.out.empty()) return;
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << report.dump(2) << "\n";
}

Json complex_matrix_json(const ComplexMatrix4& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json bounds_json(const BoundsReport& b) {
  return {{"variant", to_string(b.variant)},
          {"b1", b.b[0]},
          {"b2", b.b[1]},
          {"b3", b.b[2]},
          {"b4", b.b[3]},
          {"b5", b.b[4]},
          {"f", b.f},
          {"fplus", b.f_plus},
          {"w", b.w},
          {"a", b.a},
          {"l2", b.l2}};
}

// Q report shared by `qmatrix` and `bound`; returns whether E₀ dominates every bound on a PSD Q.
bool qreport(const ChargeSet& cs, BoundVariant variant, Json& report, std::ostream& out, bool quiet) {
  const ComplexMatrix4 q = assemble_q(cs).full();
  const PsdReport psd = psd_check(q);
  const BoundsReport b = theorem_bounds(cs, variant);
  const RigidityResult rig = rigidity_check(cs);
  const bool verdict = psd.psd && b.verdict(1e-9);
  report["q"] = complex_matrix_json(q);
  report["eigenvalues"] = std::vector<double>(psd.eigenvalues.data(), psd.eigenvalues.data() + 4);
  report["psd"] = psd.psd;
  report["min_eigenvalue"] = psd.min_eigenvalue;
  report["principal_minors"] = psd.principal_minors;
  report["minors_consistent"] = psd.consistent();
  report["bounds"] = bounds_json(b);
  report["rigidity"] = to_string(rig.status);
  report["verdict"] = verdict;
  if (!quiet) {
    out << std::setprecision(10);
    out << "E0            " << cs.e0 << "\n";
    out << "eigenvalues  ";
    for (int i = 0; i < 4; ++i) out << " " << psd.eigenvalues[i];
    out << "\nPSD           " << (psd.psd ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < 5; ++i) out << "B" << i + 1 << "            " << b.b[i] << "\n";
    out << "F             " << b.f << "\nW             " << b.w << "\n";
    out << "rigidity      " << to_string(rig.status) << "\n";
    out << "verdict       " << (verdict ? "pass" : "FAIL") << "\n";
  }
  return verdict;
}

void print_charges(const ChargeSet& cs, std::ostream& out) {
  out << std::setprecision(12);
  out << std::left << std::setw(7) << "charge" << std::setw(22) << "value" << std::setw(16) << "residual"
      << "flags\n";
  for (const ChargeDiagnostic& d : cs.diagnostics) {
    out << std::setw(7) << d.name << std::setw(22) << d.limit.limit << std::setw(16) << d.limit.residual
        << (d.limit.divergent ? "DIVERGENT " : "") << (d.quadrature_converged ? "" : "UNCONVERGED") << "\n";
  }
  out << std::right;
}

int run_verify_clifford(const RunConfig& cfg, std::ostream& out) {
  Json relations = Json::array();
  bool pass = true;
  for (const AnticommutatorCheck& c : anticommutator_table()) {
    relations.push_back({{"alpha", c.alpha}, {"beta", c.beta}, {"exact", c.exact}});
    pass = pass && c.exact;
  }
  Json herm = Json::array();
  for (int a = 0; a <= 4; ++a) {
    const ExactMatrix g = gamma(a).entries;
    const bool ok = a == 0 ? is_hermitian(g) : is_anti_hermitian(g);
    herm.push_back({{"alpha", a}, {"expected", a == 0 ? "hermitian" : "anti-hermitian"}, {"ok", ok}});
    pass = pass && ok;
  }
  const Json report = {{"config", resolved_config(cfg, std::nullopt, nullptr)},
                       {"anticommutators", relations},
                       {"hermiticity", herm},
                       {"pass", pass}};
  if (!cfg.quiet) {
    int exact = 0;
    for (const AnticommutatorCheck& c : anticommutator_table()) exact += c.exact ? 1 : 0;
    out << "anticommutator identities exact: " << exact << "/25\n";
    for (const auto& h : herm) {
      out << "gamma" << h["alpha"].get<int>() << " " << h["expected"].get<std::string>() << ": "
          << (h["ok"].get<bool>() ? "ok" : "FAIL") << "\n";
    }
    out << (pass ? "pass" : "FAIL") << "\n";
  }
  write_report(cfg, report);
  return pass ? kExitPass : kExitFailed;
}

int run_verify_spinors(const RunConfig& cfg, std::ostream& out) {
  const ModelConstants k(1.0);
  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = 1e-3;
  Json samples = Json::array();
  std::size_t passed = 0;
  double worst_ratio_dev = 0.0;
  for (std::size_t s = 0; s < cfg.n; ++s) {
    KillingParams l;
    for (Complex& z : l) z = Complex(normal(gen), normal(gen));
    const SlicePoint p{0.5 + 2.5 * unit(gen), 0.3 + (M_PI - 0.6) * unit(gen), 0.3 + (M_PI - 0.6) * unit(gen),
                       2.0 * M_PI * unit(gen)};
    const int dir = 1 + static_cast<int>(unit(gen) * 4.0) % 4;
    const double r1 = killing_spinor_residual(l, p, dir, h, k);
    const double r2 = killing_spinor_residual(l, p, dir, h / 2, k);
    const double phi = killing_spinor(l, p, k).norm();
    const double ratio = r1 / r2;
    const bool ok = r1 < 1e-5 * phi && ratio >= 3.5 && ratio <= 4.5;
    passed += ok ? 1 : 0;
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 4.0));
    samples.push_back({{"point", p.str()},
                       {"direction", dir},
                       {"residual_h", r1},
                       {"residual_h2", r2},
                       {"ratio", ratio},
                       {"phi_norm", phi},
                       {"pass", ok}});
  }
  const bool pass = passed == cfg.n;
  const Json report = {{"config", resolved_config(cfg, std::nullopt, nullptr)},
                       {"h", h},
                       {"samples", samples},
                       {"passed", passed},
                       {"pass", pass}};
  if (!cfg.quiet) {
    out << "Killing spinor residual samples passed: " << passed << "/" << cfg.n
        << "  (max |ratio - 4| = " << worst_ratio_dev << ")\n";
  }
  write_report(cfg, report);
  return pass ? kExitPass : kExitFailed;
}

int run_verify_killing(const RunConfig& cfg, std::ostream& out) {
  const ModelConstants k(1.0);
  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = 1e-3;
  const std::size_t points = std::min<std::size_t>(cfg.n, 20);
  std::vector<SpacetimePoint> pts;
  for (std::size_t i = 0; i < points; ++i) {
    pts.push_back({-1.0 + 2.0 * unit(gen),
                   {0.5 + 2.0 * unit(gen), 0.3 + (M_PI - 0.6) * unit(gen), 0.3 + (M_PI - 0.6) * unit(gen),
                    2.0 * M_PI * unit(gen)}});
  }
  Json fields = Json::array();
  bool pass = true;
  if (!cfg.quiet) out << std::setw(6) << "label" << std::setw(16) << "max residual" << std::setw(10) << "ratio" << "\n";
  for (const KillingLabel& label : killing_labels()) {
    double worst = 0.0;
    double ratio_min = 1e300;
    double ratio_max = 0.0;
    bool ok = true;
    for (const SpacetimePoint& p : pts) {
      const double r1 = killing_residual(label, p, h, k);
      const double r2 = killing_residual(label, p, h / 2, k);
      worst = std::max(worst, r1);
      if (r1 < 1e-12) continue;  // symmetry of the coordinates: exact up to rounding
      const double ratio = r1 / r2;
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      ok = ok && ratio >= 3.5 && ratio <= 4.5 && r1 < 1e-4;
    }
    pass = pass && ok;
    Json f = {{"label", label.str()}, {"max_residual", worst}, {"pass", ok}};
    if (ratio_max > 0.0) {
      f["ratio_min"] = ratio_min;
      f["ratio_max"] = ratio_max;
    }
    fields.push_back(f);
    if (!cfg.quiet) {
      out << std::setw(6) << label.str() << std::setw(16) << std::setprecision(4) << worst << std::setw(10);
      if (ratio_max > 0.0) {
        out << ratio_min;
      } else {
        out << "exact";
      }
      out << (ok ? "" : "  FAIL") << "\n";
    }
  }
  const Json report = {{"config", resolved_config(cfg, std::nullopt, nullptr)},
                       {"h", h},
                       {"fields", fields},
                       {"pass", pass}};
  write_report(cfg, report);
  return pass ? kExitPass : kExitFailed;
}

int run_charges(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = load_model(cfg.model);
  const QuadratureSpec q = model->native_grid().value_or(quadrature_from(cfg));
  const ChargeSet cs = compute_charges(*model, q);
  Json report = to_json(cs);
  report["config"] = resolved_config(cfg, q, model);
  if (!cfg.quiet) print_charges(cs, out);
  write_report(cfg, report);
  if (cs.any_divergent()) return kExitDivergent;
  return cs.quadrature_converged() ? kExitPass : kExitFailed;
}

int run_qmatrix(const RunConfig& cfg, std::ostream& out) {
  if (cfg.charges.empty()) throw UsageError("--charges is required for qmatrix");
  const ChargeSet cs = charge_set_from_json(parse_json_arg(cfg.charges, "--charges"));
  Json report;
  report["config"] = resolved_config(cfg, std::nullopt, nullptr);
  report["charges"] = to_json(cs);
  const bool ok = qreport(cs, bound_variant_from_string(cfg.variant), report, out, cfg.quiet);
  write_report(cfg, report);
  return ok ? kExitPass : kExitFailed;
}

int run_bound(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = load_model(cfg.model);
  const QuadratureSpec q = model->native_grid().value_or(quadrature_from(cfg));
  const ChargeSet cs = compute_charges(*model, q);
  if (!cfg.quiet) print_charges(cs, out);
  Json report;
  report["config"] = resolved_config(cfg, q, model);
  report["charges"] = to_json(cs);
  const bool ok = qreport(cs, bound_variant_from_string(cfg.variant), report, out, cfg.quiet);
  write_report(cfg, report);
  if (cs.any_divergent()) return kExitDivergent;
  return ok ? kExitPass : kExitFailed;
}

int run_identity(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = load_model(cfg.model);
  const QuadratureSpec q = model->native_grid().value_or(quadrature_from(cfg));
  const IdentityMode mode = identity_mode_from_string(cfg.mode);
  const IdentityResult r = boundary_identity(*model, parse_lambda(cfg.lambda), q, mode);
  const double tol = 1e-5;
  const bool pass = r.gap < tol;
  const Json report = {{"config", resolved_config(cfg, q, model)},
                       {"radii_kappa_r", r.radii},
                       {"values", r.values},
                       {"lhs", r.lhs},
                       {"lhs_residual", r.limit.residual},
                       {"rhs", r.rhs},
                       {"gap", r.gap},
                       {"tolerance", tol},
                       {"divergent", r.divergent},
                       {"pass", pass}};
  if (!cfg.quiet) {
    out << std::setprecision(12) << "mode " << cfg.mode << "\nlhs  " << r.lhs << "\nrhs  " << r.rhs << "\ngap  "
        << r.gap << "\n" << (pass ? "pass" : "FAIL") << "\n";
  }
  write_report(cfg, report);
  if (r.divergent) return kExitDivergent;
  return pass ? kExitPass : kExitFailed;
}

int run_sample_psd(const RunConfig& cfg, std::ostream& out) {
  const BoundVariant variant = bound_variant_from_string(cfg.variant);
  std::size_t passed = 0;
  std::size_t text_violations = 0;
  double max_excess = -1e300;
  double min_b4_radicand = 1e300;
  double worst_boundary_eig = 0.0;
  Json samples = Json::array();
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const ChargeSet cs = sample_psd_charge(cfg.seed, i);
    const BoundsReport b = theorem_bounds(cs, variant);
    const BoundsReport text = theorem_bounds(cs, BoundVariant::kText);
    const PsdReport psd = psd_check(assemble_q(cs).full());
    const bool ok = b.verdict(1e-9) && psd.psd;
    passed += ok ? 1 : 0;
    text_violations += text.b[1] > cs.e0 + 1e-9 ? 1 : 0;
    max_excess = std::max(max_excess, b.max_bound() - cs.e0);
    min_b4_radicand = std::min(min_b4_radicand, b.b4_radicand);
    if (i % 2 == 0) worst_boundary_eig = std::max(worst_boundary_eig, std::abs(psd.min_eigenvalue));
    samples.push_back({{"index", i}, {"e0", cs.e0}, {"min_eigenvalue", psd.min_eigenvalue},
                       {"max_bound", b.max_bound()}, {"pass", ok}});
  }
  const bool pass = passed == cfg.n;
  const Json report = {{"config", resolved_config(cfg, std::nullopt, nullptr)},
                       {"summary",
                        {{"samples", cfg.n},
                         {"passed", passed},
                         {"max_bound_minus_e0", max_excess},
                         {"min_a_minus_2sqrt2_w", min_b4_radicand},
                         {"max_abs_min_eigenvalue_boundary", worst_boundary_eig},
                         {"text_variant_b2_violations", text_violations}}},
                       {"samples", samples},
                       {"pass", pass}};
  if (!cfg.quiet) {
    out << std::setprecision(6) << "bound checks passed: " << passed << "/" << cfg.n << "\n"
        << "max(max B - E0):        " << max_excess << "\n"
        << "min(A - 2 sqrt2 W):     " << min_b4_radicand << "\n"
        << "text-variant B2 misses: " << text_violations << "\n";
  }
  write_report(cfg, report);
  return pass ? kExitPass : kExitFailed;
}

int run_decay(const RunConfig& cfg, std::ostream& out) {
  const ModelPtr model = load_model(cfg.model);
  const QuadratureSpec q = model->native_grid().value_or(quadrature_from(cfg));
  const DecayReport d = decay_validate(*model, q.radii);
  Json fields = Json::array();
  for (const DecayFieldReport& f : d.fields) {
    fields.push_back({{"field", f.field}, {"norms", f.norms}, {"sigma_hat", f.sigma_hat},
                      {"vacuous", f.vacuous}, {"pass", f.pass}});
  }
  const Json report = {{"config", resolved_config(cfg, q, model)},
                       {"tau", std::isfinite(d.tau) ? Json(d.tau) : Json("inf")},
                       {"fields", fields},
                       {"pass", d.pass}};
  if (!cfg.quiet) {
    out << "declared tau " << d.tau << "\n";
    for (const DecayFieldReport& f : d.fields) {
      out << std::setw(8) << f.field << "  sigma_hat ";
      if (f.vacuous) {
        out << "(vacuous)";
      } else {
        out << f.sigma_hat;
      }
      out << (f.pass ? "" : "  FAIL") << "\n";
    }
  }
  write_report(cfg, report);
  return d.pass ? kExitPass : kExitFailed;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Charges, spinor identities and mass bounds for asymptotically AdS initial data", "aads"};
  app.require_subcommand(1);
  app.add_option("--model", cfg.model, "model as inline JSON, a JSON file, or a grid file");
  app.add_option("--charges", cfg.charges, "charge set as inline JSON or a JSON file");
  app.add_option("--ntheta", cfg.n_theta, "theta nodes (default 16)");
  app.add_option("--npsi", cfg.n_psi, "psi nodes (default 16)");
  app.add_option("--nphi", cfg.n_phi, "phi nodes (default 16)");
  app.add_option("--radii", cfg.radii, "comma-separated kappa*r values (default 4,5,6,7)");
  app.add_option("--rtol", cfg.rtol, "quadrature refinement tolerance (default 1e-8)");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--n,--samples", cfg.n, "number of samples")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Killing spinor parameters re,im x4")->capture_default_str();
  app.add_option("--mode", cfg.mode, "boundary identity mode")
      ->check(CLI::IsMember({"leading", "exact"}))
      ->capture_default_str();
  app.add_option("--variant", cfg.variant, "second bound variant")
      ->check(CLI::IsMember({"proof", "text", "theorem-text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "write the JSON report here");
  app.add_flag("--quiet", cfg.quiet, "suppress the human-readable table");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, "clifford, spinors or killing")
      ->required()
      ->check(CLI::IsMember({"clifford", "spinors", "killing"}));
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"charges", "conserved charges of a model"},
      {"qmatrix", "Q matrix, PSD check and bounds for a charge set"},
      {"bound", "charges followed by the Q matrix report"},
      {"identity", "boundary identity lhs vs 8 pi lambda^dagger Q lambda"},
      {"sample-psd", "property check of the bounds on random PSD charge sets"},
      {"decay", "empirical decay rates of a model"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  verify->fallthrough();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "verify") {
      if (cfg.suite == "clifford") return run_verify_clifford(cfg, out);
      if (cfg.suite == "spinors") {
        if (app.get_option("--n")->count() == 0) cfg.n = 100;
        return run_verify_spinors(cfg, out);
      }
      return run_verify_killing(cfg, out);
    }
    if (cfg.command == "charges") return run_charges(cfg, out);
    if (cfg.command == "qmatrix") return run_qmatrix(cfg, out);
    if (cfg.command == "bound") return run_bound(cfg, out);
    if (cfg.command == "identity") return run_identity(cfg, out);
    if (cfg.command == "sample-psd") return run_sample_psd(cfg, out);
    return run_decay(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidIndexError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace aads
