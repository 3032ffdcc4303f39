// Command-line front end: evaluate difference operators on closed-form
// signals, reproduce the comparison tables, run the verification suites, and
// simulate the three Harrod-Domar model variants. Payload goes to stdout,
// diagnostics to stderr. Exit codes: 0 success, 1 verification failure,
// 2 series-engine refusal, 64 usage error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "exactdiff/closed_form.hpp"
#include "exactdiff/difference.hpp"
#include "exactdiff/error.hpp"
#include "exactdiff/growth.hpp"
#include "exactdiff/report.hpp"
#include "exactdiff/signal.hpp"
#include "exactdiff/verify.hpp"

namespace {

using namespace exactdiff;
using nlohmann::ordered_json;

int to_exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::parse_error:
    case Errc::invalid_params:
      return 64;
    default:
      return 2;  // engine refusal
  }
}

std::size_t default_max_terms() {
  if (const char* s = std::getenv("EXACTDIFF_MAX_TERMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v >= 16) return static_cast<std::size_t>(v);
    std::cerr << "warning: ignoring invalid EXACTDIFF_MAX_TERMS='" << s << "'\n";
  }
  return 100000;
}

struct DiffOptions {
  std::string signal;
  int order = 1;
  std::int64_t t = 0;
  double step = 1.0;
  bool exact = true;
  bool standard = false;
  bool forward = false;
  std::string format = "markdown";
  std::size_t max_terms = default_max_terms();
  double rel_tol = 1e-8;
};

int run_diff(const DiffOptions& opt) {
  const OutputFormat format = parse_output_format(opt.format);
  const ClosedForm form = ClosedForm::parse(opt.signal);
  const ClosedFormSignal sig(form, Lattice{opt.step});

  TableDoc doc;
  doc.payload["command"] = "diff";
  doc.payload["signal"] = form.str();
  doc.payload["t_index"] = opt.t;
  doc.payload["step"] = opt.step;

  if (opt.standard) {
    if (opt.order != 1)
      throw Error(Errc::invalid_params, "standard differences support order 1 only");
    const double v = opt.forward ? forward_difference(sig, opt.t)
                                 : backward_difference(sig, opt.t);
    doc.title = "standard difference";
    doc.columns = {"value", "operator"};
    doc.cells = {{fmt_sig(v, 15), opt.forward ? "forward" : "backward"}};
    doc.payload["operator"] = opt.forward ? "standard-forward" : "standard-backward";
    doc.payload["value"] = v;
    render(doc, format, std::cout);
    return 0;
  }

  OperatorConfig cfg;
  cfg.lattice = Lattice{opt.step};
  cfg.summation.max_terms = opt.max_terms;
  cfg.summation.rel_tol = opt.rel_tol;
  const SummationReport rep = exact_difference(sig, opt.order, opt.t, cfg);

  doc.title = "exact difference";
  doc.columns = {"value", "abs_error_estimate", "method", "terms", "converged"};
  doc.cells = {{fmt_sig(rep.value, 15), fmt_sig(rep.abs_error_estimate, 3),
                to_string(rep.method_used), std::to_string(rep.terms_used),
                rep.converged ? "true" : "false"}};
  doc.payload["operator"] = "exact";
  doc.payload["order"] = opt.order;
  doc.payload["value"] = rep.value;
  doc.payload["abs_error_estimate"] = rep.abs_error_estimate;
  doc.payload["method"] = to_string(rep.method_used);
  doc.payload["terms_used"] = rep.terms_used;
  doc.payload["converged"] = rep.converged;
  render(doc, format, std::cout);
  return 0;
}

struct Table1Family {
  const char* label;
  ClosedForm form;
  std::function<double(double)> paper_backward;  // the published closed form
};

int run_table(int which, const std::string& format_name, std::int64_t tmin, std::int64_t tmax) {
  const OutputFormat format = parse_output_format(format_name);
  const Lattice lat{1.0};
  TableDoc doc;
  doc.payload["command"] = "table";
  doc.payload["which"] = which;

  if (which == 1) {
    const double lam = 1.0;
    const std::vector<Table1Family> fams = {
        {"exp:1", ClosedForm::exponential(lam),
         [lam](double t) { return (std::exp(lam) - 1.0) / std::exp(lam) * std::exp(lam * t); }},
        {"sin:1", ClosedForm::sine(lam),
         [lam](double t) { return 2.0 * std::cos(lam * t - lam / 2) * std::sin(lam / 2); }},
        {"cos:1", ClosedForm::cosine(lam),
         [lam](double t) { return -2.0 * std::sin(lam * t - lam / 2) * std::sin(lam / 2); }},
        {"pow:2", ClosedForm::monomial(2), [](double t) { return 2.0 * t - 1.0; }},
        {"pow:3", ClosedForm::monomial(3),
         [](double t) { return 3.0 * t * t - 3.0 * t + 1.0; }},
    };
    doc.title = "derivative vs standard backward difference (T = 1)";
    doc.columns = {"family", "bd_vs_closed_form_max", "bd_vs_derivative_max", "bd_at_t1",
                   "derivative_at_t1"};
    ordered_json rows = ordered_json::array();
    for (const auto& fam : fams) {
      const ClosedFormSignal sig(fam.form, lat);
      const ClosedFormSignal dsig(derivative_closed_form(fam.form, 1), lat);
      double dev_closed = 0.0, dev_deriv = 0.0;
      for (std::int64_t n = tmin; n <= tmax; ++n) {
        const double bd = backward_difference(sig, n);
        dev_closed = std::max(dev_closed, std::abs(bd - fam.paper_backward(double(n))));
        dev_deriv = std::max(dev_deriv, std::abs(bd - dsig.value(n)));
      }
      const double bd1 = backward_difference(sig, 1);
      const double dv1 = dsig.value(1);
      doc.cells.push_back({fam.label, fmt_sig(dev_closed, 3), fmt_sig(dev_deriv, 6),
                           fmt_sig(bd1, 10), fmt_sig(dv1, 10)});
      rows.push_back({{"family", fam.label},
                      {"bd_vs_closed_form_max", dev_closed},
                      {"bd_vs_derivative_max", dev_deriv},
                      {"bd_at_t1", bd1},
                      {"derivative_at_t1", dv1}});
    }
    doc.payload["rows"] = rows;
    render(doc, format, std::cout);
    return 0;
  }

  if (which == 2) {
    const std::vector<std::pair<const char*, ClosedForm>> fams = {
        {"exp:0.5", ClosedForm::exponential(0.5)}, {"sin:2.0", ClosedForm::sine(2.0)},
        {"cos:2.0", ClosedForm::cosine(2.0)},      {"pow:2", ClosedForm::monomial(2)},
        {"pow:3", ClosedForm::monomial(3)},
    };
    OperatorConfig cfg;
    cfg.lattice = lat;
    cfg.summation.max_terms = default_max_terms();
    doc.title = "derivative vs exact difference (order 1, T = 1)";
    doc.columns = {"family", "max_abs_deviation", "max_rel_deviation", "max_error_estimate"};
    ordered_json rows = ordered_json::array();
    for (const auto& [label, form] : fams) {
      const ClosedFormSignal sig(form, lat);
      const ClosedFormSignal dsig(derivative_closed_form(form, 1), lat);
      double dev_abs = 0.0, dev_rel = 0.0, err = 0.0;
      for (std::int64_t n = tmin; n <= tmax; ++n) {
        const SummationReport rep = exact_difference(sig, 1, n, cfg);
        const double target = dsig.value(n);
        const double d = std::abs(rep.value - target);
        dev_abs = std::max(dev_abs, d);
        if (target != 0.0) dev_rel = std::max(dev_rel, d / std::abs(target));
        err = std::max(err, rep.abs_error_estimate);
      }
      doc.cells.push_back(
          {label, fmt_sig(dev_abs, 3), fmt_sig(dev_rel, 3), fmt_sig(err, 3)});
      rows.push_back({{"family", label},
                      {"max_abs_deviation", dev_abs},
                      {"max_rel_deviation", dev_rel},
                      {"max_error_estimate", err}});
    }
    doc.payload["rows"] = rows;
    render(doc, format, std::cout);
    return 0;
  }

  if (which == 3) {
    const auto published = published_comparison_table();
    doc.title = "continuous vs standard-discrete vs exact-discrete growth";
    doc.columns = {"lambda_cm", "lambda_edm", "rate_sdm", "d_percent", "g_factor",
                   "matches_paper"};
    ordered_json rows = ordered_json::array();
    std::size_t idx = 0;
    for (const double lam : comparison_lambdas()) {
      const ComparisonRow row = comparison_row(lam);
      const bool ok = matches_published(row, published[idx++]);
      doc.cells.push_back({fmt_fixed(lam, 1), fmt_fixed(lam, 1), fmt_fixed(row.rate_sdm, 3),
                           fmt_fixed(row.d_percent, 2), fmt_sig(row.g_factor, 4),
                           ok ? "true" : "false"});
      rows.push_back({{"lambda", row.lambda},
                      {"rate_sdm", row.rate_sdm},
                      {"d_percent", row.d_percent},
                      {"g_factor", row.g_factor},
                      {"matches_paper", ok}});
    }
    doc.payload["rows"] = rows;
    render(doc, format, std::cout);
    return 0;
  }

  throw Error(Errc::invalid_params, "table number must be 1, 2 or 3");
}

int run_verify(const std::string& suite, const std::string& format_name) {
  const OutputFormat format = parse_output_format(format_name);
  std::vector<SuiteReport> reports;
  if (suite == "leibniz")
    reports.push_back(verify_leibniz());
  else if (suite == "semigroup")
    reports.push_back(verify_semigroup());
  else if (suite == "inverse")
    reports.push_back(verify_inverse());
  else if (suite == "residuals")
    reports.push_back(verify_residuals());
  else if (suite == "all")
    reports = verify_all();
  else
    throw Error(Errc::invalid_params,
                "unknown suite '" + suite + "' (leibniz|semigroup|inverse|residuals|all)");

  TableDoc doc;
  doc.title = "verification: " + suite;
  doc.columns = {"status", "check", "measured", "tolerance", "note"};
  doc.payload["command"] = "verify";
  doc.payload["suite"] = suite;
  ordered_json rows = ordered_json::array();
  bool all_pass = true;
  std::size_t passed = 0, total = 0;
  for (const auto& rep : reports) {
    all_pass = all_pass && rep.all_pass();
    for (const auto& c : rep.checks) {
      ++total;
      passed += c.pass ? 1 : 0;
      doc.cells.push_back({c.pass ? "PASS" : "FAIL", c.name, fmt_sig(c.measured, 3),
                           fmt_sig(c.tolerance, 3), c.note});
      rows.push_back({{"suite", rep.suite},
                      {"check", c.name},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"note", c.note}});
    }
  }
  doc.payload["checks"] = rows;
  doc.payload["all_pass"] = all_pass;
  render(doc, format, std::cout);
  std::cerr << "verify " << suite << ": " << passed << "/" << total << " checks passed\n";
  return all_pass ? 0 : 1;
}

struct GrowthOptions {
  double lambda = 0.0;
  double s = 0.0, v = 0.0, c = -1.0;
  double a = 0.0, y0 = 1.0, step = 1.0;
  int horizon = 10;
  std::string format = "markdown";
  bool has_lambda = false, has_s = false, has_v = false;
};

int run_growth(const GrowthOptions& opt) {
  const OutputFormat format = parse_output_format(opt.format);
  HarrodDomarParams p{};
  if (opt.has_s || opt.has_v) {
    if (!(opt.has_s && opt.has_v))
      throw Error(Errc::invalid_params, "--s and --v must be given together");
    const double c = opt.c >= 0.0 ? opt.c : 1.0 - opt.s;
    p = HarrodDomarParams{opt.s, opt.v, c, opt.a, opt.y0, opt.step};
    p.validate();
    if (opt.has_lambda && std::abs(p.lambda() - opt.lambda) > 1e-9)
      throw Error(Errc::invalid_params, "--lambda disagrees with s/v");
  } else if (opt.has_lambda) {
    p = HarrodDomarParams::from_lambda(opt.lambda, opt.a, opt.y0, opt.step);
  } else {
    throw Error(Errc::invalid_params, "give --lambda or --s/--v");
  }
  if (opt.horizon < 0) throw Error(Errc::invalid_params, "horizon must be >= 0");

  TableDoc doc;
  doc.title = "Harrod-Domar output growth (CM / SDM / EDM)";
  doc.columns = {"n", "t", "cm", "sdm", "edm", "ratio_cm_sdm"};
  doc.payload["command"] = "growth";
  doc.payload["lambda"] = p.lambda();
  doc.payload["s"] = p.s;
  doc.payload["v"] = p.v;
  doc.payload["A"] = p.A;
  doc.payload["Y0"] = p.Y0;
  doc.payload["step"] = p.T;
  ordered_json rows = ordered_json::array();
  double final_ratio = 1.0;
  for (int n = 0; n <= opt.horizon; ++n) {
    const double t = n * p.T;
    const double cm = cm_solution(p, t);
    const double sdm = sdm_solution(p, n);
    const double edm = edm_solution(p, n);
    const double ratio = sdm != 0.0 ? cm / sdm : std::numeric_limits<double>::quiet_NaN();
    final_ratio = ratio;
    doc.cells.push_back({std::to_string(n), fmt_sig(t, 6), fmt_sig(cm, 9), fmt_sig(sdm, 9),
                         fmt_sig(edm, 9), fmt_sig(ratio, 6)});
    rows.push_back(
        {{"n", n}, {"t", t}, {"cm", cm}, {"sdm", sdm}, {"edm", edm}, {"ratio_cm_sdm", ratio}});
  }
  doc.payload["rows"] = rows;
  doc.payload["final_ratio_cm_sdm"] = final_ratio;
  if (opt.a == 0.0 && opt.horizon == 10)
    doc.payload["g_factor_expected"] = comparison_row(p.lambda() * p.T).g_factor;
  render(doc, format, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite differences on lattice signals and the Harrod-Domar models"};
  app.require_subcommand(1);

  DiffOptions dopt;
  CLI::App* diff = app.add_subcommand("diff", "evaluate a difference operator at one point");
  diff->add_option("--signal", dopt.signal, "signal expression, e.g. exp:0.5 or 2*pow:2+sin:1")
      ->required();
  diff->add_option("--order", dopt.order, "difference order (exact: 1..4)");
  diff->add_option("--t", dopt.t, "lattice index t = n*T");
  diff->add_option("--step", dopt.step, "lattice step T");
  diff->add_flag("--exact", dopt.exact, "use the exact difference (default)");
  diff->add_flag("--standard", dopt.standard, "use the standard one-step difference");
  diff->add_flag("--forward", dopt.forward, "standard difference reads forward");
  diff->add_option("--format", dopt.format, "markdown|csv|json");
  diff->add_option("--max-terms", dopt.max_terms, "series budget");
  diff->add_option("--rel-tol", dopt.rel_tol, "relative tolerance");

  int table_which = 0;
  std::string table_format = "markdown";
  std::int64_t tmin = -5, tmax = 5;
  CLI::App* table = app.add_subcommand("table", "reproduce a comparison table");
  table->add_option("which", table_which, "table number: 1, 2 or 3")->required();
  table->add_option("--format", table_format, "markdown|csv|json");
  table->add_option("--tmin", tmin, "first sample index (tables 1-2)");
  table->add_option("--tmax", tmax, "last sample index (tables 1-2)");

  std::string suite;
  std::string verify_format = "markdown";
  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "leibniz|semigroup|inverse|residuals|all")->required();
  verify->add_option("--format", verify_format, "markdown|csv|json");

  GrowthOptions gopt;
  CLI::App* growth = app.add_subcommand("growth", "simulate the three model variants");
  growth->add_option("--lambda", gopt.lambda, "growth rate s/v")
      ->each([&gopt](const std::string&) { gopt.has_lambda = true; });
  growth->add_option("--s", gopt.s, "marginal propensity to save")
      ->each([&gopt](const std::string&) { gopt.has_s = true; });
  growth->add_option("--v", gopt.v, "investment coefficient")
      ->each([&gopt](const std::string&) { gopt.has_v = true; });
  growth->add_option("--c", gopt.c, "marginal propensity to consume (default 1-s)");
  growth->add_option("--a", gopt.a, "autonomous expenditure A");
  growth->add_option("--y0", gopt.y0, "initial output Y0");
  growth->add_option("--step", gopt.step, "lattice step T");
  growth->add_option("--horizon", gopt.horizon, "number of lattice steps");
  growth->add_option("--format", gopt.format, "markdown|csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (diff->parsed())
      rc = run_diff(dopt);
    else if (table->parsed())
      rc = run_table(table_which, table_format, tmin, tmax);
    else if (verify->parsed())
      rc = run_verify(suite, verify_format);
    else if (growth->parsed())
      rc = run_growth(gopt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return to_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cerr << "completed in " << elapsed.count() << " ms\n";
  return rc;
}
