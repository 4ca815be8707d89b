// qig: command-line driver for the qubit information-geometry library.
//
// Exit codes: 0 success/pass, 1 usage error, 2 violation found,
// 3 inconclusive, 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qig/acceptance.hpp"
#include "qig/error.hpp"
#include "qig/info_geometry.hpp"
#include "qig/io.hpp"
#include "qig/monotonicity.hpp"
#include "qig/scheme_solver.hpp"
#include "qig/tomography.hpp"

namespace {

using namespace qig;

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kInconclusive = 3, kNumerical = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": bad number '" + tok + "'");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw UsageError(std::string(flag) + ": expected " + std::to_string(expected) + " values");
  }
  return out;
}

PetzFunction function_or_usage(const std::string& spec) {
  try {
    return parse_function_spec(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

SpectralMap scheme_or_usage(const std::string& spec) {
  try {
    return parse_scheme_spec(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Writes to `path`, or stdout when path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open " + path + " for writing");
  write(os);
}

// "tsallis:q" and "vn" use the direct closed forms; "petz-<spec>" and every
// other catalog id go through the Petz form.
MetricCoeffs metric_for(const std::string& spec) {
  if (spec.rfind("petz-", 0) == 0) return petz_metric(function_or_usage(spec.substr(5)));
  const SpecParts parts = [&] {
    try {
      return split_spec(spec);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  if ((parts.id == "vn" || parts.id == "von-neumann") && parts.params.empty()) return von_neumann_metric();
  if (parts.id == "tsallis" && parts.params.size() == 1) return tsallis_metric(parts.params[0]);
  return petz_metric(function_or_usage(spec));
}

struct TomogramArgs {
  std::string bloch = "0,0,0";
  std::string quorum = "adapted";
  std::string scheme;
  std::string out;
};

int cmd_tomogram(const TomogramArgs& a) {
  const auto y = parse_list(a.bloch, 3, "--bloch");
  const QubitDensity rho = [&] {
    try {
      return QubitDensity::from_bloch({y[0], y[1], y[2]});
    } catch (const Error& e) {
      throw UsageError(std::string("--bloch: ") + e.what());
    }
  }();
  Quorum quorum = standard_quorum();
  if (a.quorum == "adapted") {
    quorum = rotated_quorum(rho.polar().theta, rho.polar().phi);
  } else if (a.quorum != "standard") {
    throw UsageError("--quorum must be adapted or standard");
  }
  QubitDensity state = rho;
  if (!a.scheme.empty()) state = scheme_or_usage(a.scheme).apply(rho);
  Json j = to_json(tomograms(state, quorum));
  j["bloch"] = {y[0], y[1], y[2]};
  j["scheme"] = a.scheme.empty() ? "identity" : a.scheme;
  emit(a.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kOk;
}

int cmd_reconstruct(const std::string& in) {
  std::ifstream is(in);
  if (!is) throw UsageError("cannot read " + in);
  Json j;
  try {
    j = Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  const BlochVector y = reconstruct_bloch(tomogram_from_json(j));
  std::cout << Json{{"bloch", {y.y1, y.y2, y.y3}}, {"w", y.norm()}}.dump(2) << '\n';
  return kOk;
}

struct MetricArgs {
  std::string f = "vn";
  int grid = 101;
  std::string range = "-0.99,0.99";
  std::string pullback;
  std::string out;
};

int cmd_metric(const MetricArgs& a) {
  if (a.grid < 2) throw UsageError("--grid must be at least 2");
  const auto r = parse_list(a.range, 2, "--range");
  const MetricCoeffs g = metric_for(a.f);
  std::optional<SpectralMap> map;
  std::optional<MetricCoeffs> quotient;
  if (!a.pullback.empty()) {
    map = scheme_or_usage(a.pullback);
    quotient = conformal_quotient(pullback_metric(g, *map), *map);
  }
  std::vector<MetricRow> rows;
  for (int k = 0; k < a.grid; ++k) {
    const double w = k == a.grid - 1 ? r[1] : r[0] + (r[1] - r[0]) * k / (a.grid - 1);
    MetricRow row{w, g.g_w(w), g.g_perp(w), std::nullopt, std::nullopt};
    if (map) {
      row.conformal = conformal_factor(*map, w);
      row.extracted_h = std::abs(w) < 1e-8 ? 1.0 : w * w / ((1.0 + w) * quotient->g_perp(w));
    }
    rows.push_back(row);
  }
  emit(a.out, [&](std::ostream& os) { write_metric_csv(os, rows); });
  return kOk;
}

struct FunctionArgs {
  std::string f = "vn";
  int grid = 121;
  std::string range = "1e-3,1e3";
  std::string out;
};

int cmd_function(const FunctionArgs& a) {
  if (a.grid < 2) throw UsageError("--grid must be at least 2");
  const auto r = parse_list(a.range, 2, "--range");
  if (!(r[0] > 0.0 && r[1] > r[0])) throw UsageError("--range must satisfy 0 < lo < hi");
  const PetzFunction f = function_or_usage(a.f);
  std::vector<double> ts;
  for (int k = 0; k < a.grid; ++k) {
    ts.push_back(std::exp(std::log(r[0]) + (std::log(r[1]) - std::log(r[0])) * k / (a.grid - 1)));
  }
  emit(a.out, [&](std::ostream& os) { write_function_csv(os, f, ts); });
  return kOk;
}

struct MonotoneArgs {
  std::string f;
  std::string test = "loewner";
  std::string region = "-10,10,0,2";
  std::string grid = "400,200";
  std::uint64_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  int dim = 2;
  unsigned workers = 1;
  double tolerance = 0.0;
  std::string out;
};

int cmd_monotone(const MonotoneArgs& a) {
  const PetzFunction f = function_or_usage(a.f);
  MonotonicityReport report;
  if (a.test == "loewner") {
    const auto r = parse_list(a.region, 4, "--region");
    const auto g = parse_list(a.grid, 2, "--grid");
    report = loewner_scan(f, Region{r[0], r[1], r[2], r[3]},
                          GridResolution{static_cast<int>(g[0]), static_cast<int>(g[1])},
                          a.tolerance > 0.0 ? a.tolerance : kLoewnerTolerance);
  } else if (a.test == "matrix" || a.test == "cptp") {
    SearchOptions s;
    s.samples = a.samples;
    s.seed = a.seed;
    s.dim = a.dim;
    s.workers = a.workers;
    if (a.tolerance > 0.0) s.tolerance = a.tolerance;
    report = a.test == "matrix" ? matrix_monotonicity_test(f, s) : metric_monotonicity_test(f, s);
  } else {
    throw UsageError("--test must be loewner, matrix or cptp");
  }
  emit(a.out, [&](std::ostream& os) { os << to_json(report).dump(2) << '\n'; });
  if (!a.out.empty() && a.out != "-") {
    std::cerr << a.test << ' ' << f.spec() << ": " << to_string(report.verdict) << '\n';
  }
  switch (report.verdict) {
    case Verdict::Pass: return kOk;
    case Verdict::Violation: return kViolation;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct OdeArgs {
  std::string f;
  std::string h;
  double w0 = 0.1;
  std::string wt0 = "auto";
  int branch = -1;
  std::string range;
  int points = 181;
  std::string method = "numeric";
  std::string out;
  std::string record;
};

int cmd_scheme_ode(const OdeArgs& a) {
  if (a.branch != 1 && a.branch != -1) throw UsageError("--branch must be +1 or -1");
  const PetzFunction f = function_or_usage(a.f);
  const PetzFunction h = function_or_usage(a.h);
  double wt0 = 0.0;
  if (a.wt0 == "auto") {
    // The exponential-scheme pair has a known solution; elsewhere seed the
    // regular family w~ ~ c w with c = branch.
    if (f.kind() == PetzKind::VonNeumann && h.kind() == PetzKind::ExpScheme) {
      wt0 = exponential_seed(h.params().at(0), a.w0);
    } else {
      wt0 = a.branch * a.w0;
    }
  } else {
    wt0 = parse_list(a.wt0, 1, "--wt0")[0];
  }
  double lo = 0.0, hi = 0.0;
  if (!a.range.empty()) {
    const auto r = parse_list(a.range, 2, "--range");
    lo = r[0];
    hi = r[1];
  }

  OdeSolution sol;
  int code = kOk;
  try {
    if (a.method == "numeric") {
      OdeOptions o;
      o.w_min = lo;
      o.w_max = hi;
      o.output_points = a.points;
      sol = solve_ode(f, h, a.w0, wt0, a.branch, o);
    } else if (a.method == "separable") {
      if (f.kind() != PetzKind::Power || h.kind() != PetzKind::Power) {
        throw UsageError("--method separable needs power:a and power:b");
      }
      SeparableOptions o;
      o.w_min = lo;
      o.w_max = hi;
      o.output_points = a.points;
      sol = solve_separable_power(f.params().at(0), h.params().at(0), a.w0, wt0, o);
    } else {
      throw UsageError("--method must be numeric or separable");
    }
  } catch (const SolveError& e) {
    std::cerr << "qig: " << e.what() << " (partial grid written)\n";
    sol = e.partial();
    code = kNumerical;
  }
  emit(a.out, [&](std::ostream& os) { write_solution_csv(os, sol); });
  if (code != kOk) return code;

  const VerificationRecord rec = verify_solution(sol, f, h);
  const std::string text = to_json(rec).dump(2);
  if (!a.record.empty()) {
    emit(a.record, [&](std::ostream& os) { os << text << '\n'; });
  } else {
    std::cerr << text << '\n';
  }
  return rec.passed ? kOk : kNumerical;
}

struct VerifyArgs {
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> only;
  unsigned workers = 1;
  std::string out;
};

int cmd_verify_all(const VerifyArgs& a) {
  AcceptanceOptions o;
  o.seed = a.seed;
  o.only = a.only;
  o.workers = a.workers;
  std::vector<CriterionResult> results;
  try {
    results = run_acceptance(o);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  bool all = true;
  Json j = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("%-4s %2d %-24s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                 {"seconds", r.seconds}});
  }
  std::fflush(stdout);
  if (!a.out.empty()) {
    emit(a.out, [&](std::ostream& os) { os << Json{{"seed", a.seed}, {"criteria", j}}.dump(2) << '\n'; });
  }
  return all ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit information geometry: tomograms, monotone metrics, scheme changes"};
  app.require_subcommand(1);
  // scheme-ode takes --h, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");

  TomogramArgs tom;
  auto* t = app.add_subcommand("tomogram", "Tomograms of a state on a quorum (JSON)");
  t->add_option("--bloch", tom.bloch, "Bloch vector x,y,z")->required();
  t->add_option("--quorum", tom.quorum, "adapted (rotated to the state) or standard")
      ->capture_default_str();
  t->add_option("--scheme", tom.scheme, "apply a scheme first: identity or exp:beta");
  t->add_option("-o,--out", tom.out, "output file (default stdout)");

  std::string recon_in;
  auto* rc = app.add_subcommand("reconstruct", "Bloch vector from a tomogram JSON file");
  rc->add_option("input", recon_in, "tomogram JSON")->required();

  MetricArgs met;
  auto* m = app.add_subcommand("metric", "Metric coefficients along w (CSV)");
  m->add_option("--f", met.f, "function spec, e.g. vn, tsallis:0.5, petz-tsallis:0.5")
      ->capture_default_str();
  m->add_option("--grid", met.grid, "number of w points")->capture_default_str();
  m->add_option("--range", met.range, "w range lo,hi")->capture_default_str();
  m->add_option("--pullback", met.pullback, "scheme, e.g. exp:1; appends A and extracted h");
  m->add_option("-o,--out", met.out, "output file (default stdout)");

  FunctionArgs fun;
  auto* fn = app.add_subcommand("function", "Tabulate a Petz function on a log grid (CSV)");
  fn->add_option("--f", fun.f, "function spec")->capture_default_str();
  fn->add_option("--grid", fun.grid, "number of t points")->capture_default_str();
  fn->add_option("--range", fun.range, "t range lo,hi")->capture_default_str();
  fn->add_option("-o,--out", fun.out, "output file (default stdout)");

  MonotoneArgs mon;
  auto* mo = app.add_subcommand("monotone", "Monotonicity tests (JSON report)");
  mo->add_option("--f", mon.f, "function spec")->required();
  mo->add_option("--test", mon.test, "loewner, matrix or cptp")->capture_default_str();
  mo->add_option("--region", mon.region, "loewner box re_min,re_max,im_min,im_max")
      ->capture_default_str();
  mo->add_option("--grid", mon.grid, "loewner resolution re,im")->capture_default_str();
  mo->add_option("--samples", mon.samples, "randomized samples")->capture_default_str();
  mo->add_option("--seed", mon.seed, "seed")->envname("QIG_SEED")->capture_default_str();
  mo->add_option("--dim", mon.dim, "matrix dimension (2 or 3)")->capture_default_str();
  mo->add_option("--workers", mon.workers, "threads")->capture_default_str();
  mo->add_option("--tolerance", mon.tolerance, "violation threshold (default per test)");
  mo->add_option("-o,--out", mon.out, "output file (default stdout)");

  OdeArgs ode;
  auto* so = app.add_subcommand("scheme-ode", "Solve the scheme ODE between two Petz functions");
  so->set_help_flag("--help", "Print this help message and exit");
  so->add_option("--f", ode.f, "target function spec")->required();
  so->add_option("--h", ode.h, "source function spec")->required();
  so->add_option("--w0", ode.w0, "initial w")->capture_default_str();
  so->add_option("--wt0", ode.wt0, "initial w~, or auto")->capture_default_str();
  so->add_option("--branch", ode.branch, "sign of dw~/dw")->capture_default_str();
  so->add_option("--range", ode.range, "w range lo,hi (default 0.01,0.99 on the side of w0)");
  so->add_option("--points", ode.points, "output grid size")->capture_default_str();
  so->add_option("--method", ode.method, "numeric or separable")->capture_default_str();
  so->add_option("-o,--out", ode.out, "solution CSV (default stdout)");
  so->add_option("--record", ode.record, "verification record JSON (default stderr)");

  VerifyArgs ver;
  auto* va = app.add_subcommand("verify-all", "Run the acceptance criteria");
  va->add_option("--seed", ver.seed, "seed")->envname("QIG_SEED")->capture_default_str();
  va->add_option("--only", ver.only, "criterion names or numbers")->delimiter(',');
  va->add_option("--workers", ver.workers, "threads for Monte-Carlo criteria")->capture_default_str();
  va->add_option("-o,--out", ver.out, "also write results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*t) return cmd_tomogram(tom);
    if (*rc) return cmd_reconstruct(recon_in);
    if (*m) return cmd_metric(met);
    if (*fn) return cmd_function(fun);
    if (*mo) return cmd_monotone(mon);
    if (*so) return cmd_scheme_ode(ode);
    if (*va) return cmd_verify_all(ver);
  } catch (const UsageError& e) {
    std::cerr << "qig: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "qig: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
