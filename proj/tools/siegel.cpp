#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "siegel/connection.hpp"
#include "siegel/errors.hpp"
#include "siegel/json_io.hpp"
#include "siegel/metric.hpp"
#include "siegel/qseries.hpp"
#include "siegel/verify.hpp"

using namespace siegel;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegeneracy = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int g = std::stoi(text, &used);
      if (used != text.size()) throw UsageError("bad degree range " + text);
      return {g, g};
    }
    const std::string lo_text = text.substr(0, dots), hi_text = text.substr(dots + 2);
    const int lo = std::stoi(lo_text, &used);
    if (used != lo_text.size()) throw UsageError("bad degree range " + text);
    const int hi = std::stoi(hi_text, &used);
    if (used != hi_text.size()) throw UsageError("bad degree range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("bad degree range " + text);
  }
}

cplx parse_complex(std::string text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty() || s.back() != 'i') throw UsageError("expected a complex number like 0.2+1.1i");
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  try {
    const std::string re = split == std::string::npos ? "0" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im == "+" || im == "-" || im.empty()) im += "1";
    std::size_t used = 0;
    const double x = std::stod(re, &used);
    if (used != re.size()) throw UsageError("bad complex number " + text);
    const double y = std::stod(im, &used);
    if (used != im.size()) throw UsageError("bad complex number " + text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError("bad complex number " + text);
  }
}

Sl2Element parse_sl2(const std::string& name) {
  if (name == "S") return {0, -1, 1, 0};
  if (name == "T") return {1, 1, 0, 1};
  if (name == "ST") return {0, -1, 1, 1};
  if (name == "TS") return {1, -1, 1, 0};
  std::stringstream in(name);
  std::vector<long> values;
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stol(item, &used));
      if (used != item.size()) throw UsageError("bad group element " + name);
    } catch (const std::logic_error&) {
      throw UsageError("bad group element " + name);
    }
  }
  if (values.size() != 4) throw UsageError("group element must be S, T, ST, TS or a,b,c,d");
  const Sl2Element e{values[0], values[1], values[2], values[3]};
  if (e.a * e.d - e.b * e.c != 1) throw UsageError("group element must have determinant 1");
  return e;
}

QSeries named_series(const std::string& form, int terms) {
  if (form == "E2" || form == "G2") return eisenstein(2, terms);
  if (form == "E4") return eisenstein(4, terms);
  if (form == "E6") return eisenstein(6, terms);
  if (form == "Delta") return delta(terms);
  throw UsageError("unknown form " + form);
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

SiegelPoint load_point(const std::string& path, std::optional<int> g) {
  if (path.empty()) {
    if (!g) throw UsageError("either --point or --g is required");
    return SiegelPoint(RealMatrix::Zero(*g, *g), RealMatrix::Identity(*g, *g));
  }
  SiegelPoint z = point_from_json(read_json_file(path));
  if (g && z.degree() != *g) throw UsageError("point degree does not match --g");
  return z;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connections and derivative operators on the Siegel upper half plane"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* metric_cmd = app.add_subcommand("metric", "Emit W and M at a point");
  std::string point_path, out_path;
  metric_cmd->add_option("--point", point_path, "Point file {g, X, Y}")->required();
  metric_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* gamma_cmd = app.add_subcommand("gamma", "Emit the connection table at a point");
  std::optional<int> gamma_g;
  std::string method = "closed";
  gamma_cmd->add_option("--g", gamma_g, "Degree (point defaults to iI)")->check(CLI::Range(1, 5));
  gamma_cmd->add_option("--point", point_path, "Point file {g, X, Y}");
  gamma_cmd->add_option("--method", method, "closed|metricA|metricB|expanded")
      ->check(CLI::IsMember({"closed", "metricA", "metricB", "expanded"}));
  gamma_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  SuiteOptions options;
  std::string range = "1..5", report_path, k_list;
  std::optional<double> tol;
  verify_cmd->add_option("--suite", options.suite, "metric|connection|operators|qseries|all");
  verify_cmd->add_option("--g", range, "Degree range A..B");
  verify_cmd->add_option("--seed", options.seed, "Seed");
  verify_cmd->add_option("--tol", tol, "Override every tolerance");
  verify_cmd->add_option("--k", k_list, "Comma-separated operator orders");
  verify_cmd->add_option("--report", report_path, "JSON report file");
  verify_cmd->add_option("--threads", options.threads, "Worker threads (0 = SIEGEL_THREADS or auto)")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_flag("--timings", options.timings, "Record wall times");
  verify_cmd->add_option("--terms", options.terms, "q-series truncation for g = 1 checks")
      ->check(CLI::PositiveNumber);

  auto* qexp_cmd = app.add_subcommand("qexp", "Print an exact q-expansion");
  std::string form;
  int terms = 10;
  qexp_cmd->add_option("--form", form, "E2|E4|E6|Delta|G2")->required();
  qexp_cmd->add_option("--terms", terms, "Number of coefficients")->check(CLI::PositiveNumber);

  auto* serre_cmd = app.add_subcommand("serre", "Print the Serre derivative of a form");
  serre_cmd->add_option("--form", form, "E4|E6|Delta")->required();
  serre_cmd->add_option("--terms", terms, "Number of coefficients")->check(CLI::PositiveNumber);

  auto* anomaly_cmd = app.add_subcommand("anomaly", "Check the G2 anomaly at one point");
  std::string z_text, gamma_name = "S";
  double anomaly_tol = 1e-6;
  int anomaly_terms = 300;
  anomaly_cmd->add_option("--z", z_text, "Point such as 0.2+1.1i")->required();
  anomaly_cmd->add_option("--gamma", gamma_name, "S|T|ST|TS or a,b,c,d");
  anomaly_cmd->add_option("--terms", anomaly_terms, "Truncation")->check(CLI::PositiveNumber);
  anomaly_cmd->add_option("--tol", anomaly_tol, "Tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (metric_cmd->parsed()) {
      emit(metric_to_json(MetricPair(load_point(point_path, std::nullopt))), out_path);
      return kExitPass;
    }
    if (gamma_cmd->parsed()) {
      const SiegelPoint z = load_point(point_path, gamma_g);
      ConnectionTable table = method == "closed"    ? gamma_closed(z)
                              : method == "metricA" ? gamma_from_metric(z, MetricPath::A)
                              : method == "metricB" ? gamma_from_metric(z, MetricPath::B)
                                                    : gamma_from_metric(z, MetricPath::Expanded);
      emit(gamma_to_json(table), out_path);
      return kExitPass;
    }
    if (verify_cmd->parsed()) {
      if (!is_known_suite(options.suite)) throw UsageError("unknown suite " + options.suite);
      std::tie(options.g_min, options.g_max) = parse_range(range);
      if (options.g_min < 1 || options.g_max > 5 || options.g_min > options.g_max) {
        throw UsageError("degree range must lie within 1..5");
      }
      if (!k_list.empty()) {
        options.k_values.clear();
        std::stringstream in(k_list);
        std::string item;
        while (std::getline(in, item, ',')) {
          try {
            std::size_t used = 0;
            const int k = std::stoi(item, &used);
            if (used != item.size() || k < 0) throw UsageError("bad --k list " + k_list);
            options.k_values.push_back(k);
          } catch (const std::logic_error&) {
            throw UsageError("bad --k list " + k_list);
          }
        }
      }
      if (tol) options.tol = Tolerances::uniform(*tol);
      const VerificationReport report = run_suite(options);
      if (!report_path.empty()) write_json_file(report_path, report.to_json());
      std::cout << "suite " << report.suite << ": " << report.passed() << " passed, " << report.failed()
                << " failed, " << report.records.size() << " records\n";
      for (const auto& r : report.records) {
        if (r.pass) continue;
        std::cout << "FAIL " << r.to_json().dump() << '\n';
      }
      if (report.degeneracies > 0) return kExitDegeneracy;
      return report.all_pass() ? kExitPass : kExitFailure;
    }
    if (qexp_cmd->parsed()) {
      const QSeries series = named_series(form, terms);
      if (form == "G2") {
        const ScaledSeries g2 = g2_series(terms);
        std::cout << "prefactor: " << g2.prefactor.to_string() << '\n';
      }
      std::cout << series.to_string() << '\n';
      return kExitPass;
    }
    if (serre_cmd->parsed()) {
      if (form == "E2" || form == "G2") throw UsageError("the Serre derivative needs a modular form");
      const QSeries derived = serre_derivative(named_series(form, terms));
      std::cout << "weight: " << *derived.weight() << '\n' << derived.to_string() << '\n';
      return kExitPass;
    }
    if (anomaly_cmd->parsed()) {
      const cplx z = parse_complex(z_text);
      if (!(z.imag() > 0.0)) throw UsageError("z must lie in the upper half plane");
      const AnomalyTerms a = g2_anomaly(parse_sl2(gamma_name), z, anomaly_terms);
      const bool pass = a.residual < anomaly_tol;
      Json out = {{"lhs", {a.lhs.real(), a.lhs.imag()}},
                  {"rhs", {a.rhs.real(), a.rhs.imag()}},
                  {"residual", a.residual},
                  {"tol", anomaly_tol},
                  {"pass", pass}};
      std::cout << out.dump(2) << '\n';
      return pass ? kExitPass : kExitFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << '\n';
    return kExitDegeneracy;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what();
    if (e.required_terms() > 0) std::cerr << " (needs --terms " << e.required_terms() << ")";
    std::cerr << '\n';
    return kExitDegeneracy;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
