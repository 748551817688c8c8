#include "siegel/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "siegel/connection.hpp"
#include "siegel/errors.hpp"
#include "siegel/forms.hpp"
#include "siegel/operators.hpp"
#include "siegel/qseries.hpp"
#include "siegel/random.hpp"

namespace siegel {

Tolerances Tolerances::uniform(double tol) {
  Tolerances t;
  for (double* field : {&t.linalg, &t.trace_form, &t.connection, &t.connection_g1, &t.cocycle, &t.mcc,
                        &t.equivariance, &t.forms, &t.kronecker, &t.g_law, &t.chain_rule,
                        &t.finite_difference, &t.derivative_fd, &t.det_weight, &t.same_path,
                        &t.sym_gradient, &t.anomaly, &t.holomorphic, &t.serre_match,
                        &t.modular_evaluation, &t.bracket}) {
    *field = tol;
  }
  return t;
}

CheckRecord CheckRecord::numeric(std::string suite, std::string check, Json params, double residual,
                                 double tol) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.check = std::move(check);
  r.params = std::move(params);
  r.residual = residual;
  r.tol = tol;
  r.pass = residual < tol;
  return r;
}

CheckRecord CheckRecord::exact_match(std::string suite, std::string check, Json params, bool match) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.check = std::move(check);
  r.params = std::move(params);
  r.exact = true;
  r.match = match;
  r.pass = match;
  return r;
}

Json CheckRecord::to_json() const {
  Json out = params;
  out["suite"] = suite;
  out["check"] = check;
  out["pass"] = pass;
  if (exact) {
    out["exact"] = true;
    out["match"] = match;
  } else if (residual) {
    out["residual"] = *residual;
    out["tol"] = tol;
  }
  if (wall_ms) out["wall_ms"] = *wall_ms;
  if (error) out["error"] = *error;
  return out;
}

int VerificationReport::passed() const {
  int n = 0;
  for (const auto& r : records) n += r.pass ? 1 : 0;
  return n;
}

int VerificationReport::failed() const { return static_cast<int>(records.size()) - passed(); }

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const auto& r : records) list.push_back(r.to_json());
  int exact = 0;
  for (const auto& r : records) exact += r.exact ? 1 : 0;
  return {{"version", version},
          {"seed", seed},
          {"suite", suite},
          {"records", list},
          {"summary",
           {{"total", records.size()}, {"passed", passed()}, {"failed", failed()}, {"exact", exact},
            {"degeneracies", degeneracies}}}};
}

bool is_known_suite(const std::string& name) {
  return name == "metric" || name == "connection" || name == "operators" || name == "qseries" || name == "all";
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SIEGEL_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::pair<std::string, CaseAnalysisOutcome>> case_analysis(const SiegelPoint& z) {
  const int g = z.degree();
  const ConnectionTable table = gamma_closed(z);
  const RealMatrix r_mat = MetricPair(z).inverse_imag();
  auto R = [&](int a, int b) { return r_mat(a - 1, b - 1); };
  const auto omega = enumerate_omega(g);
  std::vector<std::pair<std::string, CaseAnalysisOutcome>> out = {
      {"pp_a", {}}, {"pp_b", {}}, {"pp_c", {}}, {"pp_d", {}},
      {"pq_a", {}}, {"pq_b", {}}, {"pq_c", {}}, {"pq_d", {}}};
  auto tally = [&](int bullet, cplx expected, cplx actual) {
    ++out[bullet].second.instances;
    if (expected != actual) ++out[bullet].second.mismatches;
  };
  const cplx i_unit = kImagUnit;
  for (std::size_t kn = 0; kn < omega.size(); ++kn) {
    const int p = omega[kn].i, q = omega[kn].j;
    for (std::size_t in = 0; in < omega.size(); ++in) {
      const int i = omega[in].i, j = omega[in].j;
      for (std::size_t jn = 0; jn < omega.size(); ++jn) {
        const int r = omega[jn].i, s = omega[jn].j;
        const cplx actual = table(static_cast<int>(kn), static_cast<int>(in), static_cast<int>(jn));
        if (p == q) {
          if (i == p && r == p) tally(0, i_unit * R(j, s), actual);
          if (i == p && s == p) tally(1, i_unit * R(j, r), actual);
          if (j == p && r == p) tally(2, i_unit * R(i, s), actual);
          if (j == p && s == p) tally(3, i_unit * R(i, r), actual);
        } else if (i == p && s == q) {
          const cplx half = i_unit * (0.5 * R(j, r));
          if (j == p && r < s) tally(4, half, actual);
          if (j == p && r == s) tally(5, half, actual);
          if (p < j && r < s) tally(6, (j == q && r == p) ? i_unit * R(p, q) : half, actual);
          if (p < j && r == s) tally(7, half, actual);
        }
      }
    }
  }
  return out;
}

namespace {

using Records = std::vector<CheckRecord>;
using CaseFn = std::function<Records()>;

struct CaseList {
  const SuiteOptions& options;
  std::vector<std::function<Records()>> cases;

  void add(const std::string& suite, const std::string& name, Json params, CaseFn body) {
    const bool timings = options.timings;
    cases.push_back([suite, name, params, body = std::move(body), timings]() -> Records {
      const auto start = std::chrono::steady_clock::now();
      Records out;
      try {
        out = body();
      } catch (const DegeneracyError& e) {
        CheckRecord r = CheckRecord::exact_match(suite, name, params, false);
        r.error = std::string("degeneracy: ") + e.what();
        out = {r};
      } catch (const std::exception& e) {
        CheckRecord r = CheckRecord::exact_match(suite, name, params, false);
        r.error = e.what();
        out = {r};
      }
      if (timings) {
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        for (auto& r : out) r.wall_ms = ms;
      }
      return out;
    });
  }
};

Json with(Json base, const Json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) base[it.key()] = it.value();
  return base;
}

double relative(double diff, double scale) { return diff / std::max(1.0, scale); }

int suite_tag(const std::string& suite) {
  if (suite == "metric") return 1;
  if (suite == "connection") return 2;
  if (suite == "operators") return 3;
  return 4;
}

std::vector<int> degrees(const SuiteOptions& o, int lo, int hi) {
  std::vector<int> out;
  for (int g = std::max(o.g_min, lo); g <= std::min(o.g_max, hi); ++g) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------- metric

void add_metric_cases(CaseList& list) {
  const SuiteOptions& o = list.options;
  const Tolerances& t = o.tol;
  const std::string suite = "metric";
  for (int g : degrees(o, 1, 5)) {
    list.add(suite, "omega_rank", {{"g", g}}, [suite, g]() -> Records {
      const auto omega = enumerate_omega(g);
      bool ok = static_cast<int>(omega.size()) == g * (g + 1) / 2;
      for (std::size_t n = 0; n < omega.size(); ++n) {
        ok = ok && omega_rank(omega[n], g) == static_cast<int>(n) + 1;
        ok = ok && (omega[n].i - 1) * (2 * g - omega[n].i) / 2 + omega[n].j == static_cast<int>(n) + 1;
        if (n > 0) ok = ok && omega[n - 1] < omega[n];
      }
      return {CheckRecord::exact_match(suite, "omega_rank", {{"g", g}}, ok)};
    });
    for (int c = 0; c < 100; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, suite_tag(suite), g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "metric_point", params, [suite, g, c, seed, params, t]() -> Records {
        Records out;
        const SiegelPoint z = random_point(g, seed);
        const MetricPair metric(z);
        const RealMatrix& w = metric.w();
        const RealMatrix& m = metric.m();
        const RealMatrix identity = RealMatrix::Identity(w.rows(), w.cols());
        out.push_back(CheckRecord::numeric(suite, "mw_inverse", params, max_abs(m * w - identity), t.linalg));
        const bool symmetric = w == w.transpose() && m == m.transpose();
        const bool positive = Eigen::LLT<RealMatrix>(w).info() == Eigen::Success;
        out.push_back(CheckRecord::exact_match(suite, "w_symmetric_positive", params, symmetric && positive));
        const ComplexMatrix v1 = random_symmetric(g, mix_seed(seed, 1));
        const ComplexMatrix v2 = random_symmetric(g, mix_seed(seed, 2));
        const cplx direct = metric_form(z, v1, v2);
        out.push_back(CheckRecord::numeric(suite, "trace_form", params,
                                           relative(std::abs(direct - metric_form_from_w(w, v1, v2)), std::abs(direct)),
                                           t.trace_form));
        const SymplecticElement gamma = random_symplectic(g, 1 + c % 6, mix_seed(seed, 3));
        const cplx moved = metric_form(act(gamma, z), tangent_pushforward(gamma, z, v1),
                                       tangent_pushforward(gamma, z, v2));
        out.push_back(CheckRecord::numeric(suite, "metric_invariance", params,
                                           relative(std::abs(direct - moved), std::abs(direct)), t.linalg));
        return out;
      });
    }
  }
  for (int g : degrees(o, 1, 3)) {
    for (int c = 0; c < 5; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, suite_tag(suite), 100 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "dM_finite_difference", params, [suite, g, seed, params, t]() -> Records {
        const SiegelPoint z = random_point(g, seed);
        const auto omega = enumerate_omega(g);
        const double h = default_step(z);
        double worst = 0.0;
        for (std::size_t k = 0; k < omega.size(); ++k) {
          for (std::size_t l = 0; l < omega.size(); ++l) {
            auto entry = [k, l](const SiegelPoint& p) { return cplx(metric_M(p)(k, l), 0.0); };
            for (const auto& j : omega) {
              const cplx fd = wirtinger_difference(entry, z, j, h).holomorphic;
              const cplx exact = dM_dZ(z, omega[k], omega[l], j);
              worst = std::max(worst, relative(std::abs(fd - exact), std::abs(exact)));
            }
          }
        }
        return {CheckRecord::numeric(suite, "dM_finite_difference", params, worst, t.derivative_fd)};
      });
    }
    for (int c = 0; c < 67; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, suite_tag(suite), 200 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "group_action", params, [suite, g, c, seed, params, t]() -> Records {
        Records out;
        const SymplecticElement g1 = random_symplectic(g, 1 + c % 4, mix_seed(seed, 1));
        const SymplecticElement g2 = random_symplectic(g, 1 + (c / 4) % 4, mix_seed(seed, 2));
        const SiegelPoint z = random_point(g, mix_seed(seed, 3));
        const SymplecticElement product = g1 * g2;
        out.push_back(CheckRecord::exact_match(suite, "symplectic_exact", params,
                                               is_symplectic(product.full()) && is_symplectic(g1.full())));
        const SiegelPoint mid = act(g2, z);
        const SiegelPoint a = act(product, z);
        const SiegelPoint b = act(g1, mid);
        const double scale = std::max(max_abs(b.real_part()), max_abs(b.imag_part()));
        const double diff = std::max(max_abs(a.real_part() - b.real_part()), max_abs(a.imag_part() - b.imag_part()));
        out.push_back(CheckRecord::numeric(suite, "act_composition", params, relative(diff, scale), t.cocycle));
        const ComplexMatrix lhs = cocycle(product, z);
        const ComplexMatrix rhs = cocycle(g1, mid) * cocycle(g2, z);
        out.push_back(CheckRecord::numeric(suite, "cocycle_identity", params,
                                           relative(max_abs(lhs - rhs), max_abs(rhs)), t.cocycle));
        const RealMatrix im = im_of_action(product, z);
        out.push_back(CheckRecord::numeric(suite, "im_of_action", params,
                                           relative(max_abs(im - a.imag_part()), max_abs(im)), t.cocycle));
        out.push_back(CheckRecord::exact_match(suite, "im_positive", params,
                                               Eigen::LLT<RealMatrix>(im).info() == Eigen::Success));
        const ComplexMatrix v = random_symmetric(g, mix_seed(seed, 4));
        const ComplexMatrix p1 = tangent_pushforward(product, z, v);
        const ComplexMatrix p2 = tangent_pushforward(g1, mid, tangent_pushforward(g2, z, v));
        out.push_back(CheckRecord::numeric(suite, "pushforward_composition", params,
                                           relative(max_abs(p1 - p2), max_abs(p1)), t.cocycle));
        return out;
      });
    }
  }
}

// ---------------------------------------------------------------- connection

void add_connection_cases(CaseList& list) {
  const SuiteOptions& o = list.options;
  const Tolerances& t = o.tol;
  const std::string suite = "connection";
  const int tag = suite_tag(suite);
  for (int g : degrees(o, 1, 4)) {
    for (int c = 0; c < 20; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "gamma_equivalence", params, [suite, g, seed, params, t]() -> Records {
        Records out;
        const SiegelPoint z = random_point(g, seed);
        const ConnectionTable closed = gamma_closed(z);
        double scale = 0.0;
        for (int k = 0; k < closed.size(); ++k) {
          for (int i = 0; i < closed.size(); ++i) {
            for (int j = 0; j < closed.size(); ++j) scale = std::max(scale, std::abs(closed(k, i, j)));
          }
        }
        const std::pair<const char*, MetricPath> paths[] = {
            {"gamma_metric_a", MetricPath::A}, {"gamma_metric_b", MetricPath::B},
            {"gamma_expanded_form", MetricPath::Expanded}};
        for (const auto& [name, path] : paths) {
          const ConnectionTable other = gamma_from_metric(z, path);
          out.push_back(CheckRecord::numeric(suite, name, params, relative(closed.max_difference(other), scale),
                                             t.connection));
          if (g == 1) {
            const cplx expected(0.0, 1.0 / z.imag_part()(0, 0));
            out.push_back(CheckRecord::numeric(suite, std::string(name) + "_g1", params,
                                               std::abs(other(0, 0, 0) - expected), t.connection_g1));
          }
        }
        if (g == 1) {
          const cplx expected(0.0, 1.0 / z.imag_part()(0, 0));
          out.push_back(CheckRecord::numeric(suite, "gamma_closed_g1", params, std::abs(closed(0, 0, 0) - expected),
                                             t.connection_g1));
        }
        out.push_back(CheckRecord::exact_match(
            suite, "table_structure", params,
            is_symmetric_table(closed) && has_closed_form_sparsity(closed) && is_purely_imaginary(closed)));
        return out;
      });
    }
    for (int c = 0; c < 3; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 10 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "case_analysis", params, [suite, g, seed, params]() -> Records {
        Records out;
        for (const auto& [bullet, outcome] : case_analysis(random_point(g, seed))) {
          const bool applicable = g > 1 || bullet.rfind("pp", 0) == 0;
          if (!applicable) continue;
          out.push_back(CheckRecord::exact_match(suite, "case_" + bullet,
                                                 with(params, {{"instances", outcome.instances}}),
                                                 outcome.instances > 0 && outcome.mismatches == 0));
        }
        return out;
      });
    }
  }
  for (int g : degrees(o, 1, 3)) {
    for (int c = 0; c < 50; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 20 + g, c);
      const int length = 1 + c % 6;
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}, {"word_length", length}};
      list.add(suite, "mcc", params, [suite, g, seed, length, params, t]() -> Records {
        const SymplecticElement gamma = random_symplectic(g, length, mix_seed(seed, 1));
        const SiegelPoint z = random_point(g, mix_seed(seed, 2));
        const ComplexMatrix v = random_symmetric(g, mix_seed(seed, 3));
        return {CheckRecord::numeric(suite, "mcc", params, mcc_residual(levi_civita_source(), gamma, z, v), t.mcc)};
      });
    }
    for (int c = 0; c < 20; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 30 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "form_cocycle", params, [suite, g, c, seed, params, t]() -> Records {
        Records out;
        const SymplecticElement g1 = random_symplectic(g, 1 + c % 4, mix_seed(seed, 1));
        const SymplecticElement g2 = random_symplectic(g, 1 + (c / 4) % 4, mix_seed(seed, 2));
        const SiegelPoint z = random_point(g, mix_seed(seed, 3));
        const ComplexMatrix lhs = form_cocycle(g1 * g2, z).s;
        const ComplexMatrix rhs = form_cocycle(g2, z).s * form_cocycle(g1, act(g2, z)).s;
        out.push_back(CheckRecord::numeric(suite, "form_cocycle_property", params,
                                           relative(max_abs(lhs - rhs), max_abs(rhs)), t.cocycle));
        const ComplexMatrix v = random_symmetric(g, mix_seed(seed, 4));
        const double h = 1e-5;
        const ComplexMatrix base = z.matrix();
        auto s_at = [&](double step) { return form_cocycle(g1, SiegelPoint::from_complex(base + step * v)).s; };
        const ComplexMatrix fd = (s_at(h) - s_at(-h)) / (2 * h);
        const ComplexMatrix exact = ds_directional(g1, z, v);
        out.push_back(CheckRecord::numeric(suite, "ds_finite_difference", params,
                                           relative(max_abs(fd - exact), max_abs(exact)), t.derivative_fd));
        return out;
      });
    }
  }
  for (int g : degrees(o, 1, 4)) {
    for (int c = 0; c < 5; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 40 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "form_identities", params, [suite, g, seed, params, t]() -> Records {
        Records out;
        const SiegelPoint z = random_point(g, seed);
        const ConnectionTable table = gamma_closed(z);
        const ComplexMatrix seed_h = kImagUnit * to_complex(MetricPair(z).inverse_imag());
        double worst = 0.0;
        for (const auto& k : enumerate_omega(g)) {
          worst = std::max(worst, form_residual(apply_D(table, constant_jets(generator_form(g, k))),
                                                d_generator_closed(seed_h, k)));
        }
        out.push_back(CheckRecord::numeric(suite, "d_generator", params, worst, t.forms));
        out.push_back(CheckRecord::numeric(
            suite, "d_det", params, form_residual(apply_D(table, constant_jets(det_form(g))), d_det_closed(seed_h)),
            t.forms));
        const TestFunction f = TestFunction::random(g, mix_seed(seed, 1));
        const ComplexForm det = det_form(g);
        for (int k = 1; k <= (g <= 3 ? 2 : 1); ++k) {
          FunctionForm f_detk(g);
          const ComplexForm det_k = power(det, k);
          for (const auto& [m, coefficient] : det_k.terms()) {
            f_detk.add(m, f * coefficient);
          }
          const ComplexForm expanded = apply_D(table, f_detk, z);
          const ComplexForm closed = d_f_detk(seed_h, f.jet(z), k, g).expand();
          out.push_back(CheckRecord::numeric(suite, "d_f_detk", with(params, {{"k", k}}),
                                             form_residual(expanded, closed), t.forms));
        }
        const PolynomialMatrixField g_field = PolynomialMatrixField::random(g, mix_seed(seed, 2));
        out.push_back(CheckRecord::numeric(suite, "d_trace_form", params,
                                           form_residual(apply_D(table, trace_function_form(g_field), z),
                                                         d_trace_form(seed_h, g_field, z)),
                                           t.forms));
        // Leibniz rule on a product of two random forms.
        const FunctionForm a = random_function_form(g, mix_seed(seed, 3));
        const FunctionForm b = random_function_form(g, mix_seed(seed, 4));
        const JetForm ja = to_jets(a, z);
        const JetForm jb = to_jets(b, z);
        const ComplexForm lhs = apply_D(table, ja * jb);
        const ComplexForm rhs = apply_D(table, ja) * values(jb) + values(ja) * apply_D(table, jb);
        out.push_back(CheckRecord::numeric(suite, "leibniz", params, form_residual(lhs, rhs), t.forms));
        bool raises = true;
        for (const auto& [m, coefficient] : a.terms()) {
          FunctionForm single(g);
          single.add(m, coefficient);
          const ComplexForm d = apply_D(table, single, z);
          const auto [lo, hi] = d.degree_range();
          raises = raises && (d.empty() || (lo == static_cast<int>(m.size()) + 1 && hi == lo));
        }
        out.push_back(CheckRecord::exact_match(suite, "degree_raise", params, raises));
        return out;
      });
    }
  }
  if (o.g_min <= 3 && o.g_max >= 1) {
    for (int c = 0; c < 100; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 50, c);
      const Json params = {{"case", c}, {"seed", seed}, {"n", 3}};
      list.add(suite, "kronecker", params, [suite, seed, params, t]() -> Records {
        Rng rng(seed);
        auto random_matrix = [&rng] {
          ComplexMatrix m(3, 3);
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
          }
          return m;
        };
        const ComplexMatrix a = random_matrix(), b = random_matrix(), c = random_matrix(), d = random_matrix();
        const KroneckerTraces general = kronecker_traces(a, b, c, d);
        const KroneckerTraces paired = kronecker_traces(a, b, c, c);
        return {CheckRecord::numeric(suite, "kronecker_mixed_product", params,
                                     relative(std::abs(general.mixed - general.factored), std::abs(general.mixed)),
                                     t.kronecker),
                CheckRecord::numeric(suite, "kronecker_index_sum", params,
                                     relative(std::abs(paired.mixed - paired.index_sum), std::abs(paired.mixed)),
                                     t.kronecker)};
      });
    }
  }
  for (int g : degrees(o, 1, 2)) {
    for (int c = 0; c < 20; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 60 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "equivariance", params, [suite, g, c, seed, params, t]() -> Records {
        const SymplecticElement gamma = random_symplectic(g, 1 + c % 6, mix_seed(seed, 1));
        const SiegelPoint z = random_point(g, mix_seed(seed, 2));
        const FunctionForm form = random_function_form(g, mix_seed(seed, 3));
        return {CheckRecord::numeric(suite, "equivariance", params,
                                     equivariance_residual(levi_civita_source(), gamma, z, form), t.equivariance)};
      });
    }
  }
}

// ---------------------------------------------------------------- operators

const std::vector<Sl2Element>& anomaly_elements() {
  static const std::vector<Sl2Element> elements = {
      {0, -1, 1, 0},   // S
      {1, 1, 0, 1},    // T
      {0, -1, 1, 1},   // ST
      {1, -1, 1, 0},   // TS
      {1, 1, 1, 2},
  };
  return elements;
}

SymplecticElement to_symplectic(const Sl2Element& e) {
  IntMatrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a(0, 0) = e.a;
  b(0, 0) = e.b;
  c(0, 0) = e.c;
  d(0, 0) = e.d;
  return SymplecticElement(a, b, c, d);
}

cplx sample_upper_point(std::uint64_t seed) {
  Rng rng(seed);
  return {rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.4)};
}

void add_operator_cases(CaseList& list) {
  const SuiteOptions& o = list.options;
  const Tolerances& t = o.tol;
  const std::string suite = "operators";
  const int tag = suite_tag(suite);
  for (int g : degrees(o, 1, 3)) {
    for (int k : o.k_values) {
      for (int c = 0; c < 30; ++c) {
        const std::uint64_t seed = mix_seed(o.seed, tag, g * 10 + k, c);
        const int length = 1 + c % 6;
        const Json params = {{"g", g}, {"k", k}, {"case", c}, {"seed", seed}, {"word_length", length}};
        list.add(suite, "nabla_transform", params, [suite, g, k, seed, length, params, t]() -> Records {
          Records out;
          const TestFunction f = TestFunction::random(g, mix_seed(seed, 1));
          const SymplecticElement gamma = random_symplectic(g, length, mix_seed(seed, 2));
          const SiegelPoint z = random_point(g, mix_seed(seed, 3));
          const NablaTransform chain = verify_nabla_transform(f, gamma, z, k, GradientMode::ChainRule);
          out.push_back(CheckRecord::numeric(suite, "nabla_transform", params, chain.matrix_residual, t.chain_rule));
          const NablaTransform fd = verify_nabla_transform(f, gamma, z, k, GradientMode::FiniteDifference);
          out.push_back(CheckRecord::numeric(suite, "nabla_transform_fd", params, fd.matrix_residual,
                                             t.finite_difference));
          if (chain.det_relative) {
            out.push_back(CheckRecord::numeric(suite, "det_weight", with(params, {{"weight", 2 * g * k + 2}}),
                                               *chain.det_relative, t.det_weight));
          }
          return out;
        });
      }
    }
    for (int c = 0; c < 30; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 100 + g, c);
      const int length = 1 + c % 6;
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}, {"word_length", length}};
      list.add(suite, "g_law", params, [suite, g, seed, length, params, t]() -> Records {
        const SymplecticElement gamma = random_symplectic(g, length, mix_seed(seed, 1));
        const SiegelPoint z = random_point(g, mix_seed(seed, 2));
        return {CheckRecord::numeric(suite, "g_law", params, verify_G_law(InverseImaginaryField(), gamma, z), t.g_law)};
      });
    }
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 200 + g, c);
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}};
      list.add(suite, "gradients", params, [suite, g, seed, params, t]() -> Records {
        Records out;
        const TestFunction f = TestFunction::random(g, mix_seed(seed, 1));
        const SiegelPoint z = random_point(g, mix_seed(seed, 2));
        double same = 0.0;
        for (int k = 0; k <= 2; ++k) {
          same = std::max(same, max_abs(nabla(f, z, k) - nabla(f, z, k, InverseImaginaryField())));
        }
        out.push_back(CheckRecord::numeric(suite, "generic_g_same_path", params, same, t.same_path));
        out.push_back(CheckRecord::numeric(suite, "sym_gradient", params, sym_gradient_residual(f, z), t.sym_gradient));
        out.push_back(CheckRecord::numeric(suite, "sym_gradient_det", params,
                                           sym_gradient_residual(TestFunction::determinant(g), z), t.sym_gradient));
        return out;
      });
    }
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, 300 + g, c);
      const int length = 1 + c % 5;
      const Json params = {{"g", g}, {"case", c}, {"seed", seed}, {"word_length", length}};
      list.add(suite, "bracket", params, [suite, g, c, seed, length, params, t]() -> Records {
        Records out;
        const TestFunction f = TestFunction::random(g, mix_seed(seed, 1));
        const TestFunction h = TestFunction::random(g, mix_seed(seed, 2));
        const SymplecticElement gamma =
            SymplecticElement::inversion(g) * random_symplectic(g, length, mix_seed(seed, 3));
        const SiegelPoint z = random_point(g, mix_seed(seed, 4));
        const int r = 1 + c % 2;
        const BracketTransform equal = bracket1_transform(f, h, r, r, gamma, z);
        out.push_back(CheckRecord::numeric(suite, "bracket_equal_weight", with(params, {{"r", r}, {"s", r}}),
                                           equal.residual, t.bracket));
        out.push_back(CheckRecord::exact_match(suite, "bracket_antisymmetry", params, bracket1(f, f, z) == cplx{0.0, 0.0}));
        const int s = r + 1;
        const BracketTransform unequal = bracket1_transform(f, h, r, s, gamma, z);
        const Json rs = with(params, {{"r", r}, {"s", s}, {"defect", unequal.defect_norm},
                                      {"predicted", unequal.predicted_norm}});
        out.push_back(CheckRecord::numeric(suite, "bracket_defect_predicted", rs, unequal.defect_mismatch, t.bracket));
        const double scale = std::max(1.0, unequal.predicted_norm);
        out.push_back(CheckRecord::exact_match(suite, "bracket_defect_detected", rs,
                                               (unequal.residual > 1e-6) == (unequal.predicted_norm > 1e-6 * scale)));
        return out;
      });
    }
  }
  if (o.g_min <= 1) {
    const int terms = o.terms;
    struct Target {
      const char* name;
      int k;
    };
    for (const Target target : {Target{"E4", 2}, Target{"E6", 3}, Target{"Delta", 6}}) {
      for (int c = 0; c < 10; ++c) {
        const std::uint64_t seed = mix_seed(o.seed, tag, 400, c);
        const Json params = {{"g", 1}, {"form", target.name}, {"k", target.k}, {"case", c}, {"seed", seed}};
        list.add(suite, "g2_operator", params, [suite, target, seed, terms, params, t]() -> Records {
          const std::string name = target.name;
          const QSeries series = name == "E4" ? eisenstein(4, terms) : name == "E6" ? eisenstein(6, terms) : delta(terms);
          const QSeriesFunction f(series);
          const EisensteinG2Field g2(terms);
          const cplx z = sample_upper_point(seed);
          auto op = [&](const SiegelPoint& p) { return nabla(f, p, target.k, g2)(0, 0); };
          const SiegelPoint point = point_from_scalar(z);
          const cplx value = op(point);
          const OmegaIndex coordinate{1, 1};
          const cplx dbar = wirtinger_difference(op, point, coordinate, default_step(point)).antiholomorphic;
          const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
          const cplx serre = two_pi_i * evaluate(serre_derivative(series), z);
          // Delta has vanishing Serre derivative, so scale by the cancelling theta term.
          const double scale = std::max(std::abs(serre), std::abs(two_pi_i * evaluate(series.theta(), z)));
          return {CheckRecord::numeric(suite, "g2_holomorphic", params, relative(std::abs(dbar), std::abs(value)),
                                       t.holomorphic),
                  CheckRecord::numeric(suite, "g2_serre_match", params,
                                       std::abs(value - serre) / scale, t.serre_match)};
        });
      }
    }
    for (std::size_t e = 0; e < anomaly_elements().size(); ++e) {
      for (int c = 0; c < 2; ++c) {
        const std::uint64_t seed = mix_seed(o.seed, tag, 500 + e, c);
        const Json params = {{"g", 1}, {"element", e}, {"case", c}, {"seed", seed}};
        list.add(suite, "g2_law", params, [suite, e, seed, terms, params, t]() -> Records {
          const EisensteinG2Field g2(terms);
          return {CheckRecord::numeric(suite, "g2_law", params,
                                       verify_G_law(g2, to_symplectic(anomaly_elements()[e]),
                                                    point_from_scalar(sample_upper_point(seed))),
                                       t.anomaly)};
        });
      }
    }
  }
}

// ---------------------------------------------------------------- qseries

void add_qseries_cases(CaseList& list) {
  const SuiteOptions& o = list.options;
  const Tolerances& t = o.tol;
  const std::string suite = "qseries";
  const int tag = suite_tag(suite);
  const int n = 200;
  list.add(suite, "coefficients", {{"n", n}}, [suite, n]() -> Records {
    Records out;
    auto q = [](std::initializer_list<long> values) {
      std::vector<mpq_class> c;
      for (long v : values) c.emplace_back(v);
      return QSeries(c);
    };
    out.push_back(CheckRecord::exact_match(suite, "e2_coefficients", {{"n", 4}}, eisenstein(2, 4) == q({1, -24, -72, -96})));
    out.push_back(CheckRecord::exact_match(suite, "e4_coefficients", {{"n", 3}}, eisenstein(4, 3) == q({1, 240, 2160})));
    out.push_back(CheckRecord::exact_match(suite, "e6_coefficients", {{"n", 3}}, eisenstein(6, 3) == q({1, -504, -16632})));
    out.push_back(CheckRecord::exact_match(suite, "delta_coefficients", {{"n", 5}}, delta(5) == q({0, 1, -24, 252, -1472})));
    const QSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n), d = delta(n);
    out.push_back(CheckRecord::exact_match(suite, "delta_relation", {{"n", n}},
                                           mpq_class(1728) * d + e6 * e6 == e4 * e4 * e4));
    out.push_back(CheckRecord::exact_match(suite, "ramanujan_e4", {{"n", n}},
                                           serre_derivative(e4) == rational(-1, 3) * e6));
    out.push_back(CheckRecord::exact_match(suite, "ramanujan_e6", {{"n", n}},
                                           serre_derivative(e6) == rational(-1, 2) * (e4 * e4)));
    out.push_back(CheckRecord::exact_match(suite, "ramanujan_delta", {{"n", n}}, serre_derivative(d).is_zero()));
    const QSeries e2 = eisenstein(2, n);
    out.push_back(CheckRecord::exact_match(suite, "product_commutative", {{"n", n}}, e2 * e4 == e4 * e2));
    out.push_back(CheckRecord::exact_match(suite, "product_associative", {{"n", n}}, (e2 * e4) * e6 == e2 * (e4 * e6)));
    const Membership e4_in = membership_in_Mw(e4, 4);
    out.push_back(CheckRecord::exact_match(suite, "membership_e4", {{"w", 4}},
                                           e4_in.member && e4_in.coordinates == std::vector<mpq_class>{1}));
    const Membership serre_in = membership_in_Mw(serre_derivative(e4), 6);
    out.push_back(CheckRecord::exact_match(suite, "membership_serre_e4", {{"w", 6}},
                                           serre_in.member && serre_in.coordinates == std::vector<mpq_class>{rational(-1, 3)}));
    out.push_back(CheckRecord::exact_match(suite, "weight2_rejects_e2", {{"w", 2}}, !membership_in_Mw(e2, 2).member));
    out.push_back(CheckRecord::exact_match(suite, "weight2_accepts_zero", {{"w", 2}},
                                           membership_in_Mw(QSeries::constant(0, n, 2), 2).member));
    return out;
  });
  for (int w = 4; w <= 24; w += 2) {
    list.add(suite, "serre_membership", {{"w", w}}, [suite, w]() -> Records {
      Records out;
      const int terms = 60;
      const ModularBasis basis = modular_basis(w, terms);
      out.push_back(CheckRecord::exact_match(suite, "basis_dimension", {{"w", w}},
                                             static_cast<int>(basis.elements.size()) == classical_dimension(w)));
      for (std::size_t b = 0; b < basis.elements.size(); ++b) {
        const QSeries derived = serre_derivative(basis.elements[b]);
        out.push_back(CheckRecord::exact_match(
            suite, "serre_membership",
            {{"w", w}, {"a", basis.exponents[b].first}, {"b", basis.exponents[b].second}},
            membership_in_Mw(derived, w + 2).member && derived.weight() == w + 2));
      }
      return out;
    });
  }
  list.add(suite, "bracket_classical", {{"n", 80}}, [suite]() -> Records {
    Records out;
    const int terms = 80;
    const QSeries e4 = eisenstein(4, terms), e6 = eisenstein(6, terms), d = delta(terms);
    struct Pair {
      const char* name;
      QSeries f, h;
    };
    const std::vector<Pair> pairs = {
        {"delta_e4cubed", d, (e4 * e4 * e4).with_weight(12)},
        {"e4e6sq_e4fourth", (e4 * e6 * e6).with_weight(16), (e4 * e4 * e4 * e4).with_weight(16)},
        {"e6_e6", e6, e6},
        {"e4_e4", e4, e4},
    };
    for (const auto& p : pairs) {
      const QSeries b = bracket1_classical(p.f, p.h);
      const int w = *b.weight();
      out.push_back(CheckRecord::exact_match(suite, "bracket_cusp", {{"pair", p.name}, {"w", w}}, in_cusp_space(b, w)));
    }
    out.push_back(CheckRecord::exact_match(suite, "bracket_self_zero", {{"pair", "e4_e4"}},
                                           bracket1_classical(e4, e4).is_zero()));
    return out;
  });
  const int terms = o.terms;
  for (std::size_t e = 0; e < anomaly_elements().size(); ++e) {
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t seed = mix_seed(o.seed, tag, e, c);
      const Json params = {{"element", e}, {"case", c}, {"seed", seed}, {"terms", terms}};
      list.add(suite, "anomaly", params, [suite, e, seed, terms, params, t]() -> Records {
        const AnomalyTerms a = g2_anomaly(anomaly_elements()[e], sample_upper_point(seed), terms);
        return {CheckRecord::numeric(suite, "g2_anomaly", params, a.residual, t.anomaly)};
      });
    }
  }
  for (int c = 0; c < 10; ++c) {
    const std::uint64_t seed = mix_seed(o.seed, tag, 100, c);
    const Json params = {{"case", c}, {"seed", seed}, {"terms", terms}};
    list.add(suite, "modular_evaluation", params, [suite, seed, terms, params, t]() -> Records {
      Records out;
      const cplx z = sample_upper_point(seed);
      const std::pair<const char*, QSeries> forms[] = {
          {"E4", eisenstein(4, terms)}, {"E6", eisenstein(6, terms)}, {"Delta", delta(terms)}};
      for (const auto& [name, series] : forms) {
        double worst = 0.0;
        for (const auto& element : anomaly_elements()) {
          const cplx j = static_cast<double>(element.c) * z + static_cast<double>(element.d);
          const cplx lhs = evaluate(series, mobius(element, z));
          const cplx rhs = std::pow(j, *series.weight()) * evaluate(series, z);
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        }
        out.push_back(CheckRecord::numeric(suite, "modular_evaluation", with(params, {{"form", name}}), worst,
                                           t.modular_evaluation));
      }
      return out;
    });
  }
}

}  // namespace

VerificationReport run_suite(const SuiteOptions& options) {
  if (!is_known_suite(options.suite)) throw ContractViolation("unknown suite " + options.suite);
  if (options.g_min < 1 || options.g_max > 5 || options.g_min > options.g_max) {
    throw DomainError("degree range must lie within 1..5");
  }
  CaseList list{options, {}};
  const bool all = options.suite == "all";
  if (all || options.suite == "metric") add_metric_cases(list);
  if (all || options.suite == "connection") add_connection_cases(list);
  if (all || options.suite == "operators") add_operator_cases(list);
  if (all || options.suite == "qseries") add_qseries_cases(list);

  const auto results = run_ordered(list.cases, resolve_threads(options.threads));
  VerificationReport report;
  report.seed = options.seed;
  report.suite = options.suite;
  for (const auto& records : results) {
    for (const auto& r : records) {
      if (r.error && r.error->rfind("degeneracy", 0) == 0) ++report.degeneracies;
      report.records.push_back(r);
    }
  }
  return report;
}

}  // namespace siegel
