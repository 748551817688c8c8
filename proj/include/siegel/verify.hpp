#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "siegel/json_io.hpp"

namespace siegel {

inline constexpr const char* kVersion = "1.0.0";

/// Default tolerances per family of identities.
struct Tolerances {
  double linalg = 1e-9;
  double trace_form = 1e-10;
  double connection = 1e-10;
  double connection_g1 = 1e-12;
  double cocycle = 1e-10;
  double mcc = 1e-8;
  double equivariance = 1e-8;
  double forms = 1e-10;
  double kronecker = 1e-12;
  double g_law = 1e-10;
  double chain_rule = 1e-7;
  double finite_difference = 1e-5;
  double derivative_fd = 1e-7;
  double det_weight = 1e-7;
  double same_path = 1e-14;
  double sym_gradient = 1e-10;
  double anomaly = 1e-6;
  double holomorphic = 1e-6;
  double serre_match = 1e-8;
  double modular_evaluation = 1e-8;
  double bracket = 1e-7;

  /// Every tolerance set to the same value.
  static Tolerances uniform(double tol);
};

struct CheckRecord {
  std::string suite;
  std::string check;
  Json params = Json::object();
  std::optional<double> residual;  // absent for exact records
  bool exact = false;
  bool match = false;              // outcome of an exact record
  double tol = 0.0;
  bool pass = false;
  std::optional<double> wall_ms;
  std::optional<std::string> error;

  static CheckRecord numeric(std::string suite, std::string check, Json params, double residual, double tol);
  static CheckRecord exact_match(std::string suite, std::string check, Json params, bool match);
  Json to_json() const;
};

struct VerificationReport {
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string suite;
  std::vector<CheckRecord> records;
  int degeneracies = 0;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
  Json to_json() const;
};

struct SuiteOptions {
  std::string suite = "all";
  int g_min = 1;
  int g_max = 5;
  std::uint64_t seed = 42;
  std::vector<int> k_values{1, 2};
  Tolerances tol;
  int threads = 0;        // 0: SIEGEL_THREADS, then hardware concurrency
  bool timings = false;   // wall times break bit-for-bit reproducibility
  int terms = 300;        // q-series truncation for numeric g = 1 checks
};

bool is_known_suite(const std::string& name);

/// Runs a suite. Cases execute concurrently and merge in case order, so the
/// report depends only on the options.
VerificationReport run_suite(const SuiteOptions& options);

/// Worker count from an explicit request, SIEGEL_THREADS, or the hardware.
int resolve_threads(int requested);

/// Runs tasks on a pool and returns their results in task order.
template <class T>
std::vector<T> run_ordered(const std::vector<std::function<T()>>& tasks, int threads) {
  std::vector<T> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

// Individual checks shared with the acceptance runner.

struct CaseAnalysisOutcome {
  int instances = 0;
  int mismatches = 0;
};

/// The eight bullets of the Gamma case analysis, keyed "pp_a".."pp_d" and
/// "pq_a".."pq_d", each compared exactly against the closed form.
std::vector<std::pair<std::string, CaseAnalysisOutcome>> case_analysis(const SiegelPoint& z);

}  // namespace siegel
