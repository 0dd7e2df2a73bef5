#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kcpt/ladder_algebra.hpp"
#include "kcpt/oracle.hpp"
#include "kcpt/superoperators.hpp"
#include "kcpt/transforms.hpp"

namespace kcpt {

struct ProblemSpec {
  enum class Builtin { Quartic, HenonHeiles, Custom };

  std::string name = "custom";
  std::vector<Rational> omega;
  /// α-order -> polynomial in q_k, p_k; orders start at 1.
  std::map<int, PhaseSpacePolynomial> perturbation;
  Builtin builtin = Builtin::Custom;

  std::size_t modes() const { return omega.size(); }

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Expression grammar: sums, products, nonnegative integer powers and parentheses over
/// rational literals p or p/q and the symbols q1..qd, p1..pd. Products keep operator order
/// within a mode; factors of distinct modes commute and are sorted by mode.
/// `line` and `column_offset` only position error messages.
PhaseSpacePolynomial parse_polynomial(std::string_view text, std::size_t line = 1, std::size_t column_offset = 0);

/// Line-oriented problem file:
///   # comment
///   name <word>
///   modes <d>
///   omega <r1> ... <rd>
///   perturb <order> <polynomial>
/// or the single directive `system quartic|henon-heiles`.
ProblemSpec parse_problem(std::string_view text);
std::string serialize_problem(const ProblemSpec& spec);
ProblemSpec builtin_problem(ProblemSpec::Builtin which);

ModeSystem problem_system(const ProblemSpec& spec);
/// H0 + Σ_k α^k V_k through α^order.
AlphaSeries problem_hamiltonian(const ProblemSpec& spec, std::size_t order);

/// One record per term: {alpha, dagger, lower, sqrt_hbar, re, im}, canonical order.
nlohmann::json series_to_json(const AlphaSeries& s);
/// Inverse of series_to_json; `modes` fixes the record width, `order` the series length
/// (defaults to the largest alpha present). Throws ParseError on malformed records.
AlphaSeries series_from_json(const nlohmann::json& records, std::size_t modes, std::optional<std::size_t> order = {});

BlockDiagonalResult run_method(const ProblemSpec& spec, Method method, std::size_t order,
                               const std::optional<AlphaSeries>& shift = std::nullopt);

struct RunReport {
  std::string problem;
  Method method = Method::Kato;
  std::size_t order = 0;
  double wall_time = 0.0;                    // seconds, whole transformation
  std::vector<std::size_t> effective_terms;  // per α-order of H̃
  std::vector<std::size_t> generator_terms;  // per α-order of the generator
  std::size_t peak_terms = 0;
};

RunReport make_report(const ProblemSpec& spec, const BlockDiagonalResult& result, double wall_time);

/// Deterministic result document (no timings).
nlohmann::json result_to_json(const ProblemSpec& spec, const BlockDiagonalResult& result);
std::string result_to_text(const ProblemSpec& spec, const BlockDiagonalResult& result);

struct BenchmarkOptions {
  std::vector<Method> methods{Method::Kato, Method::VanVleck, Method::Magnus};
  std::size_t max_order = 2;
  std::size_t repetitions = 1;
  /// A run slower than this is flagged and higher orders of that method are skipped.
  std::optional<double> timeout_seconds;
};

/// Runs orders 2..max_order for each method; `emit` receives one JSON object per (method, order).
void benchmark(const ProblemSpec& spec, const BenchmarkOptions& options,
               const std::function<void(const nlohmann::json&)>& emit);

/// True when a benchmark line carries every field with the expected type.
bool benchmark_record_valid(const nlohmann::json& record);

nlohmann::json oracle_report_to_json(const EigenvalueReport& report);

}  // namespace kcpt
