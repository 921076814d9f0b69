#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nomafran/config.hpp"

namespace nomafran {

struct DropResult {
  std::uint64_t seed = 0;
  SchemeSpec scheme;
  std::size_t q = 1;
  double total_net_utility = 0.0;
  double sum_rate = 0.0;
  double max_mue_interference_w = 0.0;
  double max_intra_cell_interference_w = 0.0;
  bool game_converged = false;
  bool threshold_satisfied = false;
  double final_lambda = 0.0;
  int inner_iterations = 0;
  int outer_iterations = 0;
  std::size_t proposals = 0;
  std::size_t matched_pairs = 0;
  double wall_ms = 0.0;
};

// One drop: topology, channel, cache, matching, power game, metrics.
// Deterministic in (cfg, scheme, seed) apart from wall_ms.
DropResult run_drop(const SimConfig& cfg, const SchemeSpec& scheme, std::uint64_t seed);
// Uses cfg's own scheme and q.
DropResult run_drop(const SimConfig& cfg, std::uint64_t seed);

inline constexpr const char* kCsvHeader =
    "sweep_param,sweep_value,scheme,q,seed,total_net_utility_bps,sum_rate_bps,"
    "max_mue_interference_w,game_converged,inner_iters,outer_iters,proposals,wall_ms";

struct DropTask {
  std::size_t point = 0;   // sweep point index
  std::size_t scheme = 0;  // index into SweepPlan::schemes
  std::uint64_t seed = 0;
};

struct SweepPlan {
  std::string sweep_param;                // "none" without a sweep
  std::vector<std::string> sweep_values;  // "-" without a sweep
  std::vector<SimConfig> point_configs;
  std::vector<SchemeSpec> schemes;
  std::vector<DropTask> tasks;            // ordered by (point, scheme, seed)
};

SweepPlan plan_sweep(const SimConfig& cfg);

// Runs every task, in `execution_order` if given (a permutation of task
// indices), on `threads` workers. Results are indexed like plan.tasks.
std::vector<DropResult> execute_plan(const SweepPlan& plan, unsigned threads = 1,
                                     std::optional<std::span<const std::size_t>> execution_order = {});

struct CsvRow {
  std::string sweep_param;
  std::string sweep_value;
  std::string scheme;
  std::size_t q = 1;
  std::optional<std::uint64_t> seed;  // empty on summary rows
  double total_net_utility = 0.0;
  double sum_rate = 0.0;
  double max_mue_interference_w = 0.0;
  double game_converged = 0.0;  // 0/1, or the converged fraction on summary rows
  double inner_iters = 0.0;
  double outer_iters = 0.0;
  double proposals = 0.0;
  double wall_ms = 0.0;
  // Summary rows only: mean and 95% half-width of total_net_utility.
  double mean = 0.0;
  double ci95 = 0.0;

  bool summary() const { return !seed.has_value(); }
};

// Data rows of each (point, scheme) group followed by its summary row.
std::vector<CsvRow> tabulate(const SweepPlan& plan, const std::vector<DropResult>& results);

struct SweepOptions {
  unsigned threads = 1;
};

std::vector<CsvRow> run_sweep(const SimConfig& cfg, const SweepOptions& options = {});

// Shortest round-trip decimal form.
std::string format_number(double v);
std::string format_row(const CsvRow& row, bool include_wall_ms = true);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool include_wall_ms = true);

struct Summary {
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width
};
Summary summarize(std::span<const double> values);

}  // namespace nomafran
