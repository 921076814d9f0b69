#include "nomafran/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/matching.hpp"
#include "nomafran/phy_noma.hpp"
#include "nomafran/power_game.hpp"
#include "nomafran/topology.hpp"

namespace nomafran {

namespace {

// Independent generator per (seed, stream) so topology and fading draws never
// share state.
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kTopologyStream = 0x746f706f;
constexpr std::uint32_t kChannelStream = 0x6368616e;

}  // namespace

DropResult run_drop(const SimConfig& cfg, const SchemeSpec& scheme, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();

  auto topo_rng = stream(seed, kTopologyStream);
  const NetworkTopology topology = generate_topology(cfg.geometry, topo_rng);
  auto ch_rng = stream(seed, kChannelStream);
  const ChannelState ch = draw_channel_gains(topology, cfg.spectrum, cfg.channel, ch_rng);
  const CachePlacement cache =
      place_cache(content_popularity(cfg.cache.n_contents, cfg.cache.zipf_exponent), cfg.cache, topology);

  const std::size_t q = scheme.effective_q();
  const std::size_t q_ue = scheme.kind == SchemeKind::ofdma ? 1 : cfg.q_ue;
  SubsetEvaluator eval(ch, cache, cfg.utility, q);
  MatchingResult matched = run_matching(eval, q_ue);
  GameResult game = run_power_game(matched.matching, ch, cache, cfg.utility);
  std::size_t proposals = matched.proposals;
  if (cfg.rematch_with_game_powers) {
    eval.use_game_powers(matched.matching, game.powers);
    matched = run_matching(eval, q_ue);
    game = run_power_game(matched.matching, ch, cache, cfg.utility);
    proposals += matched.proposals;
  }

  const RateReport rates = compute_rates(matched.matching, game.powers, ch);
  const MacroInterference mi = macro_interference(matched.matching, game.powers, ch);

  DropResult r;
  r.seed = seed;
  r.scheme = scheme;
  r.q = q;
  r.total_net_utility = game.total_net_utility();
  r.sum_rate = rates.sum_rate();
  r.max_mue_interference_w = mi.max_per_subchannel();
  r.max_intra_cell_interference_w = rates.max_intra_cell();
  r.game_converged = game.converged;
  r.threshold_satisfied = game.threshold_satisfied;
  r.final_lambda = game.final_lambda;
  r.inner_iterations = game.inner_iterations;
  r.outer_iterations = game.outer_iterations;
  r.proposals = proposals;
  r.matched_pairs = matched.matching.size();
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

DropResult run_drop(const SimConfig& cfg, std::uint64_t seed) {
  return run_drop(cfg, cfg.scheme_list().front(), seed);
}

SweepPlan plan_sweep(const SimConfig& cfg) {
  cfg.validate();
  SweepPlan plan;
  plan.schemes = cfg.scheme_list();
  if (cfg.sweep_param.empty()) {
    plan.sweep_param = "none";
    plan.sweep_values = {"-"};
    plan.point_configs = {cfg};
  } else {
    plan.sweep_param = cfg.sweep_param;
    plan.sweep_values = cfg.sweep_values;
    for (const auto& v : cfg.sweep_values) {
      SimConfig point = cfg;
      set_config_value(point, cfg.sweep_param, v);
      plan.point_configs.push_back(point);
    }
  }
  for (std::size_t p = 0; p < plan.point_configs.size(); ++p)
    for (std::size_t s = 0; s < plan.schemes.size(); ++s)
      for (int i = 0; i < cfg.n_drops; ++i)
        plan.tasks.push_back({p, s, cfg.base_seed + static_cast<std::uint64_t>(i)});
  return plan;
}

std::vector<DropResult> execute_plan(const SweepPlan& plan, unsigned threads,
                                     std::optional<std::span<const std::size_t>> execution_order) {
  std::vector<std::size_t> order(plan.tasks.size());
  if (execution_order) {
    if (execution_order->size() != order.size())
      throw std::invalid_argument("execution order must cover every task");
    std::copy(execution_order->begin(), execution_order->end(), order.begin());
  } else {
    std::iota(order.begin(), order.end(), std::size_t{0});
  }

  std::vector<DropResult> results(plan.tasks.size());
  auto run_one = [&](std::size_t task_index) {
    const auto& task = plan.tasks.at(task_index);
    results[task_index] = run_drop(plan.point_configs[task.point], plan.schemes[task.scheme], task.seed);
  };

  threads = std::max(1u, threads);
  if (threads == 1) {
    for (auto idx : order) run_one(idx);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < order.size(); i = next++) {
          try {
            run_one(order[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.ci95 = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

std::vector<CsvRow> tabulate(const SweepPlan& plan, const std::vector<DropResult>& results) {
  if (results.size() != plan.tasks.size()) throw std::invalid_argument("one result per task expected");
  std::vector<CsvRow> rows;
  std::size_t i = 0;
  while (i < plan.tasks.size()) {
    const auto point = plan.tasks[i].point;
    const auto scheme = plan.tasks[i].scheme;
    const std::size_t begin = i;
    while (i < plan.tasks.size() && plan.tasks[i].point == point && plan.tasks[i].scheme == scheme) ++i;

    CsvRow head;
    head.sweep_param = plan.sweep_param;
    head.sweep_value = plan.sweep_values[point];
    head.scheme = plan.schemes[scheme].name();
    head.q = plan.schemes[scheme].effective_q();

    std::vector<double> util;
    CsvRow mean = head;
    for (std::size_t j = begin; j < i; ++j) {
      const auto& r = results[j];
      CsvRow row = head;
      row.seed = r.seed;
      row.total_net_utility = r.total_net_utility;
      row.sum_rate = r.sum_rate;
      row.max_mue_interference_w = r.max_mue_interference_w;
      row.game_converged = r.game_converged ? 1.0 : 0.0;
      row.inner_iters = r.inner_iterations;
      row.outer_iters = r.outer_iterations;
      row.proposals = static_cast<double>(r.proposals);
      row.wall_ms = r.wall_ms;
      rows.push_back(row);
      util.push_back(r.total_net_utility);

      mean.sum_rate += row.sum_rate;
      mean.max_mue_interference_w += row.max_mue_interference_w;
      mean.game_converged += row.game_converged;
      mean.inner_iters += row.inner_iters;
      mean.outer_iters += row.outer_iters;
      mean.proposals += row.proposals;
      mean.wall_ms += row.wall_ms;
    }
    const double n = static_cast<double>(i - begin);
    const Summary s = summarize(util);
    mean.total_net_utility = s.mean;
    mean.sum_rate /= n;
    mean.max_mue_interference_w /= n;
    mean.game_converged /= n;
    mean.inner_iters /= n;
    mean.outer_iters /= n;
    mean.proposals /= n;
    mean.wall_ms /= n;
    mean.mean = s.mean;
    mean.ci95 = s.ci95;
    rows.push_back(mean);
  }
  return rows;
}

std::vector<CsvRow> run_sweep(const SimConfig& cfg, const SweepOptions& options) {
  const SweepPlan plan = plan_sweep(cfg);
  return tabulate(plan, execute_plan(plan, options.threads));
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_row(const CsvRow& row, bool include_wall_ms) {
  std::string out;
  auto field = [&](const std::string& s) {
    if (!out.empty()) out += ',';
    out += s;
  };
  out = row.sweep_param;
  field(row.sweep_value);
  field(row.scheme);
  field(std::to_string(row.q));
  field(row.seed ? std::to_string(*row.seed) : std::string("summary"));
  field(format_number(row.total_net_utility));
  field(format_number(row.sum_rate));
  field(format_number(row.max_mue_interference_w));
  field(format_number(row.game_converged));
  field(format_number(row.inner_iters));
  field(format_number(row.outer_iters));
  field(format_number(row.proposals));
  if (include_wall_ms) field(format_number(row.wall_ms));
  if (row.summary()) {
    field(format_number(row.mean));
    field(format_number(row.ci95));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool include_wall_ms) {
  std::string header = kCsvHeader;
  if (!include_wall_ms) header.resize(header.rfind(','));
  out << header << '\n';
  for (const auto& r : rows) out << format_row(r, include_wall_ms) << '\n';
}

}  // namespace nomafran
