// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nomafran/config.hpp"
#include "nomafran/harness.hpp"
#include "nomafran/matching.hpp"
#include "nomafran/phy_noma.hpp"
#include "nomafran/power_game.hpp"
#include "oracles.hpp"

using namespace nomafran;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Per-(point, scheme) utilities in seed order, from a planned sweep.
struct SweepData {
  SweepPlan plan;
  std::vector<DropResult> results;

  std::vector<double> utilities(std::size_t point, std::size_t scheme) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < plan.tasks.size(); ++i)
      if (plan.tasks[i].point == point && plan.tasks[i].scheme == scheme)
        out.push_back(results[i].total_net_utility);
    return out;
  }
};

SweepData run(const SimConfig& cfg) {
  SweepData d{plan_sweep(cfg), {}};
  d.results = execute_plan(d.plan, 1);
  return d;
}

double mean(const std::vector<double>& v) { return summarize(v).mean; }

// Criteria 1 and 2 share one sweep over n_fues_per_fap.
const SweepData& fue_sweep() {
  static const SweepData data = [] {
    SimConfig cfg;
    cfg.n_drops = 100;
    cfg.sweep_param = "n_fues_per_fap";
    cfg.sweep_values = {"10", "20", "30"};
    cfg.schemes = {{SchemeKind::noma, 2}, {SchemeKind::noma, 3}, {SchemeKind::ofdma, 1}};
    return run(cfg);
  }();
  return data;
}

Outcome noma_gain() {
  const auto& d = fue_sweep();
  const auto noma = d.utilities(2, 0);
  const auto ofdma = d.utilities(2, 2);
  int wins = 0;
  for (std::size_t i = 0; i < noma.size(); ++i) wins += noma[i] >= ofdma[i];
  const double gain = (mean(noma) - mean(ofdma)) / std::abs(mean(ofdma));
  return {gain >= 0.15 && wins >= 90,
          fmt("n_fues_per_fap=30 q=2: mean gain %.1f%% (>= 15%%), NOMA wins %d/100 (>= 90)", 100 * gain, wins)};
}

Outcome quota_ordering() {
  const auto& d = fue_sweep();
  bool ok = true;
  std::string detail;
  for (std::size_t p = 0; p < 3; ++p) {
    const auto s2 = summarize(d.utilities(p, 0));
    const auto s3 = summarize(d.utilities(p, 1));
    const auto so = summarize(d.utilities(p, 2));
    const double slack = 0.5 * std::max(s2.ci95, s3.ci95);
    ok = ok && s3.mean >= s2.mean - slack && s2.mean >= so.mean;
    detail += fmt("%s[%s] q3=%.4g q2=%.4g ofdma=%.4g", p ? "; " : "", d.plan.sweep_values[p].c_str(), s3.mean,
                  s2.mean, so.mean);
  }
  return {ok, detail};
}

Outcome fap_scaling() {
  SimConfig cfg;
  cfg.n_drops = 100;
  cfg.sweep_param = "n_faps";
  cfg.sweep_values = {"1", "2", "3", "4", "5"};
  cfg.schemes = {{SchemeKind::noma, 2}};
  const auto d = run(cfg);
  bool ok = true;
  std::string detail;
  double prev = -INFINITY;
  for (std::size_t p = 0; p < 5; ++p) {
    const double m = mean(d.utilities(p, 0));
    if (p < 4) ok = ok && m > prev;
    prev = m;
    detail += fmt("%s%s:%.4g", p ? " " : "F-APs ", d.plan.sweep_values[p].c_str(), m);
  }
  return {ok, detail + " (strictly increasing over 1..4)"};
}

Outcome epsilon_nash() {
  const UtilityParams params;
  double worst = 0.0, control = INFINITY;
  int unconverged = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = fixtures::make_instance(2, 2, 4, 1000 + seed);
    const auto mr = run_matching(inst.channel, inst.cache, params, 2, 2);
    const auto game = run_power_game(mr.matching, inst.channel, inst.cache, params);
    unconverged += !game.converged;
    const auto final = final_params(params, game);
    worst = std::max(worst,
                     oracle::max_relative_deviation_gain(mr.matching, game.powers, inst.channel, inst.cache, final, 1000));
    // Control: the same oracle must flag a profile at half the equilibrium powers.
    PowerAllocation half = game.powers;
    for (auto [ue, n] : mr.matching.pairs()) half.set(ue, n, 0.5 * game.powers(ue, n));
    control = std::min(control,
                       oracle::max_relative_deviation_gain(mr.matching, half, inst.channel, inst.cache, final, 1000));
  }
  return {worst <= 1e-6 && unconverged == 0,
          fmt("20 instances 2x2x4: worst relative deviation gain %.3g (<= 1e-6), unconverged %d; "
              "half-power control gains at least %.3g",
              worst, unconverged, control)};
}

Outcome matching_ratio() {
  std::mt19937_64 rng(2024);
  const UtilityParams params;
  int instances = 0, below = 0, quota_bad = 0, unstable = 0;
  double worst = INFINITY;
  // Demand-saturated instances (F-UE demand M*q_ue covers capacity q*N), the
  // regime of the simulated scenarios.
  while (instances < 50) {
    const int faps = 1 + static_cast<int>(rng() % 2);
    const int fues = 2 + static_cast<int>(rng() % 3);
    const int n_sc = 1 + static_cast<int>(rng() % 4);
    const std::size_t q = 1 + rng() % 3, q_ue = 1 + rng() % 2;
    if (static_cast<std::size_t>(faps * fues) * q_ue < q * static_cast<std::size_t>(n_sc)) continue;
    const auto inst = fixtures::make_instance(faps, fues, n_sc, rng());
    if (brute_force_state_count(inst.channel, q) > kBruteForceStateLimit) continue;
    ++instances;
    const SubsetEvaluator eval(inst.channel, inst.cache, params, q);
    const auto mr = run_matching(eval, q_ue);
    const auto best = brute_force_optimum(eval, q_ue);
    const double ratio = eval.matching_value(mr.matching) / best.value;
    worst = std::min(worst, ratio);
    below += ratio < 0.8;
    quota_bad += !mr.matching.quotas_hold();
    unstable += !oracle::blocking_pairs(mr.matching, eval).empty();
  }
  return {below == 0 && quota_bad == 0 && unstable == 0,
          fmt("50 instances: worst ratio %.4f (>= 0.8), quota violations %d, unstable %d", worst, quota_bad,
              unstable)};
}

Outcome closed_form() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w = log_uniform(1e4, 1e6);
    const double p_max = log_uniform(1e-3, 5.0);
    const double i_over_h = log_uniform(1e-4, 1.0) * p_max;
    // Price placed so the unconstrained optimum lands anywhere from 0 to
    // beyond the cap.
    const double target = (u(rng) * 1.4 - 0.2) * p_max + i_over_h;
    const double price = w / (std::log(2.0) * std::max(target, 1e-3 * i_over_h));
    const double closed = best_response_power(w, price, i_over_h, p_max);
    const double grid = oracle::grid_best_response(w, price, i_over_h, p_max);
    const double err = std::abs(closed - grid) / (p_max / 1e6);
    worst = std::max(worst, err);
    bad += err > 1.0;
  }
  return {bad == 0, fmt("1000 draws: worst |closed - grid| = %.3g grid steps (<= 1)", worst)};
}

std::string csv_text(const SweepPlan& plan, const std::vector<DropResult>& results) {
  std::ostringstream out;
  write_csv(out, tabulate(plan, results), false);
  return out.str();
}

Outcome determinism() {
  SimConfig cfg;
  cfg.n_drops = 20;
  cfg.base_seed = 99;
  cfg.schemes = {{SchemeKind::noma, 2}, {SchemeKind::ofdma, 1}};
  const auto plan = plan_sweep(cfg);
  const auto a = csv_text(plan, execute_plan(plan));
  const auto b = csv_text(plan_sweep(cfg), execute_plan(plan_sweep(cfg)));
  std::vector<std::size_t> order(plan.tasks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(7);
  std::shuffle(order.begin(), order.end(), rng);
  const auto c = csv_text(plan, execute_plan(plan, 1, order));
  std::reverse(order.begin(), order.end());
  const auto d = csv_text(plan, execute_plan(plan, 4, order));
  const bool ok = a == b && a == c && a == d;
  return {ok, fmt("%zu-byte CSV: repeat %s, shuffled %s, reversed on 4 threads %s", a.size(), a == b ? "same" : "DIFF",
                  a == c ? "same" : "DIFF", a == d ? "same" : "DIFF")};
}

Outcome threshold_contract() {
  const SimConfig base;
  const double ith = base.utility.interference_threshold_w;
  int satisfied = 0, breaches = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto inst = fixtures::make_instance(4, 10, base.spectrum.n_subchannels, seed);
    const auto mr = run_matching(inst.channel, inst.cache, base.utility, 2, 2);
    const auto game = run_power_game(mr.matching, inst.channel, inst.cache, base.utility);
    if (!game.threshold_satisfied) continue;
    ++satisfied;
    const auto mi = macro_interference(mr.matching, game.powers, inst.channel);
    for (std::size_t u = 0; u < inst.channel.n_mues(); ++u)
      for (std::size_t n = 0; n < inst.channel.n_subchannels(); ++n) breaches += mi.at(u, n) > ith;
  }

  // Stress: a crowded drop under a threshold 10 dB tighter than default, so
  // the outer loop has to raise the price many times. The starting price is
  // high enough that no pair sits at its cap, so every raise must show.
  const auto inst = fixtures::make_instance(5, 30, base.spectrum.n_subchannels, 4242);
  UtilityParams stress = base.utility;
  stress.interference_threshold_w = ith / 10.0;
  stress.price_lambda = 1e16;
  const auto mr = run_matching(inst.channel, inst.cache, stress, 2, 2);
  const auto game = run_power_game(mr.matching, inst.channel, inst.cache, stress);
  bool monotone = game.trace.size() >= 3;
  for (std::size_t i = 1; i < game.trace.size(); ++i)
    monotone = monotone && game.trace[i].max_mue_interference_w < game.trace[i - 1].max_mue_interference_w;
  std::string trace;
  for (const auto& t : game.trace) trace += fmt(" %.3g", t.max_mue_interference_w);
  return {breaches == 0 && satisfied > 0 && monotone,
          fmt("%d/50 drops satisfied, %d per-subchannel breaches; stress trace (W):%s", satisfied, breaches,
              trace.c_str())};
}

Outcome phy_invariants() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bound_bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t users = 1 + rng() % 4;
    ChannelState ch(1, std::vector<std::size_t>(users, 0), 0, 1, 1e5, 1e-13, 0.0);
    Matching m(ch.serving_faps(), 1, 1, users, 1);
    PowerAllocation p(users, 1);
    double total = 0.0;
    for (std::size_t i = 0; i < users; ++i) {
      ch.set_fap_to_fue(0, i, 0, std::pow(10.0, -12.0 + 6.0 * u(rng)));
      ch.set_mrrh_to_fue(i, 0, 0.0);
      m.add(i, 0);
      p.set(i, 0, u(rng));
      total += p(i, 0);
    }
    double crnn_max = 0.0;
    for (std::size_t i = 0; i < users; ++i) crnn_max = std::max(crnn_max, ch.crnn(0, i, 0));
    const double bound = rate(total * crnn_max, 1e5);
    const double sum = compute_rates(m, p, ch).sum_rate();
    bound_bad += sum > bound * (1.0 + 1e-12);
  }

  int mono_bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    if (trial % 100 == 0) rng.seed(trial);
    const auto inst = fixtures::make_instance(2, 3, 2, 500 + trial / 100);
    Matching m(inst.channel.serving_faps(), 2, 2, 6, 2);
    PowerAllocation p(6, 2);
    for (std::size_t ue = 0; ue < 6; ++ue)
      for (std::size_t n = 0; n < 2; ++n)
        if (u(rng) < 0.7) {
          m.add(ue, n);
          p.set(ue, n, u(rng));
        }
    const auto pairs = m.pairs();
    if (pairs.size() < 2) continue;
    const auto [ue, n] = pairs[rng() % pairs.size()];
    const auto [oue, on] = pairs[rng() % pairs.size()];
    const double before = sinr(ue, n, m, p, inst.channel);
    PowerAllocation q = p;
    q.set(oue, on, p(oue, on) + u(rng));
    const double after = sinr(ue, n, m, q, inst.channel);
    if (oue == ue && on == n) mono_bad += after < before;
    else mono_bad += after > before;
  }
  return {bound_bad == 0 && mono_bad == 0,
          fmt("sum-rate bound violations %d/10000, SINR monotonicity violations %d/10000", bound_bad, mono_bad)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"NOMA-over-OFDMA gain", noma_gain},
      {"quota ordering", quota_ordering},
      {"F-AP scaling trend", fap_scaling},
      {"epsilon-Nash", epsilon_nash},
      {"matching oracle ratio", matching_ratio},
      {"best-response closed form", closed_form},
      {"determinism", determinism},
      {"interference threshold contract", threshold_contract},
      {"PHY invariants", phy_invariants},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
