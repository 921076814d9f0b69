#include "nomafran/power_game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nomafran/errors.hpp"

namespace nomafran {

void UtilityParams::validate() const {
  if (!(price_lambda >= 0.0)) throw ValidationError("price_lambda", "must be >= 0");
  if (!(reward_beta >= 0.0)) throw ValidationError("reward_beta", "must be >= 0");
  if (!(interference_threshold_w > 0.0))
    throw ValidationError("interference_threshold", "must be > 0");
  if (!(p_min_w > 0.0)) throw ValidationError("p_min_w", "must be > 0");
  if (!(p_max_fap_w > 0.0)) throw ValidationError("p_max_fap", "must be > 0");
  if (p_min_w > pair_cap_w()) throw ValidationError("p_min_w", "must be <= p_max_per_pair_w");
  if (!(epsilon_converge_w > 0.0)) throw ValidationError("epsilon_converge_w", "must be > 0");
  if (max_inner_iters < 1) throw ValidationError("max_inner_iters", "must be >= 1");
  if (max_outer_iters < 1) throw ValidationError("max_outer_iters", "must be >= 1");
  if (!(lambda_growth > 1.0)) throw ValidationError("lambda_growth", "must be > 1");
}

double pair_net_utility(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                        const ChannelState& ch, const CachePlacement& cache,
                        const UtilityParams& params) {
  const double theta = cache.theta.empty() ? 0.0 : cache.theta[ue];
  const double r = rate(sinr(ue, n, m, p, ch), ch.subchannel_bw_hz());
  const double gbar = ch.mean_gain_to_mues(m.serving_fap(ue), n);
  return r + caching_reward(theta, r, params.reward_beta) - params.price_lambda * p(ue, n) * gbar;
}

double net_utility(std::size_t ue, const Matching& m, const PowerAllocation& p,
                   const ChannelState& ch, const CachePlacement& cache,
                   const UtilityParams& params) {
  double total = 0.0;
  for (auto n : m.subchannels_of(ue)) total += pair_net_utility(ue, n, m, p, ch, cache, params);
  return total;
}

double best_response_power(double rate_weight_bps, double price_per_watt,
                           double interference_over_gain_w, double p_cap_w) {
  if (!(price_per_watt > 0.0)) return p_cap_w;
  const double water_level = rate_weight_bps / (std::numbers::ln2 * price_per_watt);
  return std::clamp(water_level - interference_over_gain_w, 0.0, p_cap_w);
}

double best_response(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                     const ChannelState& ch, const CachePlacement& cache,
                     const UtilityParams& params) {
  const auto terms = sinr_terms(ue, n, m, p, ch);
  const double theta = cache.theta.empty() ? 0.0 : cache.theta[ue];
  const double weight = (1.0 + params.reward_beta * theta) * ch.subchannel_bw_hz();
  const double price = params.price_lambda * ch.mean_gain_to_mues(m.serving_fap(ue), n);
  return best_response_power(weight, price, terms.interference_plus_noise() / terms.signal_gain,
                             params.pair_cap_w());
}

double GameResult::total_net_utility() const {
  double s = 0.0;
  for (double u : fue_net_utility) s += u;
  return s;
}

UtilityParams final_params(const UtilityParams& params, const GameResult& r) {
  UtilityParams out = params;
  out.price_lambda = r.final_lambda;
  return out;
}

namespace {

// Sweep order: (F-AP, F-UE, subchannel).
std::vector<Pair> sweep_order(const Matching& m) {
  auto pairs = m.pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    return m.serving_fap(a.first) < m.serving_fap(b.first);
  });
  return pairs;
}

void project_budgets(const Matching& m, PowerAllocation& p, double p_max_fap) {
  for (std::size_t k = 0; k < m.n_faps(); ++k) {
    const double total = p.fap_total(m, k);
    if (total <= p_max_fap) continue;
    const double scale = p_max_fap / total;
    for (std::size_t n = 0; n < m.n_subchannels(); ++n)
      for (auto ue : m.fues_on(k, n)) p.set(ue, n, p(ue, n) * scale);
  }
}

double sweep(const Matching& m, const std::vector<Pair>& order, PowerAllocation& p,
             const ChannelState& ch, const CachePlacement& cache, const UtilityParams& params) {
  const PowerAllocation before = p;
  for (auto [ue, n] : order) p.set(ue, n, best_response(ue, n, m, p, ch, cache, params));
  project_budgets(m, p, params.p_max_fap_w);
  double change = 0.0;
  for (auto [ue, n] : order) change = std::max(change, std::abs(p(ue, n) - before(ue, n)));
  return change;
}

}  // namespace

double best_response_sweep(const Matching& m, PowerAllocation& p, const ChannelState& ch,
                           const CachePlacement& cache, const UtilityParams& params) {
  return sweep(m, sweep_order(m), p, ch, cache, params);
}

GameResult run_power_game(const Matching& m, const ChannelState& ch, const CachePlacement& cache,
                          const UtilityParams& params) {
  params.validate();
  const auto order = sweep_order(m);
  const double start = std::min(params.p_min_w, params.pair_cap_w());

  GameResult r;
  UtilityParams current = params;
  for (int outer = 1; outer <= params.max_outer_iters; ++outer) {
    PowerAllocation p(m.n_fues(), m.n_subchannels());
    for (auto [ue, n] : order) p.set(ue, n, start);
    project_budgets(m, p, params.p_max_fap_w);

    OuterIteration step;
    step.lambda = current.price_lambda;
    double change = 0.0;
    if (order.empty()) {
      step.converged = true;
    } else {
      for (int it = 1; it <= params.max_inner_iters; ++it) {
        change = sweep(m, order, p, ch, cache, current);
        step.inner_iterations = it;
        if (change < params.epsilon_converge_w) {
          step.converged = true;
          break;
        }
      }
    }
    const auto mi = macro_interference(m, p, ch);
    step.max_mue_interference_w = mi.max_per_subchannel();
    step.threshold_satisfied = step.max_mue_interference_w <= params.interference_threshold_w;
    r.trace.push_back(step);

    r.powers = std::move(p);
    r.converged = step.converged;
    r.inner_iterations = step.inner_iterations;
    r.outer_iterations = outer;
    r.threshold_satisfied = step.threshold_satisfied;
    r.final_lambda = current.price_lambda;
    r.last_max_change_w = change;

    // A zero price cannot grow, so further outer iterations would repeat this one.
    if (step.threshold_satisfied || current.price_lambda <= 0.0 || outer == params.max_outer_iters)
      break;
    current.price_lambda *= params.lambda_growth;
  }

  r.fue_net_utility.assign(m.n_fues(), 0.0);
  for (auto [ue, n] : order)
    r.fue_net_utility[ue] += pair_net_utility(ue, n, m, r.powers, ch, cache, current);
  return r;
}

}  // namespace nomafran
