#include "nomafran/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nomafran/errors.hpp"

namespace nomafran {

PreferenceState::PreferenceState(std::vector<std::vector<std::size_t>> lists)
    : lists_(std::move(lists)), zeroed_(lists_.size()), cursor_(lists_.size(), 0) {
  for (std::size_t ue = 0; ue < lists_.size(); ++ue) zeroed_[ue].assign(lists_[ue].size(), 0);
}

std::optional<std::size_t> PreferenceState::next(std::size_t ue) const {
  const auto& z = zeroed_[ue];
  for (std::size_t r = cursor_[ue]; r < z.size(); ++r)
    if (!z[r]) return lists_[ue][r];
  return std::nullopt;
}

std::size_t PreferenceState::rank_of(std::size_t ue, std::size_t n) const {
  const auto& l = lists_[ue];
  const auto it = std::find(l.begin(), l.end(), n);
  if (it == l.end()) throw std::out_of_range("subchannel not in preference list");
  return static_cast<std::size_t>(it - l.begin());
}

void PreferenceState::zero(std::size_t ue, std::size_t n) {
  zeroed_[ue][rank_of(ue, n)] = 1;
  auto& c = cursor_[ue];
  while (c < zeroed_[ue].size() && zeroed_[ue][c]) ++c;
}

PreferenceState build_preferences(const ChannelState& ch) {
  std::vector<std::vector<std::size_t>> lists(ch.n_fues());
  for (std::size_t ue = 0; ue < ch.n_fues(); ++ue) {
    auto& l = lists[ue];
    l.resize(ch.n_subchannels());
    std::iota(l.begin(), l.end(), std::size_t{0});
    const std::size_t k = ch.serving_fap(ue);
    std::stable_sort(l.begin(), l.end(), [&](std::size_t a, std::size_t b) {
      return ch.fap_to_fue(k, ue, a) > ch.fap_to_fue(k, ue, b);
    });
  }
  return PreferenceState(std::move(lists));
}

SubsetEvaluator::SubsetEvaluator(const ChannelState& ch, const CachePlacement& cache,
                                 const UtilityParams& params, std::size_t q)
    : ch_(ch), cache_(cache), params_(params), q_(q) {
  if (q_ < 1) throw std::invalid_argument("quota q must be >= 1");
  const double proxy = params_.p_max_fap_w / static_cast<double>(q_ * ch_.n_subchannels());
  pair_power_.assign(ch_.n_faps(), proxy);
}

void SubsetEvaluator::use_game_powers(const Matching& m, const PowerAllocation& p) {
  for (std::size_t k = 0; k < ch_.n_faps(); ++k) {
    std::size_t pairs = 0;
    for (std::size_t n = 0; n < m.n_subchannels(); ++n) pairs += m.load(k, n);
    if (pairs > 0) pair_power_[k] = p.fap_total(m, k) / static_cast<double>(pairs);
  }
}

double SubsetEvaluator::evaluate(std::size_t n, std::span<const std::size_t> set) const {
  if (set.empty()) return 0.0;
  if (set.size() > q_) throw std::invalid_argument("candidate set exceeds quota");
  const double bw = ch_.subchannel_bw_hz();
  const double floor_w = ch_.noise_power_w();

  double value = 0.0;
  for (auto ue : set) {
    const std::size_t k = ch_.serving_fap(ue);
    const double h = ch_.fap_to_fue(k, ue, n);
    const double crnn = ch_.crnn(k, ue, n);
    double interference = ch_.mrrh_to_fue(ue, n) * ch_.mrrh_power_w() + floor_w;
    for (auto other : set) {
      if (other == ue) continue;
      const std::size_t ko = ch_.serving_fap(other);
      if (ko != k) {
        interference += ch_.fap_to_fue(ko, ue, n) * pair_power_[ko];
      } else {
        // Same cell: only later-decoded F-UEs remain after SIC.
        const double c = ch_.crnn(k, other, n);
        if (c > crnn || (c == crnn && other > ue)) interference += h * pair_power_[k];
      }
    }
    const double p = pair_power_[k];
    const double r = rate(p * h / interference, bw);
    const double theta = cache_.theta.empty() ? 0.0 : cache_.theta[ue];
    value += r + caching_reward(theta, r, params_.reward_beta) -
             params_.price_lambda * p * ch_.mean_gain_to_mues(k, n);
  }
  return value;
}

double SubsetEvaluator::matching_value(const Matching& m) const {
  double total = 0.0;
  for (std::size_t n = 0; n < m.n_subchannels(); ++n) total += evaluate(n, m.fues_on(n));
  return total;
}

namespace {

// Index of the member whose replacement by `ue` gives the largest strict gain
// over the current set; the earliest member wins ties.
std::optional<std::size_t> best_swap(const SubsetEvaluator& eval, std::size_t n,
                                     const std::vector<std::size_t>& members, std::size_t ue,
                                     std::vector<std::size_t>& scratch) {
  double best = eval.evaluate(n, members);
  std::optional<std::size_t> drop;
  for (auto leaving : members) {
    scratch.clear();
    for (auto c : members)
      if (c != leaving) scratch.push_back(c);
    scratch.push_back(ue);
    const double v = eval.evaluate(n, scratch);
    if (v > best) {
      best = v;
      drop = leaving;
    }
  }
  return drop;
}

// A subchannel below quota takes `ue` unless that lowers its net utility.
bool joins_without_loss(const SubsetEvaluator& eval, std::size_t n, const std::vector<std::size_t>& members,
                        std::size_t ue, std::vector<std::size_t>& scratch) {
  if (members.empty()) return eval.evaluate(n, std::span<const std::size_t>(&ue, 1)) >= 0.0;
  scratch.assign(members.begin(), members.end());
  scratch.push_back(ue);
  return eval.evaluate(n, scratch) >= eval.evaluate(n, members);
}

}  // namespace

std::optional<std::size_t> stabilize(const SubsetEvaluator& eval, Matching& mt, std::size_t max_sweeps) {
  const ChannelState& ch = eval.channel();
  const std::size_t q = mt.q();
  std::size_t moves = 0;
  std::vector<std::size_t> subset;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t ue = 0; ue < mt.n_fues(); ++ue) {
      const std::size_t k = ch.serving_fap(ue);
      for (std::size_t n = 0; n < ch.n_subchannels(); ++n) {
        if (mt.matched(ue, n)) continue;
        // Weakest held subchannel; the highest index loses ties.
        std::optional<std::size_t> weakest;
        for (auto held : mt.subchannels_of(ue))
          if (!weakest || ch.fap_to_fue(k, ue, held) <= ch.fap_to_fue(k, ue, *weakest)) weakest = held;
        const bool spare = mt.degree(ue) < mt.q_ue();
        if (!spare && ch.fap_to_fue(k, ue, n) <= ch.fap_to_fue(k, ue, *weakest)) continue;

        std::optional<std::size_t> drop;
        if (mt.load(n) < q) {
          if (!joins_without_loss(eval, n, mt.fues_on(n), ue, subset)) continue;
        } else {
          const std::vector<std::size_t> members = mt.fues_on(n);
          drop = best_swap(eval, n, members, ue, subset);
          if (!drop) continue;
        }
        if (drop) mt.remove(*drop, n);
        if (!spare) mt.remove(ue, *weakest);
        mt.add(ue, n);
        ++moves;
        moved = true;
      }
    }
    if (!moved) return moves;
  }
  return std::nullopt;
}

MatchingResult run_matching(const SubsetEvaluator& eval, std::size_t q_ue) {
  const ChannelState& ch = eval.channel();
  const std::size_t q = eval.q();
  MatchingResult out{Matching(ch.serving_faps(), ch.n_faps(), ch.n_subchannels(), q, q_ue), 0, 0};
  Matching& mt = out.matching;
  PreferenceState prefs = build_preferences(ch);

  std::vector<std::size_t> order(ch.n_fues());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ch.serving_fap(a) < ch.serving_fap(b);
  });

  std::vector<std::size_t> candidates;
  std::vector<std::size_t> subset;
  for (;;) {
    bool proposed = false;
    for (auto ue : order) {
      if (mt.degree(ue) >= q_ue) continue;
      const auto choice = prefs.next(ue);
      if (!choice) continue;
      const std::size_t n = *choice;
      proposed = true;
      prefs.zero(ue, n);
      ++out.proposals;

      if (mt.load(n) < q) {
        if (joins_without_loss(eval, n, mt.fues_on(n), ue, subset)) mt.add(ue, n);
        continue;
      }
      // Full: keep the best q-subset of members + proposer; the incumbent set
      // wins ties.
      candidates = mt.fues_on(n);
      if (const auto drop = best_swap(eval, n, candidates, ue, subset)) {
        mt.remove(*drop, n);
        mt.add(ue, n);
      }
    }
    if (!proposed) break;
    ++out.rounds;
  }
  Matching settled = mt;
  const auto moves = stabilize(eval, settled);
  if (moves.has_value()) {
    mt = std::move(settled);
    out.stabilization_moves = *moves;
  } else {
    out.stable = false;
  }
  return out;
}

MatchingResult run_matching(const ChannelState& ch, const CachePlacement& cache,
                            const UtilityParams& params, std::size_t q, std::size_t q_ue) {
  return run_matching(SubsetEvaluator(ch, cache, params, q), q_ue);
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// All subsets of `pool` with size <= q, in lexicographic order, empty first.
std::vector<std::vector<std::size_t>> small_subsets(const std::vector<std::size_t>& pool,
                                                    std::size_t q) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      out.push_back(cur);
      if (cur.size() < q) rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

double brute_force_state_count(const ChannelState& ch, std::size_t q) {
  double per_channel = 0.0;
  for (std::size_t i = 0; i <= std::min(q, ch.n_fues()); ++i) per_channel += binomial(ch.n_fues(), i);
  return std::pow(per_channel, static_cast<double>(ch.n_subchannels()));
}

BruteForceResult brute_force_optimum(const SubsetEvaluator& eval, std::size_t q_ue,
                                     double state_limit) {
  const ChannelState& ch = eval.channel();
  const std::size_t q = eval.q();
  const double states = brute_force_state_count(ch, q);
  if (states > state_limit)
    throw InstanceTooLarge("enumeration needs " + std::to_string(states) + " states, limit " +
                           std::to_string(state_limit));

  std::vector<std::size_t> pool(ch.n_fues());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const auto options = small_subsets(pool, q);

  const std::size_t n_sc = ch.n_subchannels();
  Matching work(ch.serving_faps(), ch.n_faps(), n_sc, q, q_ue);
  BruteForceResult best{work, -std::numeric_limits<double>::infinity(), 0};
  std::vector<Pair> best_pairs;

  std::function<void(std::size_t, double)> rec = [&](std::size_t n, double partial) {
    if (n == n_sc) {
      ++best.states;
      if (partial > best.value) {
        best.value = partial;
        best.matching = work;
        best_pairs = work.pairs();
      } else if (partial == best.value) {
        auto pairs = work.pairs();
        if (pairs < best_pairs) {
          best.matching = work;
          best_pairs = std::move(pairs);
        }
      }
      return;
    }
    for (const auto& subset : options) {
      if (std::any_of(subset.begin(), subset.end(),
                      [&](std::size_t ue) { return work.degree(ue) >= q_ue; }))
        continue;
      for (auto ue : subset) work.add(ue, n);
      rec(n + 1, partial + eval.evaluate(n, subset));
      for (auto ue : subset) work.remove(ue, n);
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace nomafran
