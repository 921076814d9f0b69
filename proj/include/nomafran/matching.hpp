#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nomafran/assignment.hpp"
#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/phy_noma.hpp"
#include "nomafran/power_game.hpp"

namespace nomafran {

// F-UE side preference lists: subchannels by decreasing serving-link gain
// (ties by subchannel index). Entries are zeroed once proposed to and are
// never proposed to again.
class PreferenceState {
 public:
  PreferenceState() = default;
  explicit PreferenceState(std::vector<std::vector<std::size_t>> lists);

  const std::vector<std::size_t>& list(std::size_t ue) const { return lists_[ue]; }
  bool zeroed(std::size_t ue, std::size_t rank) const { return zeroed_[ue][rank]; }
  // First non-zero entry, if any.
  std::optional<std::size_t> next(std::size_t ue) const;
  void zero(std::size_t ue, std::size_t n);
  // Position of n in ue's list.
  std::size_t rank_of(std::size_t ue, std::size_t n) const;

 private:
  std::vector<std::vector<std::size_t>> lists_;
  std::vector<std::vector<char>> zeroed_;
  std::vector<std::size_t> cursor_;
};

PreferenceState build_preferences(const ChannelState& ch);

// Subchannel-side valuation of a candidate F-UE set under the equal-power
// proxy: every pair of F-AP k gets P_max_fap / (q * N). Members of the same
// F-AP are decoded in CRNN order; members of other F-APs are co-tier
// interference. Only the set itself transmits on n.
class SubsetEvaluator {
 public:
  SubsetEvaluator(const ChannelState& ch, const CachePlacement& cache, const UtilityParams& params,
                  std::size_t q);

  // Replace the proxy with each F-AP's mean per-pair power from a solved game.
  void use_game_powers(const Matching& m, const PowerAllocation& p);

  double pair_power(std::size_t fap) const { return pair_power_[fap]; }
  std::size_t q() const { return q_; }
  const ChannelState& channel() const { return ch_; }

  // Summed net utility of `set` on subchannel n. Requires |set| <= q.
  double evaluate(std::size_t n, std::span<const std::size_t> set) const;

  // Sum of evaluate() over every subchannel of m.
  double matching_value(const Matching& m) const;

 private:
  const ChannelState& ch_;
  const CachePlacement& cache_;
  UtilityParams params_;
  std::size_t q_;
  std::vector<double> pair_power_;
};

struct MatchingResult {
  Matching matching;
  std::size_t proposals = 0;
  std::size_t rounds = 0;
  std::size_t stabilization_moves = 0;
  // False when blocking-pair resolution did not settle; the proposal-round
  // matching is returned unchanged in that case.
  bool stable = true;
};

// Resolves blocking pairs left by the proposal rounds: an F-UE that has spare
// quota, or holds a weaker subchannel, joins a subchannel that is below quota
// and loses nothing by taking it, or strictly gains by swapping it in (the weakest held subchannel is released).
// Returns the number of moves once a full sweep makes none, or nullopt if
// max_sweeps pass without settling (m is then left mid-way).
std::optional<std::size_t> stabilize(const SubsetEvaluator& eval, Matching& m, std::size_t max_sweeps = 10);

// Proposal rounds: every F-UE with spare quota proposes to its first non-zero
// preference; a subchannel below quota accepts unless the proposer lowers its
// net utility, a full one keeps its best q-subset of members plus proposer and
// displaces the rest. Runs until no F-UE can
// propose, then applies stabilize() if it settles.
MatchingResult run_matching(const SubsetEvaluator& eval, std::size_t q_ue);
MatchingResult run_matching(const ChannelState& ch, const CachePlacement& cache,
                            const UtilityParams& params, std::size_t q, std::size_t q_ue);

struct BruteForceResult {
  Matching matching;
  double value = 0.0;
  std::size_t states = 0;
};

inline constexpr double kBruteForceStateLimit = 1e7;

// Number of quota-feasible subchannel assignments the enumeration would visit
// (ignoring the F-UE quota, which only prunes).
double brute_force_state_count(const ChannelState& ch, std::size_t q);

// Exhaustive maximizer of SubsetEvaluator::matching_value over every
// quota-feasible matching; ties go to the lexicographically smallest pair
// list. Throws InstanceTooLarge past `state_limit`.
BruteForceResult brute_force_optimum(const SubsetEvaluator& eval, std::size_t q_ue,
                                     double state_limit = kBruteForceStateLimit);

}  // namespace nomafran
