#pragma once

#include <cstddef>
#include <vector>

#include "nomafran/assignment.hpp"
#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/phy_noma.hpp"

namespace nomafran {

// Coefficients of the per-F-UE net utility and the iteration controls of the
// power game. Powers in Watts, utility in bit/s.
struct UtilityParams {
  // Interference price, bit/s per (W x linear gain) towards the MUEs.
  double price_lambda = 1e14;
  // Caching reward weight; the reward is beta * theta * rate.
  double reward_beta = 0.5;
  // Tolerable F-AP interference per MUE per subchannel (-90 dBm).
  double interference_threshold_w = 1e-12;
  double p_min_w = 1e-6;
  // Per-pair power cap; <= 0 means p_max_fap_w / 4.
  double p_max_per_pair_w = 0.0;
  // 41 dBm.
  double p_max_fap_w = 12.589254117941673;
  double epsilon_converge_w = 1e-9;
  int max_inner_iters = 500;
  int max_outer_iters = 20;
  double lambda_growth = 2.0;

  double pair_cap_w() const { return p_max_per_pair_w > 0.0 ? p_max_per_pair_w : p_max_fap_w / 4.0; }
  void validate() const;
};

// (1 + beta*theta) * rate - lambda * p * gbar for one (F-UE, subchannel) pair,
// where gbar is the mean gain from the serving F-AP to the MUEs on n.
double pair_net_utility(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                        const ChannelState& ch, const CachePlacement& cache,
                        const UtilityParams& params);

// Sum of pair_net_utility over the F-UE's matched subchannels.
double net_utility(std::size_t ue, const Matching& m, const PowerAllocation& p,
                   const ChannelState& ch, const CachePlacement& cache,
                   const UtilityParams& params);

// argmax_p  rate_weight * log2(1 + p / interference_over_gain) - price_per_watt * p
// over [0, p_cap]. rate_weight is (1 + beta*theta) * B in bit/s; price_per_watt
// is lambda * gbar. A non-positive price returns p_cap.
double best_response_power(double rate_weight_bps, double price_per_watt,
                           double interference_over_gain_w, double p_cap_w);

// Best response of (ue, n) with every other power frozen at `p`.
double best_response(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                     const ChannelState& ch, const CachePlacement& cache,
                     const UtilityParams& params);

struct OuterIteration {
  double lambda = 0.0;
  int inner_iterations = 0;
  bool converged = false;
  double max_mue_interference_w = 0.0;
  bool threshold_satisfied = false;
};

struct GameResult {
  PowerAllocation powers;
  bool converged = false;
  int inner_iterations = 0;  // sweeps of the final outer iteration
  int outer_iterations = 0;
  bool threshold_satisfied = false;
  double final_lambda = 0.0;
  double last_max_change_w = 0.0;
  std::vector<double> fue_net_utility;
  std::vector<OuterIteration> trace;

  double total_net_utility() const;
};

// The parameters actually in force at the end of the game (lambda updated).
UtilityParams final_params(const UtilityParams& params, const GameResult& r);

// Gauss-Seidel best-response iteration from p_min with per-F-AP budget
// projection after every sweep, wrapped in a price loop that grows lambda
// until the MUE interference threshold holds or max_outer_iters is reached.
GameResult run_power_game(const Matching& m, const ChannelState& ch, const CachePlacement& cache,
                          const UtilityParams& params);

// One Gauss-Seidel sweep plus projection in place; returns the largest change.
double best_response_sweep(const Matching& m, PowerAllocation& p, const ChannelState& ch,
                           const CachePlacement& cache, const UtilityParams& params);

}  // namespace nomafran
