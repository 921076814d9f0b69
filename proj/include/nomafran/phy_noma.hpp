#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nomafran/assignment.hpp"
#include "nomafran/channel.hpp"

namespace nomafran {

// Transmit power per (F-UE, subchannel), Watts. The transmitting F-AP is the
// F-UE's serving F-AP. Pairs outside the matching hold 0.
class PowerAllocation {
 public:
  PowerAllocation() = default;
  PowerAllocation(std::size_t n_fues, std::size_t n_subchannels)
      : n_sc_(n_subchannels), p_(n_fues * n_subchannels, 0.0) {}

  double operator()(std::size_t m, std::size_t n) const { return p_[m * n_sc_ + n]; }
  void set(std::size_t m, std::size_t n, double watts) { p_[m * n_sc_ + n] = watts; }
  std::size_t n_subchannels() const { return n_sc_; }
  std::size_t n_fues() const { return n_sc_ == 0 ? 0 : p_.size() / n_sc_; }

  // P(k, n): total power F-AP k radiates on n.
  double on_subchannel(const Matching& m, std::size_t k, std::size_t n) const;
  double fap_total(const Matching& m, std::size_t k) const;

  // Nonnegative, zero off the matching, and every F-AP within `p_max_fap`
  // (plus `tol`).
  bool feasible(const Matching& m, double p_max_fap, double tol = 1e-12) const;

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

 private:
  std::size_t n_sc_ = 0;
  std::vector<double> p_;
};

// Ascending CRNN of `cell`'s link on n, ties by F-UE index.
std::vector<std::size_t> sic_order(std::size_t cell, std::size_t n,
                                   std::span<const std::size_t> fues, const ChannelState& ch);

// Components of the SINR denominator seen by one F-UE on one subchannel.
struct SinrTerms {
  double signal_gain = 0.0;   // serving-link gain h
  double own_power = 0.0;
  double intra_cell = 0.0;    // h * sum of powers of later-decoded same-cell F-UEs, W
  double co_tier = 0.0;       // other F-APs, W
  double cross_tier = 0.0;    // MRRH, W
  double noise = 0.0;         // W

  double interference_plus_noise() const { return intra_cell + co_tier + cross_tier + noise; }
  double sinr() const { return own_power * signal_gain / interference_plus_noise(); }
};

// Throws UnmatchedError when (ue, n) is not in the matching.
SinrTerms sinr_terms(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                     const ChannelState& ch);

double sinr(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
            const ChannelState& ch);

// Shannon rate, bit/s.
double rate(double sinr, double subchannel_bw_hz);

struct RateReport {
  std::size_t n_subchannels = 0;
  std::vector<double> rate_bps;          // (F-UE, subchannel), 0 off the matching
  std::vector<double> sinr_linear;       // (F-UE, subchannel)
  std::vector<double> intra_cell_w;      // NOMA interference term, (F-UE, subchannel)
  std::vector<double> per_fue_bps;

  double rate(std::size_t m, std::size_t n) const { return rate_bps[m * n_subchannels + n]; }
  double sinr(std::size_t m, std::size_t n) const { return sinr_linear[m * n_subchannels + n]; }
  double intra_cell(std::size_t m, std::size_t n) const {
    return intra_cell_w[m * n_subchannels + n];
  }
  double sum_rate() const;
  double max_intra_cell() const;
};

RateReport compute_rates(const Matching& m, const PowerAllocation& p, const ChannelState& ch);

// Aggregate F-AP interference at each MUE.
struct MacroInterference {
  std::size_t n_subchannels = 0;
  std::vector<double> per_subchannel_w;  // (MUE, subchannel)
  std::vector<double> total_w;           // per MUE, summed over subchannels

  double at(std::size_t u, std::size_t n) const { return per_subchannel_w[u * n_subchannels + n]; }
  // Largest per-subchannel value over all MUEs; 0 without MUEs.
  double max_per_subchannel() const;
};

MacroInterference macro_interference(const Matching& m, const PowerAllocation& p,
                                     const ChannelState& ch);

}  // namespace nomafran
