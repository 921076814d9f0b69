#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "nomafran/topology.hpp"

namespace nomafran {

struct SpectrumConfig {
  double total_bandwidth_hz = 5e6;
  int n_subchannels = 25;
  double noise_psd_dbm_hz = -174.0;

  void validate() const;
  double subchannel_bandwidth_hz() const { return total_bandwidth_hz / n_subchannels; }
  // Noise power over one subchannel, Watts.
  double noise_power_w() const;
};

enum class LinkKind { macro_link, fog_link };

// PL(d) = intercept + slope * log10(d / reference_m).
struct PathLossModel {
  double intercept_db = 0.0;
  double slope_db = 0.0;
  double reference_m = 1.0;
};

struct ChannelModelConfig {
  // 3GPP-style urban macro, distance in km.
  PathLossModel macro{128.1, 37.6, 1000.0};
  // Small-cell LOS, distance in m.
  PathLossModel fog{38.46, 20.0, 1.0};
  bool rayleigh_fading = true;
  // Log-normal shadowing per link, shared by all subchannels; 0 disables it.
  double shadowing_std_db = 0.0;
  double mrrh_total_power_dbm = 43.0;

  void validate() const;
};

double path_loss_db(const PathLossModel& model, double d);
double path_loss_db(LinkKind kind, double d, const ChannelModelConfig& model = {});

enum class NodeKind { mrrh, fap, fue, mue };

struct Node {
  NodeKind kind;
  std::size_t index = 0;
};

// Linear power gains for every link family on every subchannel:
// F-AP -> F-UE (all pairs), F-AP -> MUE, MRRH -> F-UE and MRRH -> MUE.
// Built once per drop and then only read.
class ChannelState {
 public:
  ChannelState(std::size_t n_faps, std::vector<std::size_t> serving_fap, std::size_t n_mues,
               std::size_t n_subchannels, double subchannel_bw_hz, double noise_power_w,
               double mrrh_power_per_subchannel_w);

  std::size_t n_faps() const { return n_faps_; }
  std::size_t n_fues() const { return serving_.size(); }
  std::size_t n_mues() const { return n_mues_; }
  std::size_t n_subchannels() const { return n_sc_; }
  double subchannel_bw_hz() const { return subchannel_bw_; }
  double noise_power_w() const { return noise_w_; }
  double mrrh_power_w() const { return mrrh_power_w_; }
  std::size_t serving_fap(std::size_t fue) const { return serving_[fue]; }
  const std::vector<std::size_t>& serving_faps() const { return serving_; }

  double fap_to_fue(std::size_t k, std::size_t m, std::size_t n) const {
    return fap_fue_[(k * serving_.size() + m) * n_sc_ + n];
  }
  double fap_to_mue(std::size_t k, std::size_t u, std::size_t n) const {
    return fap_mue_[(k * n_mues_ + u) * n_sc_ + n];
  }
  double mrrh_to_fue(std::size_t m, std::size_t n) const { return mrrh_fue_[m * n_sc_ + n]; }
  double mrrh_to_mue(std::size_t u, std::size_t n) const { return mrrh_mue_[u * n_sc_ + n]; }
  // Serving-link gain normalized by subchannel noise power, 1/W.
  double crnn(std::size_t m, std::size_t n) const {
    return fap_to_fue(serving_[m], m, n) / noise_w_;
  }
  double crnn(std::size_t k, std::size_t m, std::size_t n) const {
    return fap_to_fue(k, m, n) / noise_w_;
  }
  // Mean serving-F-AP -> MUE gain on n; 0 when there are no MUEs.
  double mean_gain_to_mues(std::size_t k, std::size_t n) const;

  // Generic lookup; throws std::invalid_argument for link families not modeled.
  double gain(Node tx, Node rx, std::size_t n) const;

  void set_fap_to_fue(std::size_t k, std::size_t m, std::size_t n, double g) {
    fap_fue_[(k * serving_.size() + m) * n_sc_ + n] = g;
  }
  void set_fap_to_mue(std::size_t k, std::size_t u, std::size_t n, double g) {
    fap_mue_[(k * n_mues_ + u) * n_sc_ + n] = g;
  }
  void set_mrrh_to_fue(std::size_t m, std::size_t n, double g) { mrrh_fue_[m * n_sc_ + n] = g; }
  void set_mrrh_to_mue(std::size_t u, std::size_t n, double g) { mrrh_mue_[u * n_sc_ + n] = g; }

  // True when every entry of every link family is finite and > 0.
  bool complete() const;

  friend bool operator==(const ChannelState&, const ChannelState&) = default;

 private:
  std::size_t n_faps_;
  std::vector<std::size_t> serving_;
  std::size_t n_mues_;
  std::size_t n_sc_;
  double subchannel_bw_;
  double noise_w_;
  double mrrh_power_w_;
  std::vector<double> fap_fue_;
  std::vector<double> fap_mue_;
  std::vector<double> mrrh_fue_;
  std::vector<double> mrrh_mue_;
};

// gain = 10^(-PL(d)/10) * f with f ~ Exp(1) drawn per (link, subchannel).
// F-AP -> F-UE links (serving and cross-cell) use the fog model; MRRH links
// and F-AP -> MUE links use the macro model.
ChannelState draw_channel_gains(const NetworkTopology& t, const SpectrumConfig& s,
                                const ChannelModelConfig& model, std::mt19937_64& rng);

}  // namespace nomafran
