#include "nomafran/channel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nomafran/errors.hpp"
#include "nomafran/units.hpp"

namespace nomafran {

void SpectrumConfig::validate() const {
  if (!(total_bandwidth_hz > 0.0)) throw ValidationError("total_bandwidth_hz", "must be > 0");
  if (n_subchannels < 1) throw ValidationError("n_subchannels", "must be >= 1");
  if (!std::isfinite(noise_psd_dbm_hz))
    throw ValidationError("noise_psd_dbm_hz", "must be finite");
}

double SpectrumConfig::noise_power_w() const {
  return dbm_to_watt(noise_psd_dbm_hz) * subchannel_bandwidth_hz();
}

void ChannelModelConfig::validate() const {
  if (!(macro.reference_m > 0.0)) throw ValidationError("macro_reference_m", "must be > 0");
  if (!(fog.reference_m > 0.0)) throw ValidationError("fog_reference_m", "must be > 0");
  if (macro.slope_db < 0.0) throw ValidationError("macro_pl_slope_db", "must be >= 0");
  if (fog.slope_db < 0.0) throw ValidationError("fog_pl_slope_db", "must be >= 0");
  if (shadowing_std_db < 0.0) throw ValidationError("shadowing_std_db", "must be >= 0");
}

double path_loss_db(const PathLossModel& model, double d) {
  if (!(d > 0.0)) throw DomainError("path loss needs d > 0, got " + std::to_string(d));
  return model.intercept_db + model.slope_db * std::log10(d / model.reference_m);
}

double path_loss_db(LinkKind kind, double d, const ChannelModelConfig& model) {
  return path_loss_db(kind == LinkKind::macro_link ? model.macro : model.fog, d);
}

ChannelState::ChannelState(std::size_t n_faps, std::vector<std::size_t> serving_fap,
                           std::size_t n_mues, std::size_t n_subchannels, double subchannel_bw_hz,
                           double noise_power_w, double mrrh_power_per_subchannel_w)
    : n_faps_(n_faps),
      serving_(std::move(serving_fap)),
      n_mues_(n_mues),
      n_sc_(n_subchannels),
      subchannel_bw_(subchannel_bw_hz),
      noise_w_(noise_power_w),
      mrrh_power_w_(mrrh_power_per_subchannel_w) {
  constexpr double unset = std::numeric_limits<double>::quiet_NaN();
  fap_fue_.assign(n_faps_ * serving_.size() * n_sc_, unset);
  fap_mue_.assign(n_faps_ * n_mues_ * n_sc_, unset);
  mrrh_fue_.assign(serving_.size() * n_sc_, unset);
  mrrh_mue_.assign(n_mues_ * n_sc_, unset);
  for (auto k : serving_)
    if (k >= n_faps_) throw std::invalid_argument("serving F-AP index out of range");
}

double ChannelState::mean_gain_to_mues(std::size_t k, std::size_t n) const {
  if (n_mues_ == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t u = 0; u < n_mues_; ++u) sum += fap_to_mue(k, u, n);
  return sum / static_cast<double>(n_mues_);
}

double ChannelState::gain(Node tx, Node rx, std::size_t n) const {
  if (tx.kind == NodeKind::fap && rx.kind == NodeKind::fue) return fap_to_fue(tx.index, rx.index, n);
  if (tx.kind == NodeKind::fap && rx.kind == NodeKind::mue) return fap_to_mue(tx.index, rx.index, n);
  if (tx.kind == NodeKind::mrrh && rx.kind == NodeKind::fue) return mrrh_to_fue(rx.index, n);
  if (tx.kind == NodeKind::mrrh && rx.kind == NodeKind::mue) return mrrh_to_mue(rx.index, n);
  throw std::invalid_argument("link family not modeled");
}

bool ChannelState::complete() const {
  auto ok = [](const std::vector<double>& v) {
    for (double g : v)
      if (!(g > 0.0) || !std::isfinite(g)) return false;
    return true;
  };
  return ok(fap_fue_) && ok(fap_mue_) && ok(mrrh_fue_) && ok(mrrh_mue_);
}

ChannelState draw_channel_gains(const NetworkTopology& t, const SpectrumConfig& s,
                                const ChannelModelConfig& model, std::mt19937_64& rng) {
  s.validate();
  model.validate();
  const auto n_sc = static_cast<std::size_t>(s.n_subchannels);
  ChannelState ch(t.n_faps(), t.serving_faps(), t.n_mues(), n_sc, s.subchannel_bandwidth_hz(),
                  s.noise_power_w(), dbm_to_watt(model.mrrh_total_power_dbm) / n_sc);

  std::exponential_distribution<double> fading(1.0);
  std::normal_distribution<double> shadowing(0.0, model.shadowing_std_db);

  // Per-link draw order is fixed: link, then shadowing (if enabled), then one
  // fading sample per subchannel.
  auto draw_link = [&](const PathLossModel& pl, double d, auto&& store) {
    double loss_db = path_loss_db(pl, d);
    if (model.shadowing_std_db > 0.0) loss_db += shadowing(rng);
    const double mean_gain = db_to_linear(-loss_db);
    for (std::size_t n = 0; n < n_sc; ++n) {
      const double f = model.rayleigh_fading ? fading(rng) : 1.0;
      store(n, mean_gain * f);
    }
  };
  // Coincident nodes would give d = 0; clamp to 1 m, the nearest any real
  // receiver sits to an antenna.
  auto link_distance = [](Point a, Point b) { return std::max(distance(a, b), 1.0); };

  for (std::size_t k = 0; k < t.n_faps(); ++k) {
    for (std::size_t m = 0; m < t.n_fues(); ++m)
      draw_link(model.fog, link_distance(t.fap_positions[k], t.fues[m].position),
                [&](std::size_t n, double g) { ch.set_fap_to_fue(k, m, n, g); });
    for (std::size_t u = 0; u < t.n_mues(); ++u)
      draw_link(model.macro, link_distance(t.fap_positions[k], t.mue_positions[u]),
                [&](std::size_t n, double g) { ch.set_fap_to_mue(k, u, n, g); });
  }
  for (std::size_t m = 0; m < t.n_fues(); ++m)
    draw_link(model.macro, link_distance(t.mrrh_position, t.fues[m].position),
              [&](std::size_t n, double g) { ch.set_mrrh_to_fue(m, n, g); });
  for (std::size_t u = 0; u < t.n_mues(); ++u)
    draw_link(model.macro, link_distance(t.mrrh_position, t.mue_positions[u]),
              [&](std::size_t n, double g) { ch.set_mrrh_to_mue(u, n, g); });

  assert(ch.complete() && "every link family must be populated");
  if (!ch.complete()) throw std::logic_error("channel state has missing or invalid gains");
  return ch;
}

}  // namespace nomafran
