#include "nomafran/phy_noma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nomafran/errors.hpp"

namespace nomafran {

double PowerAllocation::on_subchannel(const Matching& m, std::size_t k, std::size_t n) const {
  double total = 0.0;
  for (auto ue : m.fues_on(k, n)) total += (*this)(ue, n);
  return total;
}

double PowerAllocation::fap_total(const Matching& m, std::size_t k) const {
  double total = 0.0;
  for (std::size_t n = 0; n < m.n_subchannels(); ++n) total += on_subchannel(m, k, n);
  return total;
}

bool PowerAllocation::feasible(const Matching& m, double p_max_fap, double tol) const {
  for (std::size_t ue = 0; ue < n_fues(); ++ue) {
    for (std::size_t n = 0; n < n_sc_; ++n) {
      const double v = (*this)(ue, n);
      if (!(v >= 0.0) || !std::isfinite(v)) return false;
      if (v != 0.0 && !m.matched(ue, n)) return false;
    }
  }
  for (std::size_t k = 0; k < m.n_faps(); ++k)
    if (fap_total(m, k) > p_max_fap + tol) return false;
  return true;
}

std::vector<std::size_t> sic_order(std::size_t cell, std::size_t n,
                                   std::span<const std::size_t> fues, const ChannelState& ch) {
  std::vector<std::size_t> order(fues.begin(), fues.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = ch.crnn(cell, a, n);
    const double cb = ch.crnn(cell, b, n);
    return ca < cb || (ca == cb && a < b);
  });
  return order;
}

SinrTerms sinr_terms(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
                     const ChannelState& ch) {
  if (!m.matched(ue, n))
    throw UnmatchedError("F-UE " + std::to_string(ue) + " is not matched to subchannel " +
                         std::to_string(n));
  const std::size_t k = m.serving_fap(ue);
  SinrTerms t;
  t.signal_gain = ch.fap_to_fue(k, ue, n);
  t.own_power = p(ue, n);

  // F-UEs decoded after ue (higher CRNN, or equal CRNN and higher index).
  const double own = ch.crnn(k, ue, n);
  double later_power = 0.0;
  for (auto other : m.fues_on(k, n)) {
    if (other == ue) continue;
    const double c = ch.crnn(k, other, n);
    if (c > own || (c == own && other > ue)) later_power += p(other, n);
  }
  t.intra_cell = t.signal_gain * later_power;

  for (std::size_t kk = 0; kk < m.n_faps(); ++kk) {
    if (kk == k) continue;
    const double pk = p.on_subchannel(m, kk, n);
    if (pk > 0.0) t.co_tier += ch.fap_to_fue(kk, ue, n) * pk;
  }
  t.cross_tier = ch.mrrh_to_fue(ue, n) * ch.mrrh_power_w();
  t.noise = ch.noise_power_w();
  return t;
}

double sinr(std::size_t ue, std::size_t n, const Matching& m, const PowerAllocation& p,
            const ChannelState& ch) {
  return sinr_terms(ue, n, m, p, ch).sinr();
}

double rate(double sinr, double subchannel_bw_hz) { return subchannel_bw_hz * std::log2(1.0 + sinr); }

double RateReport::sum_rate() const {
  double s = 0.0;
  for (double r : per_fue_bps) s += r;
  return s;
}

double RateReport::max_intra_cell() const {
  double mx = 0.0;
  for (double v : intra_cell_w) mx = std::max(mx, v);
  return mx;
}

RateReport compute_rates(const Matching& m, const PowerAllocation& p, const ChannelState& ch) {
  RateReport r;
  const std::size_t n_sc = ch.n_subchannels();
  r.n_subchannels = n_sc;
  r.rate_bps.assign(m.n_fues() * n_sc, 0.0);
  r.sinr_linear.assign(m.n_fues() * n_sc, 0.0);
  r.intra_cell_w.assign(m.n_fues() * n_sc, 0.0);
  r.per_fue_bps.assign(m.n_fues(), 0.0);
  for (auto [ue, n] : m.pairs()) {
    const auto t = sinr_terms(ue, n, m, p, ch);
    const double s = t.sinr();
    const double bps = rate(s, ch.subchannel_bw_hz());
    r.sinr_linear[ue * n_sc + n] = s;
    r.rate_bps[ue * n_sc + n] = bps;
    r.intra_cell_w[ue * n_sc + n] = t.intra_cell;
    r.per_fue_bps[ue] += bps;
  }
  return r;
}

double MacroInterference::max_per_subchannel() const {
  double mx = 0.0;
  for (double v : per_subchannel_w) mx = std::max(mx, v);
  return mx;
}

MacroInterference macro_interference(const Matching& m, const PowerAllocation& p,
                                     const ChannelState& ch) {
  MacroInterference out;
  const std::size_t n_sc = ch.n_subchannels();
  out.n_subchannels = n_sc;
  out.per_subchannel_w.assign(ch.n_mues() * n_sc, 0.0);
  out.total_w.assign(ch.n_mues(), 0.0);
  for (std::size_t k = 0; k < m.n_faps(); ++k) {
    for (std::size_t n = 0; n < n_sc; ++n) {
      const double pk = p.on_subchannel(m, k, n);
      if (pk == 0.0) continue;
      for (std::size_t u = 0; u < ch.n_mues(); ++u)
        out.per_subchannel_w[u * n_sc + n] += ch.fap_to_mue(k, u, n) * pk;
    }
  }
  for (std::size_t u = 0; u < ch.n_mues(); ++u)
    for (std::size_t n = 0; n < n_sc; ++n) out.total_w[u] += out.per_subchannel_w[u * n_sc + n];
  return out;
}

}  // namespace nomafran
