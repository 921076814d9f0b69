#include "nomafran/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace nomafran {

Matching::Matching(std::vector<std::size_t> serving_fap, std::size_t n_faps,
                   std::size_t n_subchannels, std::size_t q, std::size_t q_ue)
    : serving_(std::move(serving_fap)),
      n_faps_(n_faps),
      n_sc_(n_subchannels),
      q_(q),
      q_ue_(q_ue),
      cell_(serving_.size() * n_subchannels, 0),
      channel_(n_subchannels),
      slot_(n_faps * n_subchannels),
      degree_(serving_.size(), 0) {
  if (q_ < 1 || q_ue_ < 1) throw std::invalid_argument("quotas must be >= 1");
  for (auto k : serving_)
    if (k >= n_faps_) throw std::invalid_argument("serving F-AP index out of range");
}

void Matching::add(std::size_t m, std::size_t n) {
  if (matched(m, n)) return;
  auto& c = channel_[n];
  if (c.size() >= q_) throw std::logic_error("subchannel quota exceeded");
  if (degree_[m] >= q_ue_) throw std::logic_error("F-UE quota exceeded");
  c.insert(std::upper_bound(c.begin(), c.end(), m), m);
  auto& s = slot_[serving_[m] * n_sc_ + n];
  s.insert(std::upper_bound(s.begin(), s.end(), m), m);
  cell_[m * n_sc_ + n] = 1;
  ++degree_[m];
}

void Matching::remove(std::size_t m, std::size_t n) {
  if (!matched(m, n)) return;
  auto& c = channel_[n];
  c.erase(std::find(c.begin(), c.end(), m));
  auto& s = slot_[serving_[m] * n_sc_ + n];
  s.erase(std::find(s.begin(), s.end(), m));
  cell_[m * n_sc_ + n] = 0;
  --degree_[m];
}

std::vector<std::size_t> Matching::subchannels_of(std::size_t m) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < n_sc_; ++n)
    if (matched(m, n)) out.push_back(n);
  return out;
}

std::vector<Pair> Matching::pairs() const {
  std::vector<Pair> out;
  for (std::size_t m = 0; m < serving_.size(); ++m)
    for (std::size_t n = 0; n < n_sc_; ++n)
      if (matched(m, n)) out.emplace_back(m, n);
  return out;
}

std::size_t Matching::size() const {
  std::size_t total = 0;
  for (auto d : degree_) total += d;
  return total;
}

bool Matching::quotas_hold() const {
  std::vector<std::size_t> per_channel(n_sc_, 0);
  for (std::size_t m = 0; m < serving_.size(); ++m) {
    std::size_t deg = 0;
    for (std::size_t n = 0; n < n_sc_; ++n) {
      if (!matched(m, n)) continue;
      ++deg;
      ++per_channel[n];
    }
    if (deg > q_ue_) return false;
  }
  return std::all_of(per_channel.begin(), per_channel.end(), [&](std::size_t c) { return c <= q_; });
}

}  // namespace nomafran
