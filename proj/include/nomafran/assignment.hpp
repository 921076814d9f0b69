#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nomafran {

using Pair = std::pair<std::size_t, std::size_t>;  // (F-UE, subchannel)

// F-UE <-> subchannel assignment. The subchannel quota `q` bounds how many
// F-UEs share a subchannel across the whole network; `q_ue` bounds how many
// subchannels one F-UE holds.
class Matching {
 public:
  Matching() = default;
  Matching(std::vector<std::size_t> serving_fap, std::size_t n_faps, std::size_t n_subchannels,
           std::size_t q, std::size_t q_ue);

  std::size_t n_fues() const { return serving_.size(); }
  std::size_t n_faps() const { return n_faps_; }
  std::size_t n_subchannels() const { return n_sc_; }
  std::size_t q() const { return q_; }
  std::size_t q_ue() const { return q_ue_; }
  std::size_t serving_fap(std::size_t m) const { return serving_[m]; }
  const std::vector<std::size_t>& serving_faps() const { return serving_; }

  bool matched(std::size_t m, std::size_t n) const { return cell_[m * n_sc_ + n]; }
  // Throws std::logic_error when the insertion would break a quota.
  void add(std::size_t m, std::size_t n);
  void remove(std::size_t m, std::size_t n);

  // All F-UEs on subchannel n, ascending.
  const std::vector<std::size_t>& fues_on(std::size_t n) const { return channel_[n]; }
  std::size_t load(std::size_t n) const { return channel_[n].size(); }
  // F-UEs of F-AP k on subchannel n, ascending.
  const std::vector<std::size_t>& fues_on(std::size_t k, std::size_t n) const {
    return slot_[k * n_sc_ + n];
  }
  std::size_t load(std::size_t k, std::size_t n) const { return slot_[k * n_sc_ + n].size(); }
  std::size_t degree(std::size_t m) const { return degree_[m]; }
  std::vector<std::size_t> subchannels_of(std::size_t m) const;

  // All pairs in lexicographic order.
  std::vector<Pair> pairs() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // Both quota invariants, recomputed from the raw assignment.
  bool quotas_hold() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::size_t> serving_;
  std::size_t n_faps_ = 0;
  std::size_t n_sc_ = 0;
  std::size_t q_ = 1;
  std::size_t q_ue_ = 1;
  std::vector<char> cell_;
  std::vector<std::vector<std::size_t>> channel_;
  std::vector<std::vector<std::size_t>> slot_;
  std::vector<std::size_t> degree_;
};

}  // namespace nomafran
