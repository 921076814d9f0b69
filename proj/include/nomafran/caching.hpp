#pragma once

#include <cstddef>
#include <vector>

#include "nomafran/topology.hpp"

namespace nomafran {

struct CacheConfig {
  int n_contents = 100;
  double zipf_exponent = 0.8;
  int cache_slots_per_fap = 20;

  void validate() const;
};

// Contents each F-AP stores (0-based content indices, most popular first) and
// the resulting hit probability of every F-UE.
struct CachePlacement {
  std::vector<std::vector<std::size_t>> cached;
  std::vector<double> theta;
};

// Zipf popularity: p_i proportional to i^-s for ranks i = 1..n_contents.
std::vector<double> content_popularity(int n_contents, double s);

// Every F-AP stores the cache_slots_per_fap most popular contents; each of its
// F-UEs gets theta = total popularity of what its F-AP stores.
CachePlacement place_cache(const std::vector<double>& popularity, const CacheConfig& cfg,
                           const NetworkTopology& t);

// Expected backhaul traffic avoided, scaled by beta.
double caching_reward(double theta, double rate_bps, double beta);

}  // namespace nomafran
