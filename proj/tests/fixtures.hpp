#pragma once

#include <cstdint>
#include <random>

#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/topology.hpp"

namespace fixtures {

struct Instance {
  nomafran::NetworkTopology topology;
  nomafran::ChannelState channel;
  nomafran::CachePlacement cache;
};

// A seeded drop with the default geometry, channel and cache models.
inline Instance make_instance(int n_faps, int fues_per_fap, int n_subchannels, std::uint64_t seed,
                              int n_mues = 2) {
  nomafran::GeometryConfig g;
  g.n_faps = n_faps;
  g.n_fues_per_fap = fues_per_fap;
  g.n_mues = n_mues;
  std::mt19937_64 rng(seed);
  auto t = nomafran::generate_topology(g, rng);
  nomafran::SpectrumConfig s;
  s.n_subchannels = n_subchannels;
  auto ch = nomafran::draw_channel_gains(t, s, nomafran::ChannelModelConfig{}, rng);
  nomafran::CacheConfig cc;
  auto cache = nomafran::place_cache(nomafran::content_popularity(cc.n_contents, cc.zipf_exponent), cc, t);
  return {std::move(t), std::move(ch), std::move(cache)};
}

}  // namespace fixtures
