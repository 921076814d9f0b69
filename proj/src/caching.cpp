#include "nomafran/caching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nomafran/errors.hpp"

namespace nomafran {

void CacheConfig::validate() const {
  if (n_contents < 1) throw ValidationError("n_contents", "must be >= 1");
  if (!(zipf_exponent >= 0.0)) throw ValidationError("zipf_exponent", "must be >= 0");
  if (cache_slots_per_fap < 0) throw ValidationError("cache_slots_per_fap", "must be >= 0");
  if (cache_slots_per_fap > n_contents)
    throw ValidationError("cache_slots_per_fap", "must be <= n_contents");
}

std::vector<double> content_popularity(int n_contents, double s) {
  if (n_contents < 1) throw DomainError("content_popularity needs n_contents >= 1");
  if (!(s >= 0.0)) throw DomainError("content_popularity needs s >= 0");
  std::vector<double> w(static_cast<std::size_t>(n_contents));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(static_cast<double>(i + 1), -s);
  const double norm = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= norm;
  return w;
}

CachePlacement place_cache(const std::vector<double>& popularity, const CacheConfig& cfg,
                           const NetworkTopology& t) {
  const std::size_t slots =
      std::min(popularity.size(), static_cast<std::size_t>(std::max(cfg.cache_slots_per_fap, 0)));

  std::vector<std::size_t> ranked(popularity.size());
  std::iota(ranked.begin(), ranked.end(), std::size_t{0});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return popularity[a] > popularity[b]; });
  ranked.resize(slots);

  double hit = 0.0;
  for (auto c : ranked) hit += popularity[c];
  hit = std::clamp(hit, 0.0, 1.0);

  CachePlacement out;
  out.cached.assign(t.n_faps(), ranked);
  out.theta.assign(t.n_fues(), hit);
  return out;
}

double caching_reward(double theta, double rate_bps, double beta) { return beta * theta * rate_bps; }

}  // namespace nomafran
