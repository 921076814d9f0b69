#include "nomafran/topology.hpp"

#include <cmath>

#include "nomafran/errors.hpp"

namespace nomafran {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void GeometryConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(name, "must be > 0");
  };
  positive(macro_radius, "macro_radius");
  positive(fap_radius, "fap_radius");
  positive(d_min_mrrh_fap, "d_min_mrrh_fap");
  positive(d_min_mrrh_mue, "d_min_mrrh_mue");
  positive(d_min_fap_fap, "d_min_fap_fap");
  if (d_min_mrrh_fap >= macro_radius)
    throw ValidationError("d_min_mrrh_fap", "must be < macro_radius");
  if (d_min_mrrh_mue >= macro_radius)
    throw ValidationError("d_min_mrrh_mue", "must be < macro_radius");
  if (n_faps < 0) throw ValidationError("n_faps", "must be >= 0");
  if (n_fues_per_fap < 0) throw ValidationError("n_fues_per_fap", "must be >= 0");
  if (n_mues < 0) throw ValidationError("n_mues", "must be >= 0");
}

std::vector<std::size_t> NetworkTopology::serving_faps() const {
  std::vector<std::size_t> out;
  out.reserve(fues.size());
  for (const auto& u : fues) out.push_back(u.fap);
  return out;
}

std::vector<std::size_t> NetworkTopology::fues_of(std::size_t fap) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < fues.size(); ++m)
    if (fues[m].fap == fap) out.push_back(m);
  return out;
}

namespace {

// Uniform point in the disk of `radius` around `center` by rejection from the
// bounding square; the caller applies any further acceptance test.
template <class Accept>
Point sample_in_disk(Point center, double radius, std::mt19937_64& rng, std::size_t budget,
                     Accept&& accept, const char* what, std::size_t index) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const double dx = coord(rng);
    const double dy = coord(rng);
    if (dx * dx + dy * dy > radius * radius) continue;
    const Point p{center.x + dx, center.y + dy};
    if (accept(p)) return p;
  }
  throw FeasibilityError(std::string("could not place ") + what + " " + std::to_string(index) +
                         " within " + std::to_string(budget) + " attempts");
}

}  // namespace

NetworkTopology generate_topology(const GeometryConfig& config, std::mt19937_64& rng,
                                  std::size_t attempts_per_node) {
  config.validate();
  NetworkTopology t;
  t.mrrh_position = {0.0, 0.0};
  t.macro_radius = config.macro_radius;
  t.fap_radius = config.fap_radius;

  const auto n_faps = static_cast<std::size_t>(config.n_faps);
  t.fap_positions.reserve(n_faps);
  for (std::size_t k = 0; k < n_faps; ++k) {
    auto ok = [&](Point p) {
      if (distance(p, t.mrrh_position) < config.d_min_mrrh_fap) return false;
      for (const auto& other : t.fap_positions)
        if (distance(p, other) < config.d_min_fap_fap) return false;
      return true;
    };
    t.fap_positions.push_back(
        sample_in_disk(t.mrrh_position, config.macro_radius, rng, attempts_per_node, ok, "F-AP", k));
  }

  const auto per_fap = static_cast<std::size_t>(config.n_fues_per_fap);
  t.fues.reserve(n_faps * per_fap);
  for (std::size_t k = 0; k < n_faps; ++k) {
    for (std::size_t i = 0; i < per_fap; ++i) {
      auto any = [](Point) { return true; };
      t.fues.push_back({k, sample_in_disk(t.fap_positions[k], config.fap_radius, rng,
                                          attempts_per_node, any, "F-UE", k * per_fap + i)});
    }
  }

  for (int u = 0; u < config.n_mues; ++u) {
    auto ok = [&](Point p) { return distance(p, t.mrrh_position) >= config.d_min_mrrh_mue; };
    t.mue_positions.push_back(sample_in_disk(t.mrrh_position, config.macro_radius, rng,
                                             attempts_per_node, ok, "MUE",
                                             static_cast<std::size_t>(u)));
  }
  return t;
}

std::vector<Violation> validate_topology(const NetworkTopology& t, const GeometryConfig& config) {
  std::vector<Violation> out;
  for (std::size_t k = 0; k < t.fap_positions.size(); ++k) {
    const double d = distance(t.fap_positions[k], t.mrrh_position);
    if (d > config.macro_radius)
      out.push_back({"fap_within_macro_radius", {k}, "distance " + std::to_string(d)});
    if (d < config.d_min_mrrh_fap)
      out.push_back({"fap_min_distance_to_mrrh", {k}, "distance " + std::to_string(d)});
  }
  for (std::size_t a = 0; a < t.fap_positions.size(); ++a) {
    for (std::size_t b = a + 1; b < t.fap_positions.size(); ++b) {
      const double d = distance(t.fap_positions[a], t.fap_positions[b]);
      if (d < config.d_min_fap_fap)
        out.push_back({"fap_fap_separation", {a, b}, "distance " + std::to_string(d)});
    }
  }
  for (std::size_t m = 0; m < t.fues.size(); ++m) {
    const auto& u = t.fues[m];
    if (u.fap >= t.fap_positions.size()) {
      out.push_back({"fue_serving_fap_exists", {m}, "fap " + std::to_string(u.fap)});
      continue;
    }
    const double d = distance(u.position, t.fap_positions[u.fap]);
    if (d > config.fap_radius)
      out.push_back({"fue_within_fap_radius", {m}, "distance " + std::to_string(d)});
  }
  for (std::size_t u = 0; u < t.mue_positions.size(); ++u) {
    const double d = distance(t.mue_positions[u], t.mrrh_position);
    if (d > config.macro_radius)
      out.push_back({"mue_within_macro_radius", {u}, "distance " + std::to_string(d)});
    if (d < config.d_min_mrrh_mue)
      out.push_back({"mue_min_distance_to_mrrh", {u}, "distance " + std::to_string(d)});
  }
  return out;
}

}  // namespace nomafran
