#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace nomafran {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Euclidean distance in meters.
double distance(Point a, Point b);

// Placement constraints for one drop. Lengths in meters.
struct GeometryConfig {
  double macro_radius = 500.0;
  double fap_radius = 10.0;
  double d_min_mrrh_fap = 300.0;
  double d_min_mrrh_mue = 50.0;
  double d_min_fap_fap = 40.0;
  int n_faps = 4;
  int n_fues_per_fap = 10;
  int n_mues = 2;

  // Throws ValidationError naming the first offending field.
  void validate() const;
  friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

struct FogUser {
  std::size_t fap = 0;
  Point position;
  friend bool operator==(const FogUser&, const FogUser&) = default;
};

// Node positions of one drop. F-UEs are stored grouped by serving F-AP, in
// ascending F-AP order, so the global F-UE index order is (F-AP, local index).
struct NetworkTopology {
  Point mrrh_position;
  double macro_radius = 0.0;
  double fap_radius = 0.0;
  std::vector<Point> fap_positions;
  std::vector<FogUser> fues;
  std::vector<Point> mue_positions;

  std::size_t n_faps() const { return fap_positions.size(); }
  std::size_t n_fues() const { return fues.size(); }
  std::size_t n_mues() const { return mue_positions.size(); }
  std::vector<std::size_t> serving_faps() const;
  std::vector<std::size_t> fues_of(std::size_t fap) const;

  friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;
};

struct Violation {
  std::string constraint;  // e.g. "fap_fap_separation"
  std::vector<std::size_t> nodes;
  std::string detail;
};

inline constexpr std::size_t kDefaultAttemptBudget = 100000;

// Rejection-samples a topology: F-APs uniform over the annulus
// [d_min_mrrh_fap, macro_radius] subject to pairwise separation, F-UEs
// uniform in their F-AP's disk, MUEs uniform over [d_min_mrrh_mue, macro_radius].
// Throws FeasibilityError when a node cannot be placed within
// `attempts_per_node` draws.
NetworkTopology generate_topology(const GeometryConfig& config, std::mt19937_64& rng,
                                  std::size_t attempts_per_node = kDefaultAttemptBudget);

std::vector<Violation> validate_topology(const NetworkTopology& t, const GeometryConfig& config);

}  // namespace nomafran
