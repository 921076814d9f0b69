#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/power_game.hpp"
#include "nomafran/topology.hpp"

namespace nomafran {

enum class SchemeKind { noma, ofdma };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::noma;
  std::size_t q = 2;  // ignored for ofdma, which always runs q = q_ue = 1

  std::size_t effective_q() const { return kind == SchemeKind::ofdma ? 1 : q; }
  std::string name() const { return kind == SchemeKind::ofdma ? "ofdma" : "noma"; }
  // "noma-q2", "ofdma"
  std::string label() const;
  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

// Parses "noma", "ofdma" or "noma-q<N>"; `default_q` applies to bare "noma".
// A quota of 0 in SimConfig::schemes stands for SimConfig::q.
SchemeSpec parse_scheme(std::string_view text, std::size_t default_q);

struct SimConfig {
  GeometryConfig geometry;
  SpectrumConfig spectrum;
  ChannelModelConfig channel;
  CacheConfig cache;
  UtilityParams utility;
  std::size_t q = 2;
  std::size_t q_ue = 2;
  SchemeKind scheme = SchemeKind::noma;
  // Optional list of schemes compared side by side; empty means {scheme, q}.
  std::vector<SchemeSpec> schemes;
  int n_drops = 100;
  std::uint64_t base_seed = 1;
  // Empty sweep_param means a single sweep point.
  std::string sweep_param;
  std::vector<std::string> sweep_values;
  // Re-run the matching with game-derived pair powers, then the game again.
  bool rematch_with_game_powers = false;

  std::vector<SchemeSpec> scheme_list() const;
  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Assigns one `key = value` setting. Unknown keys and malformed values throw
// std::invalid_argument; range checks happen in SimConfig::validate().
void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value);

// Keys accepted by set_config_value, in documentation order.
const std::vector<std::string>& config_keys();

// Flat UTF-8 `key = value` text, one pair per line, `#` starts a comment.
// Throws ParseError (with line number) for syntax errors, unknown keys and
// malformed values, ValidationError for out-of-range values.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace nomafran
