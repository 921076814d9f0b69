#include "nomafran/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nomafran/errors.hpp"
#include "nomafran/units.hpp"

namespace nomafran {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("expected a number, got '" + std::string(v) + "'");
  return out;
}

template <class Int>
Int to_int(std::string_view v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  return out;
}

// Quotas are parsed signed so that "q = 0" or "q = -1" reach validation.
std::size_t to_quota(std::string_view v) {
  const auto i = to_int<long long>(v);
  return i < 0 ? 0 : static_cast<std::size_t>(i);
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + std::string(v) + "'");
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(SimConfig&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"macro_radius", [](SimConfig& c, std::string_view v) { c.geometry.macro_radius = to_double(v); }},
      {"fap_radius", [](SimConfig& c, std::string_view v) { c.geometry.fap_radius = to_double(v); }},
      {"d_min_mrrh_fap", [](SimConfig& c, std::string_view v) { c.geometry.d_min_mrrh_fap = to_double(v); }},
      {"d_min_mrrh_mue", [](SimConfig& c, std::string_view v) { c.geometry.d_min_mrrh_mue = to_double(v); }},
      {"d_min_fap_fap", [](SimConfig& c, std::string_view v) { c.geometry.d_min_fap_fap = to_double(v); }},
      {"n_faps", [](SimConfig& c, std::string_view v) { c.geometry.n_faps = to_int<int>(v); }},
      {"n_fues_per_fap", [](SimConfig& c, std::string_view v) { c.geometry.n_fues_per_fap = to_int<int>(v); }},
      {"n_mues", [](SimConfig& c, std::string_view v) { c.geometry.n_mues = to_int<int>(v); }},
      {"total_bandwidth_hz", [](SimConfig& c, std::string_view v) { c.spectrum.total_bandwidth_hz = to_double(v); }},
      {"n_subchannels", [](SimConfig& c, std::string_view v) { c.spectrum.n_subchannels = to_int<int>(v); }},
      {"noise_psd_dbm_hz", [](SimConfig& c, std::string_view v) { c.spectrum.noise_psd_dbm_hz = to_double(v); }},
      {"macro_pl_intercept_db", [](SimConfig& c, std::string_view v) { c.channel.macro.intercept_db = to_double(v); }},
      {"macro_pl_slope_db", [](SimConfig& c, std::string_view v) { c.channel.macro.slope_db = to_double(v); }},
      {"fog_pl_intercept_db", [](SimConfig& c, std::string_view v) { c.channel.fog.intercept_db = to_double(v); }},
      {"fog_pl_slope_db", [](SimConfig& c, std::string_view v) { c.channel.fog.slope_db = to_double(v); }},
      {"rayleigh_fading", [](SimConfig& c, std::string_view v) { c.channel.rayleigh_fading = to_bool(v); }},
      {"shadowing_std_db", [](SimConfig& c, std::string_view v) { c.channel.shadowing_std_db = to_double(v); }},
      {"mrrh_power_dbm", [](SimConfig& c, std::string_view v) { c.channel.mrrh_total_power_dbm = to_double(v); }},
      {"n_contents", [](SimConfig& c, std::string_view v) { c.cache.n_contents = to_int<int>(v); }},
      {"zipf_exponent", [](SimConfig& c, std::string_view v) { c.cache.zipf_exponent = to_double(v); }},
      {"cache_slots_per_fap", [](SimConfig& c, std::string_view v) { c.cache.cache_slots_per_fap = to_int<int>(v); }},
      {"price_lambda", [](SimConfig& c, std::string_view v) { c.utility.price_lambda = to_double(v); }},
      {"reward_beta", [](SimConfig& c, std::string_view v) { c.utility.reward_beta = to_double(v); }},
      {"interference_threshold_dbm",
       [](SimConfig& c, std::string_view v) { c.utility.interference_threshold_w = dbm_to_watt(to_double(v)); }},
      {"p_min_w", [](SimConfig& c, std::string_view v) { c.utility.p_min_w = to_double(v); }},
      {"p_max_per_pair_w", [](SimConfig& c, std::string_view v) { c.utility.p_max_per_pair_w = to_double(v); }},
      {"p_max_fap_dbm", [](SimConfig& c, std::string_view v) { c.utility.p_max_fap_w = dbm_to_watt(to_double(v)); }},
      {"epsilon_converge_w", [](SimConfig& c, std::string_view v) { c.utility.epsilon_converge_w = to_double(v); }},
      {"max_inner_iters", [](SimConfig& c, std::string_view v) { c.utility.max_inner_iters = to_int<int>(v); }},
      {"max_outer_iters", [](SimConfig& c, std::string_view v) { c.utility.max_outer_iters = to_int<int>(v); }},
      {"lambda_growth", [](SimConfig& c, std::string_view v) { c.utility.lambda_growth = to_double(v); }},
      {"q", [](SimConfig& c, std::string_view v) { c.q = to_quota(v); }},
      {"q_ue", [](SimConfig& c, std::string_view v) { c.q_ue = to_quota(v); }},
      {"scheme",
       [](SimConfig& c, std::string_view v) {
         if (v == "noma") c.scheme = SchemeKind::noma;
         else if (v == "ofdma") c.scheme = SchemeKind::ofdma;
         else throw std::invalid_argument("scheme must be noma or ofdma");
       }},
      {"schemes",
       [](SimConfig& c, std::string_view v) {
         c.schemes.clear();
         for (const auto& item : split_list(v)) c.schemes.push_back(parse_scheme(item, 0));
       }},
      {"rematch_with_game_powers",
       [](SimConfig& c, std::string_view v) { c.rematch_with_game_powers = to_bool(v); }},
      {"n_drops", [](SimConfig& c, std::string_view v) { c.n_drops = to_int<int>(v); }},
      {"base_seed", [](SimConfig& c, std::string_view v) { c.base_seed = to_int<std::uint64_t>(v); }},
      {"sweep_param", [](SimConfig& c, std::string_view v) { c.sweep_param = std::string(v); }},
      {"sweep_values", [](SimConfig& c, std::string_view v) { c.sweep_values = split_list(v); }},
  };
  return table;
}

}  // namespace

std::string SchemeSpec::label() const {
  return kind == SchemeKind::ofdma ? "ofdma" : "noma-q" + std::to_string(q);
}

SchemeSpec parse_scheme(std::string_view text, std::size_t default_q) {
  text = trim(text);
  if (text == "ofdma") return {SchemeKind::ofdma, 1};
  if (text == "noma") return {SchemeKind::noma, default_q};
  if (text.starts_with("noma-q")) {
    const auto q = to_quota(text.substr(6));
    if (q < 1) throw std::invalid_argument("noma quota must be >= 1");
    return {SchemeKind::noma, q};
  }
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

std::vector<SchemeSpec> SimConfig::scheme_list() const {
  if (!schemes.empty()) {
    auto out = schemes;
    for (auto& s : out)
      if (s.kind == SchemeKind::noma && s.q == 0) s.q = q;
    return out;
  }
  return {SchemeSpec{scheme, scheme == SchemeKind::ofdma ? 1 : q}};
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value) {
  for (const auto& [name, set] : setters()) {
    if (name == key) {
      set(cfg, trim(value));
      return;
    }
  }
  throw std::invalid_argument("unknown key '" + std::string(key) + "'");
}

void SimConfig::validate() const {
  geometry.validate();
  spectrum.validate();
  channel.validate();
  cache.validate();
  utility.validate();
  if (q < 1) throw ValidationError("q", "must be >= 1");
  if (q_ue < 1) throw ValidationError("q_ue", "must be >= 1");
  for (const auto& s : schemes) {
    if (s.kind == SchemeKind::noma && s.q < 1 && !(s.q == 0 && q >= 1))
      throw ValidationError("schemes", "noma quota must be >= 1");
  }
  if (n_drops < 1) throw ValidationError("n_drops", "must be >= 1");
  if (!sweep_param.empty()) {
    static const std::vector<std::string> not_sweepable = {
        "scheme", "schemes", "sweep_param", "sweep_values", "n_drops", "base_seed"};
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), sweep_param) == keys.end() ||
        std::find(not_sweepable.begin(), not_sweepable.end(), sweep_param) != not_sweepable.end())
      throw ValidationError("sweep_param", "cannot sweep '" + sweep_param + "'");
    if (sweep_values.empty()) throw ValidationError("sweep_values", "must list at least one value");
    for (const auto& v : sweep_values) {
      SimConfig point = *this;
      point.sweep_param.clear();
      try {
        set_config_value(point, sweep_param, v);
      } catch (const std::invalid_argument& e) {
        throw ValidationError("sweep_values", e.what());
      }
      point.validate();
    }
  }
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    try {
      set_config_value(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace nomafran
