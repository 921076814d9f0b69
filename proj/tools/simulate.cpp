// simulate: Monte Carlo drops of the NOMA F-RAN allocation pipeline, CSV out.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nomafran/config.hpp"
#include "nomafran/errors.hpp"
#include "nomafran/harness.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kFeasibilityError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA fog-RAN resource allocation simulator"};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::string out_path;
  std::optional<std::string> scheme;
  std::optional<std::size_t> q;
  unsigned threads = 1;

  app.add_option("--config", config_path, "flat key = value config file")->required();
  app.add_option("--seed", seed, "base seed (drop i uses seed + i)");
  app.add_option("--drops", drops, "number of drops per sweep point and scheme");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--scheme", scheme, "noma or ofdma; replaces any schemes list")
      ->check(CLI::IsMember({"noma", "ofdma"}));
  app.add_option("--q", q, "subchannel quota for noma");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  nomafran::SimConfig cfg;
  try {
    cfg = nomafran::load_config(config_path);
    if (seed) cfg.base_seed = *seed;
    if (drops) cfg.n_drops = *drops;
    if (q) cfg.q = *q;
    if (scheme) {
      nomafran::set_config_value(cfg, "scheme", *scheme);
      cfg.schemes.clear();
    }
    cfg.validate();
  } catch (const nomafran::ParseError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const nomafran::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    const auto rows = nomafran::run_sweep(cfg, {threads});
    if (out_path.empty()) {
      nomafran::write_csv(std::cout, rows);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << out_path << '\n';
        return 1;
      }
      nomafran::write_csv(out, rows);
    }
  } catch (const nomafran::FeasibilityError& e) {
    std::cerr << "feasibility error: " << e.what() << '\n';
    return kFeasibilityError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
