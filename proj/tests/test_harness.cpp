#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nomafran/config.hpp"
#include "nomafran/errors.hpp"
#include "nomafran/harness.hpp"

using namespace nomafran;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.geometry.n_faps = 2;
  cfg.geometry.n_fues_per_fap = 3;
  cfg.spectrum.n_subchannels = 6;
  cfg.n_drops = 3;
  return cfg;
}

std::string csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows, false);
  return out.str();
}

}  // namespace

TEST_CASE("an empty network yields nothing") {
  auto cfg = small_config();
  cfg.geometry.n_faps = 0;
  const auto r = run_drop(cfg, 1);
  CHECK(r.total_net_utility == 0.0);
  CHECK(r.sum_rate == 0.0);
  CHECK(r.matched_pairs == 0);
}

TEST_CASE("drops are deterministic in config and seed") {
  const auto cfg = small_config();
  auto a = run_drop(cfg, 17);
  auto b = run_drop(cfg, 17);
  a.wall_ms = b.wall_ms = 0.0;
  CHECK(a.total_net_utility == b.total_net_utility);
  CHECK(a.sum_rate == b.sum_rate);
  CHECK(a.max_mue_interference_w == b.max_mue_interference_w);
  CHECK(a.proposals == b.proposals);
  CHECK(a.inner_iterations == b.inner_iterations);
  CHECK(a.final_lambda == b.final_lambda);
  CHECK(a.sum_rate >= 0.0);
}

TEST_CASE("the OFDMA baseline never superposes users") {
  auto cfg = small_config();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = run_drop(cfg, SchemeSpec{SchemeKind::ofdma, 1}, seed);
    CHECK(r.max_intra_cell_interference_w == 0.0);
    CHECK(r.q == 1);
  }
}

TEST_CASE("sweep row arithmetic") {
  auto cfg = small_config();
  cfg.n_drops = 2;
  cfg.sweep_param = "n_fues_per_fap";
  cfg.sweep_values = {"1", "2", "3"};
  cfg.schemes = {{SchemeKind::noma, 2}, {SchemeKind::noma, 3}, {SchemeKind::ofdma, 1}};
  const auto plan = plan_sweep(cfg);
  CHECK(plan.tasks.size() == 3 * 3 * 2);
  const auto rows = tabulate(plan, execute_plan(plan));
  const auto summaries = std::count_if(rows.begin(), rows.end(), [](const CsvRow& r) { return r.summary(); });
  CHECK(summaries == 9);
  CHECK(rows.size() == 18 + 9);
  CHECK(rows.front().sweep_value == "1");
  CHECK(rows.back().scheme == "ofdma");
  CHECK(rows.back().summary());
}

TEST_CASE("sweep planning at full scale") {
  SimConfig cfg;
  cfg.sweep_param = "n_fues_per_fap";
  cfg.sweep_values = {"10", "20", "30"};
  cfg.schemes = {{SchemeKind::noma, 2}, {SchemeKind::noma, 3}, {SchemeKind::ofdma, 1}};
  const auto plan = plan_sweep(cfg);
  CHECK(plan.tasks.size() == 900);
  CHECK(plan.point_configs[2].geometry.n_fues_per_fap == 30);
  CHECK(plan.tasks[1].seed == cfg.base_seed + 1);
  CHECK(plan.tasks[100].scheme == 1);
}

TEST_CASE("summary rows equal the mean of their data rows") {
  auto cfg = small_config();
  cfg.n_drops = 4;
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 5);
  double sum = 0.0, rate = 0.0;
  for (int i = 0; i < 4; ++i) {
    sum += rows[i].total_net_utility;
    rate += rows[i].sum_rate;
  }
  const auto& s = rows[4];
  CHECK(s.summary());
  CHECK(std::abs(s.total_net_utility - sum / 4) <= 1e-9 * std::abs(sum / 4));
  CHECK(std::abs(s.mean - sum / 4) <= 1e-9 * std::abs(sum / 4));
  CHECK(std::abs(s.sum_rate - rate / 4) <= 1e-9 * std::abs(rate / 4));
  CHECK(s.ci95 >= 0.0);
}

TEST_CASE("output does not depend on execution order or thread count") {
  auto cfg = small_config();
  cfg.n_drops = 4;
  cfg.schemes = {{SchemeKind::noma, 2}, {SchemeKind::ofdma, 1}};
  const auto plan = plan_sweep(cfg);
  const auto reference = csv(tabulate(plan, execute_plan(plan)));
  CHECK(reference == csv(run_sweep(cfg)));

  std::vector<std::size_t> order(plan.tasks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);
  CHECK(reference == csv(tabulate(plan, execute_plan(plan, 1, order))));
  CHECK(reference == csv(tabulate(plan, execute_plan(plan, 3, order))));
}

TEST_CASE("CSV layout") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-12) == "1e-12");
  CHECK(format_number(3.0) == "3");

  CsvRow row;
  row.sweep_param = "none";
  row.sweep_value = "-";
  row.scheme = "noma";
  row.q = 2;
  row.seed = 7;
  row.total_net_utility = 1.5;
  row.game_converged = 1;
  CHECK(format_row(row) == "none,-,noma,2,7,1.5,0,0,1,0,0,0,0");
  CHECK(format_row(row, false) == "none,-,noma,2,7,1.5,0,0,1,0,0,0");
  row.seed.reset();
  row.mean = 1.5;
  row.ci95 = 0.25;
  CHECK(format_row(row) == "none,-,noma,2,summary,1.5,0,0,1,0,0,0,0,1.5,0.25");

  std::ostringstream out;
  write_csv(out, {}, true);
  CHECK(out.str() == std::string(kCsvHeader) + "\n");
}

TEST_CASE("summaries") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.ci95 == doctest::Approx(1.96 * std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(summarize(std::vector<double>{}).mean == 0.0);
  CHECK(summarize(std::vector<double>{5.0}).ci95 == 0.0);
}

TEST_CASE("infeasible geometry propagates") {
  auto cfg = small_config();
  cfg.geometry.n_faps = 500;
  CHECK_THROWS_AS(run_drop(cfg, 1), FeasibilityError);
}
