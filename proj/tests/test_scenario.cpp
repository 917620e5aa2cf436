#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaysec/bounds.hpp"
#include "relaysec/scenario.hpp"

using namespace relaysec;

namespace {

std::string csv_of(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing: full round") {
  const ScenarioSpec spec = parse_config(
      "# comment\n"
      "relay_power_db = 30\n"
      "jammer_mode = fixed\n"
      "jammer_power_db = 40\n"
      "alpha = 0.5\n"
      "power_control = off\n"
      "p1_db_start = 0\n"
      "p1_db_stop = 10\n"
      "p1_db_step = 5\n");
  CHECK(spec.relay_power_db == 30.0);
  CHECK(spec.jammer_mode == JammerMode::kFixed);
  CHECK(spec.jammer_power_db == 40.0);
  REQUIRE(spec.fixed_alpha.has_value());
  CHECK(*spec.fixed_alpha == 0.5);
  CHECK_FALSE(spec.power_control);
  CHECK(spec.p1_grid_db == std::vector<double>{0.0, 5.0, 10.0});
}

TEST_CASE("config parsing: unbounded relay and optimized alpha") {
  const ScenarioSpec spec = parse_config(
      "relay_power_db = inf\n"
      "jammer_mode = proportional\n"
      "jammer_ratio = 0.5\n"
      "alpha = opt\n"
      "power_control = on\n");
  CHECK(spec.relay_power_db == kInfinitePower);
  CHECK_FALSE(spec.fixed_alpha.has_value());
  CHECK(spec.power_control);
  CHECK(spec.p1_grid_db.size() == 61);  // default 0..60 dB
}

TEST_CASE("config parsing: errors name the offending key") {
  const char* base =
      "relay_power_db = 30\n"
      "jammer_mode = fixed\n"
      "jammer_power_db = 40\n"
      "power_control = off\n";

  CHECK_THROWS_WITH_AS(parse_config(std::string(base) + "alpha = 1.5\n"),
                       "alpha: must lie strictly inside (0,1)", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(base) + "alpha = x\n"),
                       "alpha: malformed number 'x'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(std::string(base)),
                       "alpha: missing required key", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(std::string(base) + "alpha = 0.5\nbogus_key = 1\n"),
      "bogus_key: unknown key", ConfigError);

  CHECK_THROWS_WITH_AS(parse_config("relay_power_db = 30\n"
                                    "jammer_mode = fixed\n"
                                    "alpha = 0.5\n"
                                    "power_control = off\n"),
                       "jammer_power_db: missing required key", ConfigError);
  CHECK_THROWS_AS(parse_config("relay_power_db = 30\n"
                               "jammer_mode = proportional\n"
                               "jammer_ratio = 0.5\n"
                               "jammer_power_db = 40\n"
                               "alpha = 0.5\n"
                               "power_control = off\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("relay_power_db = 30\n"
                               "relay_power_db = 40\n"
                               "jammer_mode = fixed\n"
                               "jammer_power_db = 40\n"
                               "alpha = 0.5\n"
                               "power_control = off\n"),
                  ConfigError);
}

TEST_CASE("presets reproduce the scenario table") {
  CHECK(preset_names() ==
        std::vector<std::string>{"fig6", "fig7", "fig8", "fig9", "fig10", "fig11"});

  const ScenarioSpec f6 = preset("fig6");
  CHECK(f6.relay_power_db == kInfinitePower);
  CHECK(f6.jammer_mode == JammerMode::kProportional);
  CHECK(f6.jammer_ratio == 0.5);
  CHECK_FALSE(f6.fixed_alpha.has_value());

  const ScenarioSpec f7 = preset("fig7");
  CHECK(f7.relay_power_db == kInfinitePower);
  CHECK(f7.jammer_mode == JammerMode::kFixed);
  CHECK(f7.jammer_power_db == 30.0);
  CHECK_FALSE(f7.fixed_alpha.has_value());

  const ScenarioSpec f8 = preset("fig8");
  CHECK(f8.relay_power_db == 30.0);
  CHECK(f8.jammer_mode == JammerMode::kProportional);
  CHECK(f8.jammer_ratio == 0.5);
  REQUIRE(f8.fixed_alpha.has_value());
  CHECK(*f8.fixed_alpha == 0.5);

  const ScenarioSpec f9 = preset("fig9");
  CHECK(f9.relay_power_db == 30.0);
  CHECK(f9.jammer_mode == JammerMode::kFixed);
  CHECK(f9.jammer_power_db == 40.0);
  REQUIRE(f9.fixed_alpha.has_value());
  CHECK(*f9.fixed_alpha == 0.5);
  CHECK_FALSE(f9.power_control);

  const ScenarioSpec f10 = preset("fig10");
  CHECK(f10.relay_power_db == 40.0);
  CHECK(f10.jammer_mode == JammerMode::kProportional);
  CHECK(f10.jammer_ratio == 0.25);
  CHECK_FALSE(f10.fixed_alpha.has_value());

  const ScenarioSpec f11 = preset("fig11");
  CHECK(f11.relay_power_db == 40.0);
  CHECK(f11.jammer_mode == JammerMode::kFixed);
  CHECK(f11.jammer_power_db == 30.0);
  CHECK_FALSE(f11.fixed_alpha.has_value());
  CHECK(f11.power_control);

  CHECK_THROWS_AS(preset("fig12"), ConfigError);
}

TEST_CASE("fixed-share proportional sweep stays inside its bounds") {
  ScenarioSpec spec = preset("fig8");
  spec.p1_grid_db.clear();
  for (int db = 0; db <= 50; db += 5) {
    spec.p1_grid_db.push_back(db);
  }
  const std::vector<SweepRow> rows = run_scenario(spec);
  REQUIRE(rows.size() == 11);
  for (const SweepRow& r : rows) {
    const BoundSet set = bounds_of(r);
    CHECK(set.achievable >= 0.0);
    CHECK(set.achievable <= set.upper_new + 1e-9);
    CHECK(set.achievable <= set.upper_gepi + 1e-9);
    CHECK(set.achievable <= set.upper_trivial + 1e-9);
    CHECK(set.achievable <= set.cutset + 1e-9);
    CHECK(r.alpha_star == 0.5);
  }
  // The proportional jammer keeps the rate growing over this range.
  CHECK(rows.back().achievable > rows.front().achievable);
}

TEST_CASE("fixed-jammer sweep rises then collapses without power control") {
  ScenarioSpec spec = preset("fig9");
  spec.p1_grid_db.clear();
  for (int db = 0; db <= 80; db += 2) {
    spec.p1_grid_db.push_back(db);
  }
  const std::vector<SweepRow> rows = run_scenario(spec);
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].achievable > peak) {
      peak = rows[i].achievable;
      peak_at = i;
    }
  }
  CHECK(peak > 0.0);
  CHECK(peak_at > 0);
  CHECK(peak_at + 1 < rows.size());
  CHECK(rows.back().achievable < 0.1 * peak);

  ScenarioSpec controlled = spec;
  controlled.power_control = true;
  const std::vector<SweepRow> rows_pc = run_scenario(controlled);
  for (std::size_t i = 1; i < rows_pc.size(); ++i) {
    CHECK(rows_pc[i].achievable >= rows_pc[i - 1].achievable - 1e-9);
  }
}

TEST_CASE("a silent jammer kills the rate everywhere") {
  const ScenarioSpec spec = parse_config(
      "relay_power_db = 30\n"
      "jammer_mode = fixed\n"
      "jammer_power_db = -inf\n"
      "alpha = 0.5\n"
      "power_control = off\n"
      "p1_db_start = 0\n"
      "p1_db_stop = 20\n"
      "p1_db_step = 5\n");
  for (const SweepRow& r : run_scenario(spec)) {
    CHECK(r.achievable == 0.0);
    CHECK(r.upper_new == 0.0);
    CHECK(r.cutset > 0.0);
  }
}

TEST_CASE("unbounded relay rows use the limiting forms") {
  ScenarioSpec spec = preset("fig7");
  spec.p1_grid_db = {20.0, 40.0, 60.0, 80.0};
  const std::vector<SweepRow> rows = run_scenario(spec);
  for (const SweepRow& r : rows) {
    CHECK(r.alpha_star == 1.0);
    CHECK(r.sigma_c2 == 0.0);
    CHECK(r.achievable <= r.upper_new + 1e-9);
    CHECK(r.upper_new <= r.upper_trivial + 1e-9);
    CHECK(r.cutset == r.upper_trivial);
  }
  // The gap approaches the fixed-jammer limit from the high-power end.
  const SweepRow& top = rows.back();
  const double gap = top.upper_new - top.achievable;
  CHECK(gap == doctest::Approx(asymptotic_gap_fixed_jammer(1000.0)).epsilon(1e-4));
}

TEST_CASE("unbounded relay with a pinned time share") {
  const ScenarioSpec spec = parse_config(
      "relay_power_db = inf\n"
      "jammer_mode = fixed\n"
      "jammer_power_db = 10\n"
      "alpha = 0.5\n"
      "power_control = off\n"
      "p1_db_start = 0\n"
      "p1_db_stop = 40\n"
      "p1_db_step = 10\n");
  const std::vector<SweepRow> rows = run_scenario(spec);
  REQUIRE(rows.size() == 5);
  double prev = -1.0;
  for (const SweepRow& r : rows) {
    CHECK(r.alpha_star == 0.5);
    CHECK(r.sigma_c2 == 0.0);
    CHECK(r.achievable > prev);  // no quantization penalty, rate keeps climbing
    CHECK(r.achievable <= r.upper_new + 1e-9);
    CHECK(r.achievable <= r.upper_gepi + 1e-9);
    CHECK(r.upper_new < r.upper_trivial);
    CHECK(r.cutset == capacity(db_to_linear(r.p1_db)));
    prev = r.achievable;
  }
}

TEST_CASE("CSV shape and round trip") {
  ScenarioSpec spec = preset("fig8");
  spec.p1_grid_db = {10.0};
  const std::vector<SweepRow> rows = run_scenario(spec);

  const std::string empty = csv_of({});
  CHECK(empty ==
        "p1_db,achievable,upper_new,upper_gepi,upper_trivial,cutset,"
        "alpha_star,p1_star,sigma_c2,rho_star\n");

  const std::string one = csv_of(rows);
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);

  // Parse the numbers back; 12 significant digits must survive.
  std::istringstream in(one);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  std::replace(line.begin(), line.end(), ',', ' ');
  std::istringstream fields(line);
  SweepRow parsed{};
  fields >> parsed.p1_db >> parsed.achievable >> parsed.upper_new >>
      parsed.upper_gepi >> parsed.upper_trivial >> parsed.cutset >>
      parsed.alpha_star >> parsed.p1_star >> parsed.sigma_c2 >> parsed.rho_star;
  const SweepRow& r = rows[0];
  CHECK(parsed.p1_db == doctest::Approx(r.p1_db).epsilon(1e-11));
  CHECK(parsed.achievable == doctest::Approx(r.achievable).epsilon(1e-11));
  CHECK(parsed.upper_new == doctest::Approx(r.upper_new).epsilon(1e-11));
  CHECK(parsed.sigma_c2 == doctest::Approx(r.sigma_c2).epsilon(1e-11));
  CHECK(parsed.rho_star == doctest::Approx(r.rho_star).epsilon(1e-11));
}

TEST_CASE("identical configs emit byte-identical CSV") {
  ScenarioSpec spec = preset("fig10");
  spec.p1_grid_db = {0.0, 15.0, 30.0};
  const std::string a = csv_of(run_scenario(spec));
  const std::string b = csv_of(run_scenario(spec));
  CHECK(a == b);
  CHECK(a.find("nan") == std::string::npos);
}

TEST_CASE("number formatting is plain and stable") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1000.0) == "1000");
}

TEST_CASE("a mute relay zeroes the whole sweep") {
  const ScenarioSpec spec = parse_config(
      "relay_power_db = -inf\n"
      "jammer_mode = fixed\n"
      "jammer_power_db = 10\n"
      "alpha = 0.5\n"
      "power_control = off\n"
      "p1_db_start = 0\n"
      "p1_db_stop = 20\n"
      "p1_db_step = 10\n");
  for (const SweepRow& r : run_scenario(spec)) {
    CHECK(r.achievable == 0.0);
    CHECK(r.upper_new == 0.0);
    CHECK(r.cutset == 0.0);
    CHECK(r.sigma_c2 == 0.0);
  }
}

TEST_CASE("scenario validation rejects broken grids") {
  ScenarioSpec spec = preset("fig8");
  spec.p1_grid_db.clear();
  CHECK_THROWS_AS(run_scenario(spec), ConfigError);
  spec.p1_grid_db = {10.0, 10.0};
  CHECK_THROWS_AS(run_scenario(spec), ConfigError);
  spec.p1_grid_db = {10.0, 5.0};
  CHECK_THROWS_AS(run_scenario(spec), ConfigError);
}
