#include "relaysec/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "relaysec/achievable.hpp"
#include "relaysec/bounds.hpp"
#include "search.hpp"

namespace relaysec {

namespace {

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int db = 0; db <= 60; ++db) {
    g.push_back(static_cast<double>(db));
  }
  return g;
}

std::vector<double> build_grid(double start, double stop, double step) {
  if (!(step > 0.0)) {
    throw ConfigError("p1_db_step: must be positive");
  }
  if (stop < start) {
    throw ConfigError("p1_db_stop: must be >= p1_db_start");
  }
  std::vector<double> g;
  for (double v = start; v <= stop + 1e-9; v += step) {
    g.push_back(v);
  }
  return g;
}

double jammer_budget(const ScenarioSpec& spec, double p1_bar) {
  if (spec.jammer_mode == JammerMode::kProportional) {
    return spec.jammer_ratio * p1_bar;
  }
  return spec.jammer_power_db == -kInfinitePower
             ? 0.0
             : db_to_linear(spec.jammer_power_db);
}

// Unbounded relay: alpha -> 1, sigma_c2 -> 0, the relay-link cap drops out.
SweepRow unbounded_relay_row(const ScenarioSpec& spec, double p1_db) {
  const double p1_bar = db_to_linear(p1_db);
  const double p2_bar = jammer_budget(spec, p1_bar);

  SweepRow row;
  row.p1_db = p1_db;
  if (spec.fixed_alpha) {
    const double a = *spec.fixed_alpha;
    const double p1 = p1_bar / a;
    const double p2 = p2_bar / a;
    // The rate bracket grows with the source power here, so power control
    // never backs off.
    row.achievable = a * positive_part(capacity(p1) - capacity(p1 / (1.0 + p2)));
    row.upper_new = a * first_term_per_use(p1, p2);
    row.upper_gepi = a * gepi_bound_per_use(p1, p2);
    row.upper_trivial = a * capacity(p1);
    row.alpha_star = a;
    row.p1_star = p1;
    row.rho_star = (p1 > 0.0 && p2 > 0.0) ? optimal_rho(p1, p2).rho : 1.0;
  } else {
    row.achievable = asymptotic_rate(p1_bar, p2_bar);
    row.upper_new = first_term_per_use(p1_bar, p2_bar);
    row.upper_gepi = gepi_bound_per_use(p1_bar, p2_bar);
    row.upper_trivial = capacity(p1_bar);
    row.alpha_star = 1.0;
    row.p1_star = p1_bar;
    row.rho_star =
        (p1_bar > 0.0 && p2_bar > 0.0) ? optimal_rho(p1_bar, p2_bar).rho : 1.0;
  }
  row.sigma_c2 = 0.0;
  row.cutset = capacity(p1_bar);
  return row;
}

SweepRow finite_relay_row(const ScenarioSpec& spec, double p1_db) {
  const double p1_bar = db_to_linear(p1_db);
  const double p2_bar = jammer_budget(spec, p1_bar);
  const double pr_bar = db_to_linear(spec.relay_power_db);
  const SystemBudget budget(p1_bar, p2_bar, pr_bar);

  SweepRow row;
  row.p1_db = p1_db;

  std::optional<TimeShare> fixed;
  if (spec.fixed_alpha) {
    fixed.emplace(*spec.fixed_alpha);
  }

  if (fixed) {
    const PhasePowers pp = to_phase_powers(budget, *fixed);
    if (!(pp.pr > 0.0)) {
      // A mute relay forwards nothing.
      row.achievable = 0.0;
      row.p1_star = spec.power_control ? 0.0 : pp.p1;
      row.sigma_c2 = 0.0;
    } else if (spec.power_control) {
      const PowerControlResult pc =
          optimize_source_power(pp.p1, pp.p2, pp.pr, *fixed);
      row.achievable = pc.rate;
      row.p1_star = pc.p1_star;
      row.sigma_c2 = quantization_noise(row.p1_star, pp.pr, *fixed);
    } else {
      row.achievable = rate_fixed(pp.p1, pp.p2, pp.pr, *fixed);
      row.p1_star = pp.p1;
      row.sigma_c2 = quantization_noise(row.p1_star, pp.pr, *fixed);
    }
    row.alpha_star = fixed->value();
    const UpperBoundPoint ub = upper_bound(budget, fixed);
    row.upper_new = ub.value;
    row.rho_star = ub.rho;
    row.upper_gepi =
        std::min(fixed->value() * gepi_bound_per_use(pp.p1, pp.p2), ub.second_term);
    row.upper_trivial = fixed->value() * capacity(pp.p1);
  } else {
    const AchievablePoint ach = optimize_alpha(budget, spec.power_control);
    row.achievable = ach.rate;
    row.alpha_star = ach.alpha;
    row.p1_star = ach.p1_used;
    row.sigma_c2 = ach.sigma_c2;
    const UpperBoundPoint ub = upper_bound(budget, std::nullopt);
    row.upper_new = ub.value;
    row.rho_star = ub.rho;
    // GEPI analogue of the optimized bound: same relay-link cap, its own
    // phase-one term, same search policy.
    const auto gepi_at = [&](double a) {
      return std::min(a * gepi_bound_per_use(p1_bar / a, p2_bar / a),
                      (1.0 - a) * capacity(pr_bar / (1.0 - a)));
    };
    const auto grid = detail::uniform_grid(1e-6, 1.0 - 1e-6, 2001);
    row.upper_gepi = detail::grid_then_golden_max(gepi_at, grid, 1e-10).value;
    row.upper_trivial = capacity(p1_bar);
  }
  row.cutset = cutset_no_secrecy(budget);
  return row;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view value, const std::string& key) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(key + ": malformed number '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

void validate(const ScenarioSpec& spec) {
  if (std::isnan(spec.relay_power_db)) {
    throw ConfigError("relay_power_db: not a number");
  }
  if (spec.jammer_mode == JammerMode::kProportional && !(spec.jammer_ratio > 0.0)) {
    throw ConfigError("jammer_ratio: must be positive");
  }
  if (spec.jammer_mode == JammerMode::kFixed && std::isnan(spec.jammer_power_db)) {
    throw ConfigError("jammer_power_db: not a number");
  }
  if (spec.fixed_alpha && !(*spec.fixed_alpha > 0.0 && *spec.fixed_alpha < 1.0)) {
    throw ConfigError("alpha: must lie strictly inside (0,1)");
  }
  if (spec.p1_grid_db.empty()) {
    throw ConfigError("p1_db grid: must not be empty");
  }
  for (std::size_t i = 1; i < spec.p1_grid_db.size(); ++i) {
    if (!(spec.p1_grid_db[i] > spec.p1_grid_db[i - 1])) {
      throw ConfigError("p1_db grid: must be strictly increasing");
    }
  }
}

ScenarioSpec parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value', got '" + std::string(view) + "'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("expected 'key = value', got '" + std::string(view) + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError(key + ": duplicate key");
    }
  }

  static const char* known[] = {"relay_power_db", "jammer_mode",  "jammer_ratio",
                                "jammer_power_db", "alpha",        "power_control",
                                "p1_db_start",     "p1_db_stop",   "p1_db_step"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      throw ConfigError(key + ": unknown key");
    }
  }
  const auto require = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw ConfigError(std::string(key) + ": missing required key");
    }
    return it->second;
  };

  ScenarioSpec spec;

  const std::string& relay = require("relay_power_db");
  spec.relay_power_db =
      relay == "inf" ? kInfinitePower : parse_number(relay, "relay_power_db");

  const std::string& mode = require("jammer_mode");
  if (mode == "proportional") {
    spec.jammer_mode = JammerMode::kProportional;
    if (kv.count("jammer_power_db")) {
      throw ConfigError("jammer_power_db: not allowed with proportional mode");
    }
    spec.jammer_ratio = parse_number(require("jammer_ratio"), "jammer_ratio");
  } else if (mode == "fixed") {
    spec.jammer_mode = JammerMode::kFixed;
    if (kv.count("jammer_ratio")) {
      throw ConfigError("jammer_ratio: not allowed with fixed mode");
    }
    const std::string& jp = require("jammer_power_db");
    spec.jammer_power_db =
        jp == "-inf" ? -kInfinitePower : parse_number(jp, "jammer_power_db");
  } else {
    throw ConfigError("jammer_mode: expected 'proportional' or 'fixed'");
  }

  const std::string& alpha = require("alpha");
  if (alpha == "opt") {
    spec.fixed_alpha.reset();
  } else {
    spec.fixed_alpha = parse_number(alpha, "alpha");
  }

  const std::string& pc = require("power_control");
  if (pc == "on") {
    spec.power_control = true;
  } else if (pc == "off") {
    spec.power_control = false;
  } else {
    throw ConfigError("power_control: expected 'on' or 'off'");
  }

  const int grid_keys = static_cast<int>(kv.count("p1_db_start")) +
                        static_cast<int>(kv.count("p1_db_stop")) +
                        static_cast<int>(kv.count("p1_db_step"));
  if (grid_keys == 0) {
    spec.p1_grid_db = default_grid();
  } else if (grid_keys == 3) {
    spec.p1_grid_db = build_grid(parse_number(kv.at("p1_db_start"), "p1_db_start"),
                                 parse_number(kv.at("p1_db_stop"), "p1_db_stop"),
                                 parse_number(kv.at("p1_db_step"), "p1_db_step"));
  } else {
    throw ConfigError("p1_db_start/p1_db_stop/p1_db_step: give all three or none");
  }

  validate(spec);
  return spec;
}

ScenarioSpec preset(const std::string& name) {
  ScenarioSpec spec;
  spec.p1_grid_db = default_grid();
  if (name == "fig6") {
    spec.relay_power_db = kInfinitePower;
    spec.jammer_mode = JammerMode::kProportional;
    spec.jammer_ratio = 0.5;
    spec.fixed_alpha.reset();
    spec.power_control = false;
  } else if (name == "fig7") {
    spec.relay_power_db = kInfinitePower;
    spec.jammer_mode = JammerMode::kFixed;
    spec.jammer_power_db = 30.0;
    spec.fixed_alpha.reset();
    spec.power_control = false;
  } else if (name == "fig8") {
    spec.relay_power_db = 30.0;
    spec.jammer_mode = JammerMode::kProportional;
    spec.jammer_ratio = 0.5;
    spec.fixed_alpha = 0.5;
    spec.power_control = false;
  } else if (name == "fig9") {
    spec.relay_power_db = 30.0;
    spec.jammer_mode = JammerMode::kFixed;
    spec.jammer_power_db = 40.0;
    spec.fixed_alpha = 0.5;
    spec.power_control = false;
  } else if (name == "fig10") {
    spec.relay_power_db = 40.0;
    spec.jammer_mode = JammerMode::kProportional;
    spec.jammer_ratio = 0.25;
    spec.fixed_alpha.reset();
    spec.power_control = false;
  } else if (name == "fig11") {
    spec.relay_power_db = 40.0;
    spec.jammer_mode = JammerMode::kFixed;
    spec.jammer_power_db = 30.0;
    spec.fixed_alpha.reset();
    spec.power_control = true;
  } else {
    throw ConfigError("preset: unknown name '" + name + "'");
  }
  return spec;
}

std::vector<std::string> preset_names() {
  return {"fig6", "fig7", "fig8", "fig9", "fig10", "fig11"};
}

std::vector<SweepRow> run_scenario(const ScenarioSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.p1_grid_db.size());
  const bool unbounded = spec.relay_power_db == kInfinitePower;
  for (const double p1_db : spec.p1_grid_db) {
    rows.push_back(unbounded ? unbounded_relay_row(spec, p1_db)
                             : finite_relay_row(spec, p1_db));
  }
  return rows;
}

std::string format_number(double value) {
  char buf[40];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  if (ec != std::errc()) {
    return "nan";
  }
  return std::string(buf, ptr);
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "p1_db,achievable,upper_new,upper_gepi,upper_trivial,cutset,"
         "alpha_star,p1_star,sigma_c2,rho_star\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.p1_db) << ',' << format_number(r.achievable) << ','
        << format_number(r.upper_new) << ',' << format_number(r.upper_gepi) << ','
        << format_number(r.upper_trivial) << ',' << format_number(r.cutset) << ','
        << format_number(r.alpha_star) << ',' << format_number(r.p1_star) << ','
        << format_number(r.sigma_c2) << ',' << format_number(r.rho_star) << '\n';
  }
  if (!out) {
    throw std::runtime_error("emit_csv: write failure");
  }
}

}  // namespace relaysec
