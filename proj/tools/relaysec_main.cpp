// Command-line frontend: single-point rate and bound queries, scenario sweeps
// to CSV, Monte Carlo verification of the closed forms, and the built-in
// scenario presets.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical/domain error,
// 3 verification failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "relaysec/achievable.hpp"
#include "relaysec/bounds.hpp"
#include "relaysec/core.hpp"
#include "relaysec/scenario.hpp"
#include "relaysec/verify.hpp"

namespace {

using namespace relaysec;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerifyFailed = 3;

// Output sink: --out PATH or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw ConfigError("--out: cannot open '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

double parse_power_db(const std::string& text, const std::string& flag) {
  if (text == "inf") {
    return kInfinitePower;
  }
  if (text == "-inf") {
    return -kInfinitePower;
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError(flag + ": malformed number '" + text + "'");
  }
}

std::optional<double> parse_alpha(const std::string& text) {
  if (text == "opt") {
    return std::nullopt;
  }
  const double a = parse_power_db(text, "--alpha");
  if (!(a > 0.0 && a < 1.0)) {
    throw ConfigError("--alpha: must lie strictly inside (0,1) or be 'opt'");
  }
  return a;
}

bool parse_on_off(const std::string& text, const std::string& flag) {
  if (text == "on") return true;
  if (text == "off") return false;
  throw ConfigError(flag + ": expected 'on' or 'off'");
}

void print_kv(std::ostream& out, const char* key, double value) {
  out << key << ' ' << format_number(value) << '\n';
}

int cmd_rate(Sink& sink, double p1_db, double p2_db, const std::string& pr_db,
             const std::string& alpha_text, const std::string& pc_text) {
  const double pr = parse_power_db(pr_db, "--pr-db");
  const auto alpha = parse_alpha(alpha_text);
  const bool power_control = parse_on_off(pc_text, "--power-control");
  const double p1_bar = db_to_linear(p1_db);
  const double p2_bar = db_to_linear(p2_db);

  double rate, alpha_star, p1_used, sigma_c2;
  if (pr == kInfinitePower && !alpha) {
    rate = asymptotic_rate(p1_bar, p2_bar);
    alpha_star = 1.0;
    p1_used = p1_bar;
    sigma_c2 = 0.0;
  } else if (pr == kInfinitePower) {
    const double a = *alpha;
    const double p1 = p1_bar / a;
    rate = a * positive_part(capacity(p1) - capacity(p1 / (1.0 + p2_bar / a)));
    alpha_star = a;
    p1_used = p1;
    sigma_c2 = 0.0;
  } else {
    const SystemBudget budget(p1_bar, p2_bar, db_to_linear(pr));
    if (alpha) {
      const TimeShare share(*alpha);
      const PhasePowers pp = to_phase_powers(budget, share);
      if (!(pp.pr > 0.0)) {
        rate = 0.0;
        p1_used = power_control ? 0.0 : pp.p1;
        sigma_c2 = 0.0;
      } else if (power_control) {
        const PowerControlResult pc = optimize_source_power(pp.p1, pp.p2, pp.pr, share);
        rate = pc.rate;
        p1_used = pc.p1_star;
        sigma_c2 = quantization_noise(p1_used, pp.pr, share);
      } else {
        rate = rate_fixed(pp.p1, pp.p2, pp.pr, share);
        p1_used = pp.p1;
        sigma_c2 = quantization_noise(p1_used, pp.pr, share);
      }
      alpha_star = share.value();
    } else {
      const AchievablePoint point = optimize_alpha(budget, power_control);
      rate = point.rate;
      alpha_star = point.alpha;
      p1_used = point.p1_used;
      sigma_c2 = point.sigma_c2;
    }
  }
  auto& out = sink.stream();
  print_kv(out, "rate", rate);
  print_kv(out, "alpha", alpha_star);
  print_kv(out, "p1_used", p1_used);
  print_kv(out, "sigma_c2", sigma_c2);
  return kExitOk;
}

int cmd_bound(Sink& sink, double p1_db, double p2_db, const std::string& pr_db,
              const std::string& alpha_text) {
  const double pr = parse_power_db(pr_db, "--pr-db");
  const auto alpha = parse_alpha(alpha_text);
  const double p1_bar = db_to_linear(p1_db);
  const double p2_bar = db_to_linear(p2_db);

  UpperBoundPoint point;
  if (pr == kInfinitePower) {
    const double a = alpha ? *alpha : 1.0;
    const double p1 = p1_bar / a;
    const double p2 = p2_bar / a;
    point.alpha = a;
    point.rho = (p1 > 0.0 && p2 > 0.0) ? optimal_rho(p1, p2).rho : 1.0;
    point.first_term = a * first_term_per_use(p1, p2);
    point.second_term = kInfinitePower;
    point.value = point.first_term;
  } else {
    const SystemBudget budget(p1_bar, p2_bar, pr);
    std::optional<TimeShare> share;
    if (alpha) {
      share.emplace(*alpha);
    }
    point = upper_bound(budget, share);
  }
  auto& out = sink.stream();
  print_kv(out, "value", point.value);
  print_kv(out, "alpha", point.alpha);
  print_kv(out, "rho", point.rho);
  print_kv(out, "first_term", point.first_term);
  print_kv(out, "second_term", point.second_term);
  return kExitOk;
}

int cmd_sweep(Sink& sink, const std::string& preset_name,
              const std::string& config_path, const std::string& pc_override,
              const std::string& grid_override, const std::string& proxy_db) {
  if (!preset_name.empty() && !config_path.empty()) {
    throw ConfigError("sweep: give either --preset or --config, not both");
  }
  ScenarioSpec spec;
  if (!preset_name.empty()) {
    spec = preset(preset_name);
  } else if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw ConfigError("--config: cannot open '" + config_path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    spec = parse_config(text.str());
  } else {
    throw ConfigError("sweep: one of --preset or --config is required");
  }

  if (!pc_override.empty()) {
    spec.power_control = parse_on_off(pc_override, "--power-control");
  }
  if (!grid_override.empty()) {
    // start:stop:step
    double start, stop, step;
    char c1, c2;
    std::istringstream g(grid_override);
    if (!(g >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !g.eof()) {
      throw ConfigError("--grid: expected START:STOP:STEP");
    }
    spec.p1_grid_db.clear();
    if (!(step > 0.0) || stop < start) {
      throw ConfigError("--grid: expected START <= STOP and STEP > 0");
    }
    for (double v = start; v <= stop + 1e-9; v += step) {
      spec.p1_grid_db.push_back(v);
    }
  }
  if (!proxy_db.empty()) {
    if (spec.relay_power_db != kInfinitePower) {
      throw ConfigError("--proxy-db: scenario already has a finite relay power");
    }
    spec.relay_power_db = parse_power_db(proxy_db, "--proxy-db");
    if (spec.relay_power_db == kInfinitePower) {
      throw ConfigError("--proxy-db: must be finite");
    }
  }

  const std::vector<SweepRow> rows = run_scenario(spec);
  emit_csv(rows, sink.stream());
  return kExitOk;
}

int cmd_verify(Sink& sink, std::int64_t samples, std::uint64_t seed,
               double p1_prime, double p2, double pr, double alpha,
               double genie_p1, double genie_p2) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  if (cfg.samples < kMinVerifySamples) {
    throw ConfigError("--samples: statistical checks need at least 1000 samples");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("--alpha: must lie strictly inside (0,1)");
  }

  std::vector<MiReport> reports =
      verify_rate_terms(cfg, p1_prime, p2, pr, TimeShare(alpha));
  reports.push_back(verify_genie_term(
      genie_p1, genie_p2, optimal_rho(genie_p1, genie_p2).rho, cfg));

  auto& out = sink.stream();
  bool all_pass = true;
  for (const MiReport& r : reports) {
    out << r.term_id << ' ' << format_number(r.closed_form) << ' '
        << format_number(r.estimate) << ' ' << format_number(r.std_err) << ' '
        << (r.pass() ? "pass" : "fail") << '\n';
    all_pass = all_pass && r.pass();
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_presets(Sink& sink) {
  auto& out = sink.stream();
  for (const std::string& name : preset_names()) {
    const ScenarioSpec spec = preset(name);
    out << name << " relay_power_db=";
    if (spec.relay_power_db == kInfinitePower) {
      out << "inf";
    } else {
      out << format_number(spec.relay_power_db);
    }
    if (spec.jammer_mode == JammerMode::kProportional) {
      out << " jammer_mode=proportional jammer_ratio="
          << format_number(spec.jammer_ratio);
    } else {
      out << " jammer_mode=fixed jammer_power_db="
          << format_number(spec.jammer_power_db);
    }
    out << " alpha="
        << (spec.fixed_alpha ? format_number(*spec.fixed_alpha) : std::string("opt"))
        << " power_control=" << (spec.power_control ? "on" : "off") << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate bounds for the jammed two-hop untrusted-relay channel"};
  app.fallthrough();  // global flags may follow the subcommand
  app.require_subcommand(1);

  std::string out_path;
  std::string config_path;
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
  app.add_option("--out", out_path, "write output to PATH instead of stdout");
  app.add_option("--config", config_path, "scenario config file for `sweep`");
  app.add_option("--seed", seed, "random stream seed for `verify`");
  app.add_option("--samples", samples, "Monte Carlo block count for `verify`");

  auto* rate = app.add_subcommand("rate", "achievable secrecy rate at one budget");
  double p1_db = 0.0, p2_db = 0.0;
  std::string pr_db = "30";
  std::string alpha_text = "opt";
  std::string pc_text = "off";
  rate->add_option("--p1-db", p1_db, "source budget, dB")->required();
  rate->add_option("--p2-db", p2_db, "jammer budget, dB")->required();
  rate->add_option("--pr-db", pr_db, "relay budget, dB or 'inf'");
  rate->add_option("--alpha", alpha_text, "time share in (0,1) or 'opt'");
  rate->add_option("--power-control", pc_text, "'on' or 'off'");

  auto* bound = app.add_subcommand("bound", "upper bound at one budget");
  double b_p1_db = 0.0, b_p2_db = 0.0;
  std::string b_pr_db = "30";
  std::string b_alpha_text = "opt";
  bound->add_option("--p1-db", b_p1_db, "source budget, dB")->required();
  bound->add_option("--p2-db", b_p2_db, "jammer budget, dB")->required();
  bound->add_option("--pr-db", b_pr_db, "relay budget, dB or 'inf'");
  bound->add_option("--alpha", b_alpha_text, "time share in (0,1) or 'opt'");

  auto* sweep = app.add_subcommand("sweep", "scenario sweep to CSV");
  std::string preset_name;
  std::string sweep_pc;
  std::string sweep_grid;
  std::string proxy_db;
  sweep->add_option("--preset", preset_name, "built-in scenario fig6..fig11");
  sweep->add_option("--power-control", sweep_pc, "override: 'on' or 'off'");
  sweep->add_option("--grid", sweep_grid, "override sweep axis START:STOP:STEP (dB)");
  sweep->add_option("--proxy-db", proxy_db,
                    "replace an unbounded relay budget by a finite dB value");

  auto* verify = app.add_subcommand("verify", "Monte Carlo closed-form checks");
  double v_p1_prime = 3.0, v_p2 = 3.0, v_pr = 3.0, v_alpha = 0.5;
  double genie_p1 = 1.0, genie_p2 = 1.0;
  verify->add_option("--p1-prime", v_p1_prime, "source phase power, linear");
  verify->add_option("--p2", v_p2, "jammer phase power, linear");
  verify->add_option("--pr", v_pr, "relay phase power, linear");
  verify->add_option("--alpha", v_alpha, "time share in (0,1)");
  verify->add_option("--genie-p1", genie_p1, "genie-term source phase power");
  verify->add_option("--genie-p2", genie_p2, "genie-term jammer phase power");

  auto* presets = app.add_subcommand("presets", "list the built-in scenarios");
  (void)presets;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Sink sink(out_path);
    if (rate->parsed()) {
      return cmd_rate(sink, p1_db, p2_db, pr_db, alpha_text, pc_text);
    }
    if (bound->parsed()) {
      return cmd_bound(sink, b_p1_db, b_p2_db, b_pr_db, b_alpha_text);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sink, preset_name, config_path, sweep_pc, sweep_grid,
                       proxy_db);
    }
    if (verify->parsed()) {
      return cmd_verify(sink, samples, seed, v_p1_prime, v_p2, v_pr, v_alpha,
                        genie_p1, genie_p2);
    }
    return cmd_presets(sink);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
