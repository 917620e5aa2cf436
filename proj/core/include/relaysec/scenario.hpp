#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysec/bounds.hpp"
#include "relaysec/core.hpp"

// Scenario sweeps: a grid of source powers is swept while the jammer follows
// either a fixed budget or a fixed ratio of the source budget, and every
// sweep point records the achievable rate, the three upper bounds and the
// cut-set reference together with the optimizing witnesses.

namespace relaysec {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class JammerMode { kProportional, kFixed };

struct ScenarioSpec {
  double relay_power_db = 30.0;  // kInfinitePower for an unbounded relay
  JammerMode jammer_mode = JammerMode::kProportional;
  double jammer_ratio = 0.5;     // used in proportional mode, > 0
  double jammer_power_db = 0.0;  // used in fixed mode, -inf means no jammer
  std::optional<double> fixed_alpha;  // empty means optimize over alpha
  bool power_control = false;
  std::vector<double> p1_grid_db;  // strictly increasing sweep axis
};

// Throws ConfigError when a field violates its invariant.
void validate(const ScenarioSpec& spec);

struct SweepRow {
  double p1_db;
  double achievable;
  double upper_new;
  double upper_gepi;
  double upper_trivial;
  double cutset;
  double alpha_star;  // time share of the achievable witness (1 = unbounded relay limit)
  double p1_star;     // source power actually used, linear
  double sigma_c2;    // quantization noise at the achievable witness
  double rho_star;    // noise correlation of the bound at its own witness
};

// Parses `key = value` lines (# starts a comment). Recognized keys:
//   relay_power_db   number or `inf`
//   jammer_mode      `proportional` | `fixed`
//   jammer_ratio     number > 0 (proportional mode only)
//   jammer_power_db  number or `-inf` (fixed mode only)
//   alpha            number in (0,1) or `opt`
//   power_control    `on` | `off`
//   p1_db_start, p1_db_stop, p1_db_step   all three or none
// Unknown or duplicate keys, missing required keys and out-of-range values
// raise ConfigError naming the key. Without grid keys the sweep runs
// 0..60 dB in 1 dB steps.
ScenarioSpec parse_config(const std::string& text);

// Built-in scenarios fig6..fig11. Throws ConfigError for unknown names.
ScenarioSpec preset(const std::string& name);
std::vector<std::string> preset_names();

// One row per grid point, deterministic. An unbounded relay routes to the
// closed-form limits, a finite relay to the grid optimizers.
std::vector<SweepRow> run_scenario(const ScenarioSpec& spec);

// The rate quantities of a row as one aggregate.
inline BoundSet bounds_of(const SweepRow& row) {
  return {row.achievable, row.upper_new, row.upper_gepi, row.upper_trivial,
          row.cutset};
}

// Locale-independent shortest form with 12 significant digits.
std::string format_number(double value);

// Header plus one line per row, 12 significant digits, '\n' line ends.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace relaysec
