#pragma once

#include <limits>
#include <stdexcept>

// Foundational types and formulas for the two-hop untrusted-relay channel
// with cooperative jamming. All noise variances are normalized to 1 and all
// powers are linear-scale; dB appears only at the CLI boundary. Rates are in
// bits per channel use (base-2 logs throughout).

namespace relaysec {

// Distinguished value for an unbounded relay power budget. Downstream code
// must branch to the closed-form asymptotics when it is set; the finite-power
// solvers reject it.
inline constexpr double kInfinitePower = std::numeric_limits<double>::infinity();

// C(x) = 1/2 log2(1 + x). Strictly increasing, C(0) = 0.
// Throws std::domain_error for x <= -1.
double capacity(double x);

// [x]^+ = max(x, 0).
double positive_part(double x);

// 10^(x/10) and its inverse. linear_to_db throws std::domain_error for x <= 0.
double db_to_linear(double x_db);
double linear_to_db(double x);

// Limiting fraction of channel uses assigned to phase one. Valid range (0,1).
class TimeShare {
 public:
  explicit TimeShare(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

// Average power budgets (source, jammer, relay) over the whole transmission.
// relay may be kInfinitePower; source and jammer must be finite.
struct SystemBudget {
  SystemBudget(double p1_bar, double p2_bar, double pr_bar);
  static SystemBudget from_db(double p1_db, double p2_db, double pr_db);

  bool relay_unbounded() const { return pr_bar == kInfinitePower; }

  double p1_bar;
  double p2_bar;
  double pr_bar;
};

// Per-phase powers induced by a time share: the source and jammer are active
// only in phase one, the relay only in phase two.
struct PhasePowers {
  PhasePowers(double p1, double p2, double pr);

  double p1;
  double p2;
  double pr;
};

// p1 = p1_bar/alpha, p2 = p2_bar/alpha, pr = pr_bar/(1-alpha).
PhasePowers to_phase_powers(const SystemBudget& budget, TimeShare share);

}  // namespace relaysec
