#pragma once

#include <optional>

#include "relaysec/core.hpp"

// Upper bounds on the secrecy rate. The main bound adds a fictitious
// eavesdropper whose noise is correlated with the relay noise (correlation
// rho) and evaluates, per phase-one channel use,
//
//   F(P1, P2, rho) = 1/2 log2( ((P1+1)(P1+P2+1) - (P1+rho)^2)
//                              / ((P1+P2+1)(1 - rho^2)) )
//
// minimized over rho, then caps the result with the relay-link rate:
//
//   max_alpha min( alpha * F(P1, P2, rho*), (1-alpha) * C(Pr) ).
//
// A second bound follows from the generalized entropy power inequality, and
// the cut-set bound drops the secrecy constraint entirely.

namespace relaysec {

// Minimizer of F over the noise correlation, with the discriminant of the
// underlying quadratic. rho = 1 is the degenerate no-jamming limit.
struct RhoSolution {
  double rho;
  double discriminant;
};

struct UpperBoundPoint {
  double value;        // min(first_term, second_term), bits per channel use
  double alpha;        // time share of the reported point
  double rho;          // optimal noise correlation at that time share
  double first_term;   // alpha-scaled genie term at rho
  double second_term;  // (1-alpha) * C(Pr)
};

// One sweep point's worth of rate quantities, all in bits per channel use.
struct BoundSet {
  double achievable;
  double upper_new;
  double upper_gepi;
  double upper_trivial;
  double cutset;
};

// Comparison of the bounds at one phase-power point. gepi_looser is
// meaningful whenever sum_above_one holds (then it is always true).
struct DominanceReport {
  double first_term;     // genie bound per use at rho*
  double gepi;           // GEPI bound per use
  double trivial;        // C(p1)
  bool sum_above_one;    // p1 + p2 > 1
  bool gepi_looser;      // gepi > first_term
};

// Closed-form minimizer rho* = (2P1 + P1P2 + P2 - sqrt(A)) / (2P1), computed
// in the rationalized form 2P1 / (S + sqrt(A)) which avoids cancellation.
// Throws std::domain_error for p1 <= 0.
RhoSolution optimal_rho(double p1, double p2);

// F evaluated at an explicit correlation. Requires |rho| < 1.
double first_term_at_rho(double p1, double p2, double rho);

// F at the optimal correlation. Defined as 0 when p2 = 0 (the rho -> 1 limit
// of the expression is 1, whose log is 0) and when p1 = 0.
double first_term_per_use(double p1, double p2);

// The full bound. With fixed_alpha set, evaluates the min at that time share;
// otherwise maximizes over the same 2001-point grid plus golden-section
// refinement used by the achievable optimizer, identical tie-breaking.
// Throws std::invalid_argument for an unbounded relay budget.
UpperBoundPoint upper_bound(const SystemBudget& budget,
                            std::optional<TimeShare> fixed_alpha);

// GEPI route, per phase-one channel use:
//   1/2 log2( 2 (P1+1)(P2+1) / (P1+P2+2) ).
double gepi_bound_per_use(double p1, double p2);

// Cut-set bound with the secrecy constraint removed:
//   max_alpha min( alpha C(p1_bar/alpha), (1-alpha) C(pr_bar/(1-alpha)) ).
// The first term is increasing and the second decreasing in alpha, so the
// optimum sits at their crossing, found by bisection (tolerance 1e-10).
// Returns C(p1_bar) for an unbounded relay budget.
double cutset_no_secrecy(const SystemBudget& budget);

// Limit of rho* when the source power grows at fixed jammer budget:
//   rho_bar = 1 + p2_bar/2 - sqrt(p2_bar + p2_bar^2/4).
double rho_bar(double p2_bar);

// Limiting gap between the bound and the achievable rate when source and
// relay budgets grow at fixed jammer budget. A function of p2_bar only.
double asymptotic_gap_fixed_jammer(double p2_bar);

// Limit of the bound when the jammer scales proportionally (p2 = beta * p1)
// and all budgets grow: C(p1_bar) - C(1/beta).
double asymptotic_upper_proportional(double p1_bar, double beta);

// Limiting gap between the GEPI bound and the achievable rate with an
// unbounded relay. Always below 0.5 bit per channel use.
double gepi_gap_asymptotic(double p1_bar, double p2_bar);

// Evaluates all three per-use bounds and the ordering condition p1 + p2 > 1.
// In that region the GEPI bound is provably looser than the genie bound;
// a numeric violation raises std::logic_error.
DominanceReport dominance_check(double p1, double p2);

}  // namespace relaysec
