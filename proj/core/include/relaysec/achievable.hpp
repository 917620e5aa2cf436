#pragma once

#include "relaysec/core.hpp"

// Achievable secrecy rate of the compress-and-forward scheme with cooperative
// jamming. The relay quantizes its phase-one reception with Gaussian test
// noise of variance sigma_c2 chosen so that the phase-two link can carry the
// description:
//
//   alpha * C((P1' + 1) / sigma_c2) = (1 - alpha) * C(Pr)        (balance)
//
// and the resulting secrecy rate at time share alpha is
//
//   R = alpha * [ C(P1' / (1 + sigma_c2)) - C(P1' / (1 + P2)) ]^+
//
// with P2, Pr the phase powers and P1' <= P1 the source power actually used.

namespace relaysec {

// Witnesses of an optimized achievable point.
struct AchievablePoint {
  double rate;      // bits per channel use
  double alpha;     // time share used
  double p1_used;   // source power actually transmitted (linear)
  double sigma_c2;  // quantization noise variance (0 in the unbounded-relay limit)
};

struct PowerControlResult {
  double p1_star;  // maximizing source power in [0, p1_max]
  double rate;     // achievable rate at p1_star
};

// Unique root sigma_c2 of the balance equation, in closed form:
//   sigma_c2 = (p1_prime + 1) / ((1 + pr)^((1-alpha)/alpha) - 1).
// The left side of the balance is strictly decreasing in sigma_c2, so the
// root is unique. Underflows to 0 when the relay link is overwhelmingly
// strong; use log_quantization_noise where that matters.
// Throws std::domain_error when pr is zero or not finite (the relay cannot
// forward a description).
double quantization_noise(double p1_prime, double pr, TimeShare alpha);

// Natural log of the same root, finite over the whole parameter range even
// where the linear value underflows a double.
double log_quantization_noise(double p1_prime, double pr, TimeShare alpha);

// Secrecy rate at a fixed operating point. Always >= 0.
double rate_fixed(double p1_prime, double p2, double pr, TimeShare alpha);

// Maximizes rate_fixed over the source power in [0, p1_max]. The rate is not
// monotone in the source power (it vanishes at both 0 and infinity), so the
// optimum may sit strictly inside the interval. Log-spaced 513-point grid
// plus the exact endpoints, golden-section refinement on the best bracket;
// ties break toward the smaller power.
PowerControlResult optimize_source_power(double p1_max, double p2, double pr,
                                         TimeShare alpha);

// Maximizes the rate over the time share on a 2001-point grid over
// (1e-6, 1-1e-6) with golden-section refinement to width 1e-10. With
// power_control the source power is optimized at every alpha, otherwise it is
// pinned to p1_bar/alpha. Ties break toward the smaller alpha.
// Throws std::invalid_argument for an unbounded relay budget; use
// asymptotic_rate for that regime.
AchievablePoint optimize_alpha(const SystemBudget& budget, bool power_control);

// Unbounded-relay limit (alpha -> 1, sigma_c2 -> 0):
//   [ C(p1_bar) - C(p1_bar / (1 + p2_bar)) ]^+.
double asymptotic_rate(double p1_bar, double p2_bar);

}  // namespace relaysec
