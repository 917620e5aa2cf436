#include "relaysec/achievable.hpp"

#include <cmath>
#include <vector>

#include "search.hpp"

namespace relaysec {

namespace {

constexpr double kAlphaGridMargin = 1e-6;
constexpr std::size_t kAlphaGridPoints = 2001;
constexpr double kAlphaRefineTol = 1e-10;
constexpr std::size_t kPowerGridPoints = 513;

// log(expm1(x)) without overflow for large x.
double log_expm1(double x) {
  if (x > 36.0) {
    return x + std::log1p(-std::exp(-x));
  }
  return std::log(std::expm1(x));
}

void require_forwarding_relay(double pr) {
  if (!(pr > 0.0) || !std::isfinite(pr)) {
    throw std::domain_error(
        "quantization_noise: no finite solution, relay power must be positive "
        "and finite");
  }
}

}  // namespace

double quantization_noise(double p1_prime, double pr, TimeShare alpha) {
  require_forwarding_relay(pr);
  const double a = alpha.value();
  const double x = (1.0 - a) / a * std::log1p(pr);
  if (x < 700.0) {
    return (p1_prime + 1.0) / std::expm1(x);
  }
  // expm1 overflows; fall back to the log form (may underflow to 0).
  return std::exp(log_quantization_noise(p1_prime, pr, alpha));
}

double log_quantization_noise(double p1_prime, double pr, TimeShare alpha) {
  require_forwarding_relay(pr);
  const double a = alpha.value();
  const double x = (1.0 - a) / a * std::log1p(pr);
  return std::log1p(p1_prime) - log_expm1(x);
}

double rate_fixed(double p1_prime, double p2, double pr, TimeShare alpha) {
  const double sigma_c2 = quantization_noise(p1_prime, pr, alpha);
  const double bracket =
      capacity(p1_prime / (1.0 + sigma_c2)) - capacity(p1_prime / (1.0 + p2));
  return alpha.value() * positive_part(bracket);
}

PowerControlResult optimize_source_power(double p1_max, double p2, double pr,
                                         TimeShare alpha) {
  if (p1_max < 0.0 || !std::isfinite(p1_max)) {
    throw std::domain_error("optimize_source_power: p1_max must be finite and >= 0");
  }
  if (p1_max == 0.0) {
    return {0.0, 0.0};
  }
  const auto f = [&](double p) { return rate_fixed(p, p2, pr, alpha); };

  const double lo = std::max(1e-9, p1_max * 1e-9);
  if (!(lo < p1_max)) {
    // Budget too small for a log grid; just refine on [0, p1_max].
    const auto r = detail::golden_max(f, 0.0, p1_max, p1_max * 1e-12);
    const double f0 = f(0.0);
    const double fmax = f(p1_max);
    if (f0 >= r.value && f0 >= fmax) return {0.0, f0};
    if (r.value >= fmax) return {r.x, r.value};
    return {p1_max, fmax};
  }

  std::vector<double> grid;
  grid.reserve(kPowerGridPoints + 2);
  grid.push_back(0.0);
  const double ratio = std::log(p1_max / lo);
  for (std::size_t i = 0; i < kPowerGridPoints; ++i) {
    grid.push_back(lo * std::exp(ratio * static_cast<double>(i) /
                                 static_cast<double>(kPowerGridPoints - 1)));
  }
  grid.push_back(p1_max);

  const double tol = std::max(p1_max * 1e-12, 1e-15);
  const auto r = detail::grid_then_golden_max(f, grid, tol);
  return {r.x, r.value};
}

AchievablePoint optimize_alpha(const SystemBudget& budget, bool power_control) {
  if (budget.relay_unbounded()) {
    throw std::invalid_argument(
        "optimize_alpha: relay budget is unbounded, use asymptotic_rate");
  }

  const auto rate_at = [&](double a) {
    const TimeShare share(a);
    const PhasePowers pp = to_phase_powers(budget, share);
    if (!(pp.pr > 0.0)) {
      return 0.0;  // relay budget zero: nothing can be forwarded
    }
    if (power_control) {
      return optimize_source_power(pp.p1, pp.p2, pp.pr, share).rate;
    }
    return rate_fixed(pp.p1, pp.p2, pp.pr, share);
  };

  const auto grid = detail::uniform_grid(kAlphaGridMargin, 1.0 - kAlphaGridMargin,
                                         kAlphaGridPoints);
  const auto best = detail::grid_then_golden_max(rate_at, grid, kAlphaRefineTol);

  const TimeShare share(best.x);
  const PhasePowers pp = to_phase_powers(budget, share);
  AchievablePoint point;
  point.alpha = best.x;
  if (!(pp.pr > 0.0)) {
    point.rate = 0.0;
    point.p1_used = power_control ? 0.0 : pp.p1;
    point.sigma_c2 = 0.0;
    return point;
  }
  if (power_control) {
    const PowerControlResult pc = optimize_source_power(pp.p1, pp.p2, pp.pr, share);
    point.rate = pc.rate;
    point.p1_used = pc.p1_star;
  } else {
    point.rate = best.value;
    point.p1_used = pp.p1;
  }
  point.sigma_c2 = quantization_noise(point.p1_used, pp.pr, share);
  return point;
}

double asymptotic_rate(double p1_bar, double p2_bar) {
  if (!(p1_bar >= 0.0) || !(p2_bar >= 0.0)) {
    throw std::domain_error("asymptotic_rate: powers must be >= 0");
  }
  return positive_part(capacity(p1_bar) - capacity(p1_bar / (1.0 + p2_bar)));
}

}  // namespace relaysec
