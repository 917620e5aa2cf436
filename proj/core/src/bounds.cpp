#include "relaysec/bounds.hpp"

#include <cmath>

#include "search.hpp"

namespace relaysec {

namespace {

constexpr double kAlphaGridMargin = 1e-6;
constexpr std::size_t kAlphaGridPoints = 2001;
constexpr double kAlphaRefineTol = 1e-10;
constexpr double kCutsetBisectTol = 1e-10;

double second_term(const SystemBudget& budget, double a) {
  return (1.0 - a) * capacity(budget.pr_bar / (1.0 - a));
}

}  // namespace

RhoSolution optimal_rho(double p1, double p2) {
  if (!(p1 > 0.0)) {
    throw std::domain_error("optimal_rho: p1 must be positive");
  }
  if (p2 < 0.0) {
    throw std::domain_error("optimal_rho: p2 must be >= 0");
  }
  const double disc = 4.0 * p2 * p1 * p1 + 4.0 * p2 * p1 + p2 * p2 * p1 * p1 +
                      2.0 * p2 * p2 * p1 + p2 * p2;
  const double s = 2.0 * p1 + p1 * p2 + p2;
  // (s - sqrt(disc)) / (2 p1) rationalized; s^2 - disc = 4 p1^2 exactly.
  const double rho = 2.0 * p1 / (s + std::sqrt(disc));
  return {rho, disc};
}

double first_term_at_rho(double p1, double p2, double rho) {
  if (!(std::fabs(rho) < 1.0)) {
    throw std::domain_error("first_term_at_rho: |rho| must be < 1");
  }
  // Expanded numerator, free of the large-power cancellation in the raw form.
  const double num = p1 * p2 + 2.0 * p1 * (1.0 - rho) + p2 + (1.0 - rho * rho);
  const double den = (p1 + p2 + 1.0) * (1.0 - rho * rho);
  return 0.5 * std::log2(num / den);
}

double first_term_per_use(double p1, double p2) {
  if (p1 == 0.0 || p2 == 0.0) {
    return 0.0;
  }
  return first_term_at_rho(p1, p2, optimal_rho(p1, p2).rho);
}

UpperBoundPoint upper_bound(const SystemBudget& budget,
                            std::optional<TimeShare> fixed_alpha) {
  if (budget.relay_unbounded()) {
    throw std::invalid_argument(
        "upper_bound: relay budget is unbounded, use first_term_per_use on the "
        "average powers");
  }

  const auto bound_at = [&](double a) {
    return std::min(a * first_term_per_use(budget.p1_bar / a, budget.p2_bar / a),
                    second_term(budget, a));
  };

  double alpha;
  if (fixed_alpha) {
    alpha = fixed_alpha->value();
  } else {
    const auto grid = detail::uniform_grid(kAlphaGridMargin,
                                           1.0 - kAlphaGridMargin, kAlphaGridPoints);
    alpha = detail::grid_then_golden_max(bound_at, grid, kAlphaRefineTol).x;
  }

  UpperBoundPoint point;
  point.alpha = alpha;
  const double p1 = budget.p1_bar / alpha;
  const double p2 = budget.p2_bar / alpha;
  point.rho = (p1 > 0.0 && p2 > 0.0) ? optimal_rho(p1, p2).rho : 1.0;
  point.first_term = alpha * first_term_per_use(p1, p2);
  point.second_term = second_term(budget, alpha);
  point.value = std::min(point.first_term, point.second_term);
  return point;
}

double gepi_bound_per_use(double p1, double p2) {
  if (p1 < 0.0 || p2 < 0.0) {
    throw std::domain_error("gepi_bound_per_use: powers must be >= 0");
  }
  return 0.5 * std::log2(2.0 * (p1 + 1.0) * (p2 + 1.0) / (p1 + p2 + 2.0));
}

double cutset_no_secrecy(const SystemBudget& budget) {
  if (budget.relay_unbounded()) {
    return capacity(budget.p1_bar);
  }
  if (budget.p1_bar == 0.0 || budget.pr_bar == 0.0) {
    return 0.0;
  }
  const auto source_side = [&](double a) { return a * capacity(budget.p1_bar / a); };
  const auto relay_side = [&](double a) { return second_term(budget, a); };
  const auto diff = [&](double a) { return source_side(a) - relay_side(a); };

  const double lo = kAlphaGridMargin;
  const double hi = 1.0 - kAlphaGridMargin;
  if (diff(lo) >= 0.0) {
    return std::min(source_side(lo), relay_side(lo));
  }
  if (diff(hi) <= 0.0) {
    return std::min(source_side(hi), relay_side(hi));
  }
  const double a = detail::bisect_increasing(diff, lo, hi, kCutsetBisectTol);
  return std::min(source_side(a), relay_side(a));
}

double rho_bar(double p2_bar) {
  if (!(p2_bar > 0.0)) {
    throw std::domain_error("rho_bar: p2_bar must be positive");
  }
  const double h = p2_bar + 0.25 * p2_bar * p2_bar;
  // 1 + p2/2 - sqrt(h), rationalized against cancellation at large p2.
  return 1.0 / (1.0 + 0.5 * p2_bar + std::sqrt(h));
}

double asymptotic_gap_fixed_jammer(double p2_bar) {
  const double rb = rho_bar(p2_bar);
  const double omr = 1.0 - rb;
  const double gap = capacity((p2_bar + omr * omr) / (1.0 - rb * rb)) - capacity(p2_bar);
  return positive_part(gap);
}

double asymptotic_upper_proportional(double p1_bar, double beta) {
  if (!(beta > 0.0)) {
    throw std::domain_error("asymptotic_upper_proportional: beta must be positive");
  }
  return capacity(p1_bar) - capacity(1.0 / beta);
}

double gepi_gap_asymptotic(double p1_bar, double p2_bar) {
  if (p1_bar < 0.0 || p2_bar < 0.0) {
    throw std::domain_error("gepi_gap_asymptotic: powers must be >= 0");
  }
  const double s = p1_bar + p2_bar;
  return 0.5 * std::log2(1.0 + s / (2.0 + s));
}

DominanceReport dominance_check(double p1, double p2) {
  if (!(p1 > 0.0)) {
    throw std::domain_error("dominance_check: p1 must be positive");
  }
  DominanceReport report;
  report.first_term = first_term_per_use(p1, p2);
  report.gepi = gepi_bound_per_use(p1, p2);
  report.trivial = capacity(p1);
  report.sum_above_one = p1 + p2 > 1.0;
  report.gepi_looser = report.gepi > report.first_term;
  if (report.sum_above_one && !report.gepi_looser) {
    throw std::logic_error(
        "dominance_check: GEPI bound not above the genie bound with p1+p2 > 1");
  }
  return report;
}

}  // namespace relaysec
