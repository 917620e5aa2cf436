#include "relaysec/core.hpp"

#include <cmath>

namespace relaysec {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
}

double capacity(double x) {
  if (!(x > -1.0)) {
    throw std::domain_error("capacity: argument must be > -1");
  }
  // log1p keeps precision for x near 0.
  return 0.5 * std::log1p(x) / kLn2;
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("linear_to_db: argument must be positive");
  }
  return 10.0 * std::log10(x);
}

TimeShare::TimeShare(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("TimeShare: alpha must lie strictly inside (0,1)");
  }
}

SystemBudget::SystemBudget(double p1, double p2, double pr)
    : p1_bar(p1), p2_bar(p2), pr_bar(pr) {
  if (!std::isfinite(p1_bar) || p1_bar < 0.0) {
    throw std::domain_error("SystemBudget: source power must be finite and >= 0");
  }
  if (!std::isfinite(p2_bar) || p2_bar < 0.0) {
    throw std::domain_error("SystemBudget: jammer power must be finite and >= 0");
  }
  if (std::isnan(pr_bar) || pr_bar < 0.0) {
    throw std::domain_error("SystemBudget: relay power must be >= 0 or infinite");
  }
}

SystemBudget SystemBudget::from_db(double p1_db, double p2_db, double pr_db) {
  return SystemBudget(db_to_linear(p1_db), db_to_linear(p2_db), db_to_linear(pr_db));
}

PhasePowers::PhasePowers(double p1_, double p2_, double pr_)
    : p1(p1_), p2(p2_), pr(pr_) {
  if (!std::isfinite(p1) || p1 < 0.0 || !std::isfinite(p2) || p2 < 0.0) {
    throw std::domain_error("PhasePowers: phase-one powers must be finite and >= 0");
  }
  if (std::isnan(pr) || pr < 0.0) {
    throw std::domain_error("PhasePowers: relay power must be >= 0 or infinite");
  }
}

PhasePowers to_phase_powers(const SystemBudget& budget, TimeShare share) {
  const double a = share.value();
  return PhasePowers(budget.p1_bar / a, budget.p2_bar / a, budget.pr_bar / (1.0 - a));
}

}  // namespace relaysec
