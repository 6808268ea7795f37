#include "schelling/thresholds.hpp"

#include <cmath>
#include <stdexcept>

#include "schelling/numerics.hpp"

namespace schelling {

namespace {

void check_density(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("density must be inside (0,1)");
}

// f is increasing from 1/2 towards f(1/2) = 2, so the level set against any
// target in (1/2, 2) has exactly one root in (0, 1/2).
double f_inverse(double target) {
  return bisect([target](double s) { return eval_f(s) - target; }, 1e-15, 0.5);
}

// g = f(1-x) decreases from 2 towards 1/2 on (1/2, 1).
double g_inverse(double target) {
  return bisect([target](double x) { return eval_g(x) - target; }, 0.5 + 1e-15, 1.0 - 1e-15);
}

}  // namespace

double kappa_g(double rho) {
  check_density(rho);
  if (rho >= 0.75) return 0.5;
  return f_inverse(0.5 / (1.0 - rho));
}

double kappa_r(double rho) {
  check_density(rho);
  if (rho <= 0.25) return 0.5;
  return f_inverse(0.5 / rho);
}

double mu_g(double rho) {
  check_density(rho);
  if (rho <= 0.25) return 0.5;
  return g_inverse(0.5 / rho);
}

double mu_r(double rho) {
  check_density(rho);
  if (rho >= 0.75) return 0.5;
  return g_inverse(0.5 / (1.0 - rho));
}

ThresholdSet compute_thresholds(double rho) {
  return ThresholdSet{rho, kappa_g(rho), kappa_r(rho), mu_g(rho), mu_r(rho)};
}

DominationResult domination(double rho, double tau_g, double tau_r) {
  check_density(rho);
  if (!(tau_g > 0.0 && tau_g < 1.0 && tau_r > 0.0 && tau_r < 1.0))
    throw std::domain_error("domination: tolerances must be inside (0,1)");

  DominationResult r;
  r.line_extended = std::fabs(1.0 - (tau_g + tau_r)) < 1e-6;
  r.h_value = eval_h(tau_g, tau_r);
  r.target = (1.0 - rho) / rho;
  if (std::fabs(r.h_value - r.target) <= 1e-9 * r.target)
    r.label = Domination::Boundary;
  else
    r.label = r.h_value < r.target ? Domination::RedDominating : Domination::GreenDominating;
  return r;
}

CriticalDensity critical_density() {
  const auto gap = [](double rho) {
    return std::log(eval_h(kappa_g(rho), 0.5)) - std::log((1.0 - rho) / rho);
  };
  // gap < 0 just above 1/4 (target (1-rho)/rho still large) and > 0 near 1/2
  // (target has fallen to ~1 while h stays above it), so the bracket holds.
  const double rho = bisect(gap, 0.26, 0.499);

  CriticalDensity c;
  c.rho = rho;
  c.kappa_g_at = kappa_g(rho);
  c.kappa_r_at = kappa_r(rho);
  c.dual_residual = eval_h(0.5, c.kappa_r_at) - (1.0 - rho) / rho;
  return c;
}

std::int64_t stochastic_potential(const Rational& tau, std::int64_t w) {
  if (!(tau.num() > 0 && tau.num() < tau.den()))
    throw std::domain_error("stochastic_potential: tau must be inside (0,1)");
  if (w < 1) throw std::domain_error("stochastic_potential: w must be >= 1");
  // floor((1 - tau)(2w+1)) + 1, all in exact integers.
  const std::int64_t num = (tau.den() - tau.num()) * (2 * w + 1);
  return num / tau.den() + 1;
}

}  // namespace schelling
