#pragma once

#include <cstdint>

#include "schelling/rational.hpp"

namespace schelling {

// The four analytic tolerance thresholds at a given initial green density.
// kappa bounds the static (contentment) region from above for tolerances
// below 1/2; mu bounds it from below for tolerances above 1/2.  They are tied
// together by mu_g = 1 - kappa_r and mu_r = 1 - kappa_g.
struct ThresholdSet {
  double rho;
  double kappa_g;
  double kappa_r;
  double mu_g;
  double mu_r;
};

// Root of f(s) = 1/(2(1-rho)) on (0, 1/2); exactly 1/2 once rho >= 3/4.
double kappa_g(double rho);

// Root of f(s) = 1/(2 rho) on (0, 1/2); exactly 1/2 once rho <= 1/4.
double kappa_r(double rho);

// Root of g(x) = 1/(2 rho) on (1/2, 1); exactly 1/2 once rho <= 1/4.
double mu_g(double rho);

// Root of g(x) = 1/(2(1-rho)) on (1/2, 1); exactly 1/2 once rho >= 3/4.
double mu_r(double rho);

ThresholdSet compute_thresholds(double rho);

// Which colour is favoured to spread, decided by comparing h(tau_g, tau_r)
// against (1-rho)/rho.  Red wins below the target, green above; within a
// relative band of 1e-9 the comparison is reported as Boundary.  On the line
// tau_g + tau_r = 1 the h value is the continuous extension (1-x)/x and the
// result carries line_extended = true.
enum class Domination { RedDominating, GreenDominating, Boundary };

struct DominationResult {
  Domination label;
  bool line_extended;
  double h_value;
  double target;  // (1-rho)/rho
};

DominationResult domination(double rho, double tau_g, double tau_r);

// Density at which the domination boundary meets the corner of the static
// region: the rho solving h(kappa_g(rho), 1/2) = (1-rho)/rho, found by
// bisection on (1/4, 1/2).  The same point seen from the red side solves
// h(1/2, kappa_r(rho)) = (1-rho)/rho; dual_residual reports how far that
// equation is from zero at the root as a numerical cross-check.
struct CriticalDensity {
  double rho;            // ~0.3849
  double kappa_g_at;     // kappa_g(rho)
  double kappa_r_at;     // kappa_r(rho)
  double dual_residual;  // h(1/2, kappa_r(rho)) - (1-rho)/rho
};

CriticalDensity critical_density();

// Minimum number of forced deviations needed to destabilise a monochromatic
// ring of the OTHER colour: inserting this many tau-intolerant opponents in a
// row creates one unhappy node.  Exactly floor((1-tau)(2w+1)) + 1, evaluated
// in integer arithmetic.  The all-green state's potential takes tau = tau_r,
// the all-red state's takes tau = tau_g; the state with the smaller potential
// is the stochastically stable one under the perturbed dynamic.
std::int64_t stochastic_potential(const Rational& tau, std::int64_t w);

}  // namespace schelling
