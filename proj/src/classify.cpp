#include "schelling/classify.hpp"

#include <cmath>
#include <stdexcept>

#include "schelling/numerics.hpp"

namespace schelling {

namespace {

// Three-valued comparison: a result inside the band is neither side.
enum class Cmp { Below, Within, Above };

Cmp cmp3(double x, double threshold, double band) {
  const double d = x - threshold;
  if (std::fabs(d) <= band) return Cmp::Within;
  return d < 0.0 ? Cmp::Below : Cmp::Above;
}

// Conjunction of three-valued conditions for one rule.  "failed" means some
// condition is definitively false (the rule cannot apply); "uncertain" means
// nothing failed but at least one condition sits inside its band.
struct Rule {
  bool failed = false;
  bool uncertain = false;

  Rule& below(Cmp c) {
    if (c == Cmp::Within) uncertain = true;
    else if (c != Cmp::Below) failed = true;
    return *this;
  }
  Rule& above(Cmp c) {
    if (c == Cmp::Within) uncertain = true;
    else if (c != Cmp::Above) failed = true;
    return *this;
  }
  bool fires() const { return !failed && !uncertain; }
  bool near_boundary() const { return !failed && uncertain; }
};

Prediction threshold_case(const char* rule_name) {
  return {Outcome::ThresholdCase,
          std::string("within the numeric band of a deciding boundary (rule: ") + rule_name + ")"};
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::StaticAE: return "StaticAE";
    case Outcome::GreenTakeoverAE: return "GreenTakeoverAE";
    case Outcome::RedTakeoverAE: return "RedTakeoverAE";
    case Outcome::GreenTotal: return "GreenTotal";
    case Outcome::RedTotal: return "RedTotal";
    case Outcome::OpenQ1: return "OpenQ1";
    case Outcome::OpenQ2: return "OpenQ2";
    case Outcome::ThresholdCase: return "ThresholdCase";
    case Outcome::ConjecturedGreenTotal: return "ConjecturedGreenTotal";
    case Outcome::ConjecturedRedTotal: return "ConjecturedRedTotal";
    case Outcome::ConjecturedCoinFlip: return "ConjecturedCoinFlip";
  }
  return "?";
}

Prediction classify(double rho, double tau_g, double tau_r, DynamicKind dynamic, double band) {
  if (!(rho > 0.0 && rho < 1.0 && tau_g > 0.0 && tau_g < 1.0 && tau_r > 0.0 && tau_r < 1.0))
    throw std::domain_error("classify: all inputs must be inside (0,1)");

  const ThresholdSet th = compute_thresholds(rho);
  const Cmp g_kg = cmp3(tau_g, th.kappa_g, band);
  const Cmp r_kr = cmp3(tau_r, th.kappa_r, band);
  const Cmp g_half = cmp3(tau_g, 0.5, band);
  const Cmp r_half = cmp3(tau_r, 0.5, band);
  const Cmp g_mg = cmp3(tau_g, th.mu_g, band);
  const Cmp r_mr = cmp3(tau_r, th.mu_r, band);

  // Spreading-colour comparison in log space, so the band is relative to the
  // target (1-rho)/rho.  Below = red dominating, Above = green dominating.
  const Cmp dom = cmp3(std::log(eval_h(tau_g, tau_r)), std::log((1.0 - rho) / rho), band);

  // --- rules that hold under every dynamic ---

  {  // both colours content below their static thresholds
    Rule rule;
    rule.below(g_kg).below(r_kr);
    if (rule.fires())
      return {Outcome::StaticAE, "tau_g < kappa_g and tau_r < kappa_r: static almost everywhere"};
    if (rule.near_boundary()) return threshold_case("static via kappa");
  }
  {  // green spreads through the red population, both tolerances below 1/2
    Rule rule;
    rule.below(g_half).above(r_kr).below(r_half).above(dom);
    if (rule.fires())
      return {Outcome::GreenTakeoverAE,
              "tau_g < 1/2, kappa_r < tau_r < 1/2, green dominating: green takes over almost everywhere"};
    if (rule.near_boundary()) return threshold_case("green takeover below 1/2");
  }
  {
    Rule rule;
    rule.below(r_half).above(g_kg).below(g_half).below(dom);
    if (rule.fires())
      return {Outcome::RedTakeoverAE,
              "tau_r < 1/2, kappa_g < tau_g < 1/2, red dominating: red takes over almost everywhere"};
    if (rule.near_boundary()) return threshold_case("red takeover below 1/2");
  }
  {  // red would spread but green contentment can freeze it -- if tau_g > rho/2
    Rule rule;
    rule.below(g_kg).above(r_kr).below(r_half).below(dom);
    if (rule.near_boundary()) return threshold_case("static vs red spread");
    if (!rule.failed) {
      const Cmp side = cmp3(tau_g, rho / 2.0, band);
      if (side == Cmp::Above)
        return {Outcome::StaticAE,
                "tau_g < kappa_g, kappa_r < tau_r < 1/2, red dominating, tau_g > rho/2: static almost everywhere"};
      return {Outcome::OpenQ1,
              "tau_g < kappa_g, kappa_r < tau_r < 1/2, red dominating, tau_g <= rho/2: outcome unknown"};
    }
  }
  {
    Rule rule;
    rule.below(r_kr).above(g_kg).below(g_half).above(dom);
    if (rule.near_boundary()) return threshold_case("static vs green spread");
    if (!rule.failed) {
      const Cmp side = cmp3(tau_r, (1.0 - rho) / 2.0, band);
      if (side == Cmp::Above)
        return {Outcome::StaticAE,
                "tau_r < kappa_r, kappa_g < tau_g < 1/2, green dominating, tau_r > (1-rho)/2: static almost everywhere"};
      return {Outcome::OpenQ1,
              "tau_r < kappa_r, kappa_g < tau_g < 1/2, green dominating, tau_r <= (1-rho)/2: outcome unknown"};
    }
  }
  {  // intolerant reds hand the ring to the tolerant greens
    Rule rule;
    rule.below(g_half).above(r_half);
    if (rule.fires())
      return {Outcome::GreenTotal, "tau_g < 1/2 < tau_r: green takes over totally"};
    if (rule.near_boundary()) return threshold_case("total takeover split at 1/2");
  }
  {
    Rule rule;
    rule.below(r_half).above(g_half);
    if (rule.fires())
      return {Outcome::RedTotal, "tau_r < 1/2 < tau_g: red takes over totally"};
    if (rule.near_boundary()) return threshold_case("total takeover split at 1/2");
  }

  // --- both tolerances above 1/2: dynamics now disagree ---

  if (dynamic == DynamicKind::Selective) {
    {
      Rule rule;
      rule.above(g_half).below(g_mg).above(r_half).above(dom);
      if (rule.fires())
        return {Outcome::GreenTakeoverAE,
                "1/2 < tau_g < mu_g, 1/2 < tau_r, green dominating: green takes over almost everywhere"};
      if (rule.near_boundary()) return threshold_case("green takeover above 1/2");
    }
    {
      Rule rule;
      rule.above(r_half).below(r_mr).above(g_half).below(dom);
      if (rule.fires())
        return {Outcome::RedTakeoverAE,
                "1/2 < tau_r < mu_r, 1/2 < tau_g, red dominating: red takes over almost everywhere"};
      if (rule.near_boundary()) return threshold_case("red takeover above 1/2");
    }
    {  // red would spread but stand-off freezes it -- if tau_r < 1 - rho/2
      Rule rule;
      rule.above(g_half).below(g_mg).above(r_mr).below(dom);
      if (rule.near_boundary()) return threshold_case("static vs red spread above 1/2");
      if (!rule.failed) {
        const Cmp side = cmp3(tau_r, 1.0 - rho / 2.0, band);
        if (side == Cmp::Below)
          return {Outcome::StaticAE,
                  "1/2 < tau_g < mu_g, tau_r > mu_r, red dominating, tau_r < 1 - rho/2: static almost everywhere"};
        return {Outcome::OpenQ2,
                "1/2 < tau_g < mu_g, tau_r > mu_r, red dominating, tau_r >= 1 - rho/2: outcome unknown"};
      }
    }
    {
      Rule rule;
      rule.above(r_half).below(r_mr).above(g_mg).above(dom);
      if (rule.near_boundary()) return threshold_case("static vs green spread above 1/2");
      if (!rule.failed) {
        const Cmp side = cmp3(tau_g, (1.0 + rho) / 2.0, band);
        if (side == Cmp::Below)
          return {Outcome::StaticAE,
                  "1/2 < tau_r < mu_r, tau_g > mu_g, green dominating, tau_g < (1+rho)/2: static almost everywhere"};
        return {Outcome::OpenQ2,
                "1/2 < tau_r < mu_r, tau_g > mu_g, green dominating, tau_g >= (1+rho)/2: outcome unknown"};
      }
    }
    {  // both colours too demanding to move at all
      Rule rule;
      rule.above(g_mg).above(r_mr);
      if (rule.fires())
        return {Outcome::StaticAE, "tau_g > mu_g and tau_r > mu_r: static almost everywhere"};
      if (rule.near_boundary()) return threshold_case("static via mu");
    }
  } else {
    // Incremental / synchronous (perturbed rides on its incremental skeleton):
    // above 1/2 the supported expectation is total takeover by the more
    // tolerant colour.
    Rule rule;
    rule.above(g_half).above(r_half);
    if (rule.near_boundary()) return threshold_case("conjectured region entry");
    if (!rule.failed) {
      const Cmp t = cmp3(tau_g, tau_r, band);
      if (t == Cmp::Below)
        return {Outcome::ConjecturedGreenTotal,
                "1/2 < tau_g < tau_r: conjectured total green takeover"};
      if (t == Cmp::Above)
        return {Outcome::ConjecturedRedTotal,
                "1/2 < tau_r < tau_g: conjectured total red takeover"};
      return {Outcome::ConjecturedCoinFlip,
              "1/2 < tau_g = tau_r: conjectured fair coin between total takeovers"};
    }
  }

  // Unreachable for definitive comparisons; kept as a conservative fallback.
  return threshold_case("no rule applied");
}

}  // namespace schelling
