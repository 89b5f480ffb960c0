#include "relaycoop/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace relaycoop {

namespace {

RateResult make(QuantityId q, CaseId c, double rate, std::optional<double> alpha,
                std::optional<double> rho) {
  RateResult r;
  r.quantity = q;
  r.case_id = c;
  r.rate_bits = rate;
  if (alpha) r.alpha_star = PowerSplit(*alpha);
  if (rho) r.rho_star = Correlation(*rho);
  return r;
}

RateResult with_range(RateResult r, double lo, double hi) {
  r.alpha_range = std::make_pair(lo, hi);
  return r;
}

// ---- Case 1: optimal power allocation, full CSI ----

RateResult ct1(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  return make(QuantityId::Ct, CaseId::Case1, shannon(2.0 * (g + 1.0) / (g + 2.0), cfg.power()),
              (g + 4.0) / (2.0 * g + 4.0), std::sqrt(g / (g + 4.0)));
}

RateResult rt1(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 1.0)
    return make(QuantityId::Rt, CaseId::Case1, shannon(2.0 * g / (g + 1.0), cfg.power()),
                (g + 3.0) / (2.0 * g + 2.0), std::sqrt((g - 1.0) / (g + 3.0)));
  return make(QuantityId::Rt, CaseId::Case1, shannon(g, cfg.power()), 1.0, 0.0);
}

RateResult cr1(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  const double q = g * g + 2.0 * g + 2.0;
  return make(QuantityId::Cr, CaseId::Case1, shannon(2.0 * (g + 1.0) / (g + 2.0), cfg.power()),
              q / (g * g + 3.0 * g + 2.0), 1.0 / std::sqrt(q));
}

RateResult rr_numeric(const ChannelConfig& cfg, CaseId c, const OptimizerSettings& s) {
  const AlphaOptimum opt = optimize_cf_alpha(cfg, s);
  RateResult r = make(QuantityId::Rr, c, opt.rate_bits, opt.alpha_star.value(), std::nullopt);
  r.numeric = true;
  return r;
}

// ---- Case 2: equal power, full CSI ----

RateResult ct2(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 1.0)
    return make(QuantityId::Ct, CaseId::Case2, shannon(2.0 * g / (g + 1.0), cfg.power()), 0.5,
                (g - 1.0) / (g + 1.0));
  return make(QuantityId::Ct, CaseId::Case2, shannon((1.0 + g) / 2.0, cfg.power()), 0.5, 0.0);
}

RateResult rt2(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 2.0)
    return make(QuantityId::Rt, CaseId::Case2, shannon(2.0 * (g - 1.0) / g, cfg.power()), 0.5,
                (g - 2.0) / g);
  return make(QuantityId::Rt, CaseId::Case2, shannon(g / 2.0, cfg.power()), 0.5, 0.0);
}

RateResult cr2(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 1.0) return make(QuantityId::Cr, CaseId::Case2, shannon(1.0, cfg.power()), 0.5, 0.0);
  return make(QuantityId::Cr, CaseId::Case2,
              shannon((1.0 + std::sqrt(g * (2.0 - g))) / 2.0, cfg.power()), 0.5,
              (std::sqrt(2.0 - g) - std::sqrt(g)) / 2.0);
}

RateResult rr_equal(const ChannelConfig& cfg, CaseId c) {
  const double g = cfg.gain();
  const double x = g / (2.0 * (g + 2.0 + 2.0 / cfg.power())) + 0.5;
  return make(QuantityId::Rr, c, shannon(x, cfg.power()), 0.5, std::nullopt);
}

// ---- Case 3: optimal power, receiver phase CSI (rho = 0) ----

RateResult ct3(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  const double lo = 1.0 / (g + 1.0);
  return with_range(make(QuantityId::Ct, CaseId::Case3, shannon(1.0, cfg.power()), lo, 0.0), lo,
                    1.0);
}

RateResult rt3(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 1.0) {
    const double lo = 1.0 / g;
    return with_range(make(QuantityId::Rt, CaseId::Case3, shannon(1.0, cfg.power()), lo, 0.0),
                      lo, 1.0);
  }
  return make(QuantityId::Rt, CaseId::Case3, shannon(g, cfg.power()), 1.0, 0.0);
}

RateResult cr3(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (g >= 1.0) {
    const double a = g / (g + 1.0);
    RateResult r = make(QuantityId::Cr, CaseId::Case3, shannon(2.0 * g / (g + 1.0), cfg.power()),
                        a, 0.0);
    return g == 1.0 ? with_range(r, a, 1.0) : r;
  }
  return make(QuantityId::Cr, CaseId::Case3, shannon(1.0, cfg.power()), 1.0, 0.0);
}

// ---- Case 4: equal power, receiver phase CSI ----

RateResult ct4(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  const double x = g >= 1.0 ? 1.0 : (1.0 + g) / 2.0;
  return make(QuantityId::Ct, CaseId::Case4, shannon(x, cfg.power()), 0.5, 0.0);
}

RateResult rt4(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  const double x = g >= 2.0 ? 1.0 : g / 2.0;
  return make(QuantityId::Rt, CaseId::Case4, shannon(x, cfg.power()), 0.5, 0.0);
}

RateResult cr4(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  const double x = g >= 1.0 ? 1.0 : (1.0 + g) / 2.0;
  return make(QuantityId::Cr, CaseId::Case4, shannon(x, cfg.power()), 0.5, 0.0);
}

RateResult cn_for(CaseId c, double power) {
  RateResult r = non_cooperative(power);
  r.case_id = c;
  return r;
}

}  // namespace

std::optional<RateResult> CaseRates::get(QuantityId q) const {
  switch (q) {
    case QuantityId::Ct: return ct;
    case QuantityId::Rt: return rt;
    case QuantityId::Cr: return cr;
    case QuantityId::Rr: return rr;
    case QuantityId::Rpr: return rpr;
    case QuantityId::Cn: return cn;
  }
  return std::nullopt;
}

RateResult non_cooperative(double power) {
  RateResult r;
  r.quantity = QuantityId::Cn;
  r.rate_bits = shannon(1.0, power);
  return r;
}

std::optional<RateResult> cf_rate_upper_bound(const ChannelConfig& cfg) {
  const double g = cfg.gain();
  if (!(g > 2.0)) return std::nullopt;
  // With s = sqrt(g - 1) the bound's argument
  //   2g (s - 1)(g - 1 - s) / (s (g - 2)^2)
  // reduces to 2g / (1 + s)^2 and its maximizer
  //   g (g - 1 - s) / (g^2 - 3g + 2)
  // to g / (s (1 + s)); the reduced forms avoid cancellation as g -> 2.
  const double s = std::sqrt(g - 1.0);
  const double x = 2.0 * g / ((1.0 + s) * (1.0 + s));
  return make(QuantityId::Rpr, CaseId::Case1, shannon(x, cfg.power()), g / (s * (1.0 + s)),
              std::nullopt);
}

CaseRates case1_rates(const ChannelConfig& cfg, const OptimizerSettings& settings) {
  return {CaseId::Case1, ct1(cfg), rt1(cfg), cr1(cfg), rr_numeric(cfg, CaseId::Case1, settings),
          cf_rate_upper_bound(cfg), cn_for(CaseId::Case1, cfg.power())};
}

CaseRates case2_rates(const ChannelConfig& cfg) {
  return {CaseId::Case2, ct2(cfg), rt2(cfg), cr2(cfg), rr_equal(cfg, CaseId::Case2),
          std::nullopt, cn_for(CaseId::Case2, cfg.power())};
}

CaseRates case3_rates(const ChannelConfig& cfg, const OptimizerSettings& settings) {
  return {CaseId::Case3, ct3(cfg), rt3(cfg), cr3(cfg), rr_numeric(cfg, CaseId::Case3, settings),
          std::nullopt, cn_for(CaseId::Case3, cfg.power())};
}

CaseRates case4_rates(const ChannelConfig& cfg) {
  return {CaseId::Case4, ct4(cfg), rt4(cfg), cr4(cfg), rr_equal(cfg, CaseId::Case4),
          std::nullopt, cn_for(CaseId::Case4, cfg.power())};
}

CaseRates case_rates(CaseId id, const ChannelConfig& cfg, const OptimizerSettings& settings) {
  switch (id) {
    case CaseId::Case1: return case1_rates(cfg, settings);
    case CaseId::Case2: return case2_rates(cfg);
    case CaseId::Case3: return case3_rates(cfg, settings);
    case CaseId::Case4: return case4_rates(cfg);
  }
  throw std::invalid_argument("unknown case");
}

std::optional<RateResult> evaluate_quantity(QuantityId q, CaseId id, const ChannelConfig& cfg,
                                            const OptimizerSettings& settings) {
  if (q == QuantityId::Cn) return cn_for(id, cfg.power());
  if (q == QuantityId::Rpr) {
    if (id != CaseId::Case1) return std::nullopt;
    return cf_rate_upper_bound(cfg);
  }
  switch (id) {
    case CaseId::Case1:
      if (q == QuantityId::Ct) return ct1(cfg);
      if (q == QuantityId::Rt) return rt1(cfg);
      if (q == QuantityId::Cr) return cr1(cfg);
      return rr_numeric(cfg, id, settings);
    case CaseId::Case2:
      if (q == QuantityId::Ct) return ct2(cfg);
      if (q == QuantityId::Rt) return rt2(cfg);
      if (q == QuantityId::Cr) return cr2(cfg);
      return rr_equal(cfg, id);
    case CaseId::Case3:
      if (q == QuantityId::Ct) return ct3(cfg);
      if (q == QuantityId::Rt) return rt3(cfg);
      if (q == QuantityId::Cr) return cr3(cfg);
      return rr_numeric(cfg, id, settings);
    case CaseId::Case4:
      if (q == QuantityId::Ct) return ct4(cfg);
      if (q == QuantityId::Rt) return rt4(cfg);
      if (q == QuantityId::Cr) return cr4(cfg);
      return rr_equal(cfg, id);
  }
  return std::nullopt;
}

}  // namespace relaycoop
