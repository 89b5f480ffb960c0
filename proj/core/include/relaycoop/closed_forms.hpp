// Closed-form cut-set bounds and achievable rates for the four operational
// cases, with the optimal power split / correlation that attains each.
//
//   Case 1  optimal power, full CSI
//   Case 2  equal power (alpha = 1/2), full CSI
//   Case 3  optimal power, receiver phase CSI (rho = 0)
//   Case 4  equal power, receiver phase CSI
//
// The compress-and-forward rate under optimal power (Case 1 / Case 3) has no
// closed form; it is computed with optimize_cf_alpha and flagged numeric.

#pragma once

#include <optional>

#include "relaycoop/capacity.hpp"
#include "relaycoop/optimizer.hpp"

namespace relaycoop {

struct CaseRates {
  CaseId case_id;
  RateResult ct;   // transmitter-cluster cut-set bound
  RateResult rt;   // decode-and-forward rate
  RateResult cr;   // receiver-cluster cut-set bound
  RateResult rr;   // compress-and-forward rate
  std::optional<RateResult> rpr;  // CF upper bound without the 1/P term; Case 1, g > 2
  RateResult cn;   // non-cooperative capacity C(1)

  // Lookup by quantity; empty only for Rpr when absent.
  std::optional<RateResult> get(QuantityId q) const;
};

// Direct link with all power at the source: C(1).
RateResult non_cooperative(double power);

/// Upper bound on the Case 1 compress-and-forward rate obtained by dropping
/// 1/P from the denominator, maximized over alpha in closed form. Defined for
/// g > 2 only; returns empty otherwise.
std::optional<RateResult> cf_rate_upper_bound(const ChannelConfig& cfg);

CaseRates case1_rates(const ChannelConfig& cfg, const OptimizerSettings& settings = {});
CaseRates case2_rates(const ChannelConfig& cfg);
CaseRates case3_rates(const ChannelConfig& cfg, const OptimizerSettings& settings = {});
CaseRates case4_rates(const ChannelConfig& cfg);
CaseRates case_rates(CaseId id, const ChannelConfig& cfg, const OptimizerSettings& settings = {});

// Single quantity of a case. Cn ignores the case. Empty when undefined
// (Rpr outside Case 1 or for g <= 2).
std::optional<RateResult> evaluate_quantity(QuantityId q, CaseId id, const ChannelConfig& cfg,
                                            const OptimizerSettings& settings = {});

}  // namespace relaycoop
