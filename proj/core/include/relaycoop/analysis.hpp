// Rate-ordering verification, per-case strategy recommendation, crossover
// search, CSI/power sensitivity and distance sweeps for figure data.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaycoop/capacity.hpp"
#include "relaycoop/closed_forms.hpp"

namespace relaycoop {

// ---- ordering ----

struct OrderingRow {
  int rank = 0;                     // 1 = highest
  std::vector<std::string> labels;  // e.g. {"Ct1", "Cr1"}
  std::vector<double> member_rates; // one per label
  double rate_bits = 0.0;           // first member
  bool numeric = false;             // contains a numerically optimized rate
};

struct OrderingViolation {
  enum class Kind { Order, Tie };
  Kind kind;
  int upper_rank;  // for Tie both ranks are the offending row
  int lower_rank;
  double upper_rate;
  double lower_rate;
  std::string detail;
};

struct OrderingReport {
  double g = 0.0;
  double power = 0.0;
  double tolerance = 0.0;
  std::vector<OrderingRow> chain;  // always 7 rows
  std::vector<OrderingViolation> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr double kTieTolerance = 1e-12;
inline constexpr double kNumericSlack = 1e-6;

/// Evaluates the seven-level chain
///   {Ct1,Cr1} >= {Rt1,Ct2,Cr3} >= Rt2 >= Rpr >= {Rr1,Rr3}
///     >= {Cn,Cr2,Ct3,Rt3,Ct4,Rt4,Cr4} >= {Rr2,Rr4}
/// and records every adjacent pair out of order by more than `tolerance`
/// (plus kNumericSlack next to the numeric Rr1 row) and every row whose
/// members differ by more than kTieTolerance.
/// Requires g > 2 (std::invalid_argument otherwise).
OrderingReport verify_ordering(const ChannelConfig& cfg, double tolerance = 1e-9,
                               const OptimizerSettings& settings = {});

// ---- recommendation ----

enum class Strategy { TransmitterCooperation, ReceiverCooperation, NoCooperation };
std::string_view to_string(Strategy s);

struct Recommendation {
  CaseId case_id;
  Strategy winner;
  // Winner's achievable rate minus the other cooperative strategy's rate; for
  // NoCooperation, Cn minus the better cooperative rate (clamped at 0).
  double margin_bits;
  double tx_rate_bits;  // decode-and-forward
  double rx_rate_bits;  // compress-and-forward
  double cn_bits;
};

// A cooperative strategy must beat Cn by more than this to be recommended.
inline constexpr double kNoCooperationBand = 1e-9;

Recommendation recommend_strategy(CaseId id, const ChannelConfig& cfg,
                                  const OptimizerSettings& settings = {});

// ---- crossover ----

struct QuantityRef {
  QuantityId quantity;
  CaseId case_id = CaseId::Case1;  // ignored for Cn
};

// Parses "Rt@2", "Cr@case3", "Cn". Empty on malformed input.
std::optional<QuantityRef> parse_quantity_ref(std::string_view text);
std::string to_string(const QuantityRef& ref);

/// Locates g in [g_lo, g_hi] where rate(a) - rate(b) changes sign, to within
/// `tol` in g. The bracket is scanned on a uniform grid first so an interior
/// sign change is found even when the endpoints share a sign; differences
/// below kTieTolerance count as zero. Returns empty when no sign change
/// exists. Throws std::invalid_argument on an invalid bracket or when a
/// quantity is undefined inside it.
std::optional<double> find_crossover(const QuantityRef& a, const QuantityRef& b, double power,
                                     double g_lo, double g_hi, double tol = 1e-9,
                                     const OptimizerSettings& settings = {});

// ---- sensitivity ----

enum class Cluster { Transmitter, Receiver };

struct SensitivityTable {
  Cluster cluster;
  std::array<double, 4> rates;  // Cases 1..4 achievable rate (Rt or Rr)
  double delta_power;           // Case 1 - Case 2
  double delta_csi;             // Case 1 - Case 3
};

SensitivityTable csi_power_sensitivity(Cluster cluster, const ChannelConfig& cfg,
                                       const OptimizerSettings& settings = {});

// ---- sweep ----

struct SweepRow {
  double d;
  double g;
  CaseId case_id;
  QuantityId quantity;
  double rate_bits;
  std::optional<double> alpha_star;
  std::optional<double> rho_star;
};

struct SweepOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  OptimizerSettings settings{};
};

/// Uniform grid of `points` distances over [d_lo, d_hi] (both inclusive).
/// Rows are ordered by d ascending, then case, then quantity (enum order);
/// duplicate cases/quantities are ignored. Rpr rows appear only where
/// defined (Case 1, g > 2). Power and exponent come from `base`. Output is
/// identical for any thread count.
std::vector<SweepRow> sweep(std::span<const CaseId> cases, std::span<const QuantityId> quantities,
                            double d_lo, double d_hi, int points, const ChannelConfig& base,
                            const SweepOptions& options = {});

// Quantities plotted per case by default: Ct, Rt, Cr, Rr, Cn.
std::vector<QuantityId> default_sweep_quantities();

// ---- closed form vs numerical optimization ----

struct CrossCheck {
  std::string label;  // e.g. "Ct1"
  double closed_form_bits;
  double numeric_bits;
  double difference_bits() const { return closed_form_bits - numeric_bits; }
};

/// Re-derives every Ct/Rt/Cr/Rr of the four cases numerically and pairs it
/// with the closed-form value: joint (alpha, rho) search for Case 1, alpha
/// search at rho = 0 for Case 3, rho search at alpha = 1/2 for Case 2 and
/// direct evaluation at alpha = 1/2, rho = 0 for Case 4. The numeric Rr of
/// Cases 1 and 3 is paired with a dense grid oracle of `cf_grid_points`.
std::vector<CrossCheck> cross_check_closed_forms(const ChannelConfig& cfg,
                                                 int cf_grid_points = 100001,
                                                 const OptimizerSettings& settings = {});

}  // namespace relaycoop
