// Numerical solvers for the structured max-min problems over the power split
// alpha and the signal correlation rho, plus a brute-force grid oracle.

#pragma once

#include "relaycoop/capacity.hpp"

namespace relaycoop {

enum class ObjectiveKind { TxCutset, DfRate, RxCutset, CfRate };

struct OptimizerSettings {
  double param_tol = 1e-10;      // absolute, on alpha and rho
  double rate_tol = 1e-12;       // bits; also the tie band between candidate maxima
  int coarse_grid_points = 1001;  // per axis
  int max_iterations = 200;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct RhoOptimum {
  Correlation rho_star;
  double rate_bits;
};

struct AlphaOptimum {
  PowerSplit alpha_star;
  double rate_bits;
};

struct JointOptimum {
  PowerSplit alpha_star;
  Correlation rho_star;
  double rate_bits;
};

// Terms / value of the objective selected by `kind` (not CfRate).
CutTerms objective_terms(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                         Correlation rho);
// Any kind; rho is ignored for CfRate.
double evaluate_objective(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                          Correlation rho);

/// Maximizes min{term1(rho), term2(rho)} over rho in [0, 1] at a fixed alpha.
///
/// term1 is nonincreasing and term2 nondecreasing in rho, so the optimum is
/// rho = 0 when term1(0) <= term2(0), rho = 1 when term1(1) > term2(1), and
/// otherwise the unique crossing, located by bisection to param_tol.
/// Throws std::invalid_argument for CfRate.
RhoOptimum optimize_rho(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                        const OptimizerSettings& settings = {});

/// Joint maximization over (alpha, rho). The outer search over alpha is a
/// coarse grid followed by golden-section refinement around each local grid
/// maximum; the inner problem is optimize_rho. Flat maxima resolve to the
/// smallest optimal alpha. Throws std::invalid_argument for CfRate.
JointOptimum optimize_alpha_rho(ObjectiveKind kind, const ChannelConfig& cfg,
                                const OptimizerSettings& settings = {});

// Maximization over alpha with rho pinned (rho = 0 models the receiver-phase
// CSI cases, where coherent combining is unavailable).
JointOptimum optimize_alpha_at_rho(ObjectiveKind kind, const ChannelConfig& cfg, Correlation rho,
                                   const OptimizerSettings& settings = {});

// Maximizes cf_rate over alpha in [0, 1]; unimodality is not assumed.
AlphaOptimum optimize_cf_alpha(const ChannelConfig& cfg, const OptimizerSettings& settings = {});

/// Exhaustive evaluation on a uniform grid with `points_per_axis` samples of
/// alpha (and of rho, unless kind is CfRate) including both endpoints.
/// Returns the largest objective value seen. Throws std::invalid_argument
/// when points_per_axis < 3.
double grid_oracle(ObjectiveKind kind, const ChannelConfig& cfg, int points_per_axis);

}  // namespace relaycoop
