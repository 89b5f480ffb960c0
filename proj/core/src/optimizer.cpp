#include "relaycoop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace relaycoop {

namespace {

struct Point {
  double x;
  double value;
};

void require_rho_dimension(ObjectiveKind kind) {
  if (kind == ObjectiveKind::CfRate)
    throw std::invalid_argument("compress-and-forward objective has no rho dimension");
}

template <class F>
Point golden_section_max(F& f, double lo, double hi, const OptimizerSettings& s) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < s.max_iterations && hi - lo > s.param_tol; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? Point{x1, f1} : Point{x2, f2};
}

// Smallest x in (lo, hi] with f(x) >= threshold, given f(lo) < threshold <= f(hi).
template <class F>
Point left_edge(F& f, double lo, double hi, double threshold, const OptimizerSettings& s) {
  double f_hi = f(hi);
  for (int it = 0; it < s.max_iterations && hi - lo > s.param_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid >= threshold) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
    }
  }
  return {hi, f_hi};
}

// Maximizes f over [0, 1]: coarse grid, then local refinement of every grid
// local maximum. Plateaus resolve to their left edge; among candidates whose
// refined values tie within rate_tol the smallest x wins.
template <class F>
Point maximize_on_unit_interval(F&& f, const OptimizerSettings& s) {
  s.validate();
  const int n = s.coarse_grid_points;
  const double tol = s.rate_tol;
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? 1.0 : static_cast<double>(i) / (n - 1);
    fs[i] = f(xs[i]);
  }

  const auto grid_best = std::max_element(fs.begin(), fs.end()) - fs.begin();
  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    const bool rises = (i == 0) || fs[i] > fs[i - 1] + tol;
    const bool holds = (i == n - 1) || fs[i] >= fs[i + 1] - tol;
    if ((rises && holds) || i == grid_best) candidates.push_back(i);
  }

  std::vector<Point> refined;
  refined.reserve(candidates.size());
  for (int i : candidates) {
    const bool plateau = i < n - 1 && std::abs(fs[i + 1] - fs[i]) <= tol;
    if (plateau) {
      if (i == 0 || fs[i - 1] >= fs[i] - tol) {
        refined.push_back({xs[i], fs[i]});
      } else {
        refined.push_back(left_edge(f, xs[i - 1], xs[i], fs[i] - tol, s));
      }
      continue;
    }
    const double lo = xs[std::max(i - 1, 0)];
    const double hi = xs[std::min(i + 1, n - 1)];
    const Point golden = golden_section_max(f, lo, hi, s);
    refined.push_back(golden.value > fs[i] ? golden : Point{xs[i], fs[i]});
  }

  double best = refined.front().value;
  for (const Point& p : refined) best = std::max(best, p.value);
  Point chosen{2.0, 0.0};
  for (const Point& p : refined)
    if (p.value >= best - tol && p.x < chosen.x) chosen = p;
  return chosen;
}

}  // namespace

void OptimizerSettings::validate() const {
  if (!(param_tol > 0.0)) throw std::invalid_argument("param_tol must be > 0");
  if (!(rate_tol > 0.0)) throw std::invalid_argument("rate_tol must be > 0");
  if (coarse_grid_points < 3) throw std::invalid_argument("coarse_grid_points must be >= 3");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

CutTerms objective_terms(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                         Correlation rho) {
  switch (kind) {
    case ObjectiveKind::TxCutset: return tx_cutset_terms(cfg, alpha, rho);
    case ObjectiveKind::DfRate: return df_terms(cfg, alpha, rho);
    case ObjectiveKind::RxCutset: return rx_cutset_terms(cfg, alpha, rho);
    case ObjectiveKind::CfRate: break;
  }
  throw std::invalid_argument("compress-and-forward objective is not a max-min of two terms");
}

double evaluate_objective(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                          Correlation rho) {
  switch (kind) {
    case ObjectiveKind::TxCutset: return tx_cutset_objective(cfg, alpha, rho);
    case ObjectiveKind::DfRate: return df_objective(cfg, alpha, rho);
    case ObjectiveKind::RxCutset: return rx_cutset_objective(cfg, alpha, rho);
    case ObjectiveKind::CfRate: return cf_rate(cfg, alpha);
  }
  throw std::invalid_argument("unknown objective kind");
}

RhoOptimum optimize_rho(ObjectiveKind kind, const ChannelConfig& cfg, PowerSplit alpha,
                        const OptimizerSettings& settings) {
  require_rho_dimension(kind);
  settings.validate();
  const double power = cfg.power();
  auto rate_at = [&](double r) {
    const CutTerms t = objective_terms(kind, cfg, alpha, Correlation(r));
    return std::min(shannon(t.first, power), shannon(t.second, power));
  };
  // h(rho) = term1 - term2, strictly decreasing whenever it changes sign.
  auto h = [&](double r) {
    const CutTerms t = objective_terms(kind, cfg, alpha, Correlation(r));
    return t.first - t.second;
  };

  if (h(0.0) <= 0.0) return {Correlation(0.0), rate_at(0.0)};
  if (h(1.0) > 0.0) return {Correlation(1.0), rate_at(1.0)};

  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < settings.max_iterations && hi - lo > settings.param_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double r_lo = rate_at(lo);
  const double r_hi = rate_at(hi);
  return r_hi > r_lo ? RhoOptimum{Correlation(hi), r_hi} : RhoOptimum{Correlation(lo), r_lo};
}

JointOptimum optimize_alpha_rho(ObjectiveKind kind, const ChannelConfig& cfg,
                                const OptimizerSettings& settings) {
  require_rho_dimension(kind);
  const Point best = maximize_on_unit_interval(
      [&](double a) { return optimize_rho(kind, cfg, PowerSplit(a), settings).rate_bits; },
      settings);
  const RhoOptimum inner = optimize_rho(kind, cfg, PowerSplit(best.x), settings);
  return {PowerSplit(best.x), inner.rho_star, inner.rate_bits};
}

JointOptimum optimize_alpha_at_rho(ObjectiveKind kind, const ChannelConfig& cfg, Correlation rho,
                                   const OptimizerSettings& settings) {
  require_rho_dimension(kind);
  const Point best = maximize_on_unit_interval(
      [&](double a) { return evaluate_objective(kind, cfg, PowerSplit(a), rho); }, settings);
  return {PowerSplit(best.x), rho, best.value};
}

AlphaOptimum optimize_cf_alpha(const ChannelConfig& cfg, const OptimizerSettings& settings) {
  const Point best =
      maximize_on_unit_interval([&](double a) { return cf_rate(cfg, PowerSplit(a)); }, settings);
  return {PowerSplit(best.x), best.value};
}

double grid_oracle(ObjectiveKind kind, const ChannelConfig& cfg, int points_per_axis) {
  if (points_per_axis < 3) throw std::invalid_argument("grid oracle needs >= 3 points per axis");
  const int n = points_per_axis;
  auto at = [n](int i) { return i == n - 1 ? 1.0 : static_cast<double>(i) / (n - 1); };
  const int rho_points = kind == ObjectiveKind::CfRate ? 1 : n;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const PowerSplit alpha(at(i));
    for (int j = 0; j < rho_points; ++j)
      best = std::max(best, evaluate_objective(kind, cfg, alpha, Correlation(at(j))));
  }
  return best;
}

}  // namespace relaycoop
