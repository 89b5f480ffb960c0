#include "relaycoop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace relaycoop {

namespace {

struct Member {
  std::string label;
  RateResult rate;
};

OrderingRow make_row(int rank, std::vector<Member> members) {
  OrderingRow row;
  row.rank = rank;
  for (const Member& m : members) {
    row.labels.push_back(m.label);
    row.member_rates.push_back(m.rate.rate_bits);
    row.numeric = row.numeric || m.rate.numeric;
  }
  row.rate_bits = row.member_rates.front();
  return row;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ",";
    out += x;
  }
  return out;
}

int sign_of(double v) {
  if (v > kTieTolerance) return 1;
  if (v < -kTieTolerance) return -1;
  return 0;
}

template <class T>
std::vector<T> sorted_unique(std::span<const T> xs) {
  std::vector<T> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

OrderingReport verify_ordering(const ChannelConfig& cfg, double tolerance,
                               const OptimizerSettings& settings) {
  if (!(cfg.gain() > 2.0))
    throw std::invalid_argument("rate ordering is only established for g > 2");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");

  const CaseRates c1 = case1_rates(cfg, settings);
  const CaseRates c2 = case2_rates(cfg);
  const CaseRates c3 = case3_rates(cfg, settings);
  const CaseRates c4 = case4_rates(cfg);

  OrderingReport report;
  report.g = cfg.gain();
  report.power = cfg.power();
  report.tolerance = tolerance;
  report.chain = {
      make_row(1, {{"Ct1", c1.ct}, {"Cr1", c1.cr}}),
      make_row(2, {{"Rt1", c1.rt}, {"Ct2", c2.ct}, {"Cr3", c3.cr}}),
      make_row(3, {{"Rt2", c2.rt}}),
      make_row(4, {{"Rpr", *c1.rpr}}),
      make_row(5, {{"Rr1", c1.rr}, {"Rr3", c3.rr}}),
      make_row(6, {{"Cn", c1.cn},
                   {"Cr2", c2.cr},
                   {"Ct3", c3.ct},
                   {"Rt3", c3.rt},
                   {"Ct4", c4.ct},
                   {"Rt4", c4.rt},
                   {"Cr4", c4.cr}}),
      make_row(7, {{"Rr2", c2.rr}, {"Rr4", c4.rr}}),
  };

  for (const OrderingRow& row : report.chain) {
    const auto [lo, hi] = std::minmax_element(row.member_rates.begin(), row.member_rates.end());
    if (*hi - *lo > kTieTolerance)
      report.violations.push_back({OrderingViolation::Kind::Tie, row.rank, row.rank, *hi, *lo,
                                   "members of {" + join(row.labels) + "} differ"});
  }
  for (std::size_t i = 0; i + 1 < report.chain.size(); ++i) {
    const OrderingRow& upper = report.chain[i];
    const OrderingRow& lower = report.chain[i + 1];
    const double slack = tolerance + ((upper.numeric || lower.numeric) ? kNumericSlack : 0.0);
    if (upper.rate_bits < lower.rate_bits - slack)
      report.violations.push_back({OrderingViolation::Kind::Order, upper.rank, lower.rank,
                                   upper.rate_bits, lower.rate_bits,
                                   "{" + join(upper.labels) + "} < {" + join(lower.labels) + "}"});
  }
  return report;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::TransmitterCooperation: return "TransmitterCooperation";
    case Strategy::ReceiverCooperation: return "ReceiverCooperation";
    case Strategy::NoCooperation: return "NoCooperation";
  }
  return "?";
}

Recommendation recommend_strategy(CaseId id, const ChannelConfig& cfg,
                                  const OptimizerSettings& settings) {
  const double tx = evaluate_quantity(QuantityId::Rt, id, cfg, settings)->rate_bits;
  const double rx = evaluate_quantity(QuantityId::Rr, id, cfg, settings)->rate_bits;
  const double cn = non_cooperative(cfg.power()).rate_bits;

  Recommendation rec{id, Strategy::NoCooperation, 0.0, tx, rx, cn};
  const double best = std::max(tx, rx);
  if (best <= cn + kNoCooperationBand) {
    rec.margin_bits = std::max(0.0, cn - best);
  } else if (tx >= rx) {
    rec.winner = Strategy::TransmitterCooperation;
    rec.margin_bits = tx - rx;
  } else {
    rec.winner = Strategy::ReceiverCooperation;
    rec.margin_bits = rx - tx;
  }
  return rec;
}

std::optional<QuantityRef> parse_quantity_ref(std::string_view text) {
  const auto at = text.find('@');
  const auto q = parse_quantity(text.substr(0, at));
  if (!q) return std::nullopt;
  if (at == std::string_view::npos) {
    if (*q != QuantityId::Cn) return std::nullopt;
    return QuantityRef{*q, CaseId::Case1};
  }
  const auto c = parse_case(text.substr(at + 1));
  if (!c) return std::nullopt;
  return QuantityRef{*q, *c};
}

std::string to_string(const QuantityRef& ref) {
  std::string out(to_string(ref.quantity));
  if (ref.quantity != QuantityId::Cn) {
    out += "@";
    out += to_string(ref.case_id);
  }
  return out;
}

std::optional<double> find_crossover(const QuantityRef& a, const QuantityRef& b, double power,
                                     double g_lo, double g_hi, double tol,
                                     const OptimizerSettings& settings) {
  if (!(g_lo >= 0.0) || !std::isfinite(g_hi) || !(g_lo < g_hi))
    throw std::invalid_argument("crossover bracket must satisfy 0 <= g_lo < g_hi");
  if (!(tol > 0.0)) throw std::invalid_argument("crossover tolerance must be > 0");

  auto rate = [&](const QuantityRef& ref, const ChannelConfig& cfg) {
    const auto r = evaluate_quantity(ref.quantity, ref.case_id, cfg, settings);
    if (!r)
      throw std::invalid_argument(to_string(ref) + " is undefined at g = " +
                                  std::to_string(cfg.gain()));
    return r->rate_bits;
  };
  auto diff = [&](double g) {
    const ChannelConfig cfg = ChannelConfig::from_gain(g, power);
    return rate(a, cfg) - rate(b, cfg);
  };

  constexpr int kScan = 64;
  std::optional<double> last_g;
  int last_sign = 0;
  for (int k = 0; k <= kScan; ++k) {
    const double g = (k == kScan) ? g_hi : g_lo + (g_hi - g_lo) * k / kScan;
    const int s = sign_of(diff(g));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = *last_g;
      double hi = g;
      for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const int sm = sign_of(diff(mid));
        if (sm == 0) return mid;
        (sm == last_sign ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    last_g = g;
    last_sign = s;
  }
  return std::nullopt;
}

SensitivityTable csi_power_sensitivity(Cluster cluster, const ChannelConfig& cfg,
                                       const OptimizerSettings& settings) {
  const QuantityId q = cluster == Cluster::Transmitter ? QuantityId::Rt : QuantityId::Rr;
  SensitivityTable t{cluster, {}, 0.0, 0.0};
  for (std::size_t i = 0; i < kAllCases.size(); ++i)
    t.rates[i] = evaluate_quantity(q, kAllCases[i], cfg, settings)->rate_bits;
  t.delta_power = t.rates[0] - t.rates[1];
  t.delta_csi = t.rates[0] - t.rates[2];
  return t;
}

std::vector<QuantityId> default_sweep_quantities() {
  return {QuantityId::Ct, QuantityId::Rt, QuantityId::Cr, QuantityId::Rr, QuantityId::Cn};
}

std::vector<SweepRow> sweep(std::span<const CaseId> cases, std::span<const QuantityId> quantities,
                            double d_lo, double d_hi, int points, const ChannelConfig& base,
                            const SweepOptions& options) {
  if (!(d_lo > 0.0)) throw std::domain_error("sweep distance must be > 0");
  if (!(d_lo < d_hi) || !std::isfinite(d_hi))
    throw std::invalid_argument("sweep requires d_lo < d_hi");
  if (points < 2) throw std::invalid_argument("sweep requires at least 2 points");

  const std::vector<CaseId> case_list = sorted_unique(cases);
  const std::vector<QuantityId> quantity_list = sorted_unique(quantities);
  if (case_list.empty() || quantity_list.empty()) return {};

  std::vector<std::vector<SweepRow>> per_point(static_cast<std::size_t>(points));
  auto evaluate_point = [&](int i) {
    const double d = (i == points - 1) ? d_hi : d_lo + (d_hi - d_lo) * i / (points - 1);
    const ChannelConfig cfg = ChannelConfig::from_distance(d, base.power(), base.exponent());
    auto& rows = per_point[static_cast<std::size_t>(i)];
    for (CaseId c : case_list) {
      for (QuantityId q : quantity_list) {
        const auto r = evaluate_quantity(q, c, cfg, options.settings);
        if (!r) continue;
        SweepRow row{d, cfg.gain(), c, q, r->rate_bits, std::nullopt, std::nullopt};
        if (r->alpha_star) row.alpha_star = r->alpha_star->value();
        if (r->rho_star) row.rho_star = r->rho_star->value();
        rows.push_back(row);
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points));
  if (threads <= 1) {
    for (int i = 0; i < points; ++i) evaluate_point(i);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int i = static_cast<int>(t); i < points; i += static_cast<int>(threads))
            evaluate_point(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<SweepRow> out;
  for (auto& rows : per_point) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

std::vector<CrossCheck> cross_check_closed_forms(const ChannelConfig& cfg, int cf_grid_points,
                                                 const OptimizerSettings& settings) {
  constexpr std::array<std::pair<QuantityId, ObjectiveKind>, 3> kMaxMin = {{
      {QuantityId::Ct, ObjectiveKind::TxCutset},
      {QuantityId::Rt, ObjectiveKind::DfRate},
      {QuantityId::Cr, ObjectiveKind::RxCutset},
  }};
  const PowerSplit half = PowerSplit::equal();
  const Correlation uncorrelated = Correlation::none();

  std::vector<CrossCheck> out;
  for (CaseId c : kAllCases) {
    const CaseRates rates = case_rates(c, cfg, settings);
    const std::string suffix(to_string(c));
    for (const auto& [q, kind] : kMaxMin) {
      double numeric = 0.0;
      switch (c) {
        case CaseId::Case1: numeric = optimize_alpha_rho(kind, cfg, settings).rate_bits; break;
        case CaseId::Case2: numeric = optimize_rho(kind, cfg, half, settings).rate_bits; break;
        case CaseId::Case3:
          numeric = optimize_alpha_at_rho(kind, cfg, uncorrelated, settings).rate_bits;
          break;
        case CaseId::Case4: numeric = evaluate_objective(kind, cfg, half, uncorrelated); break;
      }
      out.push_back({std::string(to_string(q)) + suffix, rates.get(q)->rate_bits, numeric});
    }
    const bool optimal_power = c == CaseId::Case1 || c == CaseId::Case3;
    const double rr_numeric = optimal_power ? grid_oracle(ObjectiveKind::CfRate, cfg, cf_grid_points)
                                            : cf_rate(cfg, half);
    out.push_back({"Rr" + suffix, rates.rr.rate_bits, rr_numeric});
  }
  return out;
}

}  // namespace relaycoop
