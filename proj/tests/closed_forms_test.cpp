#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle/brute_force.hpp"
#include "relaycoop/closed_forms.hpp"

using namespace relaycoop;

namespace {

constexpr double kP = 20.0;
const double kC1 = shannon(1.0, kP);

ChannelConfig at(double g, double p = kP) { return ChannelConfig::from_gain(g, p); }

// g = 2 * 5000^(k/n), k = 1..n
std::vector<double> log_spaced(int n, double lo = 2.0, double hi = 1e4) {
  std::vector<double> v;
  for (int k = 1; k <= n; ++k) v.push_back(k == n ? hi : lo * std::pow(hi / lo, double(k) / n));
  return v;
}

}  // namespace

TEST_CASE("non-cooperative capacity") {
  CHECK(non_cooperative(20.0).rate_bits == doctest::Approx(4.392317422778761).epsilon(1e-14));
  CHECK(non_cooperative(1.0).rate_bits == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(non_cooperative(1e-12).rate_bits < 1e-11);
  CHECK_FALSE(non_cooperative(20.0).alpha_star.has_value());
  CHECK_FALSE(non_cooperative(20.0).rho_star.has_value());
}

TEST_CASE("case 1 at g = 4") {
  const auto r = case1_rates(at(4.0));
  CHECK(r.ct.rate_bits == doctest::Approx(5.1015380264620624).epsilon(1e-13));
  CHECK(r.cr.rate_bits == r.ct.rate_bits);
  CHECK(r.rt.rate_bits == doctest::Approx(5.044394119358453).epsilon(1e-13));
  REQUIRE(r.rpr.has_value());
  CHECK(r.rpr->rate_bits == doctest::Approx(4.487739428705946).epsilon(1e-13));
  CHECK(r.rr.rate_bits == doctest::Approx(4.481590585512445).epsilon(1e-12));
  CHECK(r.rr.numeric);
  CHECK_FALSE(r.ct.numeric);
  CHECK(r.ct.alpha_star->value() == doctest::Approx(8.0 / 12.0));
  CHECK(r.ct.rho_star->value() == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.rt.alpha_star->value() == doctest::Approx(0.7));
  CHECK(r.rt.rho_star->value() == doctest::Approx(std::sqrt(3.0 / 7.0)));
  CHECK(r.cr.alpha_star->value() == doctest::Approx(26.0 / 30.0));
  CHECK(r.cr.rho_star->value() == doctest::Approx(1.0 / std::sqrt(26.0)));
}

TEST_CASE("case 1 at weak gains") {
  const auto r = case1_rates(at(0.5));
  CHECK(r.rt.rate_bits == doctest::Approx(shannon(0.5, kP)).epsilon(1e-15));
  CHECK(r.rt.alpha_star->value() == 1.0);
  CHECK(r.rt.rho_star->value() == 0.0);
  CHECK_FALSE(r.rpr.has_value());
  CHECK_FALSE(case1_rates(at(2.0)).rpr.has_value());
  CHECK(case1_rates(at(2.0)).rr.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
}

TEST_CASE("Rpr reduced form agrees with the unreduced expression") {
  for (double g : {2.01, 2.5, 3.0, 4.0, 10.0, 100.0, 1000.0}) {
    const double s = std::sqrt(g - 1.0);
    const double x = 2.0 * g * (s - 1.0) * (g - 1.0 - s) / (s * (g - 2.0) * (g - 2.0));
    const double a = g * (g - 1.0 - s) / (g * g - 3.0 * g + 2.0);
    const auto b = cf_rate_upper_bound(at(g));
    REQUIRE(b.has_value());
    CHECK(b->rate_bits == doctest::Approx(shannon(x, kP)).epsilon(1e-12));
    CHECK(b->alpha_star->value() == doctest::Approx(a).epsilon(1e-12));

    // the bound is the max over alpha of the CF argument without 1/P
    const auto f = [&](double al) {
      return oracle::cap(al * (1.0 - al) * g / ((1.0 - al) * g + 2.0 * al) + al, kP);
    };
    CHECK(std::abs(b->rate_bits - oracle::brent_max(f, 0.0, 1.0).second) < 1e-9);
  }
}

TEST_CASE("case 2 at g = 4") {
  const auto r = case2_rates(at(4.0));
  CHECK(r.ct.rate_bits == doctest::Approx(5.044394119358453).epsilon(1e-13));
  CHECK(r.rt.rate_bits == doctest::Approx(4.954196310386875).epsilon(1e-13));
  CHECK(r.cr.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
  CHECK(r.rr.rate_bits == doctest::Approx(4.13400542718737).epsilon(1e-12));
  CHECK(r.rt.alpha_star->value() == 0.5);
  CHECK(r.rt.rho_star->value() == doctest::Approx(0.5));
  CHECK(r.ct.rho_star->value() == doctest::Approx(0.6));

  const auto r2 = case2_rates(at(2.0));
  CHECK(std::abs(r2.rt.rate_bits - r2.cr.rate_bits) < 1e-12);
  const auto r0 = case2_rates(at(0.0));
  CHECK(r0.rt.rate_bits == 0.0);
  CHECK(r0.cr.rate_bits == doctest::Approx(shannon(0.5, kP)).epsilon(1e-14));
}

TEST_CASE("case 3 at g = 4") {
  const auto r = case3_rates(at(4.0));
  CHECK(r.ct.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
  CHECK(r.rt.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
  CHECK(r.cr.rate_bits == doctest::Approx(5.044394119358453).epsilon(1e-13));
  CHECK(r.rr.rate_bits == case1_rates(at(4.0)).rr.rate_bits);
  CHECK(r.ct.alpha_star->value() == doctest::Approx(0.2));
  REQUIRE(r.ct.alpha_range.has_value());
  CHECK(r.ct.alpha_range->second == 1.0);
  REQUIRE(r.rt.alpha_range.has_value());
  CHECK(r.rt.alpha_range->first == doctest::Approx(0.25));
  CHECK_FALSE(r.cr.alpha_range.has_value());
  CHECK(r.cr.alpha_star->value() == doctest::Approx(0.8));

  CHECK(case3_rates(at(0.5)).rt.rate_bits == doctest::Approx(shannon(0.5, kP)).epsilon(1e-15));
  CHECK(case3_rates(at(1.0)).cr.alpha_range.has_value());
}

TEST_CASE("case 4") {
  const auto r = case4_rates(at(4.0));
  for (const auto& q : {r.ct, r.rt, r.cr})
    CHECK(q.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
  CHECK(r.rr.rate_bits == case2_rates(at(4.0)).rr.rate_bits);
  const auto h = case4_rates(at(1.5));
  CHECK(h.rt.rate_bits == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(h.ct.rate_bits == doctest::Approx(kC1).epsilon(1e-14));
  for (double g : {1.0, 1.7, 3.0, 50.0}) {
    const auto c = case4_rates(at(g));
    CHECK(std::max(c.ct.rate_bits, c.cr.rate_bits) == c.cn.rate_bits);
  }
}

TEST_CASE("evaluate_quantity matches case_rates") {
  for (double g : {0.3, 1.0, 2.5, 9.0}) {
    const auto cfg = at(g);
    for (auto c : kAllCases) {
      const auto all = case_rates(c, cfg);
      for (auto q : kAllQuantities) {
        const auto one = evaluate_quantity(q, c, cfg);
        const auto ref = all.get(q);
        REQUIRE(one.has_value() == ref.has_value());
        if (one) {
          CHECK(one->rate_bits == ref->rate_bits);
          CHECK(one->case_id == c);
        }
      }
    }
  }
  CHECK_FALSE(evaluate_quantity(QuantityId::Rpr, CaseId::Case2, at(4.0)).has_value());
}

TEST_CASE("closed forms match numerical optimization on a lattice") {
  for (double p : {1.0, 20.0, 100.0}) {
    for (double g : {0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0, 10.0, 30.0, 100.0}) {
      const auto cfg = at(g, p);
      const auto c1 = case1_rates(cfg);
      CHECK(std::abs(c1.ct.rate_bits -
                     optimize_alpha_rho(ObjectiveKind::TxCutset, cfg).rate_bits) <= 1e-6);
      CHECK(std::abs(c1.rt.rate_bits - optimize_alpha_rho(ObjectiveKind::DfRate, cfg).rate_bits) <=
            1e-6);
      CHECK(std::abs(c1.cr.rate_bits -
                     optimize_alpha_rho(ObjectiveKind::RxCutset, cfg).rate_bits) <= 1e-6);

      const auto c2 = case2_rates(cfg);
      const auto half = PowerSplit::equal();
      CHECK(std::abs(c2.ct.rate_bits -
                     optimize_rho(ObjectiveKind::TxCutset, cfg, half).rate_bits) <= 1e-6);
      CHECK(std::abs(c2.rt.rate_bits - optimize_rho(ObjectiveKind::DfRate, cfg, half).rate_bits) <=
            1e-6);
      CHECK(std::abs(c2.cr.rate_bits -
                     optimize_rho(ObjectiveKind::RxCutset, cfg, half).rate_bits) <= 1e-6);
      CHECK(std::abs(c2.rr.rate_bits - cf_rate(cfg, half)) <= 1e-12);

      // independent brute force: a coarse lattice never beats the closed
      // forms, and the nested search agrees with them
      const double bf_ct =
          oracle::grid_max_2d([&](double a, double r) { return oracle::tx_cut(g, p, a, r); }, 201);
      CHECK(c1.ct.rate_bits >= bf_ct - 1e-12);
      CHECK(c1.ct.rate_bits - bf_ct < 1e-2);
      CHECK(std::abs(c1.ct.rate_bits - oracle::nested_max_min([&](double a, double r) {
                       return oracle::tx_terms(g, a, r);
                     }, p)) < 1e-8);
      CHECK(std::abs(c1.rt.rate_bits - oracle::nested_max_min([&](double a, double r) {
                       return oracle::df_terms(g, a, r);
                     }, p)) < 1e-8);
      CHECK(std::abs(c1.cr.rate_bits - oracle::nested_max_min([&](double a, double r) {
                       return oracle::rx_terms(g, a, r);
                     }, p)) < 1e-8);
    }
  }
}

TEST_CASE("piecewise forms are continuous at their breakpoints") {
  struct Bp {
    QuantityId q;
    CaseId c;
    double g;
  };
  const Bp bps[] = {
      {QuantityId::Rt, CaseId::Case1, 1.0}, {QuantityId::Ct, CaseId::Case2, 1.0},
      {QuantityId::Rt, CaseId::Case2, 2.0}, {QuantityId::Cr, CaseId::Case2, 1.0},
      {QuantityId::Rt, CaseId::Case3, 1.0}, {QuantityId::Cr, CaseId::Case3, 1.0},
      {QuantityId::Ct, CaseId::Case4, 1.0}, {QuantityId::Rt, CaseId::Case4, 2.0},
      {QuantityId::Cr, CaseId::Case4, 1.0},
  };
  for (double p : {1.0, 20.0, 1e4}) {
    for (const auto& b : bps) {
      const double left = evaluate_quantity(b.q, b.c, at(std::nextafter(b.g, 0.0), p))->rate_bits;
      const double right = evaluate_quantity(b.q, b.c, at(b.g, p))->rate_bits;
      CHECK(std::abs(left - right) <= 1e-12);
    }
  }
}

TEST_CASE("structural identities on sampled gains") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 100.0), u0(0.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const double g = u(rng);
    CHECK(std::abs(case1_rates(at(g)).rt.rate_bits - case1_rates(at(g - 1.0)).ct.rate_bits) <=
          1e-12);
    const double h = u0(rng);
    const auto c1 = case1_rates(at(h));
    CHECK(c1.ct.rate_bits == c1.cr.rate_bits);
    const auto c4 = case4_rates(at(h));
    CHECK(c4.ct.rate_bits == c4.cr.rate_bits);
  }
}

TEST_CASE("bound relations") {
  for (double g : log_spaced(60)) {
    const auto c1 = case1_rates(at(g));
    REQUIRE(c1.rpr.has_value());
    CHECK(c1.rpr->rate_bits >= c1.rr.rate_bits - 1e-12);
  }
  const auto hp = case1_rates(at(4.0, 1e6));
  CHECK(hp.rpr->rate_bits - hp.rr.rate_bits > 0.0);
  CHECK(hp.rpr->rate_bits - hp.rr.rate_bits < 1e-3);

  for (double p : {1.0, 20.0, 100.0})
    for (double g : {0.0, 0.3, 1.0, 2.0, 5.0, 40.0}) {
      const auto cfg = at(g, p);
      for (auto c : kAllCases) {
        const auto r = case_rates(c, cfg);
        CHECK(r.ct.rate_bits >= r.rt.rate_bits - 1e-12);
        CHECK(r.cr.rate_bits >= r.rr.rate_bits - 1e-12);
      }
      CHECK(case3_rates(cfg).rr.rate_bits >= shannon(1.0, p) - 1e-12);
    }
}

TEST_CASE("every quantity is nondecreasing in g") {
  const auto gs = log_spaced(80, 0.01, 1e3);
  for (auto c : kAllCases) {
    for (auto q : {QuantityId::Ct, QuantityId::Rt, QuantityId::Cr, QuantityId::Rr}) {
      double prev = -1.0;
      for (double g : gs) {
        const double v = evaluate_quantity(q, c, at(g))->rate_bits;
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }
}
