#include "relaycoop/capacity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace relaycoop {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_power(double power) {
  if (!(power > 0.0) || !std::isfinite(power))
    throw std::domain_error("network power must be finite and > 0, got " + num(power));
}

void require_exponent(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw std::domain_error("path-loss exponent must be finite and > 0");
}

double min_rate(const CutTerms& t, double power) {
  return std::min(shannon(t.first, power), shannon(t.second, power));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(QuantityId q) {
  switch (q) {
    case QuantityId::Ct: return "Ct";
    case QuantityId::Rt: return "Rt";
    case QuantityId::Cr: return "Cr";
    case QuantityId::Rr: return "Rr";
    case QuantityId::Rpr: return "Rpr";
    case QuantityId::Cn: return "Cn";
  }
  return "?";
}

std::string_view to_string(CaseId c) {
  switch (c) {
    case CaseId::Case1: return "1";
    case CaseId::Case2: return "2";
    case CaseId::Case3: return "3";
    case CaseId::Case4: return "4";
  }
  return "?";
}

std::optional<QuantityId> parse_quantity(std::string_view text) {
  const std::string t = lower(text);
  for (QuantityId q : kAllQuantities)
    if (lower(to_string(q)) == t) return q;
  return std::nullopt;
}

std::optional<CaseId> parse_case(std::string_view text) {
  std::string t = lower(text);
  if (t.rfind("case", 0) == 0) t = t.substr(4);
  if (t.size() != 1 || t[0] < '1' || t[0] > '4') return std::nullopt;
  return static_cast<CaseId>(t[0] - '0');
}

PowerSplit::PowerSplit(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error("power split alpha must lie in [0, 1], got " + num(alpha));
}

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("correlation rho must lie in [0, 1], got " + num(rho));
}

ChannelConfig ChannelConfig::from_gain(double gain, double power, double exponent) {
  if (!(gain >= 0.0) || !std::isfinite(gain))
    throw std::domain_error("gain must be finite and >= 0, got " + num(gain));
  require_power(power);
  require_exponent(exponent);
  return ChannelConfig(gain, power, exponent, gain_to_distance(gain, exponent));
}

ChannelConfig ChannelConfig::from_distance(double distance, double power, double exponent) {
  const double gain = distance_to_gain(distance, exponent);
  require_power(power);
  if (!std::isfinite(gain)) throw std::domain_error("distance too small: gain overflows");
  return ChannelConfig(gain, power, exponent, distance);
}

double shannon(double x, double power) {
  if (!(x >= 0.0)) throw std::domain_error("capacity argument must be >= 0");
  require_power(power);
  return std::log1p(x * power) / std::numbers::ln2;
}

double distance_to_gain(double distance, double exponent) {
  if (!(distance > 0.0) || !std::isfinite(distance))
    throw std::domain_error("distance must be finite and > 0, got " + num(distance));
  require_exponent(exponent);
  return std::pow(distance, -exponent);
}

std::optional<double> gain_to_distance(double gain, double exponent) {
  require_exponent(exponent);
  if (!(gain > 0.0)) return std::nullopt;
  return std::pow(gain, -1.0 / exponent);
}

CutTerms tx_cutset_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  const double a = alpha.value();
  const double r = rho.value();
  return {a * (cfg.gain() + 1.0) * (1.0 - r * r), 1.0 + 2.0 * r * std::sqrt(a * (1.0 - a))};
}

CutTerms df_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  const double a = alpha.value();
  const double r = rho.value();
  return {a * cfg.gain() * (1.0 - r * r), 1.0 + 2.0 * r * std::sqrt(a * (1.0 - a))};
}

CutTerms rx_cutset_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  const double a = alpha.value();
  const double r = rho.value();
  const double g = cfg.gain();
  return {2.0 * a * (1.0 - r * r),
          a + (1.0 - a) * g + 2.0 * r * std::sqrt(a * (1.0 - a) * g)};
}

double tx_cutset_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  return min_rate(tx_cutset_terms(cfg, alpha, rho), cfg.power());
}

double df_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  return min_rate(df_terms(cfg, alpha, rho), cfg.power());
}

double rx_cutset_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho) {
  return min_rate(rx_cutset_terms(cfg, alpha, rho), cfg.power());
}

double cf_rate(const ChannelConfig& cfg, PowerSplit alpha) {
  const double a = alpha.value();
  const double g = cfg.gain();
  const double denom = (1.0 - a) * g + 2.0 * a + 1.0 / cfg.power();
  return shannon(a * (1.0 - a) * g / denom + a, cfg.power());
}

}  // namespace relaycoop
