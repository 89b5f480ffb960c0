// Capacity function, channel parameters and the four raw rate objectives of
// the clustered relay network.
//
// Two cooperation geometries are modelled. In the transmitter cluster the
// relay sits next to the source (source->relay power gain g, both nodes reach
// the destination with unit gain). In the receiver cluster the relay sits next
// to the destination (source reaches both with unit gain, relay->destination
// gain g). A network power budget P is split as alpha*P at the source and
// (1 - alpha)*P at the relay; rho is the correlation between the two
// transmitted signals.
//
// All rates are in bits per channel use.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace relaycoop {

enum class QuantityId { Ct, Rt, Cr, Rr, Rpr, Cn };

enum class CaseId {
  Case1 = 1,  // optimal power allocation, full CSI
  Case2 = 2,  // equal power allocation, full CSI
  Case3 = 3,  // optimal power allocation, receiver phase CSI only
  Case4 = 4,  // equal power allocation, receiver phase CSI only
};

inline constexpr std::array<CaseId, 4> kAllCases = {CaseId::Case1, CaseId::Case2,
                                                     CaseId::Case3, CaseId::Case4};
inline constexpr std::array<QuantityId, 6> kAllQuantities = {
    QuantityId::Ct, QuantityId::Rt,  QuantityId::Cr,
    QuantityId::Rr, QuantityId::Rpr, QuantityId::Cn};

std::string_view to_string(QuantityId q);
// "1".."4"
std::string_view to_string(CaseId c);
std::optional<QuantityId> parse_quantity(std::string_view text);
// Accepts "1".."4" and "case1".."case4" (case-insensitive prefix).
std::optional<CaseId> parse_case(std::string_view text);

inline int case_number(CaseId c) { return static_cast<int>(c); }

// Fraction of the network power assigned to the source, in [0, 1].
class PowerSplit {
 public:
  explicit PowerSplit(double alpha);
  static PowerSplit equal() { return PowerSplit(0.5); }
  double value() const { return alpha_; }
  friend bool operator==(const PowerSplit&, const PowerSplit&) = default;

 private:
  double alpha_;
};

// Correlation between the source and relay transmit signals, in [0, 1].
class Correlation {
 public:
  explicit Correlation(double rho);
  static Correlation none() { return Correlation(0.0); }
  double value() const { return rho_; }
  friend bool operator==(const Correlation&, const Correlation&) = default;

 private:
  double rho_;
};

/// Operating point of the network: intra-cluster gain g, network power P and
/// the path-loss exponent used to relate g to the node separation d.
///
/// The gain is canonical. A config built from a distance stores
/// g = d^(-exponent); a config built from a gain reports the distance
/// recomputed as g^(-1/exponent) (absent when g == 0).
class ChannelConfig {
 public:
  static constexpr double kDefaultExponent = 2.0;

  static ChannelConfig from_gain(double gain, double power,
                                 double exponent = kDefaultExponent);
  static ChannelConfig from_distance(double distance, double power,
                                     double exponent = kDefaultExponent);

  double gain() const { return gain_; }
  double power() const { return power_; }
  double exponent() const { return exponent_; }
  std::optional<double> distance() const { return distance_; }

  ChannelConfig with_gain(double gain) const { return from_gain(gain, power_, exponent_); }
  ChannelConfig with_power(double power) const { return from_gain(gain_, power, exponent_); }

 private:
  ChannelConfig(double gain, double power, double exponent, std::optional<double> distance)
      : gain_(gain), power_(power), exponent_(exponent), distance_(distance) {}

  double gain_;
  double power_;
  double exponent_;
  std::optional<double> distance_;
};

/// A computed bound or achievable rate together with the parameters that
/// attain it. alpha_star / rho_star are empty when the quantity does not
/// optimize that parameter.
struct RateResult {
  QuantityId quantity = QuantityId::Cn;
  std::optional<CaseId> case_id;
  double rate_bits = 0.0;
  std::optional<PowerSplit> alpha_star;
  std::optional<Correlation> rho_star;
  // Set when every alpha in [first, second] is optimal; alpha_star is then
  // the lower endpoint.
  std::optional<std::pair<double, double>> alpha_range;
  // True when the value comes from numerical optimization rather than a
  // closed form.
  bool numeric = false;
};

// log2(1 + x * power). Throws std::domain_error for x < 0 or power <= 0.
double shannon(double x, double power);

// d^(-exponent). Throws std::domain_error for d <= 0 or exponent <= 0.
double distance_to_gain(double distance, double exponent = ChannelConfig::kDefaultExponent);
// g^(-1/exponent); empty for g == 0.
std::optional<double> gain_to_distance(double gain,
                                       double exponent = ChannelConfig::kDefaultExponent);

// The two SNR arguments inside C(.) of a max-min objective. The first term is
// the broadcast (source-side) cut and is nonincreasing in rho; the second is
// the multiple-access (destination-side) cut and is nondecreasing in rho.
struct CutTerms {
  double first;
  double second;
};

CutTerms tx_cutset_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);
CutTerms df_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);
CutTerms rx_cutset_terms(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);

// Transmitter-cluster cut-set objective:
//   min{ C(alpha (g+1)(1-rho^2)), C(1 + 2 rho sqrt(alpha(1-alpha))) }
double tx_cutset_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);
// Decode-and-forward objective; as above with g+1 replaced by g.
double df_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);
// Receiver-cluster cut-set objective:
//   min{ C(2 alpha (1-rho^2)), C(alpha + (1-alpha) g + 2 rho sqrt(alpha(1-alpha) g)) }
double rx_cutset_objective(const ChannelConfig& cfg, PowerSplit alpha, Correlation rho);
// Compress-and-forward rate:
//   C( alpha(1-alpha) g / ((1-alpha) g + 2 alpha + 1/P) + alpha )
double cf_rate(const ChannelConfig& cfg, PowerSplit alpha);

}  // namespace relaycoop
