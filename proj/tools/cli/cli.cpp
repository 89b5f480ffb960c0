#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "relaycoop/closed_forms.hpp"

namespace relaycoop::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Grid of the `verify --oracle` lattice.
constexpr std::array<double, 10> kOracleGains = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 10.0, 100.0};
constexpr std::array<double, 3> kOraclePowers = {1.0, 20.0, 100.0};
constexpr double kOracleTolerance = 1e-6;
constexpr double kOrderingTolerance = 1e-9;
constexpr double kOrderingGainMax = 1e4;

std::string optional_number(const std::optional<double>& v, int precision) {
  return v ? format_number(*v, precision) : std::string();
}

ordered_json json_number(double v, int precision) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v, precision).c_str(), nullptr);
}

ordered_json json_optional(const std::optional<double>& v, int precision) {
  return v ? json_number(*v, precision) : ordered_json(nullptr);
}

double parse_double_field(const std::string& s, std::string_view what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::invalid_argument("malformed " + std::string(what) + " field '" + s + "'");
  return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ChannelConfig resolve_point(const std::optional<double>& g, const std::optional<double>& d,
                            const CliConfig& cfg) {
  if (g) return ChannelConfig::from_gain(*g, cfg.power, cfg.pathloss_exponent);
  if (d) return ChannelConfig::from_distance(*d, cfg.power, cfg.pathloss_exponent);
  throw std::invalid_argument("one of --g or --d is required");
}

std::vector<CaseId> parse_cases(const std::vector<std::string>& items) {
  std::vector<CaseId> out;
  for (const auto& item : items) {
    if (item == "all") {
      out.assign(kAllCases.begin(), kAllCases.end());
      continue;
    }
    const auto c = parse_case(item);
    if (!c) throw std::invalid_argument("unknown case '" + item + "'");
    out.push_back(*c);
  }
  return out;
}

std::vector<QuantityId> parse_quantities(const std::vector<std::string>& items) {
  std::vector<QuantityId> out;
  for (const auto& item : items) {
    if (item == "all") {
      out.assign(kAllQuantities.begin(), kAllQuantities.end());
      continue;
    }
    const auto q = parse_quantity(item);
    if (!q) throw std::invalid_argument("unknown quantity '" + item + "'");
    out.push_back(*q);
  }
  return out;
}

Record record_from(const RateResult& r, const ChannelConfig& point) {
  Record rec;
  rec.d = point.distance();
  rec.g = point.gain();
  rec.case_id = r.case_id;
  rec.quantity = r.quantity;
  rec.rate_bits = r.rate_bits;
  if (r.alpha_star) rec.alpha_star = r.alpha_star->value();
  if (r.rho_star) rec.rho_star = r.rho_star->value();
  return rec;
}

std::string render_records(const std::vector<Record>& records, const CliConfig& cfg) {
  return cfg.output_format == OutputFormat::Json ? records_to_json(records, cfg.precision)
                                                 : records_to_csv(records, cfg.precision);
}

// ---- subcommands ----

struct RatesArgs {
  std::string which = "all";
  std::optional<double> g;
  std::optional<double> d;
};

std::string cmd_rates(const RatesArgs& a, const CliConfig& cfg) {
  const ChannelConfig point = resolve_point(a.g, a.d, cfg);
  const std::vector<CaseId> cases = parse_cases({a.which});
  std::vector<Record> records;
  for (CaseId c : cases) {
    for (QuantityId q : {QuantityId::Ct, QuantityId::Rt, QuantityId::Cr, QuantityId::Rr,
                         QuantityId::Rpr}) {
      if (const auto r = evaluate_quantity(q, c, point)) records.push_back(record_from(*r, point));
    }
  }
  records.push_back(record_from(non_cooperative(point.power()), point));
  return render_records(records, cfg);
}

struct SweepArgs {
  std::vector<std::string> cases{"all"};
  std::vector<std::string> quantities;
  double d_min = 0.0;
  double d_max = 0.0;
  int points = 0;
};

std::string cmd_sweep(const SweepArgs& a, const CliConfig& cfg) {
  const std::vector<CaseId> cases = parse_cases(a.cases);
  const std::vector<QuantityId> quantities =
      a.quantities.empty() ? default_sweep_quantities() : parse_quantities(a.quantities);
  const ChannelConfig base = ChannelConfig::from_gain(1.0, cfg.power, cfg.pathloss_exponent);
  SweepOptions options;
  options.threads = cfg.threads;
  const auto rows = sweep(cases, quantities, a.d_min, a.d_max, a.points, base, options);
  std::vector<Record> records;
  records.reserve(rows.size());
  for (const SweepRow& row : rows) records.push_back(to_record(row));
  return render_records(records, cfg);
}

struct VerifyArgs {
  bool ordering = false;
  bool oracle = false;
  int g_samples = 200;
};

struct CheckOutcome {
  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;
};

CheckOutcome check_ordering(int samples, const CliConfig& cfg) {
  if (samples < 1) throw std::invalid_argument("--g-samples must be >= 1");
  CheckOutcome out;
  out.name = "ordering";
  for (int k = 1; k <= samples; ++k) {
    // Log-spaced over (2, 1e4]; the last sample lands on 1e4.
    const double g = k == samples
                         ? kOrderingGainMax
                         : 2.0 * std::pow(kOrderingGainMax / 2.0, static_cast<double>(k) / samples);
    const auto report = verify_ordering(
        ChannelConfig::from_gain(g, cfg.power, cfg.pathloss_exponent), kOrderingTolerance);
    ++out.total;
    if (report.passed()) {
      ++out.passed;
      continue;
    }
    for (const auto& v : report.violations)
      out.failures.push_back("g=" + format_number(g, cfg.precision) + ": " + v.detail);
  }
  return out;
}

CheckOutcome check_oracle(const CliConfig& cfg) {
  CheckOutcome out;
  out.name = "oracle";
  for (double power : kOraclePowers) {
    for (double g : kOracleGains) {
      ++out.total;
      bool ok = true;
      for (const auto& c :
           cross_check_closed_forms(ChannelConfig::from_gain(g, power, cfg.pathloss_exponent))) {
        if (std::abs(c.difference_bits()) <= kOracleTolerance) continue;
        ok = false;
        out.failures.push_back("g=" + format_number(g, cfg.precision) +
                               " P=" + format_number(power, cfg.precision) + ": " + c.label +
                               " closed=" + format_number(c.closed_form_bits, cfg.precision) +
                               " numeric=" + format_number(c.numeric_bits, cfg.precision));
      }
      if (ok) ++out.passed;
    }
  }
  return out;
}

std::string cmd_verify(VerifyArgs a, const CliConfig& cfg, bool& all_passed) {
  if (!a.ordering && !a.oracle) a.ordering = a.oracle = true;
  std::vector<CheckOutcome> outcomes;
  if (a.ordering) outcomes.push_back(check_ordering(a.g_samples, cfg));
  if (a.oracle) outcomes.push_back(check_oracle(cfg));

  all_passed = true;
  for (const auto& o : outcomes) all_passed = all_passed && o.passed == o.total;

  std::ostringstream os;
  if (cfg.output_format == OutputFormat::Json) {
    ordered_json doc = ordered_json::object();
    for (const auto& o : outcomes)
      doc[o.name] = {{"status", o.passed == o.total ? "PASS" : "FAIL"},
                     {"passed", o.passed},
                     {"total", o.total},
                     {"failures", o.failures}};
    os << doc.dump(2) << '\n';
  } else {
    for (const auto& o : outcomes) {
      os << o.name << ' ' << (o.passed == o.total ? "PASS" : "FAIL") << ' ' << o.passed << '/'
         << o.total << '\n';
      for (const auto& f : o.failures) os << "  " << f << '\n';
    }
  }
  return os.str();
}

struct RecommendArgs {
  std::string which;
  std::optional<double> g;
  std::optional<double> d;
};

std::string cmd_recommend(const RecommendArgs& a, const CliConfig& cfg) {
  const auto c = parse_case(a.which);
  if (!c) throw std::invalid_argument("unknown case '" + a.which + "'");
  const ChannelConfig point = resolve_point(a.g, a.d, cfg);
  const Recommendation rec = recommend_strategy(*c, point);
  const int p = cfg.precision;
  std::ostringstream os;
  if (cfg.output_format == OutputFormat::Json) {
    ordered_json doc = {{"case_id", case_number(rec.case_id)},
                        {"g", json_number(point.gain(), p)},
                        {"winner", std::string(to_string(rec.winner))},
                        {"margin_bits", json_number(rec.margin_bits, p)},
                        {"tx_rate_bits", json_number(rec.tx_rate_bits, p)},
                        {"rx_rate_bits", json_number(rec.rx_rate_bits, p)},
                        {"cn_bits", json_number(rec.cn_bits, p)}};
    os << doc.dump(2) << '\n';
  } else {
    os << "case,g,winner,margin_bits,tx_rate_bits,rx_rate_bits,cn_bits\n"
       << to_string(rec.case_id) << ',' << format_number(point.gain(), p) << ','
       << to_string(rec.winner) << ',' << format_number(rec.margin_bits, p) << ','
       << format_number(rec.tx_rate_bits, p) << ',' << format_number(rec.rx_rate_bits, p) << ','
       << format_number(rec.cn_bits, p) << '\n';
  }
  return os.str();
}

struct CrossoverArgs {
  std::string a;
  std::string b;
  double g_lo = 0.0;
  double g_hi = 0.0;
  double tol = 1e-9;
};

std::string cmd_crossover(const CrossoverArgs& a, const CliConfig& cfg) {
  const auto qa = parse_quantity_ref(a.a);
  const auto qb = parse_quantity_ref(a.b);
  if (!qa) throw std::invalid_argument("malformed quantity '" + a.a + "' (expected e.g. Rt@2)");
  if (!qb) throw std::invalid_argument("malformed quantity '" + a.b + "' (expected e.g. Cr@2)");
  const auto g_star = find_crossover(*qa, *qb, cfg.power, a.g_lo, a.g_hi, a.tol);
  std::ostringstream os;
  if (cfg.output_format == OutputFormat::Json) {
    ordered_json doc = {{"a", to_string(*qa)},
                        {"b", to_string(*qb)},
                        {"g_star", json_optional(g_star, cfg.precision)}};
    os << doc.dump(2) << '\n';
  } else {
    os << "a,b,g_star\n"
       << to_string(*qa) << ',' << to_string(*qb) << ',' << optional_number(g_star, cfg.precision)
       << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

Record to_record(const SweepRow& row) {
  return {row.d, row.g, row.case_id, row.quantity, row.rate_bits, row.alpha_star, row.rho_star};
}

std::string records_to_csv(const std::vector<Record>& records, int precision) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const Record& r : records) {
    out += optional_number(r.d, precision);
    out += ',';
    out += format_number(r.g, precision);
    out += ',';
    if (r.case_id) out += to_string(*r.case_id);
    out += ',';
    out += to_string(r.quantity);
    out += ',';
    out += format_number(r.rate_bits, precision);
    out += ',';
    out += optional_number(r.alpha_star, precision);
    out += ',';
    out += optional_number(r.rho_star, precision);
    out += '\n';
  }
  return out;
}

std::string records_to_json(const std::vector<Record>& records, int precision) {
  ordered_json doc = ordered_json::array();
  for (const Record& r : records) {
    doc.push_back({{"d", json_optional(r.d, precision)},
                   {"g", json_number(r.g, precision)},
                   {"case_id", r.case_id ? ordered_json(case_number(*r.case_id))
                                         : ordered_json(nullptr)},
                   {"quantity", std::string(to_string(r.quantity))},
                   {"rate_bits", json_number(r.rate_bits, precision)},
                   {"alpha_star", json_optional(r.alpha_star, precision)},
                   {"rho_star", json_optional(r.rho_star, precision)}});
  }
  return doc.dump(2) + "\n";
}

std::vector<Record> parse_records_csv(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines.front() != kCsvHeader)
    throw std::invalid_argument("missing or unexpected CSV header");
  std::vector<Record> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], ',');
    if (f.size() != 7)
      throw std::invalid_argument("CSV line " + std::to_string(i + 1) + " has " +
                                  std::to_string(f.size()) + " fields, expected 7");
    Record r;
    if (!f[0].empty()) r.d = parse_double_field(f[0], "d");
    r.g = parse_double_field(f[1], "g");
    if (!f[2].empty()) {
      r.case_id = parse_case(f[2]);
      if (!r.case_id) throw std::invalid_argument("malformed case field '" + f[2] + "'");
    }
    const auto q = parse_quantity(f[3]);
    if (!q) throw std::invalid_argument("malformed quantity field '" + f[3] + "'");
    r.quantity = *q;
    r.rate_bits = parse_double_field(f[4], "rate_bits");
    if (!f[5].empty()) r.alpha_star = parse_double_field(f[5], "alpha_star");
    if (!f[6].empty()) r.rho_star = parse_double_field(f[6], "rho_star");
    out.push_back(r);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds and achievable rates for transmitter and receiver cooperation "
               "in a clustered AWGN relay network",
               "relaycoop"};
  app.fallthrough();
  app.require_subcommand(1);

  CliConfig cfg;
  std::string format = "csv";
  app.add_option("--power", cfg.power, "Average network power P")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pathloss-exponent", cfg.pathloss_exponent, "Path-loss exponent (g = d^-n)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output,-o", cfg.output_path, "Write output to this file instead of stdout");
  app.add_option("--precision", cfg.precision, "Significant digits in numeric output")
      ->check(CLI::Range(3, 17))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Sweep worker threads (0 = all cores)")
      ->capture_default_str();
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");

  RatesArgs rates;
  auto* rates_cmd = app.add_subcommand("rates", "Bounds and rates of one or all cases at a point");
  rates_cmd->add_option("--case", rates.which, "1|2|3|4|all")->capture_default_str();
  auto* rates_g = rates_cmd->add_option("--g", rates.g, "Intra-cluster power gain");
  auto* rates_d = rates_cmd->add_option("--d", rates.d, "Node separation");
  rates_g->excludes(rates_d);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rates over a uniform grid of distances");
  sweep_cmd->add_option("--case", sweep_args.cases, "Comma-separated cases or 'all'")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--d-min", sweep_args.d_min, "Smallest distance")->required();
  sweep_cmd->add_option("--d-max", sweep_args.d_max, "Largest distance")->required();
  sweep_cmd->add_option("--points", sweep_args.points, "Grid points (>= 2)")->required();
  sweep_cmd
      ->add_option("--quantities", sweep_args.quantities,
                   "Comma-separated subset of Ct,Rt,Cr,Rr,Rpr,Cn or 'all' (default Ct,Rt,Cr,Rr,Cn)")
      ->delimiter(',');

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check the rate ordering for g > 2 and closed forms against numeric optimization");
  verify_cmd->add_flag("--ordering", verify_args.ordering, "Check the rate ordering chain");
  verify_cmd->add_flag("--oracle", verify_args.oracle,
                       "Check closed forms on the fixed g x P lattice (P in {1, 20, 100})");
  verify_cmd->add_option("--g-samples", verify_args.g_samples, "Log-spaced g samples in (2, 1e4]")
      ->capture_default_str();

  RecommendArgs rec_args;
  auto* rec_cmd = app.add_subcommand("recommend", "Best cooperation strategy for a case");
  rec_cmd->add_option("--case", rec_args.which, "1|2|3|4")->required();
  auto* rec_g = rec_cmd->add_option("--g", rec_args.g, "Intra-cluster power gain");
  auto* rec_d = rec_cmd->add_option("--d", rec_args.d, "Node separation");
  rec_g->excludes(rec_d);

  CrossoverArgs cross_args;
  auto* cross_cmd = app.add_subcommand("crossover", "Gain where two rates cross");
  cross_cmd->add_option("--a", cross_args.a, "Quantity, e.g. Rt@2")->required();
  cross_cmd->add_option("--b", cross_args.b, "Quantity, e.g. Cr@2 or Cn")->required();
  cross_cmd->add_option("--g-lo", cross_args.g_lo, "Bracket lower end")->required();
  cross_cmd->add_option("--g-hi", cross_args.g_hi, "Bracket upper end")->required();
  cross_cmd->add_option("--tol", cross_args.tol, "Tolerance on g")->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("relaycoop");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  cfg.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  std::string text;
  bool verified = true;
  try {
    if (*rates_cmd) {
      text = cmd_rates(rates, cfg);
    } else if (*sweep_cmd) {
      text = cmd_sweep(sweep_args, cfg);
    } else if (*verify_cmd) {
      text = cmd_verify(verify_args, cfg, verified);
    } else if (*rec_cmd) {
      text = cmd_recommend(rec_args, cfg);
    } else if (*cross_cmd) {
      text = cmd_crossover(cross_args, cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write " << cfg.output_path << '\n';
      return kExitUsage;
    }
  }
  return verified ? kExitOk : kExitVerifyFailed;
}

}  // namespace relaycoop::cli
