// Command-line front end for the relaycoop library.
//
//   relaycoop rates     --case {1|2|3|4|all} (--g X | --d X)
//   relaycoop sweep     --case LIST --d-min X --d-max X --points N [--quantities LIST]
//   relaycoop verify    [--ordering] [--oracle] [--g-samples N]
//   relaycoop recommend --case N (--g X | --d X)
//   relaycoop crossover --a QTY@CASE --b QTY@CASE --g-lo X --g-hi X
//
// Global options (accepted before or after the subcommand): --power,
// --pathloss-exponent, --format {csv,json}, --output PATH, --precision N,
// --threads N, --config FILE.
//
// Exit codes: 0 success, 1 verification failure, 2 argument or domain error.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaycoop/analysis.hpp"
#include "relaycoop/capacity.hpp"

namespace relaycoop::cli {

enum class OutputFormat { Csv, Json };

struct CliConfig {
  double power = 20.0;
  double pathloss_exponent = 2.0;
  OutputFormat output_format = OutputFormat::Csv;
  std::string output_path;  // empty = standard output
  int precision = 9;        // significant digits, [3, 17]
  unsigned threads = 0;     // sweep workers; 0 = hardware concurrency
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// One output record: a SweepRow whose distance and case may be absent
// (distance for g == 0, case for the Cn row of `rates`).
struct Record {
  std::optional<double> d;
  double g = 0.0;
  std::optional<CaseId> case_id;
  QuantityId quantity = QuantityId::Cn;
  double rate_bits = 0.0;
  std::optional<double> alpha_star;
  std::optional<double> rho_star;
};

inline constexpr std::string_view kCsvHeader = "d,g,case,quantity,rate_bits,alpha_star,rho_star";

// printf %.{precision}g; "inf"/"nan" for non-finite values.
std::string format_number(double value, int precision);
Record to_record(const SweepRow& row);

std::string records_to_csv(const std::vector<Record>& records, int precision);
std::string records_to_json(const std::vector<Record>& records, int precision);
// Inverse of records_to_csv; throws std::invalid_argument on malformed input.
std::vector<Record> parse_records_csv(std::string_view text);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaycoop::cli
