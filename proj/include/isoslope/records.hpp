#pragma once

// Machine-readable records (schema_version "1"). Rationals are always
// serialized as "num/den" strings.

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"
#include "isoslope/scan.hpp"

namespace isoslope::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

enum class Format { Json, Csv, Tsv };
Format parse_format(const std::string& text);  // json|csv|tsv

Json rationals_json(const std::vector<Rational>& values);
std::vector<Rational> rationals_from_json(const Json& j);
Valuation parse_valuation(std::string_view text);  // inverse of to_string(Valuation)

// Base-p digits of an encoded element, lowest first, padded to m digits.
std::vector<std::uint32_t> encoding_digits(arith::Elem x, std::uint32_t p, int m);

// Slopes, gaps and flags of a report, without the point identity.
void put_report(Json& out, const hyper::SlopeReport& report);
hyper::SlopeReport report_from_json(const Json& j);

Json point_json(const scan::PointRecord& record);
scan::PointRecord point_from_json(const Json& j);  // throws MalformedInput

struct SlopesRequest {
  std::uint32_t p = 0;
  std::vector<int> c;
  int m = 1;
  hyper::Strategy strategy = hyper::Strategy::Auto;
  std::optional<int> precision;  // nullopt: auto
};

Json slopes_record(const SlopesRequest& request, const hyper::SlopeReport& report, long timing_ms);
Json scan_report_json(const scan::CounterexampleReport& report);
Json error_json(const Error& error);

// Delimited tables; list-valued cells are joined with ';'.
std::string slopes_table_header(Format format);
std::string slopes_table_row(Format format, const SlopesRequest& request, const hyper::SlopeReport& report,
                             long timing_ms);
std::string scan_table(Format format, const scan::CounterexampleReport& report);

}  // namespace isoslope::io
