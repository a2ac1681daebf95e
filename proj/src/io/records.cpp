#include "isoslope/records.hpp"

namespace isoslope::io {

namespace {

template <class T>
std::string joined(const std::vector<T>& values, auto&& render) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += render(values[i]);
  }
  return out;
}

std::string joined_rationals(const std::vector<Rational>& values) {
  return joined(values, [](const Rational& r) { return to_string(r); });
}

std::string joined_ints(const auto& values) {
  std::vector<long long> v(values.begin(), values.end());
  return joined(v, [](long long x) { return std::to_string(x); });
}

char separator(Format f) { return f == Format::Tsv ? '\t' : ','; }

std::string table_line(Format f, const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += separator(f);
    out += cells[i];
  }
  return out + '\n';
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

std::vector<std::string> report_cells(const hyper::SlopeReport& r) {
  return {joined_rationals(r.slopes.values),
          joined_rationals(r.gaps.gaps),
          to_string(r.gaps.max_gap),
          bool_cell(r.u_c_zero),
          bool_cell(r.u_cdual_zero),
          bool_cell(r.fast_path),
          r.fast_path ? "generic" : hyper::to_string(r.strategy),
          std::to_string(r.precision)};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::MalformedInput, std::string("record lacks field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "tsv") return Format::Tsv;
  throw Error(ErrorKind::MalformedInput, "unknown format '" + text + "'");
}

Json rationals_json(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(ErrorKind::MalformedInput, "rationals must be strings");
    out.push_back(parse_rational(v.get<std::string>()));
  }
  return out;
}

Valuation parse_valuation(std::string_view text) {
  if (text.starts_with(">=")) return Valuation::at_least(parse_rational(text.substr(2)));
  return Valuation::exact(parse_rational(text));
}

std::vector<std::uint32_t> encoding_digits(arith::Elem x, std::uint32_t p, int m) {
  std::vector<std::uint32_t> d;
  for (int i = 0; i < m; ++i) {
    d.push_back(x % p);
    x /= p;
  }
  return d;
}

void put_report(Json& out, const hyper::SlopeReport& r) {
  out["slopes"] = rationals_json(r.slopes.values);
  out["gaps"] = rationals_json(r.gaps.gaps);
  out["max_gap"] = to_string(r.gaps.max_gap);
  out["violates_small_gaps"] = r.gaps.violates_small_gaps;
  Json flags;
  flags["u_c_zero"] = r.u_c_zero;
  flags["u_cdual_zero"] = r.u_cdual_zero;
  flags["fast_path"] = r.fast_path;
  flags["strategy"] = r.fast_path ? "generic" : hyper::to_string(r.strategy);
  flags["precision_used"] = r.precision;
  out["flags"] = flags;
  Json vals = Json::array();
  for (const auto& v : r.valuations) vals.push_back(to_string(v));
  out["valuations"] = vals;
}

hyper::SlopeReport report_from_json(const Json& j) {
  hyper::SlopeReport r;
  try {
    r.slopes.values = rationals_from_json(field(j, "slopes"));
    r.gaps = hyper::gap_profile(r.slopes);
    const Json& flags = field(j, "flags");
    r.u_c_zero = field(flags, "u_c_zero").get<bool>();
    r.u_cdual_zero = field(flags, "u_cdual_zero").get<bool>();
    r.fast_path = field(flags, "fast_path").get<bool>();
    const auto strategy = field(flags, "strategy").get<std::string>();
    r.strategy = r.fast_path ? hyper::Strategy::Auto : hyper::parse_strategy(strategy);
    r.precision = field(flags, "precision_used").get<int>();
    for (const auto& v : field(j, "valuations")) r.valuations.push_back(parse_valuation(v.get<std::string>()));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("bad record: ") + e.what());
  }
  return r;
}

Json point_json(const scan::PointRecord& rec) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "point";
  j["p"] = rec.key.p;
  j["c"] = rec.key.c;
  j["degree"] = rec.key.degree;
  j["rep_dlog"] = rec.key.rep_dlog;
  j["x"] = rec.x;
  j["x_coeffs"] = encoding_digits(rec.x, rec.key.p, rec.key.degree);
  put_report(j, rec.report);
  return j;
}

scan::PointRecord point_from_json(const Json& j) {
  scan::PointRecord rec;
  try {
    if (field(j, "schema_version").get<std::string>() != kSchemaVersion) {
      throw Error(ErrorKind::MalformedInput, "unsupported schema_version");
    }
    rec.key.p = field(j, "p").get<std::uint32_t>();
    rec.key.c = field(j, "c").get<std::vector<int>>();
    rec.key.degree = field(j, "degree").get<int>();
    rec.key.rep_dlog = field(j, "rep_dlog").get<std::uint64_t>();
    rec.x = field(j, "x").get<arith::Elem>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("bad point record: ") + e.what());
  }
  rec.report = report_from_json(j);
  rec.report.x = rec.x;
  rec.report.degree = rec.key.degree;
  return rec;
}

Json slopes_record(const SlopesRequest& req, const hyper::SlopeReport& report, long timing_ms) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "slopes";
  Json echo;
  echo["p"] = req.p;
  echo["c"] = req.c;
  echo["m"] = req.m;
  echo["x"] = report.x;
  echo["strategy"] = hyper::to_string(req.strategy);
  if (req.precision) {
    echo["precision"] = *req.precision;
  } else {
    echo["precision"] = "auto";
  }
  j["request"] = echo;
  j["x_coeffs"] = encoding_digits(report.x, req.p, req.m);
  put_report(j, report);
  j["timing_ms"] = timing_ms;
  return j;
}

Json scan_report_json(const scan::CounterexampleReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "scan_report";
  Json fam;
  fam["kind"] = scan::to_string(rep.spec.kind);
  fam["p_range"] = {rep.spec.p_lo, rep.spec.p_hi};
  fam["m_max"] = rep.spec.m_max;
  if (rep.spec.kind == scan::FamilyKind::Explicit) fam["c"] = rep.spec.c;
  j["family"] = fam;

  std::size_t points = 0;
  Json data = Json::array();
  for (const auto& d : rep.data) {
    Json dj;
    dj["p"] = d.datum.p();
    dj["c"] = std::vector<int>(d.datum.c().begin(), d.datum.c().end());
    dj["self_dual"] = d.datum.is_self_dual();
    Json pts = Json::array();
    for (const auto& rec : d.points) {
      Json pj;
      pj["degree"] = rec.key.degree;
      pj["rep_dlog"] = rec.key.rep_dlog;
      pj["x"] = rec.x;
      pj["x_coeffs"] = encoding_digits(rec.x, rec.key.p, rec.key.degree);
      put_report(pj, rec.report);
      pts.push_back(pj);
    }
    points += d.points.size();
    dj["points"] = pts;
    if (d.triple_gap) {
      Json tg;
      tg["c3"] = d.triple_gap->c3;
      tg["expected_x"] = d.triple_gap->expected;
      tg["found_x"] = d.triple_gap->found;
      tg["top_slope_is_two"] = d.triple_gap->top_slope_is_two;
      tg["passed"] = d.triple_gap->passed;
      dj["triple_gap"] = tg;
    }
    data.push_back(dj);
  }
  j["data"] = data;

  Json viol = Json::array();
  std::size_t published = 0;
  for (const auto& v : rep.violations) {
    Json vj;
    vj["p"] = v.key.p;
    vj["c"] = v.key.c;
    vj["degree"] = v.key.degree;
    vj["x"] = v.x;
    vj["x_coeffs"] = encoding_digits(v.x, v.key.p, v.key.degree);
    vj["max_gap"] = to_string(v.max_gap);
    vj["status"] = scan::to_string(v.status);
    if (v.status == scan::ViolationStatus::Published) ++published;
    viol.push_back(vj);
  }
  j["violations"] = viol;

  Json summary;
  summary["data"] = rep.data.size();
  summary["points"] = points;
  summary["violations"] = rep.violations.size();
  summary["published"] = published;
  summary["discovery"] = rep.violations.size() - published;
  if (rep.spec.kind == scan::FamilyKind::TripleGap) summary["triple_gap_all_passed"] = rep.triple_gap_all_passed;
  j["summary"] = summary;
  return j;
}

Json error_json(const Error& e) {
  Json err;
  err["kind"] = std::string(to_string(e.kind()));
  err["message"] = e.what();
  if (e.suggested_precision()) err["suggested_precision"] = *e.suggested_precision();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "error";
  j["error"] = err;
  return j;
}

std::string slopes_table_header(Format f) {
  return table_line(f, {"p", "c", "m", "x", "x_coeffs", "slopes", "gaps", "max_gap", "u_c_zero", "u_cdual_zero",
                        "fast_path", "strategy", "precision_used", "timing_ms"});
}

std::string slopes_table_row(Format f, const SlopesRequest& req, const hyper::SlopeReport& report,
                             long timing_ms) {
  std::vector<std::string> cells{std::to_string(req.p), joined_ints(req.c), std::to_string(req.m),
                                 std::to_string(report.x), joined_ints(encoding_digits(report.x, req.p, req.m))};
  for (auto& cell : report_cells(report)) cells.push_back(std::move(cell));
  cells.push_back(std::to_string(timing_ms));
  return table_line(f, cells);
}

std::string scan_table(Format f, const scan::CounterexampleReport& rep) {
  std::string out = table_line(f, {"p", "c", "degree", "rep_dlog", "x", "x_coeffs", "slopes", "gaps", "max_gap",
                                   "u_c_zero", "u_cdual_zero", "fast_path", "strategy", "precision_used",
                                   "status"});
  for (const auto& d : rep.data) {
    for (const auto& rec : d.points) {
      std::vector<std::string> cells{std::to_string(rec.key.p), joined_ints(rec.key.c),
                                     std::to_string(rec.key.degree), std::to_string(rec.key.rep_dlog),
                                     std::to_string(rec.x),
                                     joined_ints(encoding_digits(rec.x, rec.key.p, rec.key.degree))};
      for (auto& cell : report_cells(rec.report)) cells.push_back(std::move(cell));
      std::string status;
      if (rec.report.gaps.violates_small_gaps) {
        status = scan::to_string(scan::is_published(d.datum, rec) ? scan::ViolationStatus::Published
                                                                  : scan::ViolationStatus::Discovery);
      }
      cells.push_back(status);
      out += table_line(f, cells);
    }
  }
  return out;
}

}  // namespace isoslope::io
