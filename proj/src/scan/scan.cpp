#include "isoslope/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>

#include "isoslope/error.hpp"
#include "isoslope/records.hpp"

namespace isoslope::scan {

namespace {

using hyper::HypergeometricDatum;

PointKey key_of(const HypergeometricDatum& datum, const arith::ExtField& field, arith::Elem x) {
  return {datum.p(), std::vector<int>(datum.c().begin(), datum.c().end()), field.degree(), field.dlog(x)};
}

std::map<PointKey, PointRecord> load_checkpoint(const std::optional<std::filesystem::path>& path,
                                                const HypergeometricDatum& datum) {
  std::map<PointKey, PointRecord> out;
  if (!path || !std::filesystem::exists(*path)) return out;
  std::ifstream in(*path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  const std::vector<int> c(datum.c().begin(), datum.c().end());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    io::Json j = io::Json::parse(lines[i], nullptr, false);
    if (j.is_discarded()) {
      // A crash can leave a torn final line; anything earlier is corruption.
      if (i + 1 == lines.size()) break;
      throw Error(ErrorKind::MalformedInput, path->string() + ": unreadable checkpoint line " + std::to_string(i + 1));
    }
    PointRecord rec = io::point_from_json(j);
    if (rec.key.p == datum.p() && rec.key.c == c) out.emplace(rec.key, std::move(rec));
  }
  return out;
}

class CheckpointWriter {
 public:
  explicit CheckpointWriter(const std::optional<std::filesystem::path>& path) {
    if (!path) return;
    out_.open(*path, std::ios::app);
    if (!out_) throw Error(ErrorKind::MalformedInput, "cannot open checkpoint " + path->string());
  }

  void append(const PointRecord& rec) {
    if (!out_.is_open()) return;
    const std::string line = io::point_json(rec).dump() + '\n';
    std::lock_guard lock(mutex_);
    out_ << line;
    out_.flush();
  }

 private:
  std::ofstream out_;
  std::mutex mutex_;
};

bool takes_fast_path(const HypergeometricDatum& datum, const hyper::PointSpec& point,
                     const hyper::SlopeOptions& opts) {
  return opts.allow_fast_path && datum.rank() <= 3 && hyper::u_norm_eval(datum, point) != 0 &&
         hyper::u_norm_eval(hyper::dual_datum(datum), point) != 0;
}

// Builds every trace table the points of degree m will read, so the
// per-point loop only does lookups.
void prebuild_tables(const HypergeometricDatum& datum, int m, const hyper::SlopeOptions& opts,
                     hyper::Workspace& ws) {
  const auto strategy = hyper::resolve_strategy(opts.strategy, datum);
  if (strategy == hyper::Strategy::SelfDual && !datum.is_self_dual()) return;
  if (datum.p() <= static_cast<std::uint32_t>(datum.rank())) return;
  const int n = datum.rank();
  const int precision = opts.precision.value_or(hyper::default_precision(strategy, n, m));
  for (int j = 1; j <= hyper::traces_needed(strategy, n); ++j) {
    ws.traces(datum, m * j, m, precision);
    if (strategy == hyper::Strategy::DualPair) ws.traces(hyper::dual_datum(datum), m * j, m, precision);
  }
}

arith::Elem triple_gap_point(std::uint32_t p, int c3) {
  const arith::PrimeField fp(p);
  return fp.sub(0, fp.inv(fp.mul(2, static_cast<std::uint32_t>(c3))));
}

struct Member {
  HypergeometricDatum datum;
  std::optional<int> c3;
};

std::vector<Member> family_members(const FamilySpec& spec) {
  if (spec.p_lo > spec.p_hi) throw Error(ErrorKind::MalformedInput, "empty prime range");
  if (spec.m_max < 1) throw Error(ErrorKind::MalformedInput, "m_max must be >= 1");
  std::vector<Member> out;
  for (std::uint32_t p = std::max<std::uint32_t>(spec.p_lo, 3); p <= spec.p_hi; ++p) {
    if (!arith::is_prime(p)) continue;
    switch (spec.kind) {
      case FamilyKind::Quintic: {
        if (p % 5 != 1) break;
        std::vector<int> c;
        for (int i = 1; i <= 4; ++i) c.push_back(i * static_cast<int>(p - 1) / 5);
        out.push_back({HypergeometricDatum(p, c), std::nullopt});
        break;
      }
      case FamilyKind::TripleGap: {
        if (p < 5) break;
        const int pi = static_cast<int>(p);
        for (int c3 = 1; c3 <= pi - 2; ++c3) {
          if (2 * c3 == pi - 1) continue;
          out.push_back({HypergeometricDatum(p, {1, pi - 2, c3}), c3});
        }
        break;
      }
      case FamilyKind::Explicit: {
        if (spec.c.empty()) throw Error(ErrorKind::MalformedInput, "explicit family needs c");
        const bool fits = std::all_of(spec.c.begin(), spec.c.end(),
                                      [p](int ci) { return ci >= 1 && ci <= static_cast<int>(p) - 2; });
        if (fits) out.push_back({HypergeometricDatum(p, spec.c), std::nullopt});
        break;
      }
    }
  }
  return out;
}

// For c = (1, p-2, c3) up to order, returns c3.
std::optional<int> triple_gap_c3(const HypergeometricDatum& datum) {
  if (datum.rank() != 3 || datum.p() < 5) return std::nullopt;
  std::vector<int> c(datum.c().begin(), datum.c().end());
  const int p = static_cast<int>(datum.p());
  for (int target : {1, p - 2}) {
    auto it = std::find(c.begin(), c.end(), target);
    if (it == c.end()) return std::nullopt;
    c.erase(it);
  }
  if (2 * c[0] == p - 1) return std::nullopt;
  return c[0];
}

}  // namespace

std::vector<arith::Elem> closed_points(const arith::ExtField& field) {
  std::vector<arith::Elem> out;
  const int m = field.degree();
  for (std::uint64_t x = 2; x < field.order(); ++x) {
    const auto e = static_cast<arith::Elem>(x);
    if (m > 1 && (field.degree_of(e) != m || field.canonical(e) != e)) continue;
    out.push_back(e);
  }
  return out;
}

std::vector<PointRecord> scan_points(const HypergeometricDatum& datum, int m_max, const ScanOptions& options,
                                     hyper::Workspace* workspace) {
  if (m_max < 1) throw Error(ErrorKind::MalformedInput, "m_max must be >= 1");
  hyper::Workspace local(options.workers);
  hyper::Workspace& ws = workspace ? *workspace : local;
  const auto done = load_checkpoint(options.checkpoint, datum);
  CheckpointWriter writer(options.checkpoint);
  const int nthreads = options.workers > 0 ? options.workers : omp_get_max_threads();

  std::vector<PointRecord> out;
  for (int m = 1; m <= m_max; ++m) {
    const auto field = ws.field(datum.p(), m);
    const auto points = closed_points(*field);
    std::vector<std::optional<PointRecord>> results(points.size());
    std::vector<std::size_t> todo;
    bool need_tables = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const PointKey key = key_of(datum, *field, points[i]);
      if (auto it = done.find(key); it != done.end()) {
        results[i] = it->second;
        continue;
      }
      todo.push_back(i);
      if (!need_tables && !takes_fast_path(datum, hyper::PointSpec(field, points[i]), options.slope)) {
        need_tables = true;
      }
    }
    if (need_tables) prebuild_tables(datum, m, options.slope, ws);

    std::vector<std::exception_ptr> errors(todo.size());
    const auto count = static_cast<std::int64_t>(todo.size());
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (nthreads > 1 && count > 1)
    for (std::int64_t k = 0; k < count; ++k) {
      if (options.stop && options.stop->load()) continue;
      const std::size_t i = todo[k];
      try {
        const hyper::PointSpec point(field, points[i]);
        PointRecord rec{key_of(datum, *field, points[i]), points[i],
                        hyper::slopes_at_point(datum, point, options.slope, &ws)};
        writer.append(rec);
        results[i] = std::move(rec);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    const auto missing = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r; });
    if (missing > 0) {
      throw Error(ErrorKind::Interrupted, "interrupted with " + std::to_string(missing) + " points of " +
                                              datum.describe() + " left at degree " + std::to_string(m));
    }
    for (auto& r : results) out.push_back(std::move(*r));
  }
  return out;
}

TripleGapCheck triple_gap_from_records(std::uint32_t p, int c3, const std::vector<PointRecord>& records) {
  TripleGapCheck check;
  check.p = p;
  check.c3 = c3;
  check.expected = triple_gap_point(p, c3);
  for (const auto& rec : records) {
    if (rec.key.degree != 1) continue;
    const auto& a = rec.report.slopes.values;
    if (a.size() >= 2 && a[0] - a[1] > 1) check.found.push_back(rec.x);
    if (rec.x == check.expected) check.top_slope_is_two = !a.empty() && a[0] == 2;
  }
  check.passed = check.found == std::vector<arith::Elem>{check.expected};
  return check;
}

TripleGapCheck check_triple_gap(std::uint32_t p, int c3, const ScanOptions& options, hyper::Workspace* workspace) {
  if (!arith::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p < 5) throw Error(ErrorKind::PrimeTooSmall, "c = (1, p-2, c3) needs p >= 5");
  const int pi = static_cast<int>(p);
  if (c3 < 1 || c3 > pi - 2 || 2 * c3 == pi - 1) {
    throw Error(ErrorKind::InvalidC3, "c3 = " + std::to_string(c3) + " must lie in [1, " + std::to_string(pi - 2) +
                                          "] and differ from " + std::to_string((pi - 1) / 2));
  }
  const HypergeometricDatum datum(p, {1, pi - 2, c3});
  return triple_gap_from_records(p, c3, scan_points(datum, 1, options, workspace));
}

bool verify_triple_gap(std::uint32_t p, int c3) { return check_triple_gap(p, c3).passed; }

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Quintic: return "quintic";
    case FamilyKind::TripleGap: return "triplegap";
    case FamilyKind::Explicit: return "explicit";
  }
  return "explicit";
}

FamilyKind parse_family(const std::string& text) {
  if (text == "quintic") return FamilyKind::Quintic;
  if (text == "triplegap") return FamilyKind::TripleGap;
  if (text == "explicit") return FamilyKind::Explicit;
  throw Error(ErrorKind::MalformedInput, "unknown family '" + text + "'");
}

std::vector<HypergeometricDatum> family_data(const FamilySpec& spec) {
  std::vector<HypergeometricDatum> out;
  for (auto& member : family_members(spec)) out.push_back(std::move(member.datum));
  return out;
}

std::string to_string(ViolationStatus status) {
  return status == ViolationStatus::Published ? "published" : "discovery";
}

bool is_published(const HypergeometricDatum& datum, const PointRecord& rec) {
  if (rec.key.degree != 1 || !rec.report.gaps.violates_small_gaps) return false;
  if (datum == HypergeometricDatum(31, {6, 12, 18, 24})) return rec.x == 4 || rec.x == 17;
  if (const auto c3 = triple_gap_c3(datum)) {
    const auto& a = rec.report.slopes.values;
    return rec.x == triple_gap_point(datum.p(), *c3) && a[0] - a[1] > 1;
  }
  return false;
}

CounterexampleReport scan_family(const FamilySpec& spec, const ScanOptions& options) {
  CounterexampleReport report;
  report.spec = spec;
  for (auto& member : family_members(spec)) {
    hyper::Workspace ws(options.workers);
    DatumScan ds{member.datum, scan_points(member.datum, spec.m_max, options, &ws), std::nullopt};
    if (member.c3) {
      ds.triple_gap = triple_gap_from_records(member.datum.p(), *member.c3, ds.points);
      report.triple_gap_all_passed = report.triple_gap_all_passed && ds.triple_gap->passed;
    }
    for (const auto& rec : ds.points) {
      if (!rec.report.gaps.violates_small_gaps) continue;
      report.violations.push_back({rec.key, rec.x, rec.report.gaps.max_gap,
                                   is_published(member.datum, rec) ? ViolationStatus::Published
                                                                   : ViolationStatus::Discovery});
    }
    report.data.push_back(std::move(ds));
  }
  return report;
}

std::string summarize(const CounterexampleReport& report) {
  std::size_t points = 0;
  for (const auto& d : report.data) points += d.points.size();
  std::string out;
  if (report.spec.kind == FamilyKind::TripleGap) {
    if (report.triple_gap_all_passed) {
      out = "all triple-gap checks passed; ";
    } else {
      out = "triple-gap checks FAILED for";
      for (const auto& d : report.data) {
        if (d.triple_gap && !d.triple_gap->passed) {
          out += " (p=" + std::to_string(d.triple_gap->p) + ", c3=" + std::to_string(d.triple_gap->c3) + ")";
        }
      }
      out += "; ";
    }
  }
  out += std::to_string(report.data.size()) + " data, " + std::to_string(points) + " points, " +
         std::to_string(report.violations.size()) + " gap violations";
  for (const auto status : {ViolationStatus::Published, ViolationStatus::Discovery}) {
    std::string list;
    for (const auto& v : report.violations) {
      if (v.status != status) continue;
      std::string item = "(" + std::to_string(v.key.p) + ", ";
      if (report.spec.kind == FamilyKind::TripleGap) {
        std::string c;
        for (int ci : v.key.c) c += (c.empty() ? "" : ",") + std::to_string(ci);
        item += "c=" + c + ", ";
      }
      item += std::to_string(v.x) + ")";
      list += (list.empty() ? "" : ", ") + item;
    }
    if (!list.empty()) out += "; " + to_string(status) + ": " + list;
  }
  return out;
}

}  // namespace isoslope::scan
