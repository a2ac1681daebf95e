// isoslope: command-line driver.
//
// Exit codes: 0 success, 2 mathematical error (structured JSON on stdout),
// 64 usage error, 130 interrupted scan (checkpoint flushed).

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isoslope/coweight.hpp"
#include "isoslope/error.hpp"
#include "isoslope/hyper.hpp"
#include "isoslope/records.hpp"
#include "isoslope/scan.hpp"

namespace {

using namespace isoslope;
using io::Json;

constexpr int kExitMath = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop.store(true); }

// Raised while interpreting arguments; maps to exit 64.
struct UsageError : Error {
  using Error::Error;
  explicit UsageError(const Error& e) : Error(e) {}
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(ErrorKind::MalformedInput, what + ": '" + s + "' is not an integer");
  return v;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) out.push_back(static_cast<int>(parse_long(s, what)));
  if (out.empty()) throw UsageError(ErrorKind::MalformedInput, what + " is empty");
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  try {
    for (const auto& s : split(text, ',')) out.push_back(parse_rational(s));
  } catch (const Error& e) {
    throw UsageError(e);
  }
  return out;
}

Rational parse_rational_arg(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error& e) {
    throw UsageError(e);
  }
}

void require_prime(std::uint32_t p) {
  if (!arith::is_prime(p)) throw UsageError(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

hyper::HypergeometricDatum make_datum(std::uint32_t p, const std::vector<int>& c) {
  require_prime(p);
  try {
    return {p, c};
  } catch (const Error& e) {
    throw UsageError(e);
  }
}

// --x accepts an encoded integer or comma-separated coefficients, lowest first.
arith::Elem parse_point(const std::string& text, const arith::ExtField& field) {
  if (text.find(',') == std::string::npos) {
    const long v = parse_long(text, "--x");
    if (v < 0 || static_cast<std::uint64_t>(v) >= field.order()) {
      throw UsageError(ErrorKind::MalformedInput, "--x must lie in [0, " + std::to_string(field.order()) + ")");
    }
    return static_cast<arith::Elem>(v);
  }
  const auto coeffs = parse_int_list(text, "--x");
  if (static_cast<int>(coeffs.size()) > field.degree()) {
    throw UsageError(ErrorKind::MalformedInput, "--x has more coefficients than the degree");
  }
  std::vector<std::uint32_t> digits;
  for (int v : coeffs) {
    if (v < 0 || static_cast<std::uint32_t>(v) >= field.p()) {
      throw UsageError(ErrorKind::MalformedInput, "--x coefficients must lie in [0, p)");
    }
    digits.push_back(static_cast<std::uint32_t>(v));
  }
  return field.from_coeffs(digits);
}

template <class Fn>
auto as_usage(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    // Hitting the table cap is a resource limit, not a bad flag.
    if (e.kind() == ErrorKind::DegreeTooLarge) throw;
    throw UsageError(e);
  }
}

void print(const Json& j) { std::cout << j.dump() << '\n'; }

// ---------------------------------------------------------------------------

struct SlopesArgs {
  std::uint32_t p = 0;
  std::string c;
  std::string x;
  int m = 1;
  std::string strategy = "auto";
  std::string precision = "auto";
  std::string format = "json";
  int threads = 0;
};

int run_slopes(const SlopesArgs& a) {
  const auto datum = make_datum(a.p, parse_int_list(a.c, "--c"));
  if (a.m < 1) throw UsageError(ErrorKind::MalformedInput, "--m must be >= 1");
  io::SlopesRequest req;
  req.p = a.p;
  req.c.assign(datum.c().begin(), datum.c().end());
  req.m = a.m;
  req.strategy = as_usage([&] { return hyper::parse_strategy(a.strategy); });
  if (a.precision != "auto") {
    const long n = parse_long(a.precision, "--precision");
    if (n < 1) throw UsageError(ErrorKind::MalformedInput, "--precision must be >= 1");
    req.precision = static_cast<int>(n);
  }
  const auto format = as_usage([&] { return io::parse_format(a.format); });

  hyper::Workspace ws(a.threads);
  const auto field = as_usage([&] { return ws.field(a.p, a.m); });
  std::vector<arith::Elem> points;
  if (!a.x.empty()) {
    const auto x = parse_point(a.x, *field);
    points.push_back(as_usage([&] { return hyper::PointSpec::canonical(field, x).x(); }));
  } else {
    points = scan::closed_points(*field);
  }

  hyper::SlopeOptions opts;
  opts.strategy = req.strategy;
  opts.precision = req.precision;
  if (format != io::Format::Json) std::cout << io::slopes_table_header(format);
  for (arith::Elem x : points) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = hyper::slopes_at_point(datum, hyper::PointSpec(field, x), opts, &ws);
    const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (format == io::Format::Json) {
      print(io::slopes_record(req, report, ms));
    } else {
      std::cout << io::slopes_table_row(format, req, report, ms);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  std::string family;
  std::string p_range;
  std::string c;
  int m_max = 1;
  std::string checkpoint;
  int workers = 0;
  std::string format = "json";
  std::string out;
  std::string strategy = "auto";
};

int run_scan(const ScanArgs& a) {
  scan::FamilySpec spec;
  spec.kind = as_usage([&] { return scan::parse_family(a.family); });
  const auto dots = a.p_range.find("..");
  if (dots == std::string::npos) throw UsageError(ErrorKind::MalformedInput, "--p-range must look like a..b");
  const long lo = parse_long(a.p_range.substr(0, dots), "--p-range");
  const long hi = parse_long(a.p_range.substr(dots + 2), "--p-range");
  if (lo < 2 || hi < lo) throw UsageError(ErrorKind::MalformedInput, "--p-range needs 2 <= a <= b");
  spec.p_lo = static_cast<std::uint32_t>(lo);
  spec.p_hi = static_cast<std::uint32_t>(hi);
  spec.m_max = a.m_max;
  if (a.m_max < 1) throw UsageError(ErrorKind::MalformedInput, "--m-max must be >= 1");
  if (spec.kind == scan::FamilyKind::Explicit) {
    if (a.c.empty()) throw UsageError(ErrorKind::MalformedInput, "--family explicit needs --c");
    spec.c = parse_int_list(a.c, "--c");
  } else if (!a.c.empty()) {
    throw UsageError(ErrorKind::MalformedInput, "--c only applies to --family explicit");
  }
  const auto format = as_usage([&] { return io::parse_format(a.format); });

  scan::ScanOptions opts;
  opts.workers = a.workers;
  opts.stop = &g_stop;
  opts.slope.strategy = as_usage([&] { return hyper::parse_strategy(a.strategy); });
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;

  std::string out_path = a.out;
  if (out_path.empty()) out_path = format == io::Format::Json ? "scan_report.json" : "scan_report." + a.format;

  std::signal(SIGINT, on_sigint);
  const auto report = scan::scan_family(spec, opts);
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + out_path);
  if (format == io::Format::Json) {
    out << io::scan_report_json(report).dump(2) << '\n';
  } else {
    out << io::scan_table(format, report);
  }
  std::cout << scan::summarize(report) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct HeckeArgs {
  int n = 0;
  std::string t_vals;
  bool pgl3 = false;
};

int run_hecke(const HeckeArgs& a) {
  if (a.n < 1) throw UsageError(ErrorKind::MalformedInput, "--n must be >= 1");
  const auto t = parse_rational_list(a.t_vals);
  if (static_cast<int>(t.size()) != a.n) {
    throw UsageError(ErrorKind::MalformedInput, "--t-vals needs exactly n = " + std::to_string(a.n) + " values");
  }
  if (a.pgl3 && a.n != 3) throw UsageError(ErrorKind::MalformedInput, "--pgl3 needs n = 3");
  const auto newt = coweight::hecke_newton(t);
  const auto slopes = coweight::newton_to_slopes(newt, t.back());
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["kind"] = "hecke";
  j["request"] = {{"n", a.n}, {"t_vals", io::rationals_json(t)}};
  j["newt"] = io::rationals_json(newt.values);
  j["slopes"] = io::rationals_json(slopes.values);
  if (a.pgl3) j["region"] = coweight::to_string(coweight::pgl3_region(t[0], t[1]));
  print(j);
  return 0;
}

// ---------------------------------------------------------------------------

coweight::RootDatum parse_type(const std::string& text) {
  if (text.starts_with("cartan:")) {
    std::ifstream in(text.substr(7));
    if (!in) throw UsageError(ErrorKind::MalformedInput, "cannot read " + text.substr(7));
    coweight::IntMatrix a;
    for (std::string line; std::getline(in, line);) {
      for (char& ch : line) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream row(line);
      std::vector<int> r;
      for (std::string tok; row >> tok;) r.push_back(static_cast<int>(parse_long(tok, "Cartan entry")));
      if (!r.empty()) a.push_back(std::move(r));
    }
    return as_usage([&] { return coweight::RootDatum::from_cartan(a); });
  }
  if (text.size() > 2 && (text.starts_with("GL") || text.starts_with("SL"))) {
    const long n = parse_long(text.substr(2), "--type");
    if (n < 1 || n > 64) throw UsageError(ErrorKind::MalformedInput, "--type rank must lie in [1, 64]");
    return text.starts_with("GL") ? coweight::RootDatum::gl(static_cast<int>(n))
                                  : coweight::RootDatum::sl(static_cast<int>(n));
  }
  throw UsageError(ErrorKind::MalformedInput, "--type must be GLn, SLn or cartan:<file>");
}

struct CoweightArgs {
  std::string type;
  std::string coweight;
  std::string a;
  std::string b;
  std::string r;
  std::string s;
  int i = 0;
  int n = 0;
};

Json coweight_header(const std::string& op) {
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["kind"] = "coweight";
  j["op"] = op;
  return j;
}

int run_small_gaps(const CoweightArgs& a) {
  const auto datum = parse_type(a.type);
  const coweight::RationalCoweight lambda{parse_rational_list(a.coweight)};
  as_usage([&] { coweight::require_member(lambda, datum); });
  const auto res = coweight::small_gaps(lambda, datum);
  Json j = coweight_header("small-gaps");
  j["request"] = {{"type", datum.describe()}, {"coweight", io::rationals_json(lambda.coords)}};
  j["pairings"] = io::rationals_json(coweight::simple_pairings(lambda, datum));
  j["small_gaps"] = res.holds;
  j["violating"] = res.violating;
  j["i_le1"] = res.i_le1;
  j["levi_is_whole_group"] = res.levi_is_whole_group();
  print(j);
  return 0;
}

int run_rho(const CoweightArgs& a) {
  const auto datum = parse_type(a.type);
  const auto rho = coweight::rho_check(datum);
  Json j = coweight_header("rho");
  j["request"] = {{"type", datum.describe()}};
  j["rho_check"] = io::rationals_json(rho.coords);
  print(j);
  return 0;
}

int run_leq(const CoweightArgs& a) {
  const auto datum = parse_type(a.type);
  const coweight::RationalCoweight l1{parse_rational_list(a.a)};
  const coweight::RationalCoweight l2{parse_rational_list(a.b)};
  const auto k = coweight::coroot_coordinates(l1, l2, datum);
  Json j = coweight_header("leq");
  j["request"] = {{"type", datum.describe()}, {"a", io::rationals_json(l1.coords)}, {"b", io::rationals_json(l2.coords)}};
  j["coroot_coefficients"] = io::rationals_json(k);
  j["leq"] = std::all_of(k.begin(), k.end(), [](const Rational& x) { return x >= 0; });
  print(j);
  return 0;
}

int run_cohinterval(const CoweightArgs& a) {
  const Rational r = parse_rational_arg(a.r);
  const Rational s = parse_rational_arg(a.s);
  const auto iv = as_usage([&] { return coweight::cohomology_slope_interval(r, s, a.i, a.n); });
  Json j = coweight_header("cohinterval");
  j["request"] = {{"r", to_string(r)}, {"s", to_string(s)}, {"i", a.i}, {"n", a.n}};
  j["interval"] = {to_string(iv.lo), to_string(iv.hi)};
  print(j);
  return 0;
}

int report_error(const Error& e, int code) {
  print(io::error_json(e));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton slopes of hypergeometric local systems and coweight tools"};
  app.require_subcommand(1);

  SlopesArgs sa;
  auto* slopes = app.add_subcommand("slopes", "slopes at closed points of one datum");
  slopes->add_option("--p", sa.p, "prime")->required();
  slopes->add_option("--c", sa.c, "comma-separated exponents")->required();
  slopes->add_option("--x", sa.x, "point: integer encoding or coefficients a0,a1,...");
  slopes->add_option("--m", sa.m, "point degree")->capture_default_str();
  slopes->add_option("--strategy", sa.strategy, "auto|full|det|selfdual|dualpair")->capture_default_str();
  slopes->add_option("--precision", sa.precision, "p-adic precision N or auto")->capture_default_str();
  slopes->add_option("--format", sa.format, "json|csv|tsv")->capture_default_str();
  slopes->add_option("--threads", sa.threads, "OpenMP threads for trace kernels (0: default)");

  ScanArgs sc;
  auto* scanc = app.add_subcommand("scan", "scan a family for gap violations");
  scanc->add_option("--family", sc.family, "quintic|triplegap|explicit")->required();
  scanc->add_option("--p-range", sc.p_range, "inclusive prime range a..b")->required();
  scanc->add_option("--c", sc.c, "exponents for --family explicit");
  scanc->add_option("--m-max", sc.m_max, "largest point degree")->capture_default_str();
  scanc->add_option("--checkpoint", sc.checkpoint, "append-only NDJSON checkpoint; resumed if present");
  scanc->add_option("--workers", sc.workers, "worker threads (0: default)");
  scanc->add_option("--format", sc.format, "report format json|csv|tsv")->capture_default_str();
  scanc->add_option("--out", sc.out, "report path (default scan_report.<format>)");
  scanc->add_option("--strategy", sc.strategy, "auto|full|det|selfdual|dualpair")->capture_default_str();

  HeckeArgs ha;
  auto* hecke = app.add_subcommand("hecke", "Newton function and slopes from Hecke eigenvalue valuations");
  hecke->add_option("--n", ha.n, "rank")->required();
  hecke->add_option("--t-vals", ha.t_vals, "v(t_1),...,v(t_n) as rationals")->required();
  hecke->add_flag("--pgl3", ha.pgl3, "classify (v(t_1), v(t_2)) in the PGL(3) regions");

  CoweightArgs ca;
  auto* cow = app.add_subcommand("coweight", "root datum calculus");
  cow->require_subcommand(1);
  auto* sg = cow->add_subcommand("small-gaps", "small-gaps test of a dominant coweight");
  sg->add_option("--type", ca.type, "GLn|SLn|cartan:<file>")->required();
  sg->add_option("--coweight", ca.coweight, "comma-separated rationals")->required();
  auto* rho = cow->add_subcommand("rho", "half the sum of the positive coroots");
  rho->add_option("--type", ca.type, "SLn|cartan:<file>")->required();
  auto* leq = cow->add_subcommand("leq", "dominance order a <= b");
  leq->add_option("--type", ca.type, "GLn|SLn|cartan:<file>")->required();
  leq->add_option("--a", ca.a, "comma-separated rationals")->required();
  leq->add_option("--b", ca.b, "comma-separated rationals")->required();
  auto* coh = cow->add_subcommand("cohinterval", "slope interval of H^i");
  coh->add_option("--r", ca.r, "lower slope bound")->required();
  coh->add_option("--s", ca.s, "upper slope bound")->required();
  coh->add_option("--i", ca.i, "cohomological degree")->required();
  coh->add_option("--n", ca.n, "dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*slopes) return run_slopes(sa);
    if (*scanc) return run_scan(sc);
    if (*hecke) return run_hecke(ha);
    if (*sg) return run_small_gaps(ca);
    if (*rho) return run_rho(ca);
    if (*leq) return run_leq(ca);
    if (*coh) return run_cohinterval(ca);
  } catch (const UsageError& e) {
    return report_error(e, kExitUsage);
  } catch (const Error& e) {
    return report_error(e, e.kind() == ErrorKind::Interrupted ? kExitInterrupted : kExitMath);
  }
  return kExitUsage;
}
