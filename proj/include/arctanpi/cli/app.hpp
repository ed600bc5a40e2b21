#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arctanpi/arctanpi.hpp"

// Command-line surface. Exit codes: 0 ok, 2 usage, 3 numeric failure,
// 4 formula verification failure.

namespace arctanpi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerify = 4;

/// Bad flags or flag combinations; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failure that is neither usage nor numeric (e.g. unwritable output).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw UsageError("--format must be text, json or csv, got '" + s + "'");
}

/// Positive count: "1000", "1e6" or "10^6".
inline std::uint64_t parse_count(const std::string& s, const std::string& flag) {
  auto fail = [&] { return UsageError(flag + " expects a positive integer, got '" + s + "'"); };
  auto digits_only = [](const std::string& t) {
    return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos && t.size() <= 19;
  };
  std::uint64_t mantissa = 0;
  std::uint64_t exponent = 0;
  std::string base = s;
  std::string power;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    base = s.substr(0, e);
    power = s.substr(e + 1);
  } else if (const auto c = s.find('^'); c != std::string::npos) {
    if (s.substr(0, c) != "10") throw fail();
    base = "1";
    power = s.substr(c + 1);
  }
  if (!digits_only(base)) throw fail();
  mantissa = std::stoull(base);
  if (!power.empty()) {
    if (!digits_only(power)) throw fail();
    exponent = std::stoull(power);
  }
  if (exponent > 19) throw fail();
  std::uint64_t value = mantissa;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (value > std::numeric_limits<std::uint64_t>::max() / 10) throw fail();
    value *= 10;
  }
  if (value == 0) throw fail();
  return value;
}

inline std::vector<std::uint64_t> parse_count_list(const std::string& s, const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(item, flag));
  if (out.empty()) throw UsageError(flag + " expects a comma-separated list");
  return out;
}

inline BigRational parse_rational_flag(const std::string& s, const std::string& flag) {
  try {
    return BigRational::parse(s);
  } catch (const InvalidArgument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

/// "name=c:b,c:b" -> formula with terms c*arctan(b).
inline PiFormula parse_formula_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--add expects name=c:b[,c:b...], got '" + spec + "'");
  std::vector<FormulaTerm> terms;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--add term '" + item + "' must be c:b");
    terms.push_back({parse_rational_flag(item.substr(0, colon), "--add"),
                     parse_rational_flag(item.substr(colon + 1), "--add")});
  }
  try {
    return PiFormula(spec.substr(0, eq), std::move(terms));
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

/// Rows of decimal strings under a header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// What a command produced: ordered scalar fields plus an optional table.
struct Report {
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  std::optional<Table> table;
};

inline std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_report(const Report& r, OutputFormat format, std::ostream& os) {
  switch (format) {
    case OutputFormat::json: {
      nlohmann::ordered_json doc = r.fields;
      if (r.table) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : r.table->rows) {
          nlohmann::ordered_json obj = nlohmann::ordered_json::object();
          for (std::size_t i = 0; i < row.size(); ++i) obj[r.table->columns[i]] = row[i];
          rows.push_back(obj);
        }
        doc["rows"] = rows;
      }
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
        os << "\n";
      };
      if (r.table) {
        emit(r.table->columns);
        for (const auto& row : r.table->rows) emit(row);
      } else {
        std::vector<std::string> keys;
        std::vector<std::string> values;
        for (const auto& [k, v] : r.fields.items()) {
          if (v.is_object()) {
            for (const auto& [pk, pv] : v.items()) {
              keys.push_back(pk);
              values.push_back(scalar_text(pv));
            }
          } else {
            keys.push_back(k);
            values.push_back(scalar_text(v));
          }
        }
        emit(keys);
        emit(values);
      }
      break;
    }
    case OutputFormat::text: {
      for (const auto& [k, v] : r.fields.items()) {
        if (v.is_object()) {
          for (const auto& [pk, pv] : v.items()) os << pk << ": " << scalar_text(pv) << "\n";
        } else {
          os << k << ": " << scalar_text(v) << "\n";
        }
      }
      if (r.table) {
        std::vector<std::size_t> widths;
        for (const auto& c : r.table->columns) widths.push_back(c.size());
        for (const auto& row : r.table->rows) {
          for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
        }
        auto emit = [&](const std::vector<std::string>& cells) {
          for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(widths[i])) << cells[i];
          }
          os << "\n";
        };
        emit(r.table->columns);
        for (const auto& row : r.table->rows) emit(row);
      }
      break;
    }
  }
}

/// Shortest decimal that round-trips the double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(const BigRational& x, int digits) { return render_digits(x, digits).to_string(); }

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Flags shared by every subcommand.
struct CommonOptions {
  int digits = 30;
  int guard = 10;
  std::string format = "text";
  std::string out;

  PrecisionContext ctx() const {
    if (digits < 1) throw UsageError("--digits must be >= 1");
    if (guard < 1) throw UsageError("--guard must be >= 1");
    if (digits > kMaxDecimalDigits) throw UsageError("--digits must be <= " + std::to_string(kMaxDecimalDigits));
    return PrecisionContext(digits, guard);
  }
};

inline EvalMode parse_mode(const std::string& name, const PrecisionContext& ctx, bool allow_binary64) {
  if (name == "exact") return ExactMode{};
  if (name == "real") return RealMode{ctx};
  if (name == "binary64" && allow_binary64) return Binary64Mode{};
  throw UsageError("unsupported --mode '" + name + "'");
}

// ---------------------------------------------------------------- commands

struct PiArgs {
  std::string method;
  std::string L;
  std::string x;
  std::string mode = "exact";
};

inline Report cmd_pi(const PiArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  const std::uint64_t L = parse_count(a.L, "--L");
  const EvalMode mode = parse_mode(a.mode, ctx, false);
  const bool asym = a.method == "asym";
  if (asym != !a.x.empty()) throw UsageError("--x is required for --method asym and only allowed there");

  Report r;
  r.fields["command"] = "pi";
  r.fields["method"] = a.method;
  r.fields["parameters"] = {{"L", L}};
  if (asym) r.fields["parameters"]["x"] = a.x;
  r.fields["parameters"]["digits"] = ctx.decimal_digits();
  r.fields["parameters"]["mode"] = a.mode;

  const Stopwatch watch;
  std::optional<ApproxValue> value;
  if (a.method == "direct") {
    value = pi_direct(L, mode);
  } else if (asym) {
    const BigRational x = parse_rational_flag(a.x, "--x");
    if (x.is_zero()) throw UsageError("--x must be nonzero for --method asym");
    value = pi_asymptotic(x, L, mode);
  } else if (a.method.rfind("formula:", 0) == 0) {
    const std::string name = a.method.substr(8);
    const PiFormula* formula = nullptr;
    for (const auto& f : builtin_formulas()) {
      if (f.name() == name) formula = &f;
    }
    if (formula == nullptr) throw UsageError("unknown formula '" + name + "'");
    value = pi_via_formula(*formula, L, mode);
  } else {
    throw UsageError("--method must be direct, asym or formula:<name>");
  }
  const DigitString digits = value->digits(ctx.decimal_digits());
  r.fields["value"] = digits.to_string();
  r.fields["digits_coinciding"] = digit_coincidence(digits, reference_pi(ctx));
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct ArctanArgs {
  std::string x;
  std::string L;
  std::string mode = "real";
};

inline Report cmd_arctan(const ArctanArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  const std::uint64_t L = parse_count(a.L, "--L");
  const BigRational x = parse_rational_flag(a.x, "--x");
  const EvalMode mode = parse_mode(a.mode, ctx, true);
  Report r;
  r.fields["command"] = "arctan";
  r.fields["method"] = "rational_approximation";
  r.fields["parameters"] = {{"L", L}, {"x", a.x}, {"digits", ctx.decimal_digits()}, {"mode", a.mode}};
  const Stopwatch watch;
  const ApproxValue v = arctan_approx(SeriesParams(L, x), mode);
  const mpfr_prec_t bits = ctx.working_bits();
  const Real ref = reference_arctan(x, ctx);
  r.fields["value"] = v.to_real(bits).to_scientific(ctx.decimal_digits());
  r.fields["reference"] = ref.to_scientific(ctx.decimal_digits());
  r.fields["epsilon"] = (ref - v.to_real(bits)).to_scientific(ctx.decimal_digits());
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct ErfArgs {
  std::string x;
  std::string L;
};

inline Report cmd_erf(const ErfArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  const std::uint64_t L = parse_count(a.L, "--L");
  const BigRational x = parse_rational_flag(a.x, "--x");
  if (x.abs() > BigRational(10)) throw UsageError("--x must satisfy |x| <= 10");
  Report r;
  r.fields["command"] = "erf";
  r.fields["method"] = "gaussian_sum";
  r.fields["parameters"] = {{"L", L}, {"x", a.x}, {"digits", ctx.decimal_digits()}};
  const Stopwatch watch;
  const Real xr(x, ctx.working_bits() + 64);
  const Real v = erf_gauss_sum(xr, L, ctx);
  const Real ref = reference_erf(xr, ctx);
  r.fields["value"] = v.to_scientific(ctx.decimal_digits());
  r.fields["reference"] = ref.to_scientific(ctx.decimal_digits());
  r.fields["error"] = (ref - v).to_scientific(ctx.decimal_digits());
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct SincArgs {
  std::string x;
  std::string L;
  std::string rule = "all";
  std::string mode = "binary64";
};

inline Report cmd_sinc(const SincArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  const std::uint64_t L = parse_count(a.L, "--L");
  const BigRational x = parse_rational_flag(a.x, "--x");
  if (a.rule != "all" && a.rule != "midpoint" && a.rule != "trapezoid" && a.rule != "simpson") {
    throw UsageError("--rule must be midpoint, trapezoid, simpson or all");
  }
  if (a.mode != "binary64" && a.mode != "real") throw UsageError("--mode must be binary64 or real");
  Report r;
  r.fields["command"] = "sinc";
  r.fields["method"] = a.rule;
  r.fields["parameters"] = {{"L", L}, {"x", a.x}, {"mode", a.mode}};
  const Stopwatch watch;
  auto want = [&](const char* rule) { return a.rule == "all" || a.rule == rule; };
  if (a.mode == "binary64") {
    const double xd = x.to_double();
    if (want("midpoint")) r.fields["midpoint"] = format_double(sinc_midpoint(xd, L));
    if (want("trapezoid")) r.fields["trapezoid"] = format_double(sinc_trapezoid(xd, L));
    if (want("simpson")) r.fields["simpson"] = format_double(sinc_simpson(xd, L));
    r.fields["reference"] = format_double(sinc_exact(xd));
  } else {
    const Real xr(x, ctx.working_bits());
    const int d = ctx.decimal_digits();
    if (want("midpoint")) r.fields["midpoint"] = sinc_midpoint(xr, L).to_scientific(d);
    if (want("trapezoid")) r.fields["trapezoid"] = sinc_trapezoid(xr, L).to_scientific(d);
    if (want("simpson")) r.fields["simpson"] = sinc_simpson(xr, L).to_scientific(d);
    r.fields["reference"] = (xr.is_zero() ? Real(1L, xr.precision()) : sin(xr) / xr).to_scientific(d);
  }
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct FigureArgs {
  int which = 1;
  std::string L;
  int points = 401;
  std::string xmin = "-10";
  std::string xmax = "10";
};

/// Uniform grid lo + (hi - lo) i / (points - 1), exact.
inline std::vector<BigRational> uniform_grid(const BigRational& lo, const BigRational& hi, int points) {
  std::vector<BigRational> xs;
  xs.reserve(static_cast<std::size_t>(points));
  const BigRational span = hi - lo;
  for (int i = 0; i < points; ++i) xs.push_back(lo + span * BigRational::from_integers(i, points - 1));
  return xs;
}

inline Report cmd_figure(const FigureArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  if (a.which != 1 && a.which != 2) throw UsageError("--which must be 1 or 2");
  if (a.points < 2) throw UsageError("--points must be >= 2");
  const std::vector<std::uint64_t> Ls =
      a.L.empty() ? (a.which == 1 ? std::vector<std::uint64_t>{100, 200, 300, 400, 500} : std::vector<std::uint64_t>{100})
                  : parse_count_list(a.L, "--L");
  const int d = ctx.decimal_digits();
  Report r;
  r.fields["command"] = "figure";
  r.fields["figure"] = a.which;
  nlohmann::ordered_json Ls_json = nlohmann::ordered_json::array();
  for (auto L : Ls) Ls_json.push_back(L);
  r.fields["parameters"] = {{"L", Ls_json}, {"points", a.points}, {"digits", d}};
  const Stopwatch watch;
  Table t;
  t.columns.push_back("x");
  if (a.which == 1) {
    const auto xs = uniform_grid(BigRational(-1), BigRational(1), a.points);
    std::vector<std::vector<ErrorPoint>> curves;
    for (auto L : Ls) {
      t.columns.push_back("epsilon_L" + std::to_string(L));
      curves.push_back(error_curve(L, xs, ctx));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<std::string> row{format_fixed(xs[i], d)};
      for (const auto& c : curves) row.push_back(c[i].epsilon.to_scientific(d));
      t.rows.push_back(std::move(row));
    }
  } else {
    if (Ls.size() != 1) throw UsageError("figure 2 takes a single --L");
    const BigRational lo = parse_rational_flag(a.xmin, "--xmin");
    const BigRational hi = parse_rational_flag(a.xmax, "--xmax");
    if (!(lo < hi)) throw UsageError("--xmin must be below --xmax");
    r.fields["parameters"]["xmin"] = a.xmin;
    r.fields["parameters"]["xmax"] = a.xmax;
    t.columns.push_back("counterpart_series");
    t.columns.push_back("arctan_reference");
    for (const auto& x : uniform_grid(lo, hi, a.points)) {
      const ApproxValue c = counterpart_approx(SeriesParams(Ls.front(), x), RealMode{ctx});
      t.rows.push_back({format_fixed(x, d), c.to_real(ctx.working_bits()).to_scientific(d),
                        reference_arctan(x, ctx).to_scientific(d)});
    }
  }
  r.table = std::move(t);
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct ConvergeArgs {
  std::string x = "1";
  std::string L;
  std::string mode = "exact";
};

inline Report cmd_converge(const ConvergeArgs& a, const CommonOptions& common) {
  const PrecisionContext ctx = common.ctx();
  const BigRational x = parse_rational_flag(a.x, "--x");
  if (x.is_zero()) throw UsageError("--x must be nonzero");
  const auto Ls = parse_count_list(a.L, "--L");
  for (std::size_t i = 1; i < Ls.size(); ++i) {
    if (Ls[i] <= Ls[i - 1]) throw UsageError("--L values must be strictly ascending");
  }
  const EvalMode mode = parse_mode(a.mode, ctx, false);
  Report r;
  r.fields["command"] = "converge";
  r.fields["method"] = "asym";
  r.fields["parameters"] = {{"x", a.x}, {"digits", ctx.decimal_digits()}, {"mode", a.mode}};
  const Stopwatch watch;
  const ConvergenceStudy study = convergence_study(x, Ls, mode, ctx);
  Table t{{"L", "x", "value", "digits_coinciding", "abs_error", "order"}, {}};
  for (std::size_t i = 0; i < study.records.size(); ++i) {
    const auto& rec = study.records[i];
    t.rows.push_back({std::to_string(rec.L), rec.x.to_string(), rec.value.to_string(), std::to_string(rec.coinciding),
                      rec.abs_error.to_scientific(6), i == 0 ? "" : format_double(study.orders[i - 1])});
  }
  r.table = std::move(t);
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return r;
}

struct FormulasArgs {
  std::vector<std::string> add;
};

inline Report cmd_formulas_list() {
  Report r;
  r.fields["command"] = "formulas";
  r.fields["method"] = "list";
  Table t{{"name", "formula", "verified"}, {}};
  for (const auto& f : builtin_formulas()) t.rows.push_back({f.name(), f.to_string(), f.verified() ? "true" : "false"});
  r.table = std::move(t);
  return r;
}

/// Runs verify_formula over the built-in registry plus any extra formulas.
/// The returned flag is false when any formula fails.
inline std::pair<Report, bool> cmd_verify(const FormulasArgs& a, const CommonOptions& common) {
  if (common.digits < kMinVerifyDigits) {
    throw UsageError("formulas verify needs --digits >= " + std::to_string(kMinVerifyDigits));
  }
  std::vector<PiFormula> formulas = builtin_formulas();
  for (const auto& spec : a.add) formulas.push_back(parse_formula_spec(spec));
  Report r;
  r.fields["command"] = "formulas";
  r.fields["method"] = "verify";
  r.fields["parameters"] = {{"digits", common.digits}};
  const Stopwatch watch;
  Table t{{"name", "formula", "passed"}, {}};
  bool all = true;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : formulas) {
    const bool ok = verify_formula(f, common.digits);
    all = all && ok;
    if (!ok) failures.push_back(f.name());
    t.rows.push_back({f.name(), f.to_string(), ok ? "true" : "false"});
  }
  r.fields["all_passed"] = all;
  r.fields["failures"] = failures;
  r.table = std::move(t);
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return {std::move(r), all};
}

struct BenchArgs {
  std::string L;
  std::string kernel = "pairwise";
  std::size_t chunk = 1024;
  unsigned threads = 1;
};

inline constexpr std::uint64_t kBenchValidationCap = 1000000;

/// |a - b| in units of the spacing of binary64 numbers at b.
inline double ulp_distance(double a, double b) {
  const double ulp = std::nextafter(std::fabs(b), std::numeric_limits<double>::infinity()) - std::fabs(b);
  return std::fabs(a - b) / ulp;
}

/// Binary64 sum of the asymptotic series at x = 1 with the given kernel.
inline double bench_sum(std::uint64_t L, const SummationOptions& opts) {
  return std::get<double>(pi_asymptotic(BigRational(1), L, Binary64Mode{opts}).value);
}

/// Returns the report and whether every check passed.
inline std::pair<Report, bool> cmd_bench(const BenchArgs& a) {
  const std::uint64_t L = parse_count(a.L, "--L");
  if (a.chunk < 1) throw UsageError("--chunk must be >= 1");
  if (a.threads < 1) throw UsageError("--threads must be >= 1");
  SummationOptions opts;
  try {
    opts.kernel = parse_summation_kernel(a.kernel);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  opts.chunk = a.chunk;
  opts.threads = a.threads;

  Report r;
  r.fields["command"] = "bench";
  r.fields["method"] = std::string(to_string(opts.kernel));
  r.fields["parameters"] = {{"L", L}, {"x", "1"}, {"chunk", a.chunk}, {"threads", a.threads}};

  const Stopwatch watch;
  const double result = bench_sum(L, opts);
  const double seconds = watch.elapsed_ms() / 1000.0;
  r.fields["value"] = format_double(result);
  r.fields["run_ms"] = seconds * 1000.0;
  r.fields["terms_per_second"] = seconds > 0 ? static_cast<double>(L) / seconds : 0.0;

  bool ok = true;
  if (opts.kernel == SummationKernel::pairwise) {
    SummationOptions again = opts;
    again.threads = opts.threads > 1 ? 1 : 2;
    const double second = bench_sum(L, again);
    const bool identical = std::bit_cast<std::uint64_t>(second) == std::bit_cast<std::uint64_t>(result);
    r.fields["determinism_check_threads"] = again.threads;
    r.fields["deterministic"] = identical;
    ok = ok && identical;
  }

  const std::uint64_t Lv = std::min(L, kBenchValidationCap);
  const double at_lv = Lv == L ? result : bench_sum(Lv, opts);
  const double exact = pi_asymptotic_fraction(BigRational(1), Lv).to_double();
  const double ulps = ulp_distance(at_lv, exact);
  r.fields["validation_L"] = Lv;
  r.fields["validation_exact"] = format_double(exact);
  r.fields["validation_abs_deviation"] = std::fabs(at_lv - exact);
  r.fields["validation_ulps"] = ulps;
  r.fields["validation_within_1000_ulps"] = ulps <= 1000.0;
  ok = ok && ulps <= 1000.0;
  r.fields["elapsed_ms"] = watch.elapsed_ms();
  return {std::move(r), ok};
}

// --------------------------------------------------------------- dispatch

inline int emit(const Report& r, const CommonOptions& common, std::ostream& out) {
  const OutputFormat format = parse_format(common.format);
  if (common.out.empty() || common.out == "-") {
    write_report(r, format, out);
    return kExitOk;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw OutputError("cannot open '" + common.out + "' for writing");
  write_report(r, format, file);
  file.flush();
  if (!file) throw OutputError("failed writing '" + common.out + "'");
  return kExitOk;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational arctangent approximations and asymptotic pi series", "arctanpi"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--digits", common.digits, "Significant decimal digits (default 30)");
  app.add_option("--guard", common.guard, "Guard digits carried internally (default 10)");
  app.add_option("--format", common.format, "text, json or csv (default text)");
  app.add_option("--out", common.out, "Output file (default stdout)");

  PiArgs pi;
  auto* pi_cmd = app.add_subcommand("pi", "Compute pi by the direct, asymptotic or Machin-type series");
  pi_cmd->add_option("--method", pi.method, "direct | asym | formula:<name>")->required();
  pi_cmd->add_option("--L", pi.L, "Truncation order")->required();
  pi_cmd->add_option("--x", pi.x, "Rational argument p/q (asym only)");
  pi_cmd->add_option("--mode", pi.mode, "exact or real (default exact)");

  ArctanArgs at;
  auto* at_cmd = app.add_subcommand("arctan", "Rational approximation of arctan(x) against the reference");
  at_cmd->add_option("--x", at.x, "Rational argument p/q")->required();
  at_cmd->add_option("--L", at.L, "Truncation order")->required();
  at_cmd->add_option("--mode", at.mode, "exact, real or binary64 (default real)");

  ErfArgs ef;
  auto* erf_cmd = app.add_subcommand("erf", "Gaussian-sum expansion of erf(x) against the reference");
  erf_cmd->add_option("--x", ef.x, "Argument, |x| <= 10")->required();
  erf_cmd->add_option("--L", ef.L, "Truncation order")->required();

  SincArgs sc;
  auto* sinc_cmd = app.add_subcommand("sinc", "Cosine expansions of sinc(x)");
  sinc_cmd->add_option("--x", sc.x, "Argument")->required();
  sinc_cmd->add_option("--L", sc.L, "Number of panels")->required();
  sinc_cmd->add_option("--rule", sc.rule, "midpoint, trapezoid, simpson or all (default all)");
  sinc_cmd->add_option("--mode", sc.mode, "binary64 or real (default binary64)");

  FigureArgs fg;
  auto* fig_cmd = app.add_subcommand("figure", "Emit the data behind the error (1) or counterpart (2) plots");
  fig_cmd->add_option("--which", fg.which, "1 or 2")->required();
  fig_cmd->add_option("--L", fg.L, "Comma-separated truncation orders");
  fig_cmd->add_option("--points", fg.points, "Grid points (default 401)");
  fig_cmd->add_option("--xmin", fg.xmin, "Figure 2 range start (default -10)");
  fig_cmd->add_option("--xmax", fg.xmax, "Figure 2 range end (default 10)");

  ConvergeArgs cv;
  auto* conv_cmd = app.add_subcommand("converge", "Convergence table of the asymptotic series");
  conv_cmd->add_option("--x", cv.x, "Rational argument (default 1)");
  conv_cmd->add_option("--L", cv.L, "Comma-separated ascending truncation orders")->required();
  conv_cmd->add_option("--mode", cv.mode, "exact or real (default exact)");

  FormulasArgs fa;
  auto* formulas_cmd = app.add_subcommand("formulas", "List or verify Machin-type formulas");
  formulas_cmd->require_subcommand(1);
  auto* list_cmd = formulas_cmd->add_subcommand("list", "List the built-in formulas");
  auto* verify_cmd = formulas_cmd->add_subcommand("verify", "Verify formulas against the reference oracle");
  verify_cmd->add_option("--add", fa.add, "Extra formula name=c:b[,c:b...]");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark summation kernels on the asymptotic series at x = 1");
  bench_cmd->add_option("--L", bn.L, "Number of terms")->required();
  bench_cmd->add_option("--kernel", bn.kernel, "sequential, compensated or pairwise (default pairwise)");
  bench_cmd->add_option("--chunk", bn.chunk, "Pairwise chunk size (default 1024)");
  bench_cmd->add_option("--threads", bn.threads, "Worker threads (default 1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    (void)parse_format(common.format);
    if (*pi_cmd) return emit(cmd_pi(pi, common), common, out);
    if (*at_cmd) return emit(cmd_arctan(at, common), common, out);
    if (*erf_cmd) return emit(cmd_erf(ef, common), common, out);
    if (*sinc_cmd) return emit(cmd_sinc(sc, common), common, out);
    if (*fig_cmd) return emit(cmd_figure(fg, common), common, out);
    if (*conv_cmd) return emit(cmd_converge(cv, common), common, out);
    if (*list_cmd) return emit(cmd_formulas_list(), common, out);
    if (*verify_cmd) {
      auto [report, ok] = cmd_verify(fa, common);
      emit(report, common, out);
      if (!ok) {
        err << "formula verification failed:";
        for (const auto& f : report.fields["failures"]) err << " " << f.get<std::string>();
        err << "\n";
        return kExitVerify;
      }
      return kExitOk;
    }
    if (*bench_cmd) {
      auto [report, ok] = cmd_bench(bn);
      emit(report, common, out);
      if (!ok) {
        err << "bench: determinism or validation check failed\n";
        return kExitNumeric;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace arctanpi::cli
