#pragma once

// Command-line front end. Everything except main() lives here so the unit
// tests can drive `run` with string streams.

#include <chrono>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qzeta/qzeta.hpp"
#include "qzeta_cli/suites.hpp"

namespace qzeta::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kPole = 2, kNoConvergence = 3, kUsage = 64 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// literals

/// "a", "bi", "a+bi", "a-bi" with decimal components. "1+2" and friends are
/// rejected rather than guessed.
inline Complex parse_complex(const std::string& text) {
  static const std::string num = R"((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_re("^([+-]?" + num + ")$");
  static const std::regex imag_re("^([+-]?)(" + num + ")?i$");
  static const std::regex full_re("^([+-]?" + num + ")([+-])(" + num + ")?i$");
  auto to_d = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
  std::smatch m;
  if (std::regex_match(text, m, real_re)) return {to_d(m[1]), 0.0};
  if (std::regex_match(text, m, imag_re)) {
    const double mag = m[2].matched ? to_d(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -mag : mag};
  }
  if (std::regex_match(text, m, full_re)) {
    const double mag = m[3].matched ? to_d(m[3]) : 1.0;
    return {to_d(m[1]), m[2] == "-" ? -mag : mag};
  }
  throw UsageError("cannot parse complex literal '" + text + "' (expected a, bi, a+bi or a-bi)");
}

inline double parse_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw UsageError("q must lie in (0, 1)");
  return q;
}

/// "default" or a comma-separated list of q values.
inline std::vector<double> parse_q_grid(const std::string& text) {
  if (text == "default") {
    std::vector<double> out;
    for (const QParam& q : default_q_grid()) out.push_back(q.value());
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("bad q-grid entry '" + item + "'");
    out.push_back(parse_q(v));
  }
  if (out.empty()) throw UsageError("empty q-grid");
  return out;
}

inline Accumulator parse_accumulator(const std::string& s) {
  if (s == "standard") return Accumulator::standard;
  if (s == "double-double") return Accumulator::double_double;
  throw UsageError("accumulator must be 'standard' or 'double-double'");
}

// ---------------------------------------------------------------------------
// records

struct EvalRequest {
  Complex s{};
  double q = 0.5;
  std::optional<long long> t_offset;  // t = s - 1 - offset
  std::string method = "continued";
  std::optional<std::uint64_t> terms;
  double tol = 1e-15;
  Accumulator accumulator = Accumulator::standard;

  Complex t() const { return s - 1.0 - static_cast<double>(t_offset.value_or(0)); }
};

struct ResultRecord {
  EvalRequest request;
  std::optional<SeriesResult> result;
  std::vector<PoleDescriptor> pole_warnings;
  std::string error;  // set when the point was refused
  double wall_time_ms = 0.0;
};

inline json complex_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json pole_json(const PoleDescriptor& p) {
  return json{{"kind", to_string(p.kind)}, {"a", p.a},          {"b", p.b},
              {"base", complex_json(p.base)}, {"delta", complex_json(p.delta)}, {"distance", p.distance}};
}

inline json request_json(const EvalRequest& r) {
  json j;
  j["s"] = complex_json(r.s);
  j["q"] = r.q;
  j["t"] = complex_json(r.t());
  j["t_offset"] = r.t_offset ? json(*r.t_offset) : json("default");
  j["method"] = r.method;
  j["terms"] = r.terms ? json(*r.terms) : json(nullptr);
  j["tol"] = r.tol;
  j["accumulator"] = to_string(r.accumulator);
  return j;
}

inline json record_json(const ResultRecord& rec) {
  json j;
  j["request"] = request_json(rec.request);
  if (rec.result) {
    j["value"] = complex_json(rec.result->value);
    j["err_estimate"] = rec.result->err_estimate;
    j["terms_used"] = rec.result->terms_used;
  } else {
    j["value"] = nullptr;
    j["err_estimate"] = nullptr;
    j["terms_used"] = nullptr;
    j["error"] = rec.error;
  }
  json warnings = json::array();
  for (const auto& p : rec.pole_warnings) warnings.push_back(pole_json(p));
  j["pole_warnings"] = warnings;
  j["wall_time_ms"] = rec.wall_time_ms;
  return j;
}

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t width = 16) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

inline std::string g17(double v) { return fmt("%.17g", v); }

inline std::string complex_text(const Complex& z) {
  return fmt("%.15g", z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + fmt("%.15g", std::abs(z.imag())) + "i";
}

inline const char* kCsvHeader = "s_re,s_im,q,method,terms,value_re,value_im,err,time_ms";

inline std::string csv_row(const std::string& method, const Complex& s, double q, std::optional<std::uint64_t> terms,
                           std::optional<Complex> value, std::optional<double> err, double time_ms) {
  std::string row = g17(s.real()) + "," + g17(s.imag()) + "," + g17(q) + "," + method + ",";
  row += terms ? std::to_string(*terms) : "";
  row += ",";
  row += value ? g17(value->real()) + "," + g17(value->imag()) : ",";
  row += ",";
  row += err ? g17(*err) : "";
  row += "," + fmt("%.3f", time_ms);
  return row;
}

// ---------------------------------------------------------------------------
// evaluation

/// Lattice poles within this distance of s are reported as warnings.
inline constexpr double kPoleWarningRadius = 1.0;

inline std::vector<PoleDescriptor> nearby_poles(const Complex& s, const QParam& q) {
  const double r = kPoleWarningRadius;
  auto poles = pole_set(q, {s.real() - r, s.real() + r, s.imag() - r, s.imag() + r});
  std::vector<PoleDescriptor> out;
  for (auto& p : poles) {
    p.distance = std::abs(s - p.base);
    if (p.distance < r) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PoleDescriptor& a, const PoleDescriptor& b) { return a.distance < b.distance; });
  return out;
}

inline EvalPolicy policy_for(const EvalRequest& r) {
  EvalPolicy p;
  p.tol = r.tol;
  p.accumulator = r.accumulator;
  if (r.terms) p.exact_terms = *r.terms;
  return p;
}

/// Routes a request to the core; throws the library's exceptions unchanged.
inline SeriesResult evaluate(const EvalRequest& r) {
  const QParam q(r.q);
  const EvalPolicy policy = policy_for(r);
  if (r.method == "direct") return f_q_direct(r.s, r.t(), q, policy);
  if (r.method == "continued") {
    if (!r.t_offset) return zeta_q(r.s, q, policy);
    return f_q_continued(r.s, r.t(), q, policy);
  }
  if (r.method == "closed") {
    if (r.t_offset) throw UsageError("--t-offset does not apply to method 'closed'");
    const double m = -r.s.real();
    if (r.s.imag() != 0.0 || m < 0.0 || m != std::floor(m)) {
      throw UsageError("method 'closed' needs s to be a non-positive integer");
    }
    SeriesResult out;
    out.value = zeta_q_nonpositive(static_cast<std::uint64_t>(m), q);
    out.err_estimate = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
    out.terms_used = static_cast<std::uint64_t>(m) + 1;
    out.converged = true;
    return out;
  }
  if (r.method == "em-qform") {
    if (r.t_offset) throw UsageError("--t-offset does not apply to method 'em-qform'");
    SeriesResult out;
    out.value = zqeul_rhs(r.s, q, r.tol);
    out.err_estimate = r.tol;
    out.converged = true;
    return out;
  }
  throw UsageError("unknown method '" + r.method + "'");
}

inline ResultRecord evaluate_record(const EvalRequest& r) {
  ResultRecord rec;
  rec.request = r;
  const auto start = std::chrono::steady_clock::now();
  rec.pole_warnings = nearby_poles(r.s, QParam(r.q));
  rec.result = evaluate(r);
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// ---------------------------------------------------------------------------
// reproductions of the published partial sums

struct Reproduction {
  std::string id;
  Complex s;
  double q;
  std::uint64_t terms;  // as printed; r = 0..terms is summed
  Complex printed;
  double tol;
  bool relative;
};

inline const std::vector<Reproduction>& reproductions() {
  static const std::vector<Reproduction> table{
      {"zhalf-1e5", 0.5, 0.999, 100'000, -1.46014527395, 5e-11, false},
      {"zhalf-1e7", 0.5, 0.99999, 10'000'000, -1.460352417, 5e-9, false},
      {"zero1-1e5", Complex(0.5, 14.1347), 0.9999, 100'000, Complex(10835.552, 10270.785), 1e-6, true},
      {"zero1-1e6", Complex(0.5, 14.1347), 0.9999, 1'000'000, Complex(-0.000306477, 0.000794677), 1e-8, false},
      {"zero2-2e6", Complex(0.5, 14.134725), 0.99999, 2'000'000, Complex(-0.4690527, -0.4669811), 1e-6, false},
      {"zero2-5e6", Complex(0.5, 14.134725), 0.99999, 5'000'000, Complex(-0.000031064, 0.0000812513), 1e-8, false},
  };
  return table;
}

inline Complex reproduce_value(const Reproduction& r, Accumulator acc) {
  return f_q_continued(r.s, r.s - 1.0, QParam(r.q), EvalPolicy::exact(r.terms + 1, acc)).value;
}

/// Largest per-component gap, relative per component when `relative`.
inline double reproduction_gap(const Reproduction& r, const Complex& v) {
  if (!r.relative) return std::abs(v - r.printed);
  auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); };
  return std::max(rel(v.real(), r.printed.real()), rel(v.imag(), r.printed.imag()));
}

// ---------------------------------------------------------------------------
// subcommands

struct Output {
  bool json = false;
  bool csv = false;
};

inline void emit_eval(const ResultRecord& rec, const Output& o, std::ostream& out, bool header = true) {
  if (o.json) {
    out << record_json(rec).dump() << "\n";
  } else if (o.csv) {
    if (header) out << kCsvHeader << "\n";
    std::optional<Complex> v;
    std::optional<double> e;
    if (rec.result) {
      v = rec.result->value;
      e = rec.result->err_estimate;
    }
    out << csv_row(rec.request.method, rec.request.s, rec.request.q,
                   rec.result ? std::optional<std::uint64_t>(rec.result->terms_used) : std::nullopt, v, e,
                   rec.wall_time_ms)
        << "\n";
  } else {
    out << "zeta_q(" << complex_text(rec.request.s) << ") at q=" << g17(rec.request.q) << " [" << rec.request.method
        << "]";
    if (rec.result) {
      out << " = " << complex_text(rec.result->value) << "  err~" << fmt("%.3g", rec.result->err_estimate)
          << "  terms=" << rec.result->terms_used << "\n";
    } else {
      out << ": " << rec.error << "\n";
    }
    for (const auto& p : rec.pole_warnings) {
      out << "  warning: pole " << p.a << (p.b < 0 ? " - " : " + ") << std::llabs(p.b) << " delta at distance "
          << fmt("%.6g", p.distance) << "\n";
    }
  }
}

inline int cmd_reproduce(const std::string& id, Accumulator acc, const Output& o, std::ostream& out) {
  const Accumulator other = acc == Accumulator::standard ? Accumulator::double_double : Accumulator::standard;
  bool found = false;
  if (!o.json && !o.csv) {
    out << "summing r = 0..N (N+1 terms), primary accumulator " << to_string(acc) << "\n";
  } else if (o.csv) {
    out << kCsvHeader << "\n";
  }
  for (const auto& r : reproductions()) {
    if (id != "all" && id != r.id) continue;
    found = true;
    const auto start = std::chrono::steady_clock::now();
    const Complex v = reproduce_value(r, acc);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const Complex w = reproduce_value(r, other);
    const double gap = reproduction_gap(r, v);
    const double gap_other = reproduction_gap(r, w);
    if (o.json) {
      json j;
      j["id"] = r.id;
      j["s"] = complex_json(r.s);
      j["q"] = r.q;
      j["terms"] = r.terms;
      j["terms_summed"] = r.terms + 1;
      j["printed"] = complex_json(r.printed);
      j["tol"] = r.tol;
      j["tol_kind"] = r.relative ? "relative per component" : "absolute";
      j["accumulator"] = to_string(acc);
      j["value"] = complex_json(v);
      j["gap"] = gap;
      j["match"] = gap <= r.tol;
      j["other_accumulator"] = to_string(other);
      j["other_value"] = complex_json(w);
      j["other_gap"] = gap_other;
      j["other_match"] = gap_other <= r.tol;
      j["accumulator_difference"] = std::abs(v - w);
      j["wall_time_ms"] = ms;
      out << j.dump() << "\n";
    } else if (o.csv) {
      out << csv_row("continued", r.s, r.q, r.terms + 1, v, gap, ms) << "\n";
    } else {
      out << r.id << ": s=" << complex_text(r.s) << " q=" << g17(r.q) << " N=" << r.terms << "\n"
          << "  printed         " << complex_text(r.printed) << "\n"
          << "  " << pad(to_string(acc)) << complex_text(v) << "  gap " << fmt("%.3g", gap)
          << (gap <= r.tol ? " ok" : " MISMATCH") << "\n"
          << "  " << pad(to_string(other)) << complex_text(w) << "  gap " << fmt("%.3g", gap_other)
          << (gap_other <= r.tol ? " ok" : " MISMATCH") << "\n";
    }
  }
  if (!found) throw UsageError("unknown reproduction id '" + id + "'");
  return kOk;
}

struct SweepOptions {
  EvalRequest base;
  std::vector<double> grid;
  bool extrapolate = false;
  int order = kDefaultLimitOrder;
};

inline int cmd_sweep(const SweepOptions& opt, const Output& o, std::ostream& out) {
  std::vector<std::future<ResultRecord>> futures;
  for (double qv : opt.grid) {
    EvalRequest r = opt.base;
    r.q = qv;
    futures.push_back(std::async(std::launch::async, [r] {
      try {
        return evaluate_record(r);
      } catch (const PoleError& e) {
        ResultRecord rec;
        rec.request = r;
        rec.pole_warnings = nearby_poles(r.s, QParam(r.q));
        const auto& p = e.pole();
        const bool listed = std::any_of(rec.pole_warnings.begin(), rec.pole_warnings.end(),
                                        [&](const PoleDescriptor& w) { return w.a == p.a && w.b == p.b; });
        if (!listed) rec.pole_warnings.insert(rec.pole_warnings.begin(), p);
        rec.error = std::string("pole: ") + e.what();
        return rec;
      } catch (const std::exception& e) {
        ResultRecord rec;
        rec.request = r;
        rec.error = e.what();
        return rec;
      }
    }));
  }
  std::vector<ResultRecord> records;
  for (auto& f : futures) records.push_back(f.get());

  bool first = true;
  for (const auto& rec : records) {
    emit_eval(rec, o, out, first);
    first = false;
  }
  if (!opt.extrapolate) return kOk;

  std::vector<ExtrapolationSample> samples;
  for (const auto& rec : records) {
    if (rec.result) samples.push_back({1.0 - rec.request.q, rec.result->value});
  }
  if (samples.size() < 2) throw UsageError("extrapolation needs at least two successful grid points");
  const int order = std::min<int>(opt.order, static_cast<int>(samples.size()) - 1);
  const ExtrapolationResult ex = richardson_extrapolate(samples, order);
  std::optional<Complex> reference;
  try {
    reference = zeta_em(opt.base.s);
  } catch (const std::exception&) {
  }
  if (o.json) {
    json j;
    j["extrapolation"] = true;
    j["s"] = complex_json(opt.base.s);
    j["order"] = order;
    j["points"] = samples.size();
    j["limit"] = complex_json(ex.limit);
    j["residual"] = ex.residual;
    j["zeta_em"] = reference ? complex_json(*reference) : json(nullptr);
    j["difference"] = reference ? json(std::abs(ex.limit - *reference)) : json(nullptr);
    out << j.dump() << "\n";
  } else if (o.csv) {
    out << csv_row("extrapolated", opt.base.s, 1.0, std::nullopt, ex.limit, ex.residual, 0.0) << "\n";
  } else {
    out << "extrapolated (order " << order << ", " << samples.size() << " points): " << complex_text(ex.limit)
        << "  residual " << fmt("%.3g", ex.residual) << "\n";
    if (reference) {
      out << "zeta(s) by Euler-Maclaurin: " << complex_text(*reference) << "  difference "
          << fmt("%.3g", std::abs(ex.limit - *reference)) << "\n";
    }
  }
  return kOk;
}

inline std::string rational_text(const Rational& r) {
  std::ostringstream ss;
  ss << numerator(r);
  if (denominator(r) != 1) ss << "/" << denominator(r);
  return ss.str();
}

inline int cmd_bern(int max_index, const Output& o, std::ostream& out) {
  if (max_index < 0 || static_cast<std::size_t>(max_index) >= default_bernoulli_table().capacity()) {
    throw UsageError("--m out of range");
  }
  if (o.csv) out << "k,numerator,denominator,value\n";
  for (int k = 0; k <= max_index; ++k) {
    const Rational& b = bernoulli_number(static_cast<std::size_t>(k));
    if (o.json) {
      std::ostringstream n, d;
      n << numerator(b);
      d << denominator(b);
      out << json{{"k", k}, {"numerator", n.str()}, {"denominator", d.str()}, {"value", to_double(b)}}.dump() << "\n";
    } else if (o.csv) {
      std::ostringstream row;
      row << k << "," << numerator(b) << "," << denominator(b) << "," << g17(to_double(b));
      out << row.str() << "\n";
    } else {
      out << "B_" << k << " = " << rational_text(b) << "\n";
    }
  }
  return kOk;
}

inline int cmd_qbern(int max_index, double qv, const Output& o, std::ostream& out) {
  if (max_index < 0 || static_cast<std::size_t>(max_index) > kMaxQBernoulliOrder) throw UsageError("--m must be in 0..30");
  const QParam q(qv);
  if (o.csv) out << "m,q,value,classical\n";
  for (int m = 0; m <= max_index; ++m) {
    const double v = q_bernoulli(static_cast<std::size_t>(m), q);
    const double b = to_double(bernoulli_number(static_cast<std::size_t>(m)));
    if (o.json) {
      out << json{{"m", m}, {"q", qv}, {"value", v}, {"classical", b}}.dump() << "\n";
    } else if (o.csv) {
      out << m << "," << g17(qv) << "," << g17(v) << "," << g17(b) << "\n";
    } else {
      out << "B_" << m << "(" << g17(qv) << ") = " << fmt("%.15g", v) << "   (B_" << m << " = " << fmt("%.15g", b)
          << ")\n";
    }
  }
  return kOk;
}

inline int cmd_verify(const std::string& suite, std::optional<double> tol, const Output& o, std::ostream& out) {
  const auto checks = run_suite(suite, tol);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    if (o.json) {
      json j{{"suite", c.suite}, {"check", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tol", c.tol}};
      if (!c.detail.empty()) j["error"] = c.detail;
      out << j.dump() << "\n";
    } else {
      out << (c.pass ? "PASS " : "FAIL ") << "[" << c.suite << "] " << c.name << "  measured "
          << fmt("%.3g", c.measured) << "  tol " << fmt("%.3g", c.tol);
      if (!c.detail.empty()) out << "  (" << c.detail << ")";
      out << "\n";
    }
  }
  if (!o.json) out << (all ? "all checks passed" : "some checks FAILED") << " (" << checks.size() << ")\n";
  return all ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// entry point

inline void error_json(std::ostream& err, const std::string& kind, const std::string& message,
                       const std::optional<PoleDescriptor>& pole = std::nullopt) {
  json j{{"error", kind}, {"message", message}};
  if (pole) j["pole"] = pole_json(*pole);
  err << j.dump() << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-analogue of the Riemann zeta function"};
  app.require_subcommand(1);

  std::string s_text, method = "continued", accumulator, q_grid = "default", suite = "all", id = "all";
  double q = 0.0;
  std::optional<double> tol;
  std::optional<std::uint64_t> terms;
  std::optional<long long> t_offset;
  bool extrapolate = false;
  int order = kDefaultLimitOrder;
  int max_index = 12;
  Output o;

  auto add_output = [&](CLI::App* c) {
    auto* j = c->add_flag("--json", o.json, "one JSON object per line");
    auto* v = c->add_flag("--csv", o.csv, "CSV table");
    j->excludes(v);
  };
  auto add_eval_flags = [&](CLI::App* c) {
    c->add_option("--s", s_text, "complex argument: a, bi, a+bi or a-bi")->required();
    c->add_option("--method", method, "direct | continued | closed | em-qform")
        ->check(CLI::IsMember({"direct", "continued", "closed", "em-qform"}));
    c->add_option("--terms", terms, "sum exactly this many terms");
    c->add_option("--tol", tol, "truncation tolerance (>= 1e-15)");
    c->add_option("--t-offset", t_offset, "use t = s - 1 - offset instead of t = s - 1");
    c->add_option("--accumulator", accumulator, "standard | double-double");
    add_output(c);
  };

  auto* eval = app.add_subcommand("eval", "evaluate zeta_q(s) at one point");
  add_eval_flags(eval);
  eval->add_option("--q", q, "q in (0,1)")->required();

  auto* rep = app.add_subcommand("reproduce", "rerun the published partial sums");
  rep->add_option("id", id, "zhalf-1e5 | zhalf-1e7 | zero1-1e5 | zero1-1e6 | zero2-2e6 | zero2-5e6 | all");
  rep->add_option("--accumulator", accumulator, "primary accumulator (default double-double)");
  add_output(rep);

  auto* sweep = app.add_subcommand("sweep", "evaluate over a q grid, optionally extrapolating to q = 1");
  add_eval_flags(sweep);
  sweep->add_option("--q-grid", q_grid, "comma-separated q values, or 'default'");
  sweep->add_flag("--extrapolate", extrapolate, "Richardson extrapolation in h = 1 - q");
  sweep->add_option("--order", order, "extrapolation order")->check(CLI::PositiveNumber);

  auto* bern = app.add_subcommand("bern", "Bernoulli numbers B_0..B_m (B_1 = +1/2)");
  bern->add_option("--m", max_index, "largest index");
  add_output(bern);

  auto* qbern = app.add_subcommand("qbern", "q-Bernoulli numbers B_0(q)..B_m(q)");
  qbern->add_option("--m", max_index, "largest index (<= 30)");
  qbern->add_option("--q", q, "q in (0,1)")->required();
  add_output(qbern);

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite, "identities | limits | em | all")->check(CLI::IsMember(suite_names()));
  verify->add_option("--tol", tol, "replace every per-check threshold");
  verify->add_flag("--json", o.json, "one JSON object per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_json(err, "usage", e.what());
    return kUsage;
  }

  try {
    auto request = [&] {
      EvalRequest r;
      r.s = parse_complex(s_text);
      r.method = method;
      r.terms = terms;
      if (terms && *terms == 0) throw UsageError("--terms must be positive");
      if (tol) r.tol = *tol;
      r.t_offset = t_offset;
      if (!accumulator.empty()) r.accumulator = parse_accumulator(accumulator);
      policy_for(r).validate();
      return r;
    };
    if (eval->parsed()) {
      EvalRequest r = request();
      r.q = parse_q(q);
      emit_eval(evaluate_record(r), o, out);
      return kOk;
    }
    if (rep->parsed()) {
      const Accumulator acc = accumulator.empty() ? Accumulator::double_double : parse_accumulator(accumulator);
      return cmd_reproduce(id, acc, o, out);
    }
    if (sweep->parsed()) {
      SweepOptions opt;
      opt.base = request();
      opt.grid = parse_q_grid(q_grid);
      opt.extrapolate = extrapolate;
      opt.order = order;
      return cmd_sweep(opt, o, out);
    }
    if (bern->parsed()) return cmd_bern(max_index, o, out);
    if (qbern->parsed()) return cmd_qbern(max_index, parse_q(q), o, out);
    if (verify->parsed()) return cmd_verify(suite, tol, o, out);
  } catch (const PoleError& e) {
    error_json(err, "pole", e.what(), e.pole());
    return kPole;
  } catch (const ConvergenceError& e) {
    error_json(err, "non-convergence", e.what());
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    error_json(err, "usage", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    error_json(err, "usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    error_json(err, "failure", e.what());
    return kNoConvergence;
  }
  return kUsage;
}

}  // namespace qzeta::cli
