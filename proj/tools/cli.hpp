#pragma once
// ringlab command-line front end. run() is the whole program; main() only
// forwards to it, so tests can drive commands in-process.
//
// Exit codes: 0 verdict or passing report, 1 failed verifier check,
// 2 parse error or invalid input, 3 budget exhausted (Inconclusive),
// 4 internal invariant violation.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ringlab/ringlab.hpp"

namespace ringlab::cli {

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string command;
  std::string verifier;
  std::string ring;
  bool oracle = false;
  std::string strategy = "exhaustive";
  std::uint64_t max_subrings = 1'000'000;
  std::uint64_t time_budget_ms = 300'000;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool json = false;
  bool csv = false;
  bool stats = false;
  unsigned n = 2;
  std::uint64_t q = 5;
  int part = 1;
  std::uint64_t p = 5;
  std::string mode = "catalog";
  unsigned samples = 25;
  std::uint64_t cap = 0;

  Format format() const { return json ? Format::Json : csv ? Format::Csv : Format::Text; }
  Parallelism parallelism() const { return Parallelism{threads}; }
  LatticeBudget budget() const { return LatticeBudget{max_subrings, time_budget_ms}; }
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

inline std::string join(const std::vector<std::uint64_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline Json config_json(const RunConfig& c) {
  return Json{{"strategy", c.strategy}, {"max_subrings", c.max_subrings}, {"time_budget_ms", c.time_budget_ms},
              {"seed", c.seed}};
}

inline std::string verdict_line(const Verdict& v) {
  std::string s = std::string(to_string(v.kind)) + " [" + to_string(v.certificate) + "]";
  if (v.gamma && v.gamma->member()) s += std::string(" ") + to_string(v.gamma->family);
  if (v.witness) {
    s += " witness " + v.witness->description + " (order " + std::to_string(v.witness->order);
    if (v.witness->units) s += ", units " + std::to_string(*v.witness->units);
    if (v.witness->units_solvable) s += *v.witness->units_solvable ? ", solvable" : ", non-solvable";
    s += ")";
  }
  if (!v.reason.empty() && v.kind == VerdictKind::Inconclusive) s += " " + v.reason;
  return s;
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
  const auto expr = parse(c.ring);
  const auto t_fast = Clock::now();
  Verdict fast = classify_fast(expr);
  const auto normalized = normalize(expr);
  std::string witness_note;
  if (fast.witness) {
    try {
      const Ring host = eval(normalized);
      materialize_witness(normalized, host, *fast.witness, c.parallelism());
      if (fast.witness->units_solvable.value_or(true))
        throw InvariantViolation("fast-path witness " + fast.witness->description + " has solvable units");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      witness_note = "witness not materialized: ring exceeds the element cap";
    }
  }
  const double fast_ms = ms_since(t_fast);
  std::optional<Verdict> oracle;
  double oracle_ms = 0;
  if (c.oracle) {
    const auto t = Clock::now();
    OracleOptions o;
    o.strategy = c.strategy == "unit_pairs" ? OracleStrategy::UnitPairs : OracleStrategy::Exhaustive;
    o.budget = c.budget();
    o.parallelism = c.parallelism();
    oracle = minimal_simple_oracle(eval(expr), o);
    oracle_ms = ms_since(t);
  }
  const bool agree = !oracle || oracle->kind == fast.kind;
  int code = 0;
  if (oracle && oracle->kind == VerdictKind::Inconclusive) code = 3;
  else if (!agree) code = 4;

  switch (c.format()) {
    case Format::Json: {
      Json j{{"command", "classify"}, {"ring", pretty(expr)}, {"normalized", pretty(normalized)}, {"fast", to_json(fast)}};
      if (!witness_note.empty()) j["fast"]["note"] = witness_note;
      if (oracle) {
        j["oracle"] = to_json(*oracle);
        j["agreement"] = agree;
      }
      j["config"] = config_json(c);
      j["timing"] = Json{{"fast_ms", fast_ms}, {"oracle_ms", oracle_ms}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "ring,normalized,fast_kind,fast_certificate,oracle_kind,oracle_certificate,agreement\n";
      out << csv_field(pretty(expr)) << "," << csv_field(pretty(normalized)) << "," << to_string(fast.kind) << ","
          << to_string(fast.certificate) << "," << (oracle ? to_string(oracle->kind) : "") << ","
          << (oracle ? to_string(oracle->certificate) : "") << "," << (oracle ? (agree ? "true" : "false") : "") << "\n";
      break;
    case Format::Text:
      out << "ring        " << pretty(expr) << "\n";
      out << "normalized  " << pretty(normalized) << "\n";
      out << "fast        " << verdict_line(fast) << "\n";
      if (!witness_note.empty()) out << "            " << witness_note << "\n";
      if (oracle) {
        out << "oracle      " << verdict_line(*oracle) << "\n";
        out << "agreement   " << (agree ? "yes" : "no") << "\n";
      }
      break;
  }
  return code;
}

inline int cmd_units(const RunConfig& c, std::ostream& out) {
  const auto expr = parse(c.ring);
  const auto t = Clock::now();
  const Ring r = eval(expr);
  const auto units = units_of(r, {true, c.parallelism()});
  const auto series = derived_series(units);
  const double ms = ms_since(t);
  switch (c.format()) {
    case Format::Json:
      out << Json{{"command", "units"},
                  {"ring", pretty(expr)},
                  {"ring_info", to_json(r)},
                  {"units", units.order()},
                  {"series", to_json(series)},
                  {"solvable", series.solvable()},
                  {"timing", Json{{"total_ms", ms}}}}
                 .dump(2)
          << "\n";
      break;
    case Format::Csv:
      out << "ring,order,char,units,series,terminal,solvable\n";
      out << csv_field(pretty(expr)) << "," << r.order() << "," << r.characteristic() << "," << units.order() << ","
          << join(series.orders, ";") << "," << to_string(series.terminal) << "," << (series.solvable() ? "true" : "false")
          << "\n";
      break;
    case Format::Text:
      out << "ring      " << pretty(expr) << "\n";
      out << "order     " << r.order() << "\n";
      out << "char      " << r.characteristic() << "\n";
      out << "units     " << units.order() << "\n";
      out << "series    [" << join(series.orders, ",") << "] " << to_string(series.terminal) << "\n";
      out << "solvable  " << (series.solvable() ? "yes" : "no") << "\n";
      break;
  }
  return 0;
}

inline int cmd_lattice(const RunConfig& c, std::ostream& out) {
  const auto expr = parse(c.ring);
  const auto t = Clock::now();
  const Ring r = eval(expr);
  LatticeOptions lo;
  lo.budget = c.budget();
  lo.parallelism = c.parallelism();
  const auto rep = subring_lattice(r, lo);
  const double ms = ms_since(t);
  switch (c.format()) {
    case Format::Json: {
      Json j{{"command", "lattice"}, {"ring", pretty(expr)}, {"lattice", to_json(rep)}};
      if (c.stats)
        j["stats"] = Json{{"proper_subrings", rep.subring_count - 1},
                          {"maximal_subrings", rep.maximal.size()},
                          {"all_proper_solvable", rep.all_proper_solvable()}};
      j["timing"] = Json{{"total_ms", ms}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "ring,exhaustive,subring_count,maximal,all_proper_solvable,stop\n";
      out << csv_field(pretty(expr)) << "," << (rep.exhaustive ? "true" : "false") << "," << rep.subring_count << ","
          << rep.maximal.size() << "," << (rep.all_proper_solvable() ? "true" : "false") << "," << to_string(rep.stop)
          << "\n";
      break;
    case Format::Text:
      out << "ring           " << pretty(expr) << "\n";
      out << "exhaustive     " << (rep.exhaustive ? "yes" : "no") << " (" << to_string(rep.stop) << ")\n";
      out << "subrings       " << rep.subring_count << "\n";
      out << "maximal        " << rep.maximal.size() << "\n";
      for (const auto& m : rep.maximal)
        out << "  order " << m.order << ", units " << m.units << ", " << (m.solvable ? "solvable" : "non-solvable") << "\n";
      if (c.stats) {
        out << "closures       " << rep.closures << "\n";
        out << "levels         " << rep.levels << "\n";
        out << "all proper subrings solvable  " << (rep.all_proper_solvable() ? "yes" : "no") << "\n";
      }
      break;
  }
  return rep.exhaustive ? 0 : 3;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto t = Clock::now();
  VerifierReport rep;
  if (c.verifier == "lemma32") {
    rep = verify_lemma32(c.n, c.q, c.part, Lemma32Options{c.samples, c.seed, c.parallelism()});
  } else if (c.verifier == "gamma") {
    OracleOptions o;
    o.budget = c.budget();
    o.parallelism = c.parallelism();
    rep = verify_gamma(parse(c.ring), o);
  } else if (c.verifier == "theorem35") {
    Theorem35Options o;
    o.oracle.budget = c.budget();
    o.oracle.parallelism = c.parallelism();
    rep = verify_theorem35(c.p, c.mode == "probe" ? Theorem35Mode::Probe : Theorem35Mode::Catalog, o);
  } else if (c.verifier == "psl") {
    rep = verify_psl_normalizer(c.q, c.parallelism());
  } else {
    const auto pp = prime_power(c.q);
    if (!pp) throw Error(ErrorKind::InvalidArgument, std::to_string(c.q) + " is not a prime power");
    rep = verify_theta(c.n, GaloisField::make(pp->first, pp->second), c.parallelism());
  }
  const double ms = ms_since(t);
  switch (c.format()) {
    case Format::Json: {
      Json j = to_json(rep);
      j["timing"] = Json{{"total_ms", ms}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "verifier,subject,check,passed,detail\n";
      for (const auto& ch : rep.checks)
        out << rep.verifier << "," << csv_field(rep.subject) << "," << csv_field(ch.name) << ","
            << (ch.passed ? "true" : "false") << "," << csv_field(ch.detail) << "\n";
      break;
    case Format::Text:
      out << rep.verifier << ": " << rep.subject << "\n";
      for (const auto& ch : rep.checks)
        out << (ch.passed ? "  PASS " : "  FAIL ") << ch.name << (ch.detail.empty() ? "" : " (" + ch.detail + ")") << "\n";
      for (const auto& [k, v] : rep.values) out << "  " << k << " = " << v << "\n";
      for (const auto& row : rep.rows) {
        out << "  -";
        for (const auto& [k, v] : row) out << " " << k << "=" << v;
        out << "\n";
      }
      out << (rep.passed() ? "pass" : "FAIL") << "\n";
      break;
  }
  return rep.passed() ? 0 : 1;
}

inline void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_flag("--json", c.json, "JSON output");
  sub->add_flag("--csv", c.csv, "CSV output");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--seed", c.seed, "seed for sampled choices");
  sub->add_option("--max-subrings", c.max_subrings, "subring / closure budget");
  sub->add_option("--time-budget", c.time_budget_ms, "time budget in milliseconds");
  sub->add_option("--cap", c.cap, "element-count cap (overrides RINGLAB_CAP)");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ringlab: finite rings, unit groups and minimal simple rings"};
  app.require_subcommand(1);
  RunConfig c;

  auto* classify = app.add_subcommand("classify", "classify a ring expression");
  classify->add_option("ring", c.ring, "ring expression")->required();
  classify->add_flag("--oracle", c.oracle, "also run the subring oracle");
  classify->add_option("--strategy", c.strategy, "oracle strategy")->check(CLI::IsMember({"exhaustive", "unit_pairs"}));
  detail::add_common(classify, c);

  auto* units = app.add_subcommand("units", "unit group order and derived series");
  units->add_option("ring", c.ring, "ring expression")->required();
  detail::add_common(units, c);

  auto* lattice = app.add_subcommand("lattice", "unitary subring lattice");
  lattice->add_option("ring", c.ring, "ring expression")->required();
  lattice->add_flag("--stats", c.stats, "extra statistics");
  detail::add_common(lattice, c);

  auto* verify = app.add_subcommand("verify", "run a verifier");
  verify->add_option("verifier", c.verifier, "lemma32 | gamma | theorem35 | psl | theta")
      ->required()
      ->check(CLI::IsMember({"lemma32", "gamma", "theorem35", "psl", "theta"}));
  verify->add_option("--n", c.n, "matrix size");
  verify->add_option("--q", c.q, "field order");
  verify->add_option("--part", c.part, "lemma part (1, 2 or 3)")->check(CLI::Range(1, 3));
  verify->add_option("--ring", c.ring, "ring expression (gamma)");
  verify->add_option("--p", c.p, "prime (theorem35)");
  verify->add_option("--mode", c.mode, "catalog | probe (theorem35)")->check(CLI::IsMember({"catalog", "probe"}));
  verify->add_option("--samples", c.samples, "conjugate samples (lemma32 part 3)");
  detail::add_common(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::optional<ScopedCap> cap;
  if (c.cap) cap.emplace(c.cap);
  try {
    if (classify->parsed()) return detail::cmd_classify(c, out);
    if (units->parsed()) return detail::cmd_units(c, out);
    if (lattice->parsed()) return detail::cmd_lattice(c, out);
    if (c.verifier == "gamma" && c.ring.empty()) {
      err << "verify gamma needs --ring\n";
      return 2;
    }
    return detail::cmd_verify(c, out);
  } catch (const ParseError& e) {
    err << c.ring << "\n" << std::string(e.offset(), ' ') << "^\n" << e.what() << "\n";
    return 2;
  } catch (const ExprError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace ringlab::cli
