#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chorefair.hpp"

namespace chorefair::cli {

enum ExitCode { kOk = 0, kFailed = 1, kInvalid = 2 };

enum class LogLevel { quiet = 0, error = 1, info = 2, debug = 3 };

inline LogLevel log_level_from_env() {
  const char* v = std::getenv("CHOREFAIR_LOG");
  if (v == nullptr) return LogLevel::error;
  const std::string s(v);
  if (s == "quiet" || s == "0") return LogLevel::quiet;
  if (s == "info" || s == "2") return LogLevel::info;
  if (s == "debug" || s == "3") return LogLevel::debug;
  return LogLevel::error;
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
  LogLevel level = log_level_from_env();

  void log(LogLevel at, const std::string& message) const {
    if (at <= level) err << message << '\n';
  }
};

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

struct Source {
  std::string input;
  std::string builtin_name;

  void add_to(CLI::App* cmd) {
    auto* in = cmd->add_option("-i,--input", input, "Instance JSON file ('-' for stdin)");
    auto* bi = cmd->add_option("-b,--builtin", builtin_name, "Named builtin instance");
    in->excludes(bi);
  }

  Instance load() const {
    if (!builtin_name.empty()) return builtin(builtin_name);
    if (input.empty()) throw InvalidInput("one of --input or --builtin is required");
    return parse_instance(read_file(input));
  }
};

inline SolveReport dispatch(const Instance& inst, const std::string& algorithm, const SolverOptions& options) {
  std::string name = algorithm;
  if (name == "auto") {
    switch (inst.declared_class()) {
      case FunctionClass::additive: name = "additive"; break;
      case FunctionClass::cancelable: name = "cancelable"; break;
      case FunctionClass::submodular: name = "submodular"; break;
      case FunctionClass::general: name = "general"; break;
    }
  }
  if (name == "additive") return solve_additive(inst, options);
  if (name == "cancelable") return solve_cancelable(inst, options);
  if (name == "submodular") return solve_submodular(inst, options);
  if (name == "general") return solve_general(inst, options);
  throw InvalidInput("unknown algorithm '" + algorithm + "'");
}

struct PoVerdict {
  std::optional<bool> po;
  std::string method;
  std::optional<Allocation> dominating;
};

/// PO by enumeration when small enough; for additive instances also by the
/// exact criterion that every item goes to a zero-cost agent when one exists.
inline PoVerdict check_po(const Instance& inst, const Allocation& x, std::uint64_t limit) {
  PoVerdict v;
  if (!x.complete()) {
    v.po = false;
    v.method = "incomplete";
    return v;
  }
  const auto count = allocation_count(inst.agent_count(), inst.item_count());
  if (count && *count <= limit) {
    const ParetoResult r = is_po_bruteforce(inst, x, limit);
    v.po = r.pareto_optimal;
    v.dominating = r.dominating;
    v.method = "enumeration";
    return v;
  }
  if (inst.declared_class() == FunctionClass::additive) {
    bool ok = true;
    for (int e = 0; e < inst.item_count() && ok; ++e) {
      const int owner = x.owner_of(e);
      if (inst.cost(owner, ItemSet::single(e)) == 0) continue;
      for (int i = 0; i < inst.agent_count(); ++i) {
        if (inst.cost(i, ItemSet::single(e)) == 0) ok = false;
      }
    }
    v.po = ok;
    v.method = "zero-cost owners";
  }
  return v;
}

inline Json po_json(const PoVerdict& v) {
  Json j;
  j["po"] = v.po ? Json(*v.po) : Json(nullptr);
  j["method"] = v.method.empty() ? Json(nullptr) : Json(v.method);
  if (v.dominating) j["dominating_allocation"] = to_json(*v.dominating);
  return j;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  Source source;
  std::string algorithm = "auto";
  std::string output;
  std::string trace;
  bool verify = false;
  bool json = false;
  std::uint64_t limit = kDefaultEnumerationLimit;
};

inline int run_solve(const SolveArgs& a, const Streams& io) {
  const Instance inst = a.source.load();
  SolverOptions options;
  options.trace = !a.trace.empty();
  const SolveReport report = dispatch(inst, a.algorithm, options);
  io.log(LogLevel::info, "solver: " + report.algorithm + ", guarantee " + std::string(to_string(report.guarantee)));
  io.log(LogLevel::debug, "counters: " + to_json(report.counters).dump());

  if (!a.trace.empty()) {
    std::ostringstream lines;
    for (const auto& ev : report.trace) lines << to_json(ev).dump() << '\n';
    if (a.trace == "-") io.err << lines.str(); else write_file(a.trace, lines.str());
  }

  Json out = to_json(report);
  int code = kOk;
  if (a.verify) {
    const int n = inst.agent_count();
    const Allocation& x = report.allocation;
    x.validate(n, inst.item_count());
    Json checks = Json::array();
    auto check = [&](const std::string& name, bool ok) {
      checks.push_back({{"criterion", name}, {"ok", ok}});
      if (!ok) code = kFailed;
    };
    std::optional<PoVerdict> po;
    switch (report.guarantee) {
      case Guarantee::efx_and_po:
        check("complete", x.complete());
        check("efx", is_alpha_efx(inst, x).ok);
        po = check_po(inst, x, a.limit);
        if (po->po) check("po", *po->po);
        else io.err << "note: PO not checked (instance too large to enumerate)\n";
        break;
      case Guarantee::efx:
        check("complete", x.complete());
        check("efx", is_alpha_efx(inst, x).ok);
        po = check_po(inst, x, a.limit);
        break;
      case Guarantee::partial_ef:
        check("ef", is_alpha_ef(inst, x).ok);
        check("unallocated<=n-1", x.unallocated.size() <= n - 1);
        break;
      case Guarantee::two_ef:
        check("complete", x.complete());
        check("2-ef", is_alpha_ef(inst, x, Ratio{2, 1}).ok);
        break;
      case Guarantee::two_efx:
        check("complete", x.complete());
        check("2-efx", is_alpha_efx(inst, x, Ratio{2, 1}).ok);
        break;
    }
    Json verification;
    verification["ok"] = code == kOk;
    verification["checks"] = checks;
    if (po) verification["pareto"] = po_json(*po);
    out["verification"] = verification;

    std::string tag(to_string(report.guarantee));
    if (report.guarantee == Guarantee::partial_ef && x.complete()) tag += " (complete-EF)";
    io.err << "guarantee: " << tag << '\n';
    io.err << "verified: " << (code == kOk ? "yes" : "NO") << '\n';
    if (po && report.guarantee != Guarantee::efx_and_po && po->po) {
      io.err << "note: " << (*po->po ? "PO" : "not PO") << '\n';
    }
    for (const auto& c : checks) {
      if (!c["ok"].get<bool>()) io.err << "failed: " << c["criterion"].get<std::string>() << '\n';
    }
  }

  if (!a.output.empty()) write_file(a.output, to_json(report.allocation).dump(2) + "\n");
  if (a.json) io.out << out.dump(2) << '\n';
  else if (a.output.empty()) io.out << to_json(report.allocation).dump(2) << '\n';
  return code;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Source source;
  std::string allocation;
  std::vector<std::string> criteria;
  std::uint64_t limit = kDefaultEnumerationLimit;
};

inline int run_verify(const VerifyArgs& a, const Streams& io) {
  const Instance inst = a.source.load();
  const Allocation x = parse_allocation(read_file(a.allocation));
  x.validate(inst.agent_count(), inst.item_count());

  std::vector<std::string> criteria = a.criteria;
  if (criteria.empty()) criteria = {"ef", "efx", "social-cost"};
  Ratio alpha;
  for (const auto& c : criteria) {
    if (c.rfind("alpha-ef:", 0) == 0) alpha = Ratio::parse(c.substr(9));
    else if (c.rfind("alpha-efx:", 0) == 0) alpha = Ratio::parse(c.substr(10));
  }
  FairnessReport fr = fairness_report(inst, x, Ratio{}, false);
  Json out = to_json(fr);
  Json results = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, const CheckResult* r) {
    Json j;
    j["criterion"] = name;
    j["ok"] = ok;
    if (r != nullptr) {
      Json vs = Json::array();
      for (const auto& v : r->violations) vs.push_back(to_json(v));
      j["violations"] = vs;
    }
    results.push_back(j);
    all = all && ok;
    if (ok) return;
    io.err << "criterion " << name << " fails\n";
    if (r == nullptr) return;
    for (const auto& v : r->violations) {
      io.err << "  agent " << v.i << " envies agent " << v.j;
      if (v.item) io.err << " after removing item " << *v.item;
      io.err << '\n';
    }
  };
  for (const auto& c : criteria) {
    if (c == "ef") {
      const auto r = is_alpha_ef(inst, x);
      record(c, r.ok, &r);
    } else if (c == "efx") {
      const auto r = is_alpha_efx(inst, x);
      record(c, r.ok, &r);
    } else if (c.rfind("alpha-efx:", 0) == 0) {
      const Ratio r_alpha = Ratio::parse(c.substr(10));
      require_alpha(r_alpha);
      const auto r = is_alpha_efx(inst, x, r_alpha);
      record(c, r.ok, &r);
    } else if (c.rfind("alpha-ef:", 0) == 0) {
      const Ratio r_alpha = Ratio::parse(c.substr(9));
      require_alpha(r_alpha);
      const auto r = is_alpha_ef(inst, x, r_alpha);
      record(c, r.ok, &r);
    } else if (c == "po") {
      const PoVerdict v = check_po(inst, x, a.limit);
      if (!v.po) {
        throw UnsupportedSize("po: instance too large to enumerate (raise --limit)");
      }
      out["po"] = *v.po;
      out["po_method"] = v.method;
      if (v.dominating) {
        out["dominating_allocation"] = to_json(*v.dominating);
        io.err << "dominated by " << to_json(*v.dominating).dump() << '\n';
      }
      record(c, *v.po, nullptr);
    } else if (c == "social-cost") {
      record(c, true, nullptr);
    } else {
      throw InvalidInput("unknown criterion '" + c + "'");
    }
  }
  if (alpha != Ratio{}) out["alpha"] = alpha.to_string();
  out["criteria"] = results;
  io.out << out.dump(2) << '\n';
  return all ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct CheckClassArgs {
  Source source;
  std::optional<int> agent;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
};

inline int run_check_class(const CheckClassArgs& a, const Streams& io) {
  const Instance inst = a.source.load();
  Json reports = Json::array();
  for (int i = 0; i < inst.agent_count(); ++i) {
    if (a.agent && *a.agent != i) continue;
    const bool sample = a.samples.has_value() || inst.item_count() > kMaxTableItems;
    const FunctionClassReport r = sample
        ? check_class_sampled(inst.agent(i), a.samples.value_or(kDefaultClassSamples), a.seed)
        : check_class(inst.agent(i));
    Json j = to_json(r);
    j["agent"] = i;
    j["kind"] = std::string(inst.agent(i).kind());
    reports.push_back(j);
    io.log(LogLevel::info, "agent " + std::to_string(i) + ": " + std::string(to_string(r.strongest())));
  }
  if (a.agent && reports.empty()) throw InvalidInput("no agent " + std::to_string(*a.agent));
  Json out;
  out["declared_class"] = std::string(to_string(inst.declared_class()));
  out["agents"] = reports;
  io.out << out.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  Source source;
  std::string report = "all";
  unsigned jobs = 1;
  std::uint64_t limit = kDefaultEnumerationLimit;
  std::size_t max_listed = 1000;
  std::string dump;
};

inline int run_enumerate(const EnumerateArgs& a, const Streams& io) {
  const Instance inst = a.source.load();
  EnumerationOptions options{a.limit, a.jobs, a.max_listed};
  const auto t0 = std::chrono::steady_clock::now();
  Json out;
  std::optional<bool> efx_po_exists;
  if (a.report == "efx") {
    const EfxSearchResult r = efx_exists_search(inst, options);
    out["exists"] = r.exists;
    out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  } else {
    const EnumerationReport r = analyze(inst, options);
    Json full = to_json(r);
    efx_po_exists = r.efx_and_po_exists;
    if (a.report == "all") {
      out = full;
    } else if (a.report == "frontier") {
      out["total_allocations"] = r.total_allocations;
      out["frontier_count"] = full["frontier_count"];
      out["pareto_frontier"] = full["pareto_frontier"];
      out["frontier_costs"] = full["frontier_costs"];
      out["truncated"] = r.truncated;
    } else if (a.report == "efx-po") {
      out["total_allocations"] = r.total_allocations;
      out["exists"] = r.efx_and_po_exists;
      out["witness"] = full["efx_and_po_witness"];
      out["efx_count"] = r.efx_count;
      out["frontier_count"] = r.frontier_count;
    } else {
      throw InvalidInput("unknown report '" + a.report + "'");
    }
    if (!a.dump.empty() && !r.efx_and_po_exists) {
      Json dump;
      dump["instance"] = to_json(inst);
      dump["pareto_frontier"] = full["pareto_frontier"];
      dump["efx_allocations"] = full["efx_allocations"];
      write_file(a.dump, dump.dump(2) + "\n");
      io.err << "no EFX and PO allocation; counterexample written to " << a.dump << '\n';
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  io.log(LogLevel::info, "enumeration took " + std::to_string(ms) + " ms with " + std::to_string(a.jobs) + " job(s)");
  io.out << out.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::string builtin_name;
  int n = 2;
  int m = 6;
  std::uint64_t seed = 0;
  GeneratorParams params;
  std::string output;
};

inline int run_generate(const GenerateArgs& a, const Streams& io) {
  if (a.family.empty() == a.builtin_name.empty()) throw InvalidInput("give exactly one of --family or --builtin");
  const Instance inst = a.builtin_name.empty() ? generate(a.family, a.n, a.m, a.seed, a.params) : builtin(a.builtin_name);
  const std::string text = serialize_instance(inst);
  if (a.output.empty()) io.out << text; else write_file(a.output, text);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string family = "binary_additive";
  std::string sizes = "2x8..6x24";
  std::string algorithm = "auto";
  int reps = 5;
  std::uint64_t seed = 1;
  bool json = false;
};

/// "AxB..CxD" expands to n in [A, C] and m in {B, 2B, ..., D}; "AxB,CxD"
/// lists sizes explicitly.
inline std::vector<std::pair<int, int>> parse_sizes(const std::string& text) {
  auto parse_pair = [&](const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw InvalidInput("malformed size '" + s + "', expected NxM");
    try {
      return std::pair<int, int>{std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    } catch (const std::exception&) {
      throw InvalidInput("malformed size '" + s + "'");
    }
  };
  std::vector<std::pair<int, int>> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto [n0, m0] = parse_pair(text.substr(0, dots));
    const auto [n1, m1] = parse_pair(text.substr(dots + 2));
    if (n0 < 1 || m0 < 1 || n1 < n0 || m1 < m0) throw InvalidInput("empty size range '" + text + "'");
    for (int n = n0; n <= n1; ++n) {
      for (int m = m0; m <= m1; m += m0) out.emplace_back(n, m);
    }
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_pair(part));
  }
  return out;
}

struct BenchRow {
  int n = 0, m = 0, instances = 0;
  double max_ms = 0, mean_ms = 0;
  std::uint64_t max_evaluations = 0;
  double mean_evaluations = 0;
  double ratio = 0;
  std::uint64_t max_phase2 = 0;
};

inline std::vector<BenchRow> bench(Family family, const std::vector<std::pair<int, int>>& sizes,
                                   const std::string& algorithm, int reps, std::uint64_t seed) {
  SolverOptions options;
  options.check_invariants = false;
  options.verify_class = false;
  std::vector<BenchRow> rows;
  for (const auto& [n, m] : sizes) {
    BenchRow row{.n = n, .m = m, .instances = reps};
    for (int r = 0; r < reps; ++r) {
      const Instance inst = generate(family, n, m, seed + static_cast<std::uint64_t>(r) * 7919U);
      const auto t0 = std::chrono::steady_clock::now();
      const SolveReport rep = dispatch(inst, algorithm, options);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      row.max_ms = std::max(row.max_ms, ms);
      row.mean_ms += ms / reps;
      row.max_evaluations = std::max(row.max_evaluations, rep.counters.evaluations);
      row.mean_evaluations += static_cast<double>(rep.counters.evaluations) / reps;
      row.max_phase2 = std::max(row.max_phase2, rep.counters.phase2_iterations);
    }
    row.ratio = static_cast<double>(row.max_evaluations) / (static_cast<double>(n) * m * m);
    rows.push_back(row);
  }
  return rows;
}

inline int run_bench(const BenchArgs& a, const Streams& io) {
  if (a.reps < 1) throw InvalidInput("--reps must be positive");
  const Family family = parse_family(a.family);
  const auto rows = bench(family, parse_sizes(a.sizes), a.algorithm, a.reps, a.seed);
  double fitted = 0;
  bool phase2_ok = true;
  for (const auto& r : rows) {
    fitted = std::max(fitted, r.ratio);
    phase2_ok = phase2_ok && r.max_phase2 <= 2U * static_cast<std::uint64_t>(r.m);
  }
  if (a.json) {
    Json out;
    out["family"] = a.family;
    out["algorithm"] = a.algorithm;
    Json rs = Json::array();
    for (const auto& r : rows) {
      rs.push_back({{"n", r.n}, {"m", r.m}, {"instances", r.instances}, {"max_ms", r.max_ms},
                    {"mean_ms", r.mean_ms}, {"max_evaluations", r.max_evaluations},
                    {"mean_evaluations", r.mean_evaluations}, {"evaluations_per_nm2", r.ratio},
                    {"max_phase2_iterations", r.max_phase2}});
    }
    out["rows"] = rs;
    out["fitted_constant"] = fitted;
    out["phase2_within_2m"] = phase2_ok;
    io.out << out.dump(2) << '\n';
    return kOk;
  }
  io.out << std::setw(4) << "n" << std::setw(5) << "m" << std::setw(10) << "max_ms" << std::setw(12) << "max_evals"
         << std::setw(12) << "evals/nm^2" << std::setw(10) << "phase2" << std::setw(6) << "2m" << '\n';
  io.out << std::fixed;
  for (const auto& r : rows) {
    io.out << std::setw(4) << r.n << std::setw(5) << r.m << std::setw(10) << std::setprecision(3) << r.max_ms
           << std::setw(12) << r.max_evaluations << std::setw(12) << std::setprecision(3) << r.ratio << std::setw(10)
           << r.max_phase2 << std::setw(6) << 2 * r.m << '\n';
  }
  io.out << "fitted C = " << std::setprecision(3) << fitted << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Fair allocation of indivisible chores with binary marginal costs", "chorefair"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a fair allocation");
  solve.source.add_to(solve_cmd);
  solve_cmd->add_option("-a,--algorithm", solve.algorithm, "Solver")
      ->check(CLI::IsMember({"auto", "additive", "cancelable", "general", "submodular"}));
  solve_cmd->add_option("-o,--output", solve.output, "Write the allocation JSON here");
  solve_cmd->add_option("--trace", solve.trace, "Write trace events as JSON lines ('-' for stderr)");
  solve_cmd->add_flag("--verify", solve.verify, "Re-check the guarantee with independent checkers");
  solve_cmd->add_flag("--json", solve.json, "Print the full solve report as JSON");
  solve_cmd->add_option("--limit", solve.limit, "Enumeration limit for the PO check");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check an allocation against fairness criteria");
  verify.source.add_to(verify_cmd);
  verify_cmd->add_option("-x,--allocation", verify.allocation, "Allocation JSON file")->required();
  verify_cmd->add_option("-c,--criteria", verify.criteria,
                         "Comma-separated: ef, efx, po, alpha-ef:p/q, alpha-efx:p/q, social-cost")
      ->delimiter(',');
  verify_cmd->add_option("--limit", verify.limit, "Enumeration limit for the PO check");

  CheckClassArgs cc;
  auto* cc_cmd = app.add_subcommand("check-class", "Decide which function classes each agent belongs to");
  cc.source.add_to(cc_cmd);
  cc_cmd->add_option("--agent", cc.agent, "Only this agent");
  cc_cmd->add_option("--samples", cc.samples, "Sample this many triples instead of checking exhaustively");
  cc_cmd->add_option("--seed", cc.seed, "Sampling seed");

  EnumerateArgs en;
  auto* en_cmd = app.add_subcommand("enumerate", "Brute-force analysis of every complete allocation");
  en.source.add_to(en_cmd);
  en_cmd->add_option("-r,--report", en.report, "What to report")
      ->check(CLI::IsMember({"efx", "frontier", "efx-po", "all"}));
  en_cmd->add_option("-j,--jobs", en.jobs, "Worker threads");
  en_cmd->add_option("--limit", en.limit, "Maximum number of allocations");
  en_cmd->add_option("--max-listed", en.max_listed, "Maximum allocations listed per category");
  en_cmd->add_option("--dump-counterexample", en.dump, "Write the instance here when no EFX and PO allocation exists");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random or builtin instance");
  gen_cmd->add_option("-f,--family", gen.family, "Function family");
  gen_cmd->add_option("-b,--builtin", gen.builtin_name, "Named builtin instance");
  gen_cmd->add_option("-n,--agents", gen.n, "Number of agents");
  gen_cmd->add_option("-m,--items", gen.m, "Number of items");
  gen_cmd->add_option("-s,--seed", gen.seed, "Seed");
  gen_cmd->add_option("--p", gen.params.p, "Probability of a unit step");
  gen_cmd->add_option("--cap", gen.params.cap, "Cap for capped families");
  gen_cmd->add_option("--groups", gen.params.groups, "Number of partition-matroid groups");
  gen_cmd->add_option("--k", gen.params.k, "Threshold k");
  gen_cmd->add_option("-o,--output", gen.output, "Output file");

  BenchArgs be;
  auto* be_cmd = app.add_subcommand("bench", "Time solvers on generated families");
  be_cmd->add_option("-f,--family", be.family, "Function family");
  be_cmd->add_option("--sizes", be.sizes, "Sizes: NxM..NxM or NxM,NxM");
  be_cmd->add_option("-a,--algorithm", be.algorithm, "Solver")
      ->check(CLI::IsMember({"auto", "additive", "cancelable", "general", "submodular"}));
  be_cmd->add_option("--reps", be.reps, "Instances per size");
  be_cmd->add_option("-s,--seed", be.seed, "First seed");
  be_cmd->add_flag("--json", be.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }

  try {
    if (*solve_cmd) return run_solve(solve, io);
    if (*verify_cmd) return run_verify(verify, io);
    if (*cc_cmd) return run_check_class(cc, io);
    if (*en_cmd) return run_enumerate(en, io);
    if (*gen_cmd) return run_generate(gen, io);
    if (*be_cmd) return run_bench(be, io);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << (e.location().empty() ? "" : " (at " + e.location() + ")") << '\n';
    return kInvalid;
  } catch (const WrongClass& e) {
    err << "error: wrong class: " << e.what() << '\n';
    return kInvalid;
  } catch (const InvariantViolation& e) {
    err << "error: invariant violated: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace chorefair::cli
