#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "props.hpp"
#include "sesscheck/automaton/language.hpp"
#include "sesscheck/automaton/spec.hpp"
#include "sesscheck/kernel/registry.hpp"
#include "sesscheck/kernel/serialize.hpp"
#include "sesscheck/kernel/step.hpp"
#include "sesscheck/logrel/check.hpp"
#include "sesscheck/proclang/dynamics.hpp"
#include "sesscheck/proclang/term.hpp"
#include "sesscheck/proclang/typecheck.hpp"
#include "sesscheck/types/session_type.hpp"

namespace {

using nlohmann::json;
using namespace sesscheck;

// exit codes: 0 compliant / well-typed / suites clean
//             1 non-compliant, ill-typed, or counterexample found
//             2 unreadable or unparseable input
//             3 inconclusive (budget ran out)
constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUnknown = 3;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SESSCHECK_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      return 0;
    }
  }
  return 0;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Output {
  bool json_mode = false;
  bool timings = false;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  long long wall_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - started)
        .count();
  }

  // Reports are byte-identical across runs unless --timings is on.
  int emit(json j, std::vector<std::string> plain, int code) {
    if (timings) {
      long long ms = wall_ms();
      j["wall_ms"] = ms;
      plain.push_back("wall: " + std::to_string(ms) + " ms");
    } else {
      j["wall_ms"] = nullptr;
    }
    if (json_mode) {
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& line : plain) std::cout << line << "\n";
    }
    return code;
  }

  int bad_input(const std::string& command, const std::string& message) {
    if (json_mode) {
      std::cout << json{{"command", command}, {"error", message}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << message << "\n";
    }
    return kExitBadInput;
  }
};

json budget_json(const logrel::Budget& b) {
  return json{{"fuel", b.silent_fuel},
              {"peers", b.lolli_peers},
              {"names", b.name_samples},
              {"partition_limit", b.partition_limit},
              {"seed", b.seed}};
}

std::string budget_line(const logrel::Budget& b) {
  std::ostringstream out;
  out << "budget: fuel=" << b.silent_fuel << " peers=" << b.lolli_peers
      << " names=" << b.name_samples << " partition-limit=" << b.partition_limit
      << " seed=" << b.seed;
  return out.str();
}

void add_budget_flags(CLI::App* cmd, logrel::Budget& b) {
  cmd->add_option("--fuel", b.silent_fuel, "silent exploration depth per protocol layer")
      ->capture_default_str();
  cmd->add_option("--peers", b.lolli_peers, "peer processes sampled per function type")
      ->capture_default_str();
  cmd->add_option("--names", b.name_samples, "fresh names tried per received channel")
      ->capture_default_str();
  cmd->add_option("--partition-limit", b.partition_limit,
                  "largest configuration split exhaustively after a channel send")
      ->capture_default_str();
}

json derivation_json(const proclang::Derivation& d) {
  json children = json::array();
  for (const auto& c : d.children) children.push_back(derivation_json(c));
  return json{{"rule", d.rule}, {"type", d.type}, {"children", std::move(children)}};
}

void derivation_lines(const proclang::Derivation& d, int indent, std::vector<std::string>& out) {
  out.push_back(std::string(2 * indent + 2, ' ') + d.rule + " :: " + d.type);
  for (const auto& c : d.children) derivation_lines(c, indent + 1, out);
}

json type_error_json(const proclang::TypeError& e) {
  return json{{"kind", to_string(e.kind)}, {"message", e.message}, {"path", e.path}};
}

std::string type_error_line(const proclang::TypeError& e) {
  std::string at = e.path.empty() ? "at the root" : "at " + e.path;
  return "error: " + to_string(e.kind) + " " + at + ": " + e.message;
}

// ---- typecheck ----

struct TypecheckArgs {
  std::string file;
  std::string protocol;
};

int run_typecheck(const TypecheckArgs& args, Output& out) {
  auto text = read_file(args.file);
  if (!text) return out.bad_input("typecheck", "cannot read " + args.file);

  types::TypeRef type;
  try {
    type = types::parse_type(args.protocol);
  } catch (const types::TypeParseError& e) {
    return out.bad_input("typecheck", std::string("bad protocol: ") + e.what());
  }
  proclang::TermRef term;
  try {
    term = proclang::parse_term(*text);
  } catch (const proclang::TermParseError& e) {
    return out.bad_input("typecheck", std::string("bad term: ") + e.what());
  }

  json j{{"command", "typecheck"},
         {"file", args.file},
         {"protocol", types::print_type(type)},
         {"digest", hex16(fnv1a(*text + "\n" + args.protocol))}};
  std::vector<std::string> plain{
      "typecheck " + args.file + " :: " + types::print_type(type),
      "digest: " + j["digest"].get<std::string>()};

  proclang::CheckResult res = proclang::check_term({}, term, type);
  if (res.ok()) {
    j["result"] = "well-typed";
    j["derivation"] = derivation_json(*res.derivation);
    plain.push_back("result: well-typed");
    plain.push_back("derivation:");
    derivation_lines(*res.derivation, 0, plain);
    return out.emit(std::move(j), std::move(plain), kExitOk);
  }
  j["result"] = "type-error";
  j["error"] = type_error_json(*res.error);
  plain.push_back("result: type-error");
  plain.push_back(type_error_line(*res.error));
  return out.emit(std::move(j), std::move(plain), kExitRefuted);
}

// ---- check ----

struct CheckArgs {
  std::string file;
  std::string protocol;
  logrel::Budget budget;
  bool untyped = false;
};

int run_check(const CheckArgs& args, Output& out) {
  auto text = read_file(args.file);
  if (!text) return out.bad_input("check", "cannot read " + args.file);

  types::TypeRef type;
  try {
    type = types::parse_type(args.protocol);
  } catch (const types::TypeParseError& e) {
    return out.bad_input("check", std::string("bad protocol: ") + e.what());
  }

  json j{{"command", "check"},
         {"file", args.file},
         {"protocol", types::print_type(type)},
         {"digest", hex16(fnv1a(*text + "\n" + args.protocol))},
         {"budget", budget_json(args.budget)}};
  std::vector<std::string> plain{"check " + args.file + " :: " + types::print_type(type),
                                 "digest: " + j["digest"].get<std::string>(),
                                 budget_line(args.budget)};

  std::optional<kernel::NamelessConfiguration> object;
  if (ends_with(args.file, ".json")) {
    try {
      object = automata::automaton_config(automata::load_automaton(*text));
    } catch (const Error& e) {
      return out.bad_input("check", std::string("bad machine: ") + e.what());
    }
  } else {
    proclang::TermRef term;
    try {
      term = proclang::parse_term(*text);
    } catch (const proclang::TermParseError& e) {
      return out.bad_input("check", std::string("bad term: ") + e.what());
    }
    if (!args.untyped) {
      proclang::CheckResult res = proclang::check_term({}, term, type);
      if (!res.ok()) {
        j["verdict"] = json{{"value", "ill-typed"}, {"error", type_error_json(*res.error)}};
        plain.push_back("verdict: ill-typed (pass --untyped to check the semantics anyway)");
        plain.push_back(type_error_line(*res.error));
        return out.emit(std::move(j), std::move(plain), kExitRefuted);
      }
    }
    try {
      object = proclang::term_config(term);
    } catch (const Error& e) {
      return out.bad_input("check", std::string("bad term: ") + e.what());
    }
  }

  logrel::Verdict verdict = logrel::check_config(*object, type, args.budget);
  j["verdict"] = json::parse(logrel::verdict_to_json(verdict));

  const logrel::CheckStats& st = verdict.stats;
  std::ostringstream stats;
  stats << "stats: closures=" << st.closures << " candidates=" << st.value_candidates
        << " memo-hits=" << st.memo_hits << " partitions=" << st.partitions_tried
        << " replays=" << st.steps_replayed;

  switch (verdict.value) {
    case logrel::Compliance::Compliant:
      plain.push_back(verdict.approximate
                          ? "verdict: compliant (approximate: function types sampled)"
                          : "verdict: compliant");
      plain.push_back(stats.str());
      plain.push_back("witness:");
      plain.push_back(json::parse(logrel::witness_to_json(*verdict.witness)).dump(2));
      return out.emit(std::move(j), std::move(plain), kExitOk);
    case logrel::Compliance::NonCompliant:
      plain.push_back("verdict: non-compliant");
      plain.push_back(stats.str());
      if (verdict.failure) {
        plain.push_back("failure: " + verdict.failure->reason);
        plain.push_back("  type: " + verdict.failure->type);
        plain.push_back("  depth: " + std::to_string(verdict.failure->depth));
        plain.push_back("  config: " + verdict.failure->config.canonical_key());
      }
      return out.emit(std::move(j), std::move(plain), kExitRefuted);
    case logrel::Compliance::Unknown:
      plain.push_back("verdict: unknown");
      plain.push_back(stats.str());
      plain.push_back("reason: " + verdict.unknown_reason);
      return out.emit(std::move(j), std::move(plain), kExitUnknown);
  }
  return kExitUnknown;
}

// ---- run ----

struct RunArgs {
  std::string file;
  int fuel = 16;
  bool all = false;
};

void successor_tree(const kernel::Configuration& config, int depth, int indent,
                    std::vector<std::string>& plain, json& nodes) {
  if (depth <= 0) return;
  auto succ = kernel::step(config);
  std::sort(succ.begin(), succ.end(), [](const auto& a, const auto& b) {
    auto ka = std::make_pair(to_string(a.first), a.second.canonical_key());
    auto kb = std::make_pair(to_string(b.first), b.second.canonical_key());
    return ka < kb;
  });
  for (const auto& [action, next] : succ) {
    std::string key = next.canonical_key();
    plain.push_back(std::string(2 * indent + 2, ' ') + to_string(action) + " -> " + key);
    json node{{"action", to_string(action)}, {"config", key}, {"children", json::array()}};
    successor_tree(next, depth - 1, indent + 1, plain, node["children"]);
    nodes.push_back(std::move(node));
  }
}

int run_run(const RunArgs& args, Output& out) {
  auto text = read_file(args.file);
  if (!text) return out.bad_input("run", "cannot read " + args.file);

  std::optional<kernel::Configuration> config;
  try {
    config = kernel::config_from_json(*text);
  } catch (const Error& e) {
    return out.bad_input("run", std::string("bad configuration: ") + e.what());
  }

  json j{{"command", "run"},
         {"file", args.file},
         {"digest", hex16(fnv1a(*text))},
         {"fuel", args.fuel},
         {"start", config->canonical_key()}};
  std::vector<std::string> plain{"run " + args.file,
                                 "digest: " + j["digest"].get<std::string>(),
                                 "fuel: " + std::to_string(args.fuel),
                                 "start: " + config->canonical_key()};

  if (args.all) {
    plain.push_back("successor tree:");
    json nodes = json::array();
    successor_tree(*config, args.fuel, 0, plain, nodes);
    j["tree"] = std::move(nodes);
    return out.emit(std::move(j), std::move(plain), kExitOk);
  }

  // one deterministic silent execution: always the least successor
  json trace = json::array();
  kernel::Configuration current = *config;
  int steps = 0;
  std::string stopped = "stuck";
  while (steps < args.fuel) {
    auto succ = kernel::step(current);
    std::optional<kernel::Configuration> next;
    for (const auto& [action, residual] : succ) {
      if (!action.is_silent()) continue;
      if (!next || residual.canonical_key() < next->canonical_key()) next = residual;
    }
    if (!next) break;
    current = *next;
    ++steps;
    std::string key = current.canonical_key();
    trace.push_back(json{{"action", "eps"}, {"config", key}});
    plain.push_back("step " + std::to_string(steps) + ": eps -> " + key);
  }
  if (steps == args.fuel) stopped = "fuel";
  j["trace"] = std::move(trace);
  j["stopped"] = stopped;
  plain.push_back("silent steps: " + std::to_string(steps));
  plain.push_back(stopped == "stuck" ? "stopped: stuck (no silent successor)"
                                     : "stopped: fuel exhausted");
  return out.emit(std::move(j), std::move(plain), kExitOk);
}

// ---- fuzz ----

struct FuzzArgs {
  std::string mode;
  int count = 0;
  std::uint64_t seed = 0;
  logrel::Budget budget;
};

int run_fuzz(const FuzzArgs& args, Output& out) {
  logrel::Budget budget = args.budget;
  budget.seed = args.seed;

  std::vector<props::SuiteResult> results;
  if (args.mode == "ftlr") {
    results.push_back(props::ftlr_suite(args.count, args.seed, budget));
  } else if (args.mode == "adequacy") {
    results.push_back(props::adequacy_suite(args.count, args.seed, budget.silent_fuel));
  } else {
    results = props::lemma_suites(args.count, args.seed);
  }

  bool ok = true;
  json suites = json::array();
  std::vector<std::string> plain{"fuzz " + args.mode + " count=" + std::to_string(args.count) +
                                     " seed=" + std::to_string(args.seed),
                                 budget_line(budget)};
  for (const auto& r : results) {
    ok = ok && r.ok();
    suites.push_back(json{{"name", r.name},
                          {"ran", r.ran},
                          {"failed", r.failed},
                          {"unknown", r.unknown},
                          {"unknown_strict", r.unknown_strict},
                          {"repro", r.repro}});
    std::ostringstream line;
    line << "suite " << r.name << ": ran=" << r.ran << " failed=" << r.failed
         << " unknown=" << r.unknown;
    plain.push_back(line.str());
    if (!r.ok()) plain.push_back("counterexample (" + r.name + "): " + r.repro);
  }
  plain.push_back(ok ? "ok" : "FAIL");

  json j{{"command", "fuzz"}, {"mode", args.mode},     {"count", args.count},
         {"seed", args.seed}, {"budget", budget_json(budget)}, {"suites", std::move(suites)},
         {"ok", ok}};
  return out.emit(std::move(j), std::move(plain), ok ? kExitOk : kExitRefuted);
}

}  // namespace

int main(int argc, char** argv) {
  register_builtin_languages();

  CLI::App app{"Protocol compliance toolkit: typecheck, simulate, and semantically "
               "verify message-passing processes against behavioral types"};
  app.require_subcommand(1);

  Output out;
  app.add_flag("--json", out.json_mode, "machine-readable reports");
  app.add_flag("--timings", out.timings, "include wall-clock time (breaks byte determinism)");

  TypecheckArgs tc;
  CLI::App* tc_cmd = app.add_subcommand("typecheck", "linear typecheck of a process term");
  tc_cmd->add_option("file", tc.file, "term file")->required();
  tc_cmd->add_option("protocol", tc.protocol, "session type, e.g. \"(1 (+) 1) & 1\"")->required();

  CheckArgs ck;
  ck.budget.seed = default_seed();
  CLI::App* ck_cmd = app.add_subcommand(
      "check", "semantic protocol compliance of a machine (.json) or process term");
  ck_cmd->add_option("file", ck.file, "machine .json or term file")->required();
  ck_cmd->add_option("protocol", ck.protocol, "session type to check against")->required();
  ck_cmd->add_flag("--untyped", ck.untyped, "skip the typechecker for term files");
  ck_cmd->add_option("--seed", ck.budget.seed, "peer sampling seed (default: SESSCHECK_SEED)");
  add_budget_flags(ck_cmd, ck.budget);

  RunArgs rn;
  CLI::App* rn_cmd = app.add_subcommand("run", "execute a serialized configuration");
  rn_cmd->add_option("file", rn.file, "configuration .json")->required();
  rn_cmd->add_option("--fuel", rn.fuel, "maximum steps")->capture_default_str();
  rn_cmd->add_flag("--all", rn.all, "print the full successor tree instead of one silent run");

  FuzzArgs fz;
  fz.seed = default_seed();
  CLI::App* fz_cmd =
      app.add_subcommand("fuzz", "randomized property suites over generated processes");
  fz_cmd->add_option("mode", fz.mode, "ftlr | adequacy | lemmas")
      ->required()
      ->check(CLI::IsMember({"ftlr", "adequacy", "lemmas"}));
  fz_cmd->add_option("count", fz.count, "cases per suite")->required();
  fz_cmd->add_option("seed", fz.seed, "random seed (default: SESSCHECK_SEED)");
  add_budget_flags(fz_cmd, fz.budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  if (*tc_cmd) return run_typecheck(tc, out);
  if (*ck_cmd) return run_check(ck, out);
  if (*rn_cmd) return run_run(rn, out);
  return run_fuzz(fz, out);
}
