#include "props.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sesscheck/automaton/language.hpp"
#include "sesscheck/kernel/step.hpp"
#include "sesscheck/logrel/witness.hpp"
#include "sesscheck/proclang/dynamics.hpp"
#include "sesscheck/proclang/harness.hpp"
#include "sesscheck/proclang/maps.hpp"
#include "sesscheck/proclang/typecheck.hpp"

namespace sesscheck::props {

using kernel::AtomicProcess;
using kernel::ChannelName;
using kernel::Configuration;
using proclang::Subst;
using proclang::Symbol;
using proclang::Term;
using proclang::TermRef;
using types::TypeRef;

namespace {

std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }

std::string subst_str(const Subst& sigma) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [k, v] : sigma) {
    if (!first) out << ", ";
    first = false;
    out << k << " -> " << to_string(v);
  }
  out << "}";
  return out.str();
}

}  // namespace

TermRef random_raw_term(Rng& rng, int depth, const std::vector<std::string>& pool) {
  auto var = [&] { return Symbol::var(pool[pick(rng, pool.size())]); };
  auto sym = [&] {
    if (pick(rng, 4) == 0) return Symbol::chan(ChannelName{1 + pick(rng, 5)});
    return var();
  };
  auto binder = [&] { return pool[pick(rng, pool.size())]; };
  auto sel = [&] { return pick(rng, 2) == 0 ? kernel::Selector::pi1 : kernel::Selector::pi2; };

  if (depth <= 0)
    return pick(rng, 2) == 0 ? Term::send_close() : Term::forward(sym());

  auto sub = [&] { return random_raw_term(rng, depth - 1, pool); };
  switch (pick(rng, 12)) {
    case 0: return Term::forward(sym());
    case 1: return Term::let(binder(), proclang::random_type(rng, 3, true), sub(), sub());
    case 2: return Term::send_close();
    case 3: return Term::recv_close(sym(), sub());
    case 4: return Term::recv_chan(binder(), sub());
    case 5: return Term::send_chan_on(sym(), sym(), sub());
    case 6: return Term::send_chan(sym(), sub());
    case 7: return Term::recv_chan_on(sym(), binder(), sub());
    case 8: return Term::recv_case(sub(), sub());
    case 9: return Term::send_sel_on(sym(), sel(), sub());
    case 10: return Term::send_sel(sel(), sub());
    default: return Term::recv_case_on(sym(), sub(), sub());
  }
}

Subst random_channel_subst(Rng& rng, const std::vector<std::string>& keys,
                           std::uint64_t max_chan) {
  Subst sigma;
  for (const auto& k : keys)
    if (pick(rng, 2) == 0) sigma.emplace(k, Symbol::chan(ChannelName{1 + pick(rng, max_chan)}));
  return sigma;
}

std::shared_ptr<const automata::AutomatonSpec> random_automaton(Rng& rng, int max_states,
                                                                int max_edges_per_state) {
  auto spec = std::make_shared<automata::AutomatonSpec>();
  int n = 1 + static_cast<int>(pick(rng, max_states));
  for (int i = 0; i < n; ++i) spec->states.push_back("Q" + std::to_string(i));
  spec->initial = "Q0";
  for (int i = 0; i < n; ++i) {
    int edges = static_cast<int>(pick(rng, max_edges_per_state + 1));
    for (int j = 0; j < edges; ++j) {
      automata::AutomatonEdge e;
      e.from = spec->states[i];
      switch (pick(rng, 3)) {
        case 0: e.kind = automata::EdgeKind::ReceiveSelector; break;
        case 1: e.kind = automata::EdgeKind::SendSelector; break;
        default: e.kind = automata::EdgeKind::SendClose; break;
      }
      if (e.kind != automata::EdgeKind::SendClose) {
        e.sel = pick(rng, 2) == 0 ? kernel::Selector::pi1 : kernel::Selector::pi2;
        e.to = spec->states[pick(rng, n)];
      }
      spec->edges.push_back(std::move(e));
    }
  }
  spec->normalize();
  spec->validate();
  return spec;
}

TermRef bitflip_client(ChannelName machine, TermRef k) {
  Symbol c = Symbol::chan(machine);
  return Term::send_sel_on(c, kernel::Selector::pi1,
                           Term::recv_case_on(c, Term::recv_close(c, k),
                                              Term::recv_close(c, k)));
}

Configuration random_machine_config(Rng& rng, int max_blocks) {
  std::vector<AtomicProcess> procs;
  std::uint64_t next = 1;
  static const char* bitflip_states[] = {"S0", "S1", "S2", "S3"};
  int blocks = 1 + static_cast<int>(pick(rng, max_blocks));
  for (int i = 0; i < blocks; ++i) {
    switch (pick(rng, 5)) {
      case 0:
        procs.push_back(AtomicProcess::proc(
            ChannelName{next++}, automata::bitflip_object(bitflip_states[pick(rng, 4)])));
        break;
      case 1: {
        auto spec = random_automaton(rng, 3, 2);
        procs.push_back(AtomicProcess::proc(
            ChannelName{next++}, automata::automaton_object(spec, spec->initial)));
        break;
      }
      case 2: {
        TypeRef a = proclang::random_type(rng, 3, true);
        procs.push_back(AtomicProcess::proc(
            ChannelName{next++}, proclang::term_object(proclang::minimal_inhabitant(a))));
        break;
      }
      case 3: {
        ChannelName machine{next++};
        procs.push_back(AtomicProcess::proc(machine, automata::bitflip_object("S0")));
        procs.push_back(AtomicProcess::proc(
            ChannelName{next++},
            proclang::term_object(bitflip_client(machine, Term::send_close()))));
        break;
      }
      default: {
        std::vector<ChannelName> targets;
        for (const auto& p : procs)
          if (p.is_proc()) targets.push_back(p.provider());
        if (targets.empty()) {
          procs.push_back(AtomicProcess::proc(ChannelName{next++},
                                              automata::bitflip_object("S0")));
        } else {
          procs.push_back(
              AtomicProcess::fwd(ChannelName{next++}, targets[pick(rng, targets.size())]));
        }
        break;
      }
    }
  }
  return Configuration::of(std::move(procs));
}

namespace {

void record_failure(SuiteResult& r, const std::string& repro) {
  ++r.failed;
  if (r.repro.empty()) r.repro = repro;
}

// Smallest (type, minimal term) pair that still fails; the original repro
// when none does.
std::string shrink_type_failure(const TypeRef& type, const logrel::Budget& budget) {
  std::vector<TypeRef> subs;
  auto walk = [&](auto&& self, const TypeRef& t) -> void {
    if (!t) return;
    if (t->kind() != types::TypeKind::One) {
      self(self, t->left());
      self(self, t->right());
    }
    subs.push_back(t);
  };
  walk(walk, type);
  std::sort(subs.begin(), subs.end(),
            [](const TypeRef& a, const TypeRef& b) { return a->size() < b->size(); });
  for (const TypeRef& s : subs) {
    TermRef m = proclang::minimal_inhabitant(s);
    logrel::Verdict v = logrel::check_config(proclang::term_config(m), s, budget);
    if (v.value == logrel::Compliance::NonCompliant)
      return "minimal inhabitant fails: term `" + proclang::print_term(m) + "` at type `" +
             types::print_type(s) + "`";
  }
  return "";
}

std::size_t term_nodes(const proclang::TermRef& t) {
  using proclang::TermKind;
  switch (t->kind()) {
    case TermKind::Forward:
    case TermKind::SendClose:
      return 1;
    case TermKind::Let:
    case TermKind::RecvCase:
    case TermKind::RecvCaseOn:
      return 1 + term_nodes(t->first()) + term_nodes(t->second());
    default:
      return 1 + term_nodes(t->first());
  }
}

// Replays the witness from the exact configuration the checker started at.
bool replay_ok(const logrel::Verdict& v, const kernel::NamelessConfiguration& nc,
               const TypeRef& type, std::string* why) {
  if (!v.witness) {
    if (why) *why = "compliant verdict carries no witness";
    return false;
  }
  ChannelName a = logrel::representative_provider(nc);
  return logrel::verify_witness(*v.witness, nc.instantiate(a), a, type, why);
}

}  // namespace

SuiteResult ftlr_suite(int count, std::uint64_t seed, const logrel::Budget& budget,
                       bool with_context, int max_type_size, int max_depth) {
  SuiteResult r;
  r.name = with_context ? "ftlr-ctx" : "ftlr";
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    TypeRef type = proclang::random_type(rng, 1 + static_cast<int>(pick(rng, max_type_size)), true);
    int depth = static_cast<int>(pick(rng, max_depth + 1));
    proclang::Context ctx;
    if (with_context) {
      int k = static_cast<int>(pick(rng, 3));
      for (int j = 0; j < k; ++j)
        ctx.emplace("c" + std::to_string(j), proclang::random_type(rng, 3, true));
    }
    bool lolli_free = !type->has_lolli();
    for (const auto& [_, t] : ctx) lolli_free = lolli_free && !t->has_lolli();

    TermRef m;
    kernel::NamelessConfiguration nc = proclang::term_config(Term::send_close());
    try {
      m = proclang::generate_well_typed(ctx, type, depth, rng);
      nc = with_context ? proclang::apply_compl(proclang::complements(ctx, 2, rng), m)
                        : proclang::term_config(m);
    } catch (const Error& e) {
      record_failure(r, std::string("construction failed: ") + e.what());
      continue;
    }

    logrel::Verdict v = logrel::check_config(nc, type, budget);
    switch (v.value) {
      case logrel::Compliance::Compliant: {
        std::string why;
        if (!replay_ok(v, nc, type, &why))
          record_failure(r, "witness replay failed (" + why + ") for `" +
                                proclang::print_term(m) + "` at `" + types::print_type(type) +
                                "`");
        break;
      }
      case logrel::Compliance::NonCompliant: {
        std::string small = shrink_type_failure(type, budget);
        record_failure(r, small.empty()
                              ? "term `" + proclang::print_term(m) + "` at type `" +
                                    types::print_type(type) + "` judged non-compliant" +
                                    (v.failure ? ": " + v.failure->reason : "")
                              : small);
        break;
      }
      case logrel::Compliance::Unknown:
        ++r.unknown;
        if (lolli_free) {
          ++r.unknown_strict;
          if (r.repro.empty())
            r.repro = "inconclusive on function-free instance `" + proclang::print_term(m) +
                      "` at `" + types::print_type(type) + "`: " + v.unknown_reason;
        }
        break;
    }
  }
  return r;
}

SuiteResult adequacy_suite(int count, std::uint64_t seed, int fuel) {
  SuiteResult r;
  r.name = "adequacy";
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    TermRef m;
    try {
      // Every silent step consumes at least one node, so a term no larger
      // than the fuel always has enough of it. Resample the rare oversized
      // draws instead of failing them on a budget they were never given.
      do {
        m = proclang::generate_well_typed(types::SessionType::one(),
                                          static_cast<int>(pick(rng, 7)), rng);
      } while (term_nodes(m) > static_cast<std::size_t>(fuel));
    } catch (const Error& e) {
      record_failure(r, std::string("construction failed: ") + e.what());
      continue;
    }
    if (!proclang::adequacy_check(m, fuel))
      record_failure(r, "`" + proclang::print_term(m) + "` never closes within fuel " +
                            std::to_string(fuel));
  }
  return r;
}

SuiteResult subst_compose_suite(int count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "subst-compose";
  Rng rng(seed);
  const std::vector<std::string> pool = {"x", "y", "z", "w"};
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    TermRef m = random_raw_term(rng, 1 + static_cast<int>(pick(rng, 4)), pool);

    Subst sigma = random_channel_subst(rng, pool, 6);
    std::string x = pool[pick(rng, pool.size())];
    sigma.erase(x);  // the lemma extends sigma at a fresh key
    Symbol b = Symbol::chan(ChannelName{1 + pick(rng, 6)});

    TermRef lhs = apply_subst(Subst{{x, b}}, apply_subst(sigma, m));
    Subst extended = sigma;
    extended.emplace(x, b);
    TermRef rhs = apply_subst(extended, m);
    if (!equal(lhs, rhs)) {
      record_failure(r, "extension mismatch: term `" + proclang::print_term(m) + "`, sigma " +
                            subst_str(sigma) + ", " + x + " -> " + to_string(b));
      continue;
    }

    // two maps over disjoint halves of the pool
    Subst first = random_channel_subst(rng, {"x", "y"}, 6);
    Subst second = random_channel_subst(rng, {"z", "w"}, 6);
    TermRef staged = apply_subst(second, apply_subst(first, m));
    TermRef fused = apply_subst(proclang::compose(second, first), m);
    if (!equal(staged, fused))
      record_failure(r, "composition mismatch: term `" + proclang::print_term(m) +
                            "`, inner " + subst_str(first) + ", outer " + subst_str(second));
  }
  return r;
}

SuiteResult discard_suite(int count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "discard";
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    proclang::Context ctx;
    int k = 1 + static_cast<int>(pick(rng, 3));
    for (int j = 0; j < k; ++j)
      ctx.emplace("c" + std::to_string(j), proclang::random_type(rng, 3, true));
    TypeRef type = proclang::random_type(rng, 4, true);

    TermRef m;
    try {
      m = proclang::generate_well_typed(ctx, type, 1 + static_cast<int>(pick(rng, 3)), rng);
    } catch (const Error& e) {
      record_failure(r, std::string("construction failed: ") + e.what());
      continue;
    }

    Subst sigma;
    std::uint64_t chan = 1;
    for (const auto& [v, _] : ctx) sigma.emplace(v, Symbol::chan(ChannelName{chan++}));
    if (!proclang::related_maps(sigma, ctx, [](const Symbol&, const TypeRef&) { return true; })) {
      record_failure(r, "substitution not related to its own context: " + subst_str(sigma));
      continue;
    }

    Subst extra;
    int extras = static_cast<int>(pick(rng, 3));
    for (int j = 0; j < extras; ++j)
      extra.emplace("q" + std::to_string(j), Symbol::chan(ChannelName{10 + pick(rng, 5)}));
    Subst joint = sigma;
    joint.insert(extra.begin(), extra.end());

    if (!equal(apply_subst(joint, m), apply_subst(sigma, m)))
      record_failure(r, "unused entries changed the result: term `" + proclang::print_term(m) +
                            "`, sigma " + subst_str(sigma) + ", extra " + subst_str(extra));
  }
  return r;
}

SuiteResult frame_suite(int count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "frame";
  Rng rng(seed);
  // The kernel allocates deterministically at one past the largest name, so
  // the literal frame equality needs the bystander's names below the framed
  // run's: that keeps both runs allocating identically.
  auto lift = [](ChannelName c) { return ChannelName{c.id + 1000}; };
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    Configuration omega = kernel::rename_configuration(random_machine_config(rng, 3), lift);
    kernel::SilentClosure closure = kernel::silent_closure(omega, 3);
    const kernel::ClosureEntry& picked =
        closure.entries[pick(rng, closure.entries.size())];

    Configuration bystander = random_machine_config(rng, 2);
    Configuration merged = omega.merged_with(bystander);
    if (!merged.well_formed()) {
      record_failure(r, "frame construction produced a duplicate provider");
      continue;
    }

    Configuration expected = picked.config.merged_with(bystander);
    kernel::SilentClosure framed = kernel::silent_closure(merged, picked.depth);
    bool found = std::any_of(framed.entries.begin(), framed.entries.end(),
                             [&](const kernel::ClosureEntry& e) { return e.config == expected; });
    if (!found)
      record_failure(r, "silent run lost under framing: start `" + omega.canonical_key() +
                            "`, reached `" + picked.config.canonical_key() + "` at depth " +
                            std::to_string(picked.depth) + ", bystander `" +
                            bystander.canonical_key() + "`");
  }
  return r;
}

SuiteResult backwards_closure_suite(int count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "backwards-closure";
  Rng rng(seed);
  logrel::Budget budget;
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    TypeRef type = proclang::random_type(rng, 4, true);
    TermRef m;
    try {
      m = proclang::generate_well_typed(type, static_cast<int>(pick(rng, 3)), rng);
    } catch (const Error& e) {
      record_failure(r, std::string("construction failed: ") + e.what());
      continue;
    }

    int wraps = 1 + static_cast<int>(pick(rng, 2));
    TermRef pred = m;
    for (int j = 0; j < wraps; ++j) {
      std::string q = "q" + std::to_string(j);
      pred = Term::let(q, types::SessionType::one(), Term::send_close(),
                       Term::recv_close(Symbol::var(q), pred));
    }

    // precondition: the wrapper really does reach the original in 2 steps
    // per layer (allocate, then close across the fresh channel)
    Configuration start = proclang::term_config(pred).instantiate(ChannelName{1});
    Configuration target = proclang::term_config(m).instantiate(ChannelName{1});
    kernel::SilentClosure closure = kernel::silent_closure(start, 2 * wraps);
    bool reaches = std::any_of(closure.entries.begin(), closure.entries.end(),
                               [&](const kernel::ClosureEntry& e) { return e.config == target; });
    if (!reaches) {
      record_failure(r, "predecessor `" + proclang::print_term(pred) + "` does not reach `" +
                            proclang::print_term(m) + "`");
      continue;
    }

    logrel::Verdict after = logrel::check_config(proclang::term_config(m), type, budget);
    if (after.value == logrel::Compliance::Unknown) {
      ++r.unknown;
      if (!type->has_lolli()) ++r.unknown_strict;
      continue;
    }
    if (after.value == logrel::Compliance::NonCompliant) {
      // FTLR failure, not a closure failure, but just as much a bug
      record_failure(r, "well-typed `" + proclang::print_term(m) + "` at `" +
                            types::print_type(type) + "` judged non-compliant");
      continue;
    }

    kernel::NamelessConfiguration pred_nc = proclang::term_config(pred);
    logrel::Verdict before = logrel::check_config(pred_nc, type, budget);
    if (before.value == logrel::Compliance::NonCompliant) {
      record_failure(r, "compliance not closed under silent pre-steps: `" +
                            proclang::print_term(pred) + "` at `" + types::print_type(type) +
                            "`");
      continue;
    }
    if (before.value == logrel::Compliance::Unknown) {
      ++r.unknown;
      if (!type->has_lolli()) ++r.unknown_strict;
      continue;
    }
    std::string why;
    if (!replay_ok(before, pred_nc, type, &why))
      record_failure(r, "predecessor witness replay failed (" + why + ") for `" +
                            proclang::print_term(pred) + "`");
  }
  return r;
}

SuiteResult related_maps_suite(int count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "related-maps";
  Rng rng(seed);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  auto rel = [](int v, int w) { return v % 3 == w % 3; };
  for (int i = 0; i < count; ++i) {
    ++r.ran;
    std::map<std::string, int> m1;
    int k = static_cast<int>(pick(rng, 5));
    for (int j = 0; j < k; ++j) m1.emplace(pool[pick(rng, pool.size())], static_cast<int>(pick(rng, 9)));
    std::map<std::string, int> m2;
    for (const auto& [key, v] : m1) m2.emplace(key, v + 3 * static_cast<int>(pick(rng, 3)));

    bool ok = true;
    // same domain, pointwise R
    ok = ok && proclang::related_maps(m1, m2, rel);
    // a domain mismatch breaks relatedness
    auto m2extra = m2;
    m2extra.emplace("zz", 0);
    ok = ok && !proclang::related_maps(m1, m2extra, rel);
    // only empty relates to empty
    std::map<std::string, int> empty;
    ok = ok && (proclang::related_maps(m1, empty, rel) == m1.empty());
    ok = ok && proclang::related_maps(empty, empty, rel);
    // pointwise lookup
    if (!m1.empty()) {
      auto it1 = m1.begin();
      std::advance(it1, pick(rng, m1.size()));
      ok = ok && rel(it1->second, m2.at(it1->first));
    }
    // removing the same key preserves relatedness
    std::string x = pool[pick(rng, pool.size())];
    ok = ok && proclang::related_maps(proclang::remove_key(m1, x), proclang::remove_key(m2, x), rel);
    // mapping R-preserving functions over both sides preserves relatedness
    auto f = [](int v) { return v + 3; };
    auto g = [](int v) { return v + 6; };
    ok = ok && proclang::related_maps(proclang::map_vals(f, m1), proclang::map_vals(g, m2), rel);

    if (!ok) record_failure(r, "related-maps fact violated on a " + std::to_string(m1.size()) +
                                   "-entry map (trial " + std::to_string(i) + ")");
  }
  return r;
}

std::vector<SuiteResult> lemma_suites(int count, std::uint64_t seed) {
  return {
      subst_compose_suite(count, seed),
      discard_suite(count, seed + 1),
      frame_suite(count, seed + 2),
      backwards_closure_suite(count, seed + 3),
      related_maps_suite(count, seed + 4),
  };
}

}  // namespace sesscheck::props
