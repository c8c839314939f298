#include "sesscheck/proclang/harness.hpp"

#include <algorithm>
#include <utility>

#include "sesscheck/kernel/step.hpp"

namespace sesscheck::proclang {

ComplementaryConfigs complements(const Context& ctx, int depth, Rng& rng) {
  ComplementaryConfigs out;
  std::uint64_t next = 1;
  for (const auto& [x, type] : ctx) {
    TermRef peer = generate_well_typed(type, depth, rng);
    out.emplace(x, Complement{term_config(std::move(peer)), kernel::ChannelName{next++}});
  }
  return out;
}

Subst compl_subst(const ComplementaryConfigs& s) {
  Subst sigma;
  for (const auto& [x, c] : s) sigma.emplace(x, Symbol::chan(c.at));
  return sigma;
}

kernel::NamelessConfiguration apply_compl(const ComplementaryConfigs& s, TermRef head) {
  kernel::Configuration ambient;
  for (const auto& [x, c] : s)
    ambient = ambient.merged_with(c.config.instantiate(c.at));
  if (auto dup = ambient.duplicate_provider(); dup.has_value())
    throw DuplicateProviderError("complement channels collide at " +
                                 kernel::to_string(*dup));
  return {std::move(ambient), term_object(std::move(head))};
}

ComplementaryConfigs extend_compl(const ComplementaryConfigs& s, const Context& ctx,
                                  int depth, Rng& rng) {
  ComplementaryConfigs out = s;
  std::uint64_t next = 1;
  for (const auto& [x, c] : s) next = std::max(next, c.at.id + 1);
  for (const auto& [x, type] : ctx) {
    if (out.contains(x)) continue;
    TermRef peer = generate_well_typed(type, depth, rng);
    out.emplace(x, Complement{term_config(std::move(peer)), kernel::ChannelName{next++}});
  }
  return out;
}

logrel::Verdict ftlr_check(const Context& ctx, const TermRef& term,
                           const types::TypeRef& type, const logrel::Budget& budget,
                           Rng& rng) {
  CheckResult typing = check_term(ctx, term, type);
  if (!typing.ok())
    throw PreconditionError("ftlr_check needs a well-typed term: " +
                            typing.error->message);
  ComplementaryConfigs s = complements(ctx, 2, rng);
  TermRef closed = apply_subst(compl_subst(s), term);
  return logrel::check_config(apply_compl(s, std::move(closed)), type, budget);
}

bool adequacy_check(const TermRef& term, int fuel) {
  kernel::ChannelName a{1};
  kernel::Configuration cur = term_config(term).instantiate(a);
  kernel::Action close = kernel::Action::send(a, kernel::Payload::close());
  // Walking one maximal silent path decides the closure search: a closed
  // linear term gives every channel a single provider and client, so silent
  // steps commute (up to which fresh name a Let draws) and all maximal paths
  // reach the closable configuration at the same depth, if any path does.
  for (int used = 0; used <= fuel; ++used) {
    for (const kernel::Configuration& next : kernel::step_with_action(cur, close))
      if (next.procs().empty()) return true;
    if (used == fuel) break;
    bool advanced = false;
    for (auto& [act, next] : kernel::step(cur)) {
      if (!act.is_silent()) continue;
      cur = std::move(next);
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  return false;
}

}  // namespace sesscheck::proclang
