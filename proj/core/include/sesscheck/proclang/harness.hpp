#pragma once

#include <map>
#include <string>

#include "sesscheck/logrel/check.hpp"
#include "sesscheck/proclang/dynamics.hpp"
#include "sesscheck/proclang/generator.hpp"
#include "sesscheck/proclang/subst.hpp"
#include "sesscheck/proclang/typecheck.hpp"

namespace sesscheck::proclang {

// A provider-abstracted process standing in for one context entry, plus the
// channel it will be instantiated at.
struct Complement {
  kernel::NamelessConfiguration config;
  kernel::ChannelName at;
};

// One complement per context variable; channels are pairwise distinct.
using ComplementaryConfigs = std::map<std::string, Complement>;

// Generates a complement for every context entry: random well-typed closed
// processes of the entry's type, at channels 1, 2, ... in key order.
ComplementaryConfigs complements(const Context& ctx, int depth, Rng& rng);

// The substitution the complements induce: each variable to its channel.
Subst compl_subst(const ComplementaryConfigs& s);

// `head` closed by compl_subst, surrounded by the instantiated complements,
// abstracted over its own provider. Throws DuplicateProviderError when
// complement channels collide.
kernel::NamelessConfiguration apply_compl(const ComplementaryConfigs& s, TermRef head);

// Extends `s` with complements for entries of `ctx` it does not cover yet,
// at channels above everything `s` uses.
ComplementaryConfigs extend_compl(const ComplementaryConfigs& s, const Context& ctx,
                                  int depth, Rng& rng);

// End-to-end semantic soundness of typing: typechecks ctx |- term : type
// (PreconditionError when that fails), closes the term with generated
// complements, and runs the semantic checker on the result.
logrel::Verdict ftlr_check(const Context& ctx, const TermRef& term,
                           const types::TypeRef& type, const logrel::Budget& budget,
                           Rng& rng);

// A closed term of type 1 must silently reach a configuration that can
// close and vanish at its provider. `fuel` bounds the silent search.
bool adequacy_check(const TermRef& term, int fuel);

}  // namespace sesscheck::proclang
