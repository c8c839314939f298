#pragma once

#include <random>

#include "sesscheck/proclang/term.hpp"
#include "sesscheck/proclang/typecheck.hpp"

namespace sesscheck::proclang {

using Rng = std::mt19937_64;

// Deterministic closed inhabitant of `type`; witnesses that every type is
// inhabited. Binders are v0, v1, ... in construction order.
TermRef minimal_inhabitant(const types::TypeRef& type);

// Wraps `k` so it first fully consumes y at `type`; structural recursion on
// the type. Fresh binders draw from `counter`.
TermRef drain(const std::string& y, const types::TypeRef& type, TermRef k, int& counter);

// Random term providing `type` under `ctx`, consuming every context entry.
// `depth` bounds structural growth; the result always typechecks (checked,
// throws PreconditionError on an internal failure).
TermRef generate_well_typed(const Context& ctx, const types::TypeRef& type,
                            int depth, Rng& rng);
TermRef generate_well_typed(const types::TypeRef& type, int depth, Rng& rng);

// Random session type with at most `max_size` nodes (at least 1).
types::TypeRef random_type(Rng& rng, int max_size, bool allow_lolli);

}  // namespace sesscheck::proclang
