#pragma once

#include <map>
#include <string>

#include "sesscheck/proclang/term.hpp"

namespace sesscheck::proclang {

// Finite map from variables to symbols (in practice: to channels, when
// closing a term for execution).
using Subst = std::map<std::string, Symbol>;

Symbol apply_subst(const Subst& sigma, const Symbol& s);

// Capture is impossible in the intended use (values are channels, binders
// are variables); entries for a construct's binder are dropped before
// descending, and a close-receive additionally drops its consumed subject
// variable from the substitution for its continuation.
TermRef apply_subst(const Subst& sigma, const TermRef& term);

// compose(outer, inner) applied at once agrees with applying inner then
// outer, provided no binder in the term is a key or variable value of
// either map.
Subst compose(const Subst& outer, const Subst& inner);

}  // namespace sesscheck::proclang
