#pragma once

#include <vector>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/config.hpp"
#include "sesscheck/kernel/language.hpp"
#include "sesscheck/kernel/object.hpp"
#include "sesscheck/proclang/term.hpp"

namespace sesscheck::proclang {

// A process tried to act through a variable no substitution ever closed.
struct FreeVariableError : Error {
  explicit FreeVariableError(const std::string& what) : Error(what) {}
};

kernel::LangId sess_lang_id();

// Objects of the calculus language wrap a closed term; keys are the printed
// surface form. Throws PreconditionError on open terms.
kernel::NamelessObject term_object(TermRef term);
kernel::NamelessConfiguration term_config(TermRef term);

// The term wrapped by a calculus object.
const TermRef& object_term(const kernel::NamelessObject& obj);

// Transitions of `term` when it provides `provider`. Channel receives are
// instantiated at probe.receive_candidates; let allocates from probe.fresh.
// Throws FreeVariableError when the head acts through a variable.
std::vector<kernel::ObjTransition> term_transitions(const TermRef& term,
                                                    kernel::ChannelName provider,
                                                    const kernel::StepProbe& probe);

}  // namespace sesscheck::proclang
