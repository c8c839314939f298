#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "sesscheck/automaton/spec.hpp"
#include "sesscheck/kernel/config.hpp"
#include "sesscheck/kernel/object.hpp"

namespace sesscheck::automata {

// The generic machine language: a body is a spec plus its current state, so
// serialized configurations are self-contained.
kernel::LangId automaton_lang_id();
kernel::NamelessObject automaton_object(std::shared_ptr<const AutomatonSpec> spec,
                                        std::string state);
// (empty ambient, machine at its initial state)
kernel::NamelessConfiguration automaton_config(std::shared_ptr<const AutomatonSpec> spec);

// The built-in bit-flip machine as its own language; bodies are just the
// state names S0..S3.
kernel::LangId bitflip_lang_id();
kernel::NamelessObject bitflip_object(std::string_view state);

}  // namespace sesscheck::automata
