#include "sesscheck/automaton/language.hpp"
#include "sesscheck/kernel/registry.hpp"
#include "sesscheck/proclang/dynamics.hpp"

namespace sesscheck {

void register_builtin_languages() {
  automata::bitflip_lang_id();
  automata::automaton_lang_id();
  proclang::sess_lang_id();
}

}  // namespace sesscheck
