#pragma once

#include <string>

#include "sesscheck/kernel/action.hpp"
#include "sesscheck/kernel/config.hpp"

namespace sesscheck::kernel {

// Wire format, one process per entry:
//   {"procs":[{"proc":{"chan":0,"lang":"sessproc","body":"send()"}},
//             {"fwd":{"from":1,"to":0}}]}
// Body encoding is language-specific. Deserialization validates provider
// uniqueness and language registration.
std::string config_to_json(const Configuration& config);
Configuration config_from_json(const std::string& text);

// {"ambient":<configuration>,"head":{"lang":...,"body":...}}
std::string nameless_to_json(const NamelessConfiguration& config);
NamelessConfiguration nameless_from_json(const std::string& text);

// Silent: {"silent":true}. Labelled: {"chan":3,"dir":"!","payload":P} with
// P one of {"sel":1|2}, "close", {"chan":7}.
std::string action_to_json(const Action& action);
Action action_from_json(const std::string& text);

}  // namespace sesscheck::kernel
