#include <functional>
#include <set>
#include <string>

#include "sesscheck/logrel/check.hpp"
#include "sesscheck/proclang/dynamics.hpp"
#include "sesscheck/proclang/generator.hpp"

namespace sesscheck::logrel {
namespace {

// Peers are closed calculus processes of the requested type: the minimal
// inhabitant first (deterministic), then small seeded random ones. Every
// candidate typechecks by construction.
class CalculusPeers final : public PeerSource {
 public:
  std::vector<kernel::NamelessConfiguration> peers(const types::TypeRef& type,
                                                   int count,
                                                   std::uint64_t seed) const override {
    std::vector<kernel::NamelessConfiguration> out;
    if (count <= 0) return out;
    std::set<std::string> seen;
    auto add = [&](const proclang::TermRef& term) {
      if (seen.insert(proclang::print_term(term)).second)
        out.push_back(proclang::term_config(term));
    };
    add(proclang::minimal_inhabitant(type));
    proclang::Rng rng(seed ^ std::hash<std::string>{}(types::print_type(type)));
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < 4 * count) {
      ++attempts;
      add(proclang::generate_well_typed(type, 2, rng));
    }
    return out;
  }
};

}  // namespace

const PeerSource& default_peer_source() {
  static const CalculusPeers instance;
  return instance;
}

}  // namespace sesscheck::logrel
