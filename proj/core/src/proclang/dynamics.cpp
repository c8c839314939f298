#include "sesscheck/proclang/dynamics.hpp"

#include <memory>
#include <utility>

#include <nlohmann/json.hpp>

#include "sesscheck/kernel/registry.hpp"
#include "sesscheck/proclang/subst.hpp"

namespace sesscheck::proclang {
namespace {

using json = nlohmann::json;
using kernel::Action;
using kernel::AtomicProcess;
using kernel::ChannelName;
using kernel::ObjTransition;
using kernel::Payload;

struct SessBody final : kernel::ObjectBody {
  TermRef term;

  explicit SessBody(TermRef t) : term(std::move(t)) {}
};

ChannelName need_chan(const Symbol& s) {
  if (!s.is_chan())
    throw FreeVariableError("free variable '" + s.as_var() +
                            "' in a running process");
  return s.as_chan();
}

TermRef plug(const std::string& var, ChannelName c, const TermRef& k) {
  return apply_subst(Subst{{var, Symbol::chan(c)}}, k);
}

class SessLang final : public kernel::ProcessLanguage {
 public:
  std::string_view name() const override { return "sessproc"; }

  bool valid(const kernel::ObjectBody& body) const override {
    const auto* b = dynamic_cast<const SessBody*>(&body);
    return b != nullptr && b->term != nullptr && free_vars(b->term).empty();
  }

  std::string body_key(const kernel::ObjectBody& body) const override {
    return print_term(dynamic_cast<const SessBody&>(body).term);
  }

  std::string body_to_json(const kernel::ObjectBody& body) const override {
    return json(print_term(dynamic_cast<const SessBody&>(body).term)).dump();
  }

  std::shared_ptr<const kernel::ObjectBody> body_from_json(const std::string& text) const override {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_string())
      throw MalformedConfigError("calculus body must be a JSON string holding a term");
    try {
      return std::make_shared<SessBody>(parse_term(j.get<std::string>()));
    } catch (const TermParseError& e) {
      throw MalformedConfigError(std::string("bad term: ") + e.what());
    }
  }

  void collect_channels(const kernel::ObjectBody& body,
                        std::set<ChannelName>& out) const override {
    proclang::collect_channels(dynamic_cast<const SessBody&>(body).term, out);
  }

  std::shared_ptr<const kernel::ObjectBody> rename_body(
      const kernel::ObjectBody& body, const kernel::Renaming& rho) const override {
    return std::make_shared<SessBody>(
        rename_channels(dynamic_cast<const SessBody&>(body).term, rho));
  }

  std::vector<ObjTransition> transitions(const kernel::ObjectBody& body,
                                         ChannelName provider,
                                         const kernel::StepProbe& probe) const override {
    return term_transitions(dynamic_cast<const SessBody&>(body).term, provider, probe);
  }
};

}  // namespace

kernel::LangId sess_lang_id() {
  static const kernel::LangId id =
      kernel::LanguageRegistry::instance().register_language(
          std::make_unique<SessLang>());
  return id;
}

kernel::NamelessObject term_object(TermRef term) {
  if (term == nullptr) throw PreconditionError("null term");
  if (auto fv = free_vars(term); !fv.empty())
    throw PreconditionError("process term has free variable '" + *fv.begin() + "'");
  return kernel::make_object(sess_lang_id(),
                             std::make_shared<SessBody>(std::move(term)));
}

kernel::NamelessConfiguration term_config(TermRef term) {
  return {kernel::Configuration{}, term_object(std::move(term))};
}

const TermRef& object_term(const kernel::NamelessObject& obj) {
  const auto* b = dynamic_cast<const SessBody*>(obj.body_ptr().get());
  if (b == nullptr) throw PreconditionError("object is not a calculus process");
  return b->term;
}

std::vector<ObjTransition> term_transitions(const TermRef& term,
                                            ChannelName provider,
                                            const kernel::StepProbe& probe) {
  auto cont = [&](const TermRef& k) {
    return AtomicProcess::proc(provider, term_object(k));
  };
  switch (term->kind()) {
    case TermKind::Forward: {
      ChannelName target = need_chan(term->subject());
      return {{Action::silent(), {AtomicProcess::fwd(provider, target)}}};
    }
    case TermKind::Let: {
      if (probe.fresh == nullptr)
        throw PreconditionError("let-allocation needs a fresh-name supply");
      ChannelName fresh = probe.fresh->fresh();
      return {{Action::silent(),
               {AtomicProcess::proc(fresh, term_object(term->first())),
                cont(plug(term->binder(), fresh, term->second()))}}};
    }
    case TermKind::SendClose:
      return {{Action::send(provider, Payload::close()), {}}};
    case TermKind::RecvClose: {
      ChannelName c = need_chan(term->subject());
      return {{Action::receive(c, Payload::close()), {cont(term->first())}}};
    }
    case TermKind::RecvChan: {
      std::vector<ObjTransition> out;
      for (ChannelName d : probe.receive_candidates)
        out.push_back({Action::receive(provider, Payload::channel(d)),
                       {cont(plug(term->binder(), d, term->first()))}});
      return out;
    }
    case TermKind::SendChanOn: {
      ChannelName c = need_chan(term->subject());
      ChannelName d = need_chan(term->payload());
      return {{Action::send(c, Payload::channel(d)), {cont(term->first())}}};
    }
    case TermKind::SendChan: {
      ChannelName d = need_chan(term->payload());
      return {{Action::send(provider, Payload::channel(d)), {cont(term->first())}}};
    }
    case TermKind::RecvChanOn: {
      ChannelName c = need_chan(term->subject());
      std::vector<ObjTransition> out;
      for (ChannelName d : probe.receive_candidates)
        out.push_back({Action::receive(c, Payload::channel(d)),
                       {cont(plug(term->binder(), d, term->first()))}});
      return out;
    }
    case TermKind::RecvCase:
      return {{Action::receive(provider, Payload::selector(kernel::Selector::pi1)),
               {cont(term->first())}},
              {Action::receive(provider, Payload::selector(kernel::Selector::pi2)),
               {cont(term->second())}}};
    case TermKind::SendSelOn: {
      ChannelName c = need_chan(term->subject());
      return {{Action::send(c, Payload::selector(term->sel())), {cont(term->first())}}};
    }
    case TermKind::SendSel:
      return {{Action::send(provider, Payload::selector(term->sel())),
               {cont(term->first())}}};
    case TermKind::RecvCaseOn: {
      ChannelName c = need_chan(term->subject());
      return {{Action::receive(c, Payload::selector(kernel::Selector::pi1)),
               {cont(term->first())}},
              {Action::receive(c, Payload::selector(kernel::Selector::pi2)),
               {cont(term->second())}}};
    }
  }
  throw PreconditionError("unreachable term kind");
}

}  // namespace sesscheck::proclang
