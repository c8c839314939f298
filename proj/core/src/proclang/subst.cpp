#include "sesscheck/proclang/subst.hpp"

namespace sesscheck::proclang {

Symbol apply_subst(const Subst& sigma, const Symbol& s) {
  if (s.is_var()) {
    auto it = sigma.find(s.as_var());
    if (it != sigma.end()) return it->second;
  }
  return s;
}

namespace {
Subst without(const Subst& sigma, const std::string& key) {
  Subst out = sigma;
  out.erase(key);
  return out;
}
}  // namespace

TermRef apply_subst(const Subst& sigma, const TermRef& term) {
  if (sigma.empty()) return term;
  switch (term->kind()) {
    case TermKind::Forward:
      return Term::forward(apply_subst(sigma, term->subject()));
    case TermKind::Let:
      return Term::let(term->binder(), term->let_type(),
                       apply_subst(sigma, term->first()),
                       apply_subst(without(sigma, term->binder()), term->second()));
    case TermKind::SendClose:
      return term;
    case TermKind::RecvClose: {
      Symbol x = term->subject();
      const Subst& rest = sigma;  // consumed subject drops out below if a var
      TermRef k = x.is_var()
                      ? apply_subst(without(rest, x.as_var()), term->first())
                      : apply_subst(rest, term->first());
      return Term::recv_close(apply_subst(sigma, x), k);
    }
    case TermKind::RecvChan:
      return Term::recv_chan(term->binder(),
                             apply_subst(without(sigma, term->binder()), term->first()));
    case TermKind::SendChanOn:
      return Term::send_chan_on(apply_subst(sigma, term->subject()),
                                apply_subst(sigma, term->payload()),
                                apply_subst(sigma, term->first()));
    case TermKind::SendChan:
      return Term::send_chan(apply_subst(sigma, term->payload()),
                             apply_subst(sigma, term->first()));
    case TermKind::RecvChanOn:
      return Term::recv_chan_on(apply_subst(sigma, term->subject()), term->binder(),
                                apply_subst(without(sigma, term->binder()), term->first()));
    case TermKind::RecvCase:
      return Term::recv_case(apply_subst(sigma, term->first()),
                             apply_subst(sigma, term->second()));
    case TermKind::SendSelOn:
      return Term::send_sel_on(apply_subst(sigma, term->subject()), term->sel(),
                               apply_subst(sigma, term->first()));
    case TermKind::SendSel:
      return Term::send_sel(term->sel(), apply_subst(sigma, term->first()));
    case TermKind::RecvCaseOn:
      return Term::recv_case_on(apply_subst(sigma, term->subject()),
                                apply_subst(sigma, term->first()),
                                apply_subst(sigma, term->second()));
  }
  throw PreconditionError("unreachable term kind");
}

Subst compose(const Subst& outer, const Subst& inner) {
  Subst out;
  for (const auto& [k, v] : inner) out.emplace(k, apply_subst(outer, v));
  for (const auto& [k, v] : outer) out.emplace(k, v);  // emplace keeps inner's image
  return out;
}

}  // namespace sesscheck::proclang
