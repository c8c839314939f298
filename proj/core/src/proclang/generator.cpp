#include "sesscheck/proclang/generator.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace sesscheck::proclang {

namespace {

using types::SessionType;
using types::TypeKind;
using types::TypeRef;

std::string fresh_name(int& counter) { return "v" + std::to_string(counter++); }

TermRef minimal_at(const TypeRef& type, int& counter);

// Consumes y:type, then k.
TermRef drain_at(const std::string& y, const TypeRef& type, TermRef k, int& counter) {
  Symbol sy = Symbol::var(y);
  switch (type->kind()) {
    case TypeKind::One:
      return Term::recv_close(sy, std::move(k));
    case TypeKind::Plus: {
      TermRef k1 = drain_at(y, type->left(), k, counter);
      return Term::recv_case_on(sy, std::move(k1),
                                drain_at(y, type->right(), std::move(k), counter));
    }
    case TypeKind::With:
      return Term::send_sel_on(sy, kernel::Selector::pi1,
                               drain_at(y, type->left(), std::move(k), counter));
    case TypeKind::Tensor: {
      std::string z = fresh_name(counter);
      TermRef inner = drain_at(y, type->right(), std::move(k), counter);
      return Term::recv_chan_on(sy, z, drain_at(z, type->left(), std::move(inner), counter));
    }
    case TypeKind::Lolli: {
      std::string z = fresh_name(counter);
      TermRef arg = minimal_at(type->left(), counter);
      return Term::let(z, type->left(), std::move(arg),
                       Term::send_chan_on(sy, Symbol::var(z),
                                          drain_at(y, type->right(), std::move(k), counter)));
    }
  }
  throw PreconditionError("unreachable type kind");
}

TermRef minimal_at(const TypeRef& type, int& counter) {
  switch (type->kind()) {
    case TypeKind::One:
      return Term::send_close();
    case TypeKind::Plus:
      return Term::send_sel(kernel::Selector::pi1, minimal_at(type->left(), counter));
    case TypeKind::With:
      return Term::recv_case(minimal_at(type->left(), counter),
                             minimal_at(type->right(), counter));
    case TypeKind::Tensor: {
      std::string x = fresh_name(counter);
      return Term::let(x, type->left(), minimal_at(type->left(), counter),
                       Term::send_chan(Symbol::var(x), minimal_at(type->right(), counter)));
    }
    case TypeKind::Lolli: {
      std::string y = fresh_name(counter);
      return Term::recv_chan(y, drain_at(y, type->left(),
                                         minimal_at(type->right(), counter), counter));
    }
  }
  throw PreconditionError("unreachable type kind");
}

struct Gen {
  explicit Gen(Rng& r) : rng(r) {}

  Rng& rng;
  std::set<std::string> used;  // every name in scope anywhere, ever
  int counter = 0;

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  bool flip() { return pick(2) == 0; }

  std::string fresh() {
    std::string name;
    do name = fresh_name(counter);
    while (!used.insert(name).second);
    return name;
  }

  // Depth exhausted: consume everything left, then provide minimally.
  TermRef finish(const Context& ctx, const TypeRef& type) {
    TermRef k = minimal_at(type, counter);
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      k = drain_at(it->first, it->second, std::move(k), counter);
    return k;
  }

  TermRef gen(Context ctx, const TypeRef& type, int depth) {
    if (depth <= 0) return finish(ctx, type);

    enum class Move { Id, Right, Left, Cut };
    std::vector<std::pair<Move, std::string>> moves;
    if (ctx.size() == 1 && types::equal(ctx.begin()->second, type))
      moves.push_back({Move::Id, ctx.begin()->first});
    if (type->kind() != TypeKind::One || ctx.empty())
      moves.push_back({Move::Right, ""});
    for (const auto& [x, t] : ctx) moves.push_back({Move::Left, x});
    moves.push_back({Move::Cut, ""});

    auto [move, who] = moves[pick(moves.size())];
    switch (move) {
      case Move::Id:
        return Term::forward(Symbol::var(who));
      case Move::Right:
        return gen_right(std::move(ctx), type, depth);
      case Move::Left:
        return gen_left(std::move(ctx), who, type, depth);
      case Move::Cut: {
        TypeRef mid = random_type(rng, 3, type->has_lolli());
        auto [lhs, rhs] = split(ctx);
        std::string z = fresh();
        TermRef bound = gen(std::move(lhs), mid, depth - 1);
        rhs.emplace(z, mid);
        return Term::let(z, mid, std::move(bound), gen(std::move(rhs), type, depth - 1));
      }
    }
    throw PreconditionError("unreachable move");
  }

  std::pair<Context, Context> split(const Context& ctx) {
    Context a, b;
    for (const auto& [x, t] : ctx) (flip() ? a : b).emplace(x, t);
    return {std::move(a), std::move(b)};
  }

  TermRef gen_right(Context ctx, const TypeRef& type, int depth) {
    switch (type->kind()) {
      case TypeKind::One:
        return ctx.empty() ? Term::send_close() : finish(ctx, type);
      case TypeKind::Plus: {
        bool left = flip();
        return Term::send_sel(left ? kernel::Selector::pi1 : kernel::Selector::pi2,
                              gen(std::move(ctx), left ? type->left() : type->right(),
                                  depth - 1));
      }
      case TypeKind::With: {
        TermRef k1 = gen(ctx, type->left(), depth - 1);
        TermRef k2 = gen(std::move(ctx), type->right(), depth - 1);
        return Term::recv_case(std::move(k1), std::move(k2));
      }
      case TypeKind::Tensor: {
        // Send an existing channel of the right type when one offers itself,
        // otherwise cut in a fresh one.
        std::vector<std::string> fits;
        for (const auto& [x, t] : ctx)
          if (types::equal(t, type->left())) fits.push_back(x);
        if (!fits.empty() && flip()) {
          std::string y = fits[pick(fits.size())];
          ctx.erase(y);
          return Term::send_chan(Symbol::var(y),
                                 gen(std::move(ctx), type->right(), depth - 1));
        }
        auto [lhs, rhs] = split(ctx);
        std::string z = fresh();
        TermRef bound = gen(std::move(lhs), type->left(), depth - 1);
        return Term::let(z, type->left(), std::move(bound),
                         Term::send_chan(Symbol::var(z),
                                         gen(std::move(rhs), type->right(), depth - 1)));
      }
      case TypeKind::Lolli: {
        std::string y = fresh();
        ctx.emplace(y, type->left());
        return Term::recv_chan(y, gen(std::move(ctx), type->right(), depth - 1));
      }
    }
    throw PreconditionError("unreachable type kind");
  }

  TermRef gen_left(Context ctx, const std::string& x, const TypeRef& type, int depth) {
    TypeRef t = ctx.at(x);
    Symbol sx = Symbol::var(x);
    switch (t->kind()) {
      case TypeKind::One:
        ctx.erase(x);
        return Term::recv_close(sx, gen(std::move(ctx), type, depth - 1));
      case TypeKind::Plus: {
        Context ctx1 = ctx;
        ctx1[x] = t->left();
        ctx[x] = t->right();
        TermRef k1 = gen(std::move(ctx1), type, depth - 1);
        return Term::recv_case_on(sx, std::move(k1),
                                  gen(std::move(ctx), type, depth - 1));
      }
      case TypeKind::With: {
        bool left = flip();
        ctx[x] = left ? t->left() : t->right();
        return Term::send_sel_on(sx, left ? kernel::Selector::pi1 : kernel::Selector::pi2,
                                 gen(std::move(ctx), type, depth - 1));
      }
      case TypeKind::Tensor: {
        std::string z = fresh();
        ctx[x] = t->right();
        ctx.emplace(z, t->left());
        return Term::recv_chan_on(sx, z, gen(std::move(ctx), type, depth - 1));
      }
      case TypeKind::Lolli: {
        // Feed it an existing channel when possible, a cut-in one otherwise.
        std::vector<std::string> fits;
        for (const auto& [y, ty] : ctx)
          if (y != x && types::equal(ty, t->left())) fits.push_back(y);
        if (!fits.empty() && flip()) {
          std::string y = fits[pick(fits.size())];
          ctx.erase(y);
          ctx[x] = t->right();
          return Term::send_chan_on(sx, Symbol::var(y),
                                    gen(std::move(ctx), type, depth - 1));
        }
        std::string z = fresh();
        Context lhs;  // the cut term gets nothing; the rest continues
        TermRef bound = gen(std::move(lhs), t->left(), depth - 1);
        ctx[x] = t->right();
        return Term::let(z, t->left(), std::move(bound),
                         Term::send_chan_on(sx, Symbol::var(z),
                                            gen(std::move(ctx), type, depth - 1)));
      }
    }
    throw PreconditionError("unreachable type kind");
  }
};

}  // namespace

TermRef minimal_inhabitant(const TypeRef& type) {
  int counter = 0;
  return minimal_at(type, counter);
}

TermRef drain(const std::string& y, const TypeRef& type, TermRef k, int& counter) {
  return drain_at(y, type, std::move(k), counter);
}

TermRef generate_well_typed(const Context& ctx, const TypeRef& type, int depth, Rng& rng) {
  Gen g{rng};
  for (const auto& [x, t] : ctx) {
    g.used.insert(x);
    // keep the v<N> counter clear of context names so drained subtrees
    // cannot shadow them
    if (x.size() > 1 && x[0] == 'v' &&
        x.find_first_not_of("0123456789", 1) == std::string::npos)
      g.counter = std::max(g.counter, std::stoi(x.substr(1)) + 1);
  }
  TermRef term = g.gen(ctx, type, depth);
  CheckResult r = check_term(ctx, term, type);
  if (!r.ok())
    throw PreconditionError("generator produced an ill-typed term: " + r.error->message +
                            " in " + print_term(term));
  return term;
}

TermRef generate_well_typed(const TypeRef& type, int depth, Rng& rng) {
  return generate_well_typed(Context{}, type, depth, rng);
}

types::TypeRef random_type(Rng& rng, int max_size, bool allow_lolli) {
  if (max_size <= 2) return SessionType::one();  // binary nodes need 3
  std::uniform_int_distribution<int> kind_at(0, allow_lolli ? 4 : 3);
  int k = kind_at(rng);
  if (k == 0) return SessionType::one();
  // left gets 1..max_size-2 nodes, right the rest
  std::uniform_int_distribution<int> split_at(1, max_size - 2);
  int left_budget = split_at(rng);
  TypeRef l = random_type(rng, left_budget, allow_lolli);
  TypeRef r = random_type(rng, max_size - 1 - left_budget, allow_lolli);
  switch (k) {
    case 1: return SessionType::tensor(std::move(l), std::move(r));
    case 2: return SessionType::plus(std::move(l), std::move(r));
    case 3: return SessionType::with(std::move(l), std::move(r));
    default: return SessionType::lolli(std::move(l), std::move(r));
  }
}

}  // namespace sesscheck::proclang
