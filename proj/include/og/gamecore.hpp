#pragma once

// Open games, ordinal game values and well-founded tree ranks.
//
// Trees and games are immutable shared nodes. A node has finitely many
// explicit children and optionally one omega family: a lazily generated
// sequence of further children indexed by the naturals, carrying declared
// values (an ordinal pattern in n) and a declared supremum. Declarations are
// checked on the first `omega_cutoff`+1 members and the supremum is trusted.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "og/error.hpp"
#include "og/ordinal.hpp"

namespace og {

enum class player { open, closed };

inline const char* player_name(player p) { return p == player::open ? "open" : "closed"; }

class game_value {
 public:
  game_value() = default;  // undefined
  game_value(ordinal v) : v_(std::move(v)) {}  // NOLINT
  static game_value undefined() { return {}; }

  bool defined() const { return v_.has_value(); }
  const ordinal& value() const {
    if (!v_) throw error(errc::no_value, "game value is undefined");
    return *v_;
  }
  std::string str() const { return v_ ? v_->str() : "undefined"; }

  friend bool operator==(const game_value& a, const game_value& b) {
    if (a.defined() != b.defined()) return false;
    return !a.defined() || a.value() == b.value();
  }

 private:
  std::optional<ordinal> v_;
};

struct eval_options {
  std::uint64_t budget_nodes = 5'000'000;
  std::uint64_t omega_cutoff = 12;
};

// Lazily sampled countable family of children.
template <class Node>
class omega_family {
 public:
  using node_ptr = std::shared_ptr<const Node>;
  using generator = std::function<node_ptr(std::uint64_t)>;

  omega_family(std::string schema, std::string pattern, ordinal sup, generator gen,
               std::map<std::string, std::string> params = {})
      : schema_(std::move(schema)),
        pattern_(std::move(pattern)),
        sup_(std::move(sup)),
        params_(std::move(params)),
        gen_(std::move(gen)) {}

  const std::string& schema() const { return schema_; }
  const std::string& pattern() const { return pattern_; }
  const ordinal& sup() const { return sup_; }
  const std::map<std::string, std::string>& params() const { return params_; }

  ordinal declared(std::uint64_t n) const { return eval_pattern(pattern_, n); }

  node_ptr sample(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    node_ptr p = gen_(n);
    cache_.emplace(n, p);
    return p;
  }

 private:
  std::string schema_, pattern_;
  ordinal sup_;
  std::map<std::string, std::string> params_;
  generator gen_;
  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, node_ptr> cache_;
};

// ---------------------------------------------------------------- trees

struct wf_tree;
using tree_ptr = std::shared_ptr<const wf_tree>;
using tree_family = omega_family<wf_tree>;

struct wf_tree {
  std::vector<tree_ptr> children;
  std::shared_ptr<const tree_family> omega;  // family sup = sup{rank(child)+1}
  bool infinite_branch = false;               // declared ill-founded here

  bool is_leaf() const { return children.empty() && !omega && !infinite_branch; }
};

inline tree_ptr tree_leaf() { return std::make_shared<const wf_tree>(); }

inline tree_ptr tree_node(std::vector<tree_ptr> children) {
  auto t = std::make_shared<wf_tree>();
  t->children = std::move(children);
  return t;
}

inline tree_ptr tree_omega(std::shared_ptr<const tree_family> f,
                           std::vector<tree_ptr> children = {}) {
  auto t = std::make_shared<wf_tree>();
  t->children = std::move(children);
  t->omega = std::move(f);
  return t;
}

inline tree_ptr tree_infinite_branch() {
  auto t = std::make_shared<wf_tree>();
  t->infinite_branch = true;
  return t;
}

// n edges, n+1 nodes.
inline tree_ptr tree_chain(std::uint64_t n) {
  tree_ptr t = tree_leaf();
  for (std::uint64_t i = 0; i < n; ++i) t = tree_node({t});
  return t;
}

inline std::shared_ptr<const tree_family> chain_family() {
  return std::make_shared<const tree_family>("chain", "n", ordinal::omega(),
                                             [](std::uint64_t n) { return tree_chain(n); });
}

tree_ptr build_tree_of_rank(const ordinal& a);

namespace detail {
struct rank_tree_cache {
  std::mutex mu;
  std::map<std::string, tree_ptr> trees;
};
inline rank_tree_cache& rank_cache() {
  static rank_tree_cache c;
  return c;
}
}  // namespace detail

inline std::shared_ptr<const tree_family> rank_family(const ordinal& a) {
  return std::make_shared<const tree_family>(
      "rank", fundamental_pattern(a), a,
      [a](std::uint64_t n) { return build_tree_of_rank(fundamental_element(a, n)); },
      std::map<std::string, std::string>{{"alpha", a.str()}});
}

// Successor: one extra root above the tree of the predecessor.
// Limit: a root whose children follow the canonical fundamental sequence.
inline tree_ptr build_tree_of_rank(const ordinal& a) {
  auto& c = detail::rank_cache();
  std::string key = a.str();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.trees.find(key);
    if (it != c.trees.end()) return it->second;
  }
  tree_ptr t;
  if (a.is_zero())
    t = tree_leaf();
  else if (a.is_successor())
    t = tree_node({build_tree_of_rank(predecessor(a))});
  else if (a == ordinal::omega())
    t = tree_omega(chain_family());
  else
    t = tree_omega(rank_family(a));
  std::lock_guard<std::mutex> lock(c.mu);
  return c.trees.emplace(key, t).first->second;
}

// A small tree of rank w+3 whose rank-w node has the chains as children,
// with finite side branches hanging off the path to the root.
inline tree_ptr example_tree_omega_plus_3() {
  tree_ptr w = tree_omega(chain_family());
  tree_ptr w1 = tree_node({w, tree_chain(2)});
  tree_ptr w2 = tree_node({tree_leaf(), w1});
  return tree_node({w2, tree_chain(1), tree_node({tree_leaf(), tree_leaf()})});
}

// ---------------------------------------------------------------- games

struct game_node;
using game_ptr = std::shared_ptr<const game_node>;
using game_family = omega_family<game_node>;

struct game_node {
  player mover = player::open;
  bool open_has_won = false;
  std::vector<game_ptr> children;
  std::shared_ptr<const game_family> omega;  // family sup = sup of child values
  bool infinite_branch = false;
  std::shared_ptr<const void> owner;  // keeps lazily extended structure alive

  std::size_t explicit_count() const { return children.size(); }
  bool has_moves() const { return !children.empty() || omega; }
};

inline game_ptr make_game(player mover, bool open_has_won, std::vector<game_ptr> children,
                          std::shared_ptr<const game_family> omega = nullptr) {
  if (!open_has_won && mover == player::closed && children.empty() && !omega)
    throw error(errc::modeling_error,
                "closed-player dead end must be marked as won by the open player");
  auto g = std::make_shared<game_node>();
  g->mover = mover;
  g->open_has_won = open_has_won;
  g->children = std::move(children);
  g->omega = std::move(omega);
  return g;
}

inline game_ptr game_won() { return make_game(player::closed, true, {}); }

inline game_ptr game_infinite_branch(player mover = player::closed) {
  auto g = std::make_shared<game_node>();
  g->mover = mover;
  g->infinite_branch = true;
  return g;
}

// Child i: explicit children first, then the family members.
inline game_ptr game_child(const game_node& g, std::size_t i) {
  if (i < g.children.size()) return g.children[i];
  if (g.omega) return g.omega->sample(i - g.children.size());
  throw error(errc::out_of_range, "child index " + std::to_string(i) + " does not exist");
}

using path = std::vector<std::size_t>;

inline game_ptr game_at(game_ptr g, const path& p) {
  for (std::size_t i : p) g = game_child(*g, i);
  return g;
}

// ---------------------------------------------------------------- evaluation

class evaluator {
 public:
  explicit evaluator(eval_options opt = {}) : opt_(opt) {}

  const eval_options& options() const { return opt_; }
  std::uint64_t nodes_visited() const { return visited_; }

  game_value rank(const tree_ptr& t) {
    auto it = tree_memo_.find(t.get());
    if (it != tree_memo_.end()) return it->second;
    tick();
    game_value r = rank_uncached(*t);
    tree_keep_.push_back(t);
    tree_memo_.emplace(t.get(), r);
    return r;
  }

  game_value value(const game_ptr& g) {
    auto it = game_memo_.find(g.get());
    if (it != game_memo_.end()) return it->second;
    tick();
    game_value r = value_uncached(*g);
    game_keep_.push_back(g);
    game_memo_.emplace(g.get(), r);
    return r;
  }

 private:
  void tick() {
    if (++visited_ > opt_.budget_nodes)
      throw error(errc::budget_exceeded,
                  "explored more than " + std::to_string(opt_.budget_nodes) +
                      " nodes (possibly ill-founded)");
  }

  void check_family_tree(const tree_family& f) {
    ordinal prev;
    for (std::uint64_t n = 0; n <= opt_.omega_cutoff; ++n) {
      ordinal d = f.declared(n);
      game_value r = rank(f.sample(n));
      if (!r.defined() || r.value() != d)
        throw error(errc::declared_rank_mismatch,
                    "family '" + f.schema() + "' member " + std::to_string(n) + " has rank " +
                        r.str() + ", declared " + d.str());
      if (n && d < prev)
        throw error(errc::declared_rank_mismatch, "declared ranks decrease at " + std::to_string(n));
      if (!(successor(d) <= f.sup()))
        throw error(errc::declared_rank_mismatch,
                    "declared sup " + f.sup().str() + " does not bound member " + std::to_string(n));
      prev = d;
    }
  }

  void check_family_game(const game_family& f) {
    ordinal prev;
    for (std::uint64_t n = 0; n <= opt_.omega_cutoff; ++n) {
      ordinal d = f.declared(n);
      game_value v = value(f.sample(n));
      if (!v.defined() || v.value() != d)
        throw error(errc::declared_rank_mismatch,
                    "family '" + f.schema() + "' member " + std::to_string(n) + " has value " +
                        v.str() + ", declared " + d.str());
      if (n && d < prev)
        throw error(errc::declared_rank_mismatch, "declared values decrease at " + std::to_string(n));
      if (!(d <= f.sup()))
        throw error(errc::declared_rank_mismatch,
                    "declared sup " + f.sup().str() + " does not bound member " + std::to_string(n));
      prev = d;
    }
  }

  game_value rank_uncached(const wf_tree& t) {
    if (t.infinite_branch) return game_value::undefined();
    ordinal r;
    for (const auto& c : t.children) {
      game_value cr = rank(c);
      if (!cr.defined()) return game_value::undefined();
      r = std::max(r, successor(cr.value()));
    }
    if (t.omega) {
      check_family_tree(*t.omega);
      r = std::max(r, t.omega->sup());
    }
    return r;
  }

  game_value value_uncached(const game_node& g) {
    if (g.open_has_won) return ordinal(0);
    if (g.infinite_branch) return game_value::undefined();
    if (g.mover == player::open) {
      std::optional<ordinal> best;
      for (const auto& c : g.children) {
        game_value v = value(c);
        if (v.defined() && (!best || v.value() < *best)) best = v.value();
      }
      if (g.omega) {
        check_family_game(*g.omega);
        ordinal d0 = g.omega->declared(0);
        if (!best || d0 < *best) best = d0;
      }
      if (!best) return game_value::undefined();
      return successor(*best);
    }
    ordinal s;
    for (const auto& c : g.children) {
      game_value v = value(c);
      if (!v.defined()) return game_value::undefined();
      s = std::max(s, v.value());
    }
    if (g.omega) {
      check_family_game(*g.omega);
      s = std::max(s, g.omega->sup());
    }
    return s;
  }

  eval_options opt_;
  std::uint64_t visited_ = 0;
  std::unordered_map<const wf_tree*, game_value> tree_memo_;
  std::unordered_map<const game_node*, game_value> game_memo_;
  std::vector<tree_ptr> tree_keep_;
  std::vector<game_ptr> game_keep_;
};

inline game_value rank(const tree_ptr& t, eval_options opt = {}) { return evaluator(opt).rank(t); }

inline game_value game_value_of(const game_ptr& g, eval_options opt = {}) {
  return evaluator(opt).value(g);
}

// ---------------------------------------------------------------- climbing

// Climber (closed) moves up the tree, Observer (open) answers "OK".
// A Climber stuck on a leaf has lost. Climbing nodes are shared per tree
// node so that trees with shared subtrees stay cheap to evaluate.
class climbing_builder {
 public:
  struct context {
    std::unordered_map<const wf_tree*, std::weak_ptr<const game_node>> memo;
    std::vector<tree_ptr> keep;
  };

  explicit climbing_builder(std::shared_ptr<context> ctx = std::make_shared<context>())
      : ctx_(std::move(ctx)) {}

  const std::shared_ptr<context>& ctx() const { return ctx_; }

  game_ptr climber(const tree_ptr& t) {
    auto it = ctx_->memo.find(t.get());
    if (it != ctx_->memo.end())
      if (game_ptr g = it->second.lock()) return g;
    game_ptr g;
    if (t->infinite_branch) {
      g = game_infinite_branch(player::closed);
    } else if (t->is_leaf()) {
      g = game_won();
    } else {
      std::vector<game_ptr> kids;
      for (const auto& c : t->children) kids.push_back(observer(c));
      std::shared_ptr<const game_family> fam;
      if (t->omega) {
        auto tf = t->omega;
        std::weak_ptr<context> weak = ctx_;
        fam = std::make_shared<const game_family>(
            "climb:" + tf->schema(), tf->pattern() + "+1", tf->sup(),
            [tf, weak](std::uint64_t n) {
              auto c = weak.lock();
              return climbing_builder(c ? c : std::make_shared<context>()).observer(tf->sample(n));
            });
      }
      g = make_game(player::closed, false, std::move(kids), std::move(fam));
    }
    ctx_->keep.push_back(t);
    ctx_->memo[t.get()] = g;
    return g;
  }

  game_ptr observer(const tree_ptr& t) { return make_game(player::open, false, {climber(t)}); }

 private:
  std::shared_ptr<context> ctx_;
};

inline game_ptr climbing_game(const tree_ptr& t) {
  climbing_builder b;
  game_ptr g = b.climber(t);
  auto root = std::make_shared<game_node>(*g);
  root->owner = b.ctx();
  return root;
}

// ---------------------------------------------------------------- strategies

// Keyed by the path of child indices from the root.
struct strategy {
  std::map<path, std::size_t> moves;

  std::optional<std::size_t> at(const path& p) const {
    auto it = moves.find(p);
    if (it == moves.end()) return std::nullopt;
    return it->second;
  }
  bool empty() const { return moves.empty(); }
};

namespace detail {
// Children explored when walking a possibly infinite game: all explicit
// children plus family members up to the cutoff.
inline std::size_t explored_children(const game_node& g, const eval_options& opt) {
  return g.children.size() + (g.omega ? opt.omega_cutoff + 1 : 0);
}
}  // namespace detail

// Open player always moves to a child of strictly smaller value.
inline strategy value_reducing_strategy(const game_ptr& g, eval_options opt = {}) {
  evaluator ev(opt);
  if (!ev.value(g).defined())
    throw error(errc::no_value, "value-reducing strategy needs a defined game value");
  strategy s;
  std::uint64_t budget = opt.budget_nodes;
  std::function<void(const game_ptr&, path&)> walk = [&](const game_ptr& n, path& p) {
    if (budget-- == 0) throw error(errc::budget_exceeded, "strategy table too large");
    if (n->open_has_won || n->infinite_branch) return;
    std::size_t k = detail::explored_children(*n, opt);
    if (n->mover == player::open) {
      ordinal here = ev.value(n).value();
      std::optional<std::size_t> best;
      ordinal bestv;
      for (std::size_t i = 0; i < k; ++i) {
        game_value v = ev.value(game_child(*n, i));
        if (v.defined() && (!best || v.value() < bestv)) best = i, bestv = v.value();
      }
      if (!best || !(bestv < here)) throw std::logic_error("no value-reducing move");
      s.moves[p] = *best;
      p.push_back(*best);
      walk(game_child(*n, *best), p);
      p.pop_back();
      return;
    }
    for (std::size_t i = 0; i < k; ++i) {
      p.push_back(i);
      walk(game_child(*n, i), p);
      p.pop_back();
    }
  };
  path p;
  walk(g, p);
  return s;
}

// Closed player always moves to a child whose value is undefined.
inline strategy value_maintaining_strategy(const game_ptr& g, eval_options opt = {}) {
  evaluator ev(opt);
  if (ev.value(g).defined())
    throw error(errc::has_value, "game value is " + ev.value(g).str());
  strategy s;
  std::uint64_t budget = opt.budget_nodes;
  std::function<void(const game_ptr&, path&)> walk = [&](const game_ptr& n, path& p) {
    if (budget-- == 0) throw error(errc::budget_exceeded, "strategy table too large");
    if (n->open_has_won || n->infinite_branch) return;
    std::size_t k = detail::explored_children(*n, opt);
    if (n->mover == player::closed) {
      for (std::size_t i = 0; i < k; ++i) {
        if (!ev.value(game_child(*n, i)).defined()) {
          s.moves[p] = i;
          p.push_back(i);
          walk(game_child(*n, i), p);
          p.pop_back();
          return;
        }
      }
      throw std::logic_error("undefined closed node without an undefined child");
    }
    for (std::size_t i = 0; i < k; ++i) {
      p.push_back(i);
      walk(game_child(*n, i), p);
      p.pop_back();
    }
  };
  path p;
  walk(g, p);
  return s;
}

// Walks from g to a position of value exactly b: through the open player's
// minimal child at successor values, through a closed child of value >= b
// otherwise.
inline path find_position_with_value(const game_ptr& g, const ordinal& b, eval_options opt = {}) {
  evaluator ev(opt);
  game_value a = ev.value(g);
  if (!a.defined()) throw error(errc::no_value, "game value is undefined");
  if (a.value() < b) throw error(errc::out_of_range, b.str() + " exceeds the value " + a.str());
  path p;
  game_ptr n = g;
  for (;;) {
    ordinal here = ev.value(n).value();
    if (here == b) return p;
    std::optional<std::size_t> pick;
    ordinal pickv;
    for (std::size_t i = 0; i < n->children.size(); ++i) {
      game_value v = ev.value(n->children[i]);
      if (!v.defined()) continue;
      bool better = n->mover == player::open ? v.value() < here && (!pick || v.value() < pickv)
                                             : b <= v.value() && (!pick || v.value() < pickv);
      if (better) pick = i, pickv = v.value();
    }
    if (n->omega) {
      const auto& f = *n->omega;
      for (std::uint64_t m = 0; m < opt.budget_nodes; ++m) {
        ordinal d = f.declared(m);
        if (n->mover == player::open ? d < here : b <= d) {
          if (!pick || d < pickv) {
            game_value v = ev.value(f.sample(m));
            if (!v.defined() || v.value() != d)
              throw error(errc::declared_rank_mismatch,
                          "family member " + std::to_string(m) + " has value " + v.str());
            pick = n->children.size() + m, pickv = d;
          }
          break;
        }
      }
    }
    if (!pick) throw std::logic_error("no child continues towards value " + b.str());
    p.push_back(*pick);
    n = game_child(*n, *pick);
  }
}

struct finiteness_report {
  game_value value;
  std::uint64_t closed_nodes_checked = 0;
};

// Games whose closed player is finitely branching never get an infinite
// defined value; a violation is an engine bug.
inline finiteness_report assert_finite_value_if_closed_finitely_branching(const game_ptr& g,
                                                                          eval_options opt = {}) {
  finiteness_report rep;
  std::uint64_t budget = opt.budget_nodes;
  std::unordered_map<const game_node*, bool> seen;
  std::function<void(const game_ptr&)> walk = [&](const game_ptr& n) {
    if (!seen.emplace(n.get(), true).second) return;
    if (budget-- == 0) throw error(errc::budget_exceeded, "game too large to scan");
    if (n->open_has_won || n->infinite_branch) return;
    if (n->mover == player::closed) {
      ++rep.closed_nodes_checked;
      if (n->omega)
        throw error(errc::not_finitely_branching,
                    "closed player has infinitely many moves (family '" + n->omega->schema() + "')");
    }
    std::size_t k = detail::explored_children(*n, opt);
    for (std::size_t i = 0; i < k; ++i) walk(game_child(*n, i));
  };
  walk(g);
  rep.value = game_value_of(g, opt);
  if (rep.value.defined() && !rep.value.value().is_finite())
    throw std::logic_error("finitely branching closed player but infinite value " +
                           rep.value.str());
  return rep;
}

// ---------------------------------------------------------------- implicit games

enum class status { ongoing, open_won, open_lost };

// Memoized backward induction for finite acyclic games given implicitly.
// Game must provide:
//   using state = ...; using hash = ...;
//   status status_of(const state&) const;
//   player mover(const state&) const;
//   void moves(const state&, std::vector<state>&) const;
// An ongoing closed-player position without moves is a modeling error.
template <class Game>
class finite_solver {
 public:
  using state = typename Game::state;

  finite_solver(const Game& g, eval_options opt = {}) : g_(g), opt_(opt) {}

  // -1 encodes an undefined value.
  long long raw(const state& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (++visited_ > opt_.budget_nodes)
      throw error(errc::budget_exceeded,
                  "explored more than " + std::to_string(opt_.budget_nodes) + " positions");
    long long r = compute(s);
    memo_.emplace(s, r);
    return r;
  }

  game_value value(const state& s) {
    long long r = raw(s);
    return r < 0 ? game_value::undefined() : game_value(ordinal(static_cast<std::uint64_t>(r)));
  }

  std::uint64_t visited() const { return visited_; }
  const Game& game() const { return g_; }

 private:
  long long compute(const state& s) {
    switch (g_.status_of(s)) {
      case status::open_won: return 0;
      case status::open_lost: return -1;
      case status::ongoing: break;
    }
    std::vector<state> next;
    g_.moves(s, next);
    if (g_.mover(s) == player::open) {
      long long best = -1;
      for (const auto& c : next) {
        long long v = raw(c);
        if (v >= 0 && (best < 0 || v < best)) best = v;
      }
      return best < 0 ? -1 : best + 1;
    }
    if (next.empty())
      throw error(errc::modeling_error, "closed-player dead end not marked as an open win");
    long long worst = 0;
    for (const auto& c : next) {
      long long v = raw(c);
      if (v < 0) return -1;
      worst = std::max(worst, v);
    }
    return worst;
  }

  const Game& g_;
  eval_options opt_;
  std::uint64_t visited_ = 0;
  std::unordered_map<state, long long, typename Game::hash> memo_;
};

}  // namespace og
