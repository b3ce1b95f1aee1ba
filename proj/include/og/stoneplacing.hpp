#pragma once

// Stone-placing games on finite boards: both players alternately claim
// unclaimed vertices, each has a superset-closed family of winning sets
// (stored as minimal elements), and the first player to complete one of
// his sets wins. A full board with no completion is a tie.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "og/error.hpp"
#include "og/gamecore.hpp"

namespace og {

using vmask = std::uint64_t;

inline constexpr int max_stone_vertices = 64;

inline vmask bit(int v) { return vmask{1} << v; }
inline int popcount(vmask m) { return std::popcount(m); }
inline vmask full_mask(int n) { return n >= 64 ? ~vmask{0} : (vmask{1} << n) - 1; }

inline std::vector<int> members(vmask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline vmask mask_of(const std::vector<int>& vs) {
  vmask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

// Keeps only inclusion-minimal sets, sorted.
inline std::vector<vmask> minimize(std::vector<vmask> sets) {
  std::sort(sets.begin(), sets.end(), [](vmask a, vmask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<vmask> out;
  for (vmask s : sets) {
    bool dominated = false;
    for (vmask t : out)
      if ((t & s) == t) dominated = true;
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool completes(vmask marks, const std::vector<vmask>& family) {
  for (vmask f : family)
    if ((f & marks) == f) return true;
  return false;
}

enum class side : std::uint8_t { none = 0, first = 1, second = 2 };

inline side other(side s) { return s == side::first ? side::second : side::first; }
inline const char* side_name(side s) {
  return s == side::first ? "first" : s == side::second ? "second" : "none";
}

// ---------------------------------------------------------------- hypergraphs

struct hypergraph {
  int n = 0;
  std::vector<vmask> edges;  // minimal elements
};

// A winning family given by finite minimal sets plus symbolic infinite
// generators (descriptors naming infinite minimal sets).
struct win_family {
  std::vector<vmask> finite;
  std::vector<std::string> infinite;
};

struct basis_report {
  bool finite_basis = false;
  std::vector<vmask> basis;
};

inline basis_report has_finite_basis(const win_family& f) {
  return {f.infinite.empty(), f.finite};
}

struct dual_result {
  std::vector<vmask> transversals;
  bool degenerate = false;  // empty family: Breaker wins vacuously
};

// Minimal transversals by exhaustive search over subsets of the board.
inline dual_result maker_breaker_dual(const hypergraph& h) {
  if (h.n > 20)
    throw error(errc::budget_exceeded, "dual needs |B| <= 20, got " + std::to_string(h.n));
  for (vmask e : h.edges)
    if (!e) throw error(errc::invalid_argument, "empty hyperedge");
  if (h.edges.empty()) return {{0}, true};
  auto hits = [&](vmask t) {
    for (vmask e : h.edges)
      if (!(e & t)) return false;
    return true;
  };
  dual_result r;
  for (vmask t = 0; t <= full_mask(h.n); ++t) {
    if (!hits(t)) continue;
    bool minimal = true;
    for (int v : members(t))
      if (hits(t & ~bit(v))) minimal = false;
    if (minimal) r.transversals.push_back(t);
  }
  return r;
}

// ---------------------------------------------------------------- games

struct stone_game {
  int n = 0;
  std::vector<vmask> first_win, second_win;  // minimal winning sets
  std::vector<std::string> labels;           // optional vertex names
  vmask first = 0, second = 0;               // marks
  std::vector<int> move_index;               // per vertex, -1 if unmarked or unknown
  side turn = side::first;
  side winner = side::none;
  int moves = 0;

  vmask marked() const { return first | second; }
  vmask unmarked() const { return full_mask(n) & ~marked(); }
  vmask marks(side s) const { return s == side::first ? first : second; }
  const std::vector<vmask>& family(side s) const { return s == side::first ? first_win : second_win; }
  bool full() const { return unmarked() == 0; }
  bool over() const { return winner != side::none || full(); }
  std::string label(int v) const {
    return v < static_cast<int>(labels.size()) ? labels[v] : std::to_string(v);
  }
};

inline stone_game make_stone_game(int n, std::vector<vmask> first_win, std::vector<vmask> second_win) {
  if (n < 0 || n > max_stone_vertices)
    throw error(errc::invalid_argument, "board size must be in [0, 64]");
  for (const auto* fam : {&first_win, &second_win})
    for (vmask f : *fam) {
      if (!f) throw error(errc::invalid_argument, "empty winning set");
      if (f & ~full_mask(n)) throw error(errc::invalid_argument, "winning set outside the board");
    }
  stone_game g;
  g.n = n;
  g.first_win = minimize(std::move(first_win));
  g.second_win = minimize(std::move(second_win));
  g.move_index.assign(n, -1);
  return g;
}

// Recomputes the winner of a position given without history. Both players
// complete: the move indices decide, and without them the position is
// ambiguous.
inline void settle_winner(stone_game& g) {
  bool a = completes(g.first, g.first_win), b = completes(g.second, g.second_win);
  if (a && b) {
    auto completion_time = [&](side s) {
      int best = -1;
      for (vmask f : g.family(s)) {
        if ((f & g.marks(s)) != f) continue;
        int t = -1;
        for (int v : members(f)) {
          if (g.move_index[v] < 0)
            throw error(errc::precondition_failed,
                        "both players completed a set and the move order is unknown");
          t = std::max(t, g.move_index[v]);
        }
        if (best < 0 || t < best) best = t;
      }
      return best;
    };
    g.winner = completion_time(side::first) < completion_time(side::second) ? side::first
                                                                            : side::second;
  } else {
    g.winner = a ? side::first : b ? side::second : side::none;
  }
}

// Marks v for the mover. Play may continue after a win; the earliest
// completer stays the winner.
inline stone_game play_move(const stone_game& g, int v) {
  if (v < 0 || v >= g.n) throw error(errc::invalid_argument, "vertex out of range");
  if (g.marked() & bit(v)) throw error(errc::occupied, "vertex " + g.label(v) + " already marked");
  stone_game r = g;
  side s = g.turn;
  (s == side::first ? r.first : r.second) |= bit(v);
  r.move_index[v] = r.moves++;
  if (r.winner == side::none && completes(r.marks(s), r.family(s))) r.winner = s;
  r.turn = other(s);
  return r;
}

// All unmarked vertices outside `keep` are handed to player `to`.
inline stone_game gift(const stone_game& g, vmask keep, side to) {
  stone_game r = g;
  vmask add = g.unmarked() & ~keep;
  (to == side::first ? r.first : r.second) |= add;
  if (r.winner == side::none) {
    bool done = completes(r.marks(to), r.family(to));
    if (done) r.winner = to;
  }
  return r;
}

// Adapter for the finite solver: the designated open player wins by
// completing first; a tie or a win by the other player is a loss.
struct stone_solver_game {
  struct state {
    vmask first = 0, second = 0;
    side turn = side::first;
    side winner = side::none;
    bool operator==(const state&) const = default;
  };
  struct hash {
    std::size_t operator()(const state& s) const {
      std::uint64_t h = s.first * 0x9E3779B97F4A7C15ULL ^ (s.second + 0x632BE59BD9B4E019ULL);
      h ^= (static_cast<std::uint64_t>(s.turn) << 2 | static_cast<std::uint64_t>(s.winner)) * 0xBF58476D1CE4E5B9ULL;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };

  const stone_game* g;
  side open;

  static state of(const stone_game& s) { return {s.first, s.second, s.turn, s.winner}; }

  status status_of(const state& s) const {
    if (s.winner == open) return status::open_won;
    if (s.winner != side::none) return status::open_lost;
    if (((s.first | s.second) & full_mask(g->n)) == full_mask(g->n)) return status::open_lost;
    return status::ongoing;
  }
  player mover(const state& s) const { return s.turn == open ? player::open : player::closed; }
  state after(const state& s, int v) const {
    state r = s;
    vmask& m = s.turn == side::first ? r.first : r.second;
    m |= bit(v);
    if (completes(m, g->family(s.turn))) r.winner = s.turn;
    r.turn = other(s.turn);
    return r;
  }
  void moves(const state& s, std::vector<state>& out) const {
    for (int v : members(full_mask(g->n) & ~(s.first | s.second))) out.push_back(after(s, v));
  }
};

struct stone_options {
  eval_options eval;
  int max_vertices = 16;
};

// Exact value for the designated open player; finite or undefined.
inline game_value stone_value(const stone_game& g, side open, stone_options opt = {}) {
  if (popcount(g.unmarked()) > opt.max_vertices)
    throw error(errc::budget_exceeded, std::to_string(popcount(g.unmarked())) +
                                           " unmarked vertices exceed the limit " +
                                           std::to_string(opt.max_vertices));
  stone_solver_game sg{&g, open};
  finite_solver<stone_solver_game> solver(sg, opt.eval);
  game_value v = solver.value(stone_solver_game::of(g));
  if (v.defined() && !v.value().is_finite()) throw std::logic_error("infinite stone-placing value");
  return v;
}

// ---------------------------------------------------------------- dead regions

// Open's plan for winning inside the region. At an open node `reply` is the
// move; at a closed node each anticipated closed move maps to Open's reply,
// and any other closed move is treated as the phantom move.
struct region_plan {
  bool done = false;
  int reply = -1;
  std::shared_ptr<const region_plan> next;
  int phantom = -1;
  std::map<int, std::pair<int, std::shared_ptr<const region_plan>>> branches;
};

struct dead_region_result {
  std::uint64_t value = 0;
  vmask region = 0;
  std::shared_ptr<const region_plan> plan;
};

namespace detail {

class region_builder {
 public:
  using state = stone_solver_game::state;

  region_builder(const stone_game& g, side open, stone_options opt)
      : sg_{&g, open}, solver_(sg_, opt.eval) {}

  finite_solver<stone_solver_game>& solver() { return solver_; }

  std::pair<vmask, std::shared_ptr<const region_plan>> build(const state& s) {
    auto key = std::make_pair(std::make_pair(s.first, s.second),
                              static_cast<int>(s.turn) * 4 + static_cast<int>(s.winner));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto r = compute(s);
    memo_.emplace(key, r);
    return r;
  }

 private:
  // A value-reducing reply for Open (lowest index among the minimal ones).
  int reducing_move(const state& s) {
    long long best = -1;
    int arg = -1;
    for (int v : members(full_mask(sg_.g->n) & ~(s.first | s.second))) {
      long long x = solver_.raw(sg_.after(s, v));
      if (x >= 0 && (best < 0 || x < best)) best = x, arg = v;
    }
    if (arg < 0) throw std::logic_error("no value-reducing move");
    return arg;
  }

  std::pair<vmask, std::shared_ptr<const region_plan>> compute(const state& s) {
    long long val = solver_.raw(s);
    if (val < 0) throw error(errc::no_value, "position has no value for the open player");
    auto plan = std::make_shared<region_plan>();
    if (val == 0) {
      plan->done = true;
      return {0, plan};
    }
    if (sg_.mover(s) == player::open) {
      int v = reducing_move(s);
      auto [d, p] = build(sg_.after(s, v));
      plan->reply = v;
      plan->next = p;
      return {d | bit(v), plan};
    }
    vmask free = full_mask(sg_.g->n) & ~(s.first | s.second);
    int w0 = std::countr_zero(free);
    state s0 = sg_.after(s, w0);
    int v0 = reducing_move(s0);
    auto [d0, p0] = build(sg_.after(s0, v0));
    plan->phantom = w0;
    plan->branches[w0] = {v0, p0};
    vmask region = d0 | bit(v0) | bit(w0);
    for (int w : members((d0 | bit(v0)) & free & ~bit(w0))) {
      state si = sg_.after(s, w);
      int vi = reducing_move(si);
      auto [di, pi] = build(sg_.after(si, vi));
      plan->branches[w] = {vi, pi};
      region |= di | bit(vi) | bit(w);
    }
    return {region, plan};
  }

  stone_solver_game sg_;
  finite_solver<stone_solver_game> solver_;
  std::map<std::pair<std::pair<vmask, vmask>, int>, std::pair<vmask, std::shared_ptr<const region_plan>>>
      memo_;
};

}  // namespace detail

// Finite region D and a plan letting Open win within value(g) moves while
// only ever claiming vertices of D.
inline dead_region_result dead_region(const stone_game& g, side open, stone_options opt = {}) {
  detail::region_builder b(g, open, opt);
  auto s = stone_solver_game::of(g);
  long long val = b.solver().raw(s);
  if (val < 0) throw error(errc::no_value, "game value is undefined for the open player");
  auto [d, plan] = b.build(s);
  return {static_cast<std::uint64_t>(val), d, plan};
}

struct region_check {
  bool plan_wins = true;        // every closed line, Open wins within `value` moves inside D
  bool stays_inside = true;     // Open's replies all lie in D
  game_value gifted_value;      // value after handing B\D to Closed
  std::uint64_t lines = 0;
};

// Exhaustive check of the plan against every closed-player line, including
// moves outside D, plus the value of the gifted position.
inline region_check verify_dead_region(const stone_game& g, side open, const dead_region_result& r,
                                       stone_options opt = {}) {
  region_check rep;
  side closed = other(open);
  std::function<void(const stone_game&, const stone_game&, std::shared_ptr<const region_plan>, int)>
      walk = [&](const stone_game& real, const stone_game& imagined,
                 std::shared_ptr<const region_plan> p, int open_moves) {
        if (real.winner == open) {
          ++rep.lines;
          if (open_moves > static_cast<int>(r.value)) rep.plan_wins = false;
          return;
        }
        if (real.over() || !p || p->done) {
          ++rep.lines;
          rep.plan_wins = false;
          return;
        }
        if (real.turn == open) {
          int v = p->reply;
          if (!(r.region & bit(v))) rep.stays_inside = false;
          if (real.marked() & bit(v)) {
            rep.plan_wins = false;
            return;
          }
          walk(play_move(real, v), play_move(imagined, v), p->next, open_moves + 1);
          return;
        }
        for (int w : members(real.unmarked())) {
          auto it = p->branches.find(w);
          bool anticipated = it != p->branches.end() && !(imagined.marked() & bit(w));
          int seen = anticipated ? w : p->phantom;
          auto [v, next] = p->branches.at(seen);
          stone_game real2 = play_move(real, w);
          stone_game im2 = play_move(imagined, seen);
          if (real2.winner == closed || real2.over()) {
            ++rep.lines;
            rep.plan_wins = false;
            continue;
          }
          if (!(r.region & bit(v))) rep.stays_inside = false;
          if (real2.marked() & bit(v)) {
            rep.plan_wins = false;
            continue;
          }
          walk(play_move(real2, v), play_move(im2, v), next, open_moves + 1);
        }
      };
  walk(g, g, r.plan, 0);
  rep.gifted_value = stone_value(gift(g, r.region, closed), open, opt);
  return rep;
}

// ---------------------------------------------------------------- involutions

struct involution {
  std::vector<int> image;  // image[v] = theta(v)

  int operator()(int v) const { return image.at(v); }
  vmask apply(vmask m) const {
    vmask r = 0;
    for (int v : members(m)) r |= bit(image[v]);
    return r;
  }
};

inline involution involution_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  involution t;
  t.image.assign(n, -1);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw error(errc::invalid_argument, "pair outside the board");
    if (t.image[a] >= 0 || t.image[b] >= 0)
      throw error(errc::precondition_failed, "vertex paired twice");
    t.image[a] = b;
    t.image[b] = a;
  }
  for (int v = 0; v < n; ++v)
    if (t.image[v] < 0) t.image[v] = v;
  return t;
}

// Empty string if valid, otherwise the reason.
inline std::string involution_defect(const involution& t, int n) {
  if (static_cast<int>(t.image.size()) != n) return "size mismatch";
  for (int v = 0; v < n; ++v) {
    int w = t.image[v];
    if (w < 0 || w >= n) return "image out of range at " + std::to_string(v);
    if (t.image[w] != v) return "not self-inverse at " + std::to_string(v);
    if (w == v) return "fixed point " + std::to_string(v);
  }
  return {};
}

using stone_strategy = std::function<int(const stone_game&)>;

// Second player answers every v with theta(v).
inline stone_strategy mirroring_draw(const stone_game& g, const involution& theta) {
  if (auto d = involution_defect(theta, g.n); !d.empty())
    throw error(errc::precondition_failed, "theta: " + d);
  for (vmask f : g.first_win)
    if (!(f & theta.apply(f))) {
      std::string s;
      for (int v : members(f)) s += (s.empty() ? "" : ",") + g.label(v);
      throw error(errc::precondition_failed, "winning set {" + s + "} misses its mirror image");
    }
  return [theta](const stone_game& pos) {
    // the previous move is the most recent first-player vertex
    int last = -1, idx = -1;
    for (int v : members(pos.first))
      if (pos.move_index[v] > idx) idx = pos.move_index[v], last = v;
    if (last < 0) throw error(errc::precondition_failed, "no first-player move to mirror");
    int w = theta(last);
    if (pos.marked() & bit(w)) throw std::logic_error("mirror target already marked");
    return w;
  };
}

// Even size of f cap theta[f], returned per minimal set.
inline std::vector<int> mirror_intersections(const stone_game& g, const involution& theta) {
  std::vector<int> out;
  for (vmask f : g.first_win) out.push_back(popcount(f & theta.apply(f)));
  return out;
}

// ---------------------------------------------------------------- Maker-Breaker colouring

// Breaker's strategy as a function of (maker marks, breaker marks).
using breaker_strategy = std::function<int(vmask maker, vmask breaker)>;

// Exhaustively checks that Breaker, moving second and following `s`,
// hits every edge. Returns a losing line if there is one.
inline std::optional<std::vector<int>> breaker_losing_line(const hypergraph& h,
                                                           const breaker_strategy& s) {
  std::vector<int> line;
  std::function<bool(vmask, vmask)> rec = [&](vmask m, vmask b) {
    vmask free = full_mask(h.n) & ~(m | b);
    for (int v : members(free)) {
      vmask m2 = m | bit(v);
      line.push_back(v);
      if (completes(m2, h.edges)) return true;
      vmask free2 = free & ~bit(v);
      if (free2) {
        int w = s(m2, b);
        if (w < 0 || w >= h.n || !(free2 & bit(w))) return true;
        line.push_back(w);
        if (rec(m2, b | bit(w))) return true;
        line.pop_back();
      }
      line.pop_back();
    }
    return false;
  };
  if (rec(0, 0)) return line;
  return std::nullopt;
}

struct coloring {
  vmask white = 0;  // Maker's vertices
  vmask black = 0;  // Breaker's and the unchosen ones
  std::vector<int> play;
};

// Maker opens with an arbitrary vertex and then plays Breaker's strategy on
// the board with roles swapped, ignoring his extra stone; Breaker plays the
// strategy too. Maker's vertices are white, the rest black.
inline coloring breaker_to_2coloring(const hypergraph& h, const breaker_strategy& s) {
  if (auto bad = breaker_losing_line(h, s)) {
    std::string l;
    for (int v : *bad) l += (l.empty() ? "" : " ") + std::to_string(v);
    throw error(errc::not_winning, "Breaker loses the line " + l);
  }
  coloring c;
  vmask maker = 0, breaker = 0;
  vmask all = full_mask(h.n);
  if (!all) return c;
  int extra = 0;
  maker |= bit(extra);
  c.play.push_back(extra);
  bool maker_turn = false;
  while ((maker | breaker) != all) {
    vmask free = all & ~(maker | breaker);
    int v;
    if (maker_turn) {
      // Breaker's stones play the role of Maker's, ours minus the extra stone
      // the role of Breaker's.
      v = s(breaker, maker & ~bit(extra));
      if (v == extra) {
        extra = std::countr_zero(free);
        v = extra;
      }
      maker |= bit(v);
    } else {
      v = s(maker, breaker);
      if (v < 0 || !(free & bit(v))) throw std::logic_error("breaker strategy left the board");
      breaker |= bit(v);
    }
    c.play.push_back(v);
    maker_turn = !maker_turn;
  }
  c.white = maker;
  c.black = all & ~maker;
  return c;
}

inline bool proper_coloring(const hypergraph& h, vmask white) {
  for (vmask e : h.edges)
    if ((e & white) == e || (e & ~white) == e) return false;
  return true;
}

// Breaker strategy from exhaustive search: first winning reply, if any.
class solved_breaker {
 public:
  explicit solved_breaker(hypergraph h) : h_(std::move(h)) {}

  // True if Breaker, moving second, wins from the empty board.
  bool wins() { return breaker_wins(0, 0, true); }

  int operator()(vmask maker, vmask breaker) {
    for (int v : members(full_mask(h_.n) & ~(maker | breaker)))
      if (breaker_wins(maker, breaker | bit(v), true)) return v;
    vmask free = full_mask(h_.n) & ~(maker | breaker);
    return free ? std::countr_zero(free) : -1;
  }

 private:
  // maker_to_move: Maker moves next from (maker, breaker).
  bool breaker_wins(vmask m, vmask b, bool maker_to_move) {
    if (completes(m, h_.edges)) return false;
    vmask free = full_mask(h_.n) & ~(m | b);
    if (!free) return true;
    auto key = std::make_tuple(m, b, maker_to_move);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r;
    if (maker_to_move) {
      r = true;
      for (int v : members(free))
        if (!breaker_wins(m | bit(v), b, false)) {
          r = false;
          break;
        }
    } else {
      r = false;
      for (int v : members(free))
        if (breaker_wins(m, b | bit(v), true)) {
          r = true;
          break;
        }
    }
    memo_.emplace(key, r);
    return r;
  }

  hypergraph h_;
  std::map<std::tuple<vmask, vmask, bool>, bool> memo_;
};

// ---------------------------------------------------------------- strategy stealing

// Infinite winning sets on the integers: arithmetic progressions
// {start + step*t : t >= 0}, step != 0.
struct progression {
  long long start = 0, step = 1;

  bool contains(long long v) const {
    long long d = v - start;
    return d % step == 0 && d / step >= 0;
  }
  bool subset_of(const progression& o) const {
    return step % o.step == 0 && (step > 0) == (o.step > 0) && o.contains(start);
  }
};

// Board Z with the involution v -> c - v (fixed-point free for odd c).
struct progression_game {
  std::vector<progression> first_win, second_win;
  std::vector<vmask> first_finite, second_finite;  // finite minimal sets, if any
  long long reflect = -1;                          // c

  long long g(long long v) const { return reflect - v; }
  progression image(const progression& p) const { return {reflect - p.start, -p.step}; }
};

struct steal_verdict {
  bool certified = false;
  int playouts = 0;
  std::string detail;
};

// Echo strategy: an arbitrary first move, then g(v) for every opponent move
// v (another arbitrary move if g(v) is taken).
inline long long echo_reply(const progression_game& pg, const std::set<long long>& taken,
                            long long last, long long arbitrary_from) {
  long long w = pg.g(last);
  if (!taken.count(w)) return w;
  for (long long x = arbitrary_from;; ++x)
    if (!taken.count(x)) return x;
}

inline steal_verdict strategy_steal_check(const progression_game& pg, int playouts = 100,
                                          int moves = 60, std::uint64_t seed = 0) {
  for (const auto* fin : {&pg.first_finite, &pg.second_finite})
    if (!fin->empty()) {
      std::string s;
      for (int v : members(fin->front())) s += (s.empty() ? "" : ",") + std::to_string(v);
      throw error(errc::not_strictly_not_open,
                  std::string(fin == &pg.second_finite ? "second" : "first") +
                      " player has the finite winning set {" + s + "}");
    }
  if (pg.reflect % 2 == 0)
    throw error(errc::precondition_failed,
                "v -> " + std::to_string(pg.reflect) + " - v has a fixed point");
  for (const auto& s : pg.second_win) {
    if (s.step == 0) throw error(errc::invalid_argument, "progression step must be nonzero");
    progression gs = pg.image(s);
    bool covered = false;
    for (const auto& f : pg.first_win)
      if (f.subset_of(gs)) covered = true;
    if (!covered)
      throw error(errc::precondition_failed,
                  "no first-player set inside g[s] for s = (" + std::to_string(s.start) + ", " +
                      std::to_string(s.step) + ")");
  }
  steal_verdict v;
  std::mt19937_64 rng(seed);
  for (int p = 0; p < playouts; ++p) {
    std::set<long long> first, second, taken;
    long long opening = static_cast<long long>(rng() % 41) - 20;
    first.insert(opening);
    taken.insert(opening);
    for (int m = 0; m < moves; ++m) {
      long long x;
      // the second player mostly walks along one of his progressions
      if (!pg.second_win.empty() && rng() % 2) {
        const auto& s = pg.second_win[rng() % pg.second_win.size()];
        long long t = 0;
        do x = s.start + s.step * t++;
        while (taken.count(x));
      } else {
        do x = static_cast<long long>(rng() % 201) - 100;
        while (taken.count(x));
      }
      second.insert(x);
      taken.insert(x);
      long long y = echo_reply(pg, taken, x, 1000);
      first.insert(y);
      taken.insert(y);
      for (long long s : second)
        if (!first.count(pg.g(s))) {
          v.detail = "g(" + std::to_string(s) + ") not claimed after playout " + std::to_string(p);
          return v;
        }
    }
    ++v.playouts;
  }
  v.certified = true;
  v.detail = "g-image of every second-player vertex claimed in " + std::to_string(v.playouts) +
             " playouts";
  return v;
}

// On a finite board every nonempty family has finite minimal sets, so the
// check rejects it; only the vacuous instance passes.
inline steal_verdict strategy_steal_check(const stone_game& g, const involution& ginv) {
  progression_game pg;
  pg.first_finite = g.first_win;
  pg.second_finite = g.second_win;
  if (!pg.first_finite.empty() || !pg.second_finite.empty()) return strategy_steal_check(pg);
  if (auto d = involution_defect(ginv, g.n); !d.empty())
    throw error(errc::precondition_failed, "g: " + d);
  return {true, 0, "no winning sets"};
}

}  // namespace og
