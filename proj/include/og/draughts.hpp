#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "og/error.hpp"
#include "og/gamecore.hpp"

namespace og {

// ---------------------------------------------------------------- squares

// Diagonal coordinates. The neighbours of (u,v) are (u±1,v) and (u,v±1).
// On a chessboard this is x = u - v, y = u + v: North is increasing u+v and
// (1,0), (0,1), (-1,0), (0,-1) point NE, NW, SW, SE.
struct dsq {
  int u = 0, v = 0;
  auto operator<=>(const dsq&) const = default;
  dsq operator+(dsq o) const { return {u + o.u, v + o.v}; }
  dsq operator-(dsq o) const { return {u - o.u, v - o.v}; }
  dsq operator*(int k) const { return {u * k, v * k}; }
  int height() const { return u + v; }
  std::string str() const { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }
};

inline constexpr std::array<dsq, 4> d_dirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

inline int d_dist(dsq a, dsq b) { return std::abs(a.u - b.u) + std::abs(a.v - b.v); }
inline bool is_unit(dsq d) { return d_dist(d, {0, 0}) == 1; }

inline const char* compass(dsq d) {
  if (d == dsq{1, 0}) return "NE";
  if (d == dsq{0, 1}) return "NW";
  if (d == dsq{-1, 0}) return "SW";
  if (d == dsq{0, -1}) return "SE";
  return "?";
}

struct dbox {
  int u0 = 0, u1 = -1, v0 = 0, v1 = -1;

  bool empty() const { return u0 > u1 || v0 > v1; }
  bool contains(dsq s) const { return s.u >= u0 && s.u <= u1 && s.v >= v0 && s.v <= v1; }
  int width() const { return empty() ? 0 : u1 - u0 + 1; }
  int height() const { return empty() ? 0 : v1 - v0 + 1; }
  std::size_t cells() const { return static_cast<std::size_t>(width()) * height(); }
  void add(dsq s) {
    if (empty()) {
      *this = {s.u, s.u, s.v, s.v};
      return;
    }
    u0 = std::min(u0, s.u), u1 = std::max(u1, s.u);
    v0 = std::min(v0, s.v), v1 = std::max(v1, s.v);
  }
  dbox grown(int k) const { return empty() ? *this : dbox{u0 - k, u1 + k, v0 - k, v1 + k}; }
};

// ---------------------------------------------------------------- positions

enum class dcolor : std::uint8_t { white, black };
enum class dkind : std::uint8_t { pawn, king };

inline dcolor opponent(dcolor c) { return c == dcolor::white ? dcolor::black : dcolor::white; }
inline const char* dcolor_name(dcolor c) { return c == dcolor::white ? "White" : "Black"; }

struct dpiece {
  dcolor color = dcolor::white;
  dkind kind = dkind::king;
  auto operator<=>(const dpiece&) const = default;
};

// Kings on start, start + 2 dir, start + 4 dir, ... forever.
struct ladder {
  dsq start;
  dsq dir{1, 0};
  dcolor color = dcolor::white;

  dsq at(std::size_t k) const { return start + dir * static_cast<int>(2 * k); }
  std::optional<std::size_t> index_of(dsq s) const {
    dsq d = s - start;
    int m;
    if (dir.u != 0) {
      if (d.v != 0) return std::nullopt;
      m = d.u * dir.u;
    } else {
      if (d.u != 0) return std::nullopt;
      m = d.v * dir.v;
    }
    if (m < 0 || m % 2 != 0) return std::nullopt;
    return static_cast<std::size_t>(m / 2);
  }
  bool operator==(const ladder&) const = default;
};

struct draughts_position {
  std::map<dsq, dpiece> pieces;
  std::vector<ladder> ladders;
  dcolor turn = dcolor::black;
  // Pawns are crowned on reaching these heights (u+v); unset means never.
  std::optional<int> black_king_row, white_king_row;

  std::optional<dpiece> at(dsq s) const {
    if (auto it = pieces.find(s); it != pieces.end()) return it->second;
    for (const auto& l : ladders)
      if (l.index_of(s)) return dpiece{l.color, dkind::king};
    return std::nullopt;
  }
  bool has_pieces(dcolor c) const {
    for (const auto& [s, pc] : pieces)
      if (pc.color == c) return true;
    for (const auto& l : ladders)
      if (l.color == c) return true;
    return false;
  }
  std::size_t explicit_count(dcolor c) const {
    std::size_t n = 0;
    for (const auto& [s, pc] : pieces) n += pc.color == c;
    return n;
  }
  dbox bounds() const {
    dbox b;
    for (const auto& [s, pc] : pieces) b.add(s);
    for (const auto& l : ladders) b.add(l.start);
    return b;
  }
  bool operator==(const draughts_position&) const = default;
};

inline void validate(const draughts_position& p) {
  if (p.ladders.size() > 4)
    throw error(errc::malformed_position, "at most 4 ladder descriptors are supported");
  for (std::size_t i = 0; i < p.ladders.size(); ++i) {
    const ladder& l = p.ladders[i];
    if (!is_unit(l.dir))
      throw error(errc::malformed_position, "ladder direction " + l.dir.str() + " is not a unit step");
    for (const auto& [s, pc] : p.pieces)
      if (l.index_of(s))
        throw error(errc::malformed_position, "piece on " + s.str() + " overlaps a ladder");
    // Two rays meet within a bounded prefix or not at all when they diverge;
    // parallel overlapping rays are caught at their starts.
    for (std::size_t j = 0; j < i; ++j) {
      const ladder& o = p.ladders[j];
      for (std::size_t k = 0; k < 512; ++k)
        if (o.index_of(l.at(k)) || l.index_of(o.at(k)))
          throw error(errc::malformed_position, "ladders " + std::to_string(j) + " and " +
                                                    std::to_string(i) + " overlap");
    }
  }
}

// ---------------------------------------------------------------- rules

enum class iteration { forced_maximal_finite, finite_optional, forced_maximal_including_infinite };

inline const char* iteration_name(iteration it) {
  switch (it) {
    case iteration::forced_maximal_finite: return "ForcedMaximalFinite";
    case iteration::finite_optional: return "FiniteOptional";
    case iteration::forced_maximal_including_infinite: return "ForcedMaximalIncludingInfinite";
  }
  return "?";
}

struct rule_set {
  std::string name;
  bool forced_jump = true;
  iteration iter = iteration::finite_optional;

  bool same_rules(const rule_set& o) const { return forced_jump == o.forced_jump && iter == o.iter; }
};

// Forced jump, any finite number of jumps, stopping anywhere: the setting
// of the value theorem.
inline rule_set rs_a() { return {"RS-A", true, iteration::finite_optional}; }
inline rule_set rs_b() { return {"RS-B", false, iteration::finite_optional}; }
inline rule_set rs_c() { return {"RS-C", false, iteration::forced_maximal_including_infinite}; }
// Forced jump, forced maximal finite iteration.
inline rule_set rs_standard() { return {"STD", true, iteration::forced_maximal_finite}; }

inline rule_set rule_set_by_name(const std::string& n) {
  if (n == "RS-A") return rs_a();
  if (n == "RS-B") return rs_b();
  if (n == "RS-C") return rs_c();
  if (n == "STD") return rs_standard();
  throw error(errc::unsupported_rule_set, "unknown rule set '" + n + "'");
}

// ---------------------------------------------------------------- moves

struct dmove {
  dsq from;
  std::vector<dsq> path;      // squares landed on, in order
  std::vector<dsq> captured;  // finite part, in order
  bool to_infinity = false;   // ran up a ladder forever
  std::size_t ladder = 0;     // with to_infinity: which ladder, and the first
  std::size_t ladder_entry = 0;  //   index of its unbroken run that was jumped

  bool is_jump() const { return !captured.empty() || to_infinity; }
  dsq to() const { return path.back(); }
  std::string str() const {
    std::string s = from.str();
    for (dsq q : path) s += (is_jump() ? "x" : "-") + q.str();
    if (to_infinity) s += "x...";
    return s;
  }
  bool operator==(const dmove&) const = default;
};

struct move_options {
  std::size_t ladder_horizon = 16;  // ladder pieces materialised per descriptor
  std::optional<dbox> window;       // squares outside do not exist
};

namespace detail {

inline std::vector<dsq> piece_dirs(dpiece pc) {
  if (pc.kind == dkind::king) return {d_dirs.begin(), d_dirs.end()};
  if (pc.color == dcolor::black) return {{1, 0}, {0, 1}};
  return {{-1, 0}, {0, -1}};
}

struct position_view {
  const draughts_position& p;
  const move_options& opt;

  bool exists(dsq s) const { return !opt.window || opt.window->contains(s); }
  std::optional<dpiece> at(dsq s) const { return p.at(s); }
  std::optional<std::pair<std::size_t, std::size_t>> ladder_at(dsq s) const {
    for (std::size_t i = 0; i < p.ladders.size(); ++i)
      if (auto k = p.ladders[i].index_of(s)) return std::pair{i, *k};
    return std::nullopt;
  }
  const ladder& ladder_ref(std::size_t i) const { return p.ladders[i]; }
  std::size_t horizon() const { return opt.ladder_horizon; }
  template <class F>
  void for_each_piece(dcolor c, F&& f) const {
    for (const auto& [s, pc] : p.pieces)
      if (pc.color == c) f(s, pc);
    for (const auto& l : p.ladders)
      if (l.color == c)
        for (std::size_t k = 0; k < opt.ladder_horizon; ++k)
          if (exists(l.at(k))) f(l.at(k), dpiece{c, dkind::king});
  }
};

template <class Board>
struct jump_walker {
  const Board& b;
  dsq from;
  dpiece pc;
  const rule_set& rs;
  std::vector<dmove>& out;
  std::vector<dsq> dirs = piece_dirs(pc);
  std::vector<dsq> path{}, caught{};

  bool taken(dsq s) const { return std::find(caught.begin(), caught.end(), s) != caught.end(); }
  bool free(dsq s) const { return b.exists(s) && (s == from || !b.at(s)); }
  bool enemy(dsq s) const {
    if (!b.exists(s) || taken(s)) return false;
    auto q = b.at(s);
    return q && q->color != pc.color;
  }

  void walk(dsq cur) {
    bool extendable = false;
    for (dsq d : dirs) {
      dsq over = cur + d, land = over + d;
      if (!enemy(over) || !free(land)) continue;
      extendable = true;
      if (auto li = b.ladder_at(over); li && li->second >= b.horizon()) {
        const ladder& l = b.ladder_ref(li->first);
        if (d == l.dir || d == l.dir * -1) {
          // Past the horizon the run continues up the ladder for ever.
          if (rs.iter == iteration::forced_maximal_including_infinite) {
            std::size_t e = li->second;
            while (e > 0 && taken(l.at(e - 1))) --e;
            dmove m{from, path, caught, true, li->first, e};
            if (m.path.empty()) m.path.push_back(cur);
            out.push_back(std::move(m));
          }
          continue;
        }
      }
      path.push_back(land);
      caught.push_back(over);
      walk(land);
      path.pop_back();
      caught.pop_back();
    }
    if (path.empty()) return;
    if (extendable && rs.iter != iteration::finite_optional) return;
    out.push_back(dmove{from, path, caught});
  }
};

template <class Board>
void generate_moves(const Board& b, dcolor side, const rule_set& rs, std::vector<dmove>& out) {
  std::vector<dmove> jumps, simple;
  b.for_each_piece(side, [&](dsq s, dpiece pc) {
    jump_walker<Board> w{b, s, pc, rs, jumps};
    w.walk(s);
    for (dsq d : piece_dirs(pc)) {
      dsq t = s + d;
      if (b.exists(t) && !b.at(t)) simple.push_back(dmove{s, {t}, {}});
    }
  });
  out = std::move(jumps);
  if (out.empty() || !rs.forced_jump) out.insert(out.end(), simple.begin(), simple.end());
}

template <class Board>
bool has_any_move(const Board& b, dcolor side) {
  bool found = false;
  b.for_each_piece(side, [&](dsq s, dpiece pc) {
    if (found) return;
    for (dsq d : piece_dirs(pc)) {
      dsq t = s + d;
      if (!b.exists(t)) continue;
      auto q = b.at(t);
      if (!q) {
        found = true;
        return;
      }
      dsq land = t + d;
      if (q->color != side && b.exists(land) && !b.at(land)) {
        found = true;
        return;
      }
    }
  });
  return found;
}

inline dpiece crowned(const draughts_position& p, dpiece pc, dsq to) {
  if (pc.kind == dkind::pawn) {
    if (pc.color == dcolor::black && p.black_king_row && to.height() >= *p.black_king_row)
      pc.kind = dkind::king;
    if (pc.color == dcolor::white && p.white_king_row && to.height() <= *p.white_king_row)
      pc.kind = dkind::king;
  }
  return pc;
}

}  // namespace detail

inline std::vector<dmove> legal_moves(const draughts_position& p, const rule_set& rs,
                                      const move_options& opt = {}) {
  validate(p);
  std::vector<dmove> out;
  detail::generate_moves(detail::position_view{p, opt}, p.turn, rs, out);
  return out;
}

inline draughts_position apply_move(const draughts_position& p, const dmove& m) {
  auto mover = p.at(m.from);
  if (!mover || mover->color != p.turn)
    throw error(errc::invalid_argument, "no " + std::string(dcolor_name(p.turn)) + " piece on " +
                                            m.from.str());
  if (m.path.empty()) throw error(errc::invalid_argument, "move without a destination");
  draughts_position q = p;
  // Ladder pieces that are touched become explicit; the descriptor keeps the
  // untouched tail.
  std::vector<bool> drop(q.ladders.size(), false);
  for (std::size_t i = 0; i < q.ladders.size(); ++i) {
    ladder& l = q.ladders[i];
    std::optional<std::size_t> top;
    auto touch = [&](dsq s) {
      if (auto k = l.index_of(s)) top = top ? std::max(*top, *k) : *k;
    };
    touch(m.from);
    for (dsq c : m.captured) touch(c);
    if (m.to_infinity && m.ladder == i) {
      for (std::size_t k = 0; k < m.ladder_entry; ++k) q.pieces[l.at(k)] = dpiece{l.color, dkind::king};
      drop[i] = true;
      continue;
    }
    if (!top) continue;
    for (std::size_t k = 0; k <= *top; ++k) q.pieces[l.at(k)] = dpiece{l.color, dkind::king};
    l.start = l.at(*top + 1);
  }
  for (std::size_t i = q.ladders.size(); i-- > 0;)
    if (drop[i]) q.ladders.erase(q.ladders.begin() + static_cast<std::ptrdiff_t>(i));
  for (dsq c : m.captured) q.pieces.erase(c);
  dpiece pc = q.pieces.at(m.from);
  q.pieces.erase(m.from);
  if (!m.to_infinity) q.pieces[m.to()] = detail::crowned(q, pc, m.to());
  q.turn = opponent(q.turn);
  return q;
}

// ---------------------------------------------------------------- minimax

struct minimax_options {
  std::uint64_t budget_nodes = 20'000'000;
  std::size_t max_white_moves = 8;  // depth of the bounded search
  std::size_t max_states = 200'000;  // for the exhaustive fallback
  std::optional<dbox> window;       // default: bounds grown by max_white_moves + 2
};

struct minimax_stats {
  std::uint64_t nodes = 0;
  bool exhaustive = false;  // value came from the full state graph
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Dense board over a window with make/unmake and two Zobrist hashes.
class dgrid {
 public:
  struct undo {
    dsq from, to;
    std::uint8_t before = 0, after = 0;
    std::vector<std::pair<dsq, std::uint8_t>> caught;
    std::uint64_t h1 = 0, h2 = 0;
  };

  dgrid(const draughts_position& p, dbox w) : w_(w), black_row_(p.black_king_row),
                                              white_row_(p.white_king_row) {
    if (!p.ladders.empty())
      throw error(errc::precondition_failed, "minimax needs a position without ladders");
    cells_.assign(w_.cells(), 0);
    std::uint64_t seed = 0x5eed;
    z1_.resize(cells_.size() * 4);
    z2_.resize(cells_.size() * 4);
    for (auto& z : z1_) z = splitmix64(seed);
    for (auto& z : z2_) z = splitmix64(seed);
    for (const auto& [s, pc] : p.pieces) {
      if (!w_.contains(s))
        throw error(errc::precondition_failed, "piece on " + s.str() + " lies outside the window");
      put(s, code(pc));
      lists_[static_cast<int>(pc.color)].push_back(s);
    }
  }

  bool exists(dsq s) const { return w_.contains(s); }
  std::optional<dpiece> at(dsq s) const {
    if (!w_.contains(s)) return std::nullopt;
    std::uint8_t c = cells_[idx(s)];
    if (c == 0) return std::nullopt;
    return piece(c);
  }
  std::optional<std::pair<std::size_t, std::size_t>> ladder_at(dsq) const { return std::nullopt; }
  const ladder& ladder_ref(std::size_t) const { throw std::logic_error("grid boards have no ladders"); }
  std::size_t horizon() const { return 0; }
  template <class F>
  void for_each_piece(dcolor c, F&& f) const {
    for (dsq s : lists_[static_cast<int>(c)]) f(s, piece(cells_[idx(s)]));
  }
  const std::vector<dsq>& list(dcolor c) const { return lists_[static_cast<int>(c)]; }
  std::pair<std::uint64_t, std::uint64_t> key() const { return {h1_, h2_}; }

  void make(const dmove& m, undo& u) {
    u.from = m.from;
    u.to = m.to();
    u.h1 = h1_;
    u.h2 = h2_;
    u.before = cells_[idx(m.from)];
    dpiece pc = piece(u.before);
    put(m.from, 0);
    erase(pc.color, m.from);
    u.caught.clear();
    for (dsq c : m.captured) {
      u.caught.emplace_back(c, cells_[idx(c)]);
      erase(piece(cells_[idx(c)]).color, c);
      put(c, 0);
    }
    if (pc.kind == dkind::pawn) {
      if (pc.color == dcolor::black && black_row_ && u.to.height() >= *black_row_) pc.kind = dkind::king;
      if (pc.color == dcolor::white && white_row_ && u.to.height() <= *white_row_) pc.kind = dkind::king;
    }
    u.after = code(pc);
    put(u.to, u.after);
    lists_[static_cast<int>(pc.color)].push_back(u.to);
  }

  void unmake(const undo& u) {
    dcolor c = piece(u.after).color;
    put(u.to, 0);
    erase(c, u.to);
    for (auto it = u.caught.rbegin(); it != u.caught.rend(); ++it) {
      put(it->first, it->second);
      lists_[static_cast<int>(piece(it->second).color)].push_back(it->first);
    }
    put(u.from, u.before);
    lists_[static_cast<int>(c)].push_back(u.from);
    h1_ = u.h1;
    h2_ = u.h2;
  }

  draughts_position snapshot(dcolor turn) const {
    draughts_position p;
    for (int c = 0; c < 2; ++c)
      for (dsq s : lists_[c]) p.pieces[s] = piece(cells_[idx(s)]);
    p.turn = turn;
    p.black_king_row = black_row_;
    p.white_king_row = white_row_;
    return p;
  }

 private:
  static std::uint8_t code(dpiece pc) {
    return static_cast<std::uint8_t>(1 + (pc.color == dcolor::black ? 2 : 0) +
                                     (pc.kind == dkind::pawn ? 1 : 0));
  }
  static dpiece piece(std::uint8_t c) {
    return {c >= 3 ? dcolor::black : dcolor::white, (c - 1) % 2 ? dkind::pawn : dkind::king};
  }
  std::size_t idx(dsq s) const {
    return static_cast<std::size_t>(s.v - w_.v0) * w_.width() + (s.u - w_.u0);
  }
  void put(dsq s, std::uint8_t c) {
    std::size_t i = idx(s);
    if (cells_[i]) {
      h1_ ^= z1_[i * 4 + cells_[i] - 1];
      h2_ ^= z2_[i * 4 + cells_[i] - 1];
    }
    cells_[i] = c;
    if (c) {
      h1_ ^= z1_[i * 4 + c - 1];
      h2_ ^= z2_[i * 4 + c - 1];
    }
  }
  void erase(dcolor c, dsq s) {
    auto& l = lists_[static_cast<int>(c)];
    auto it = std::find(l.begin(), l.end(), s);
    *it = l.back();
    l.pop_back();
  }

  dbox w_;
  std::optional<int> black_row_, white_row_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::uint64_t> z1_, z2_;
  std::uint64_t h1_ = 0, h2_ = 0;
  std::array<std::vector<dsq>, 2> lists_;
};

struct key_hash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return static_cast<std::size_t>(k.first ^ (k.second * 0x9e3779b97f4a7c15ULL));
  }
};

// "White wins within k White moves" by bounded search. White is the open
// player: a Black side without moves has lost.
class draughts_search {
 public:
  draughts_search(const draughts_position& p, const rule_set& rs, const minimax_options& opt,
                  dbox w)
      : g_(p, w), rs_(rs), opt_(opt) {}

  bool black_to_move(std::size_t k) {
    std::vector<dmove> ms;
    generate_moves(g_, dcolor::black, rs_, ms);
    if (ms.empty()) return true;
    if (k == 0) return false;
    auto& e = memo_[0][g_.key()];
    if (e.lo_true && k >= e.lo_true) return true;
    if (k <= e.hi_false) return false;
    tick();
    order_black(ms);
    bool all = true;
    dgrid::undo u;
    for (const dmove& m : ms) {
      g_.make(m, u);
      bool r = white_to_move(k);
      g_.unmake(u);
      if (!r) {
        all = false;
        break;
      }
    }
    auto& e2 = memo_[0][g_.key()];
    if (all)
      e2.lo_true = e2.lo_true ? std::min(e2.lo_true, k) : k;
    else
      e2.hi_false = std::max(e2.hi_false, k);
    return all;
  }

  bool white_to_move(std::size_t k) {
    if (k == 0) return false;
    auto& e = memo_[1][g_.key()];
    if (e.lo_true && k >= e.lo_true) return true;
    if (k <= e.hi_false) return false;
    tick();
    std::vector<dmove> ms;
    generate_moves(g_, dcolor::white, rs_, ms);
    bool found = k == 1 ? wins_now(ms) : false;
    if (k > 1) {
      order_white(ms);
      dgrid::undo u;
      for (const dmove& m : ms) {
        g_.make(m, u);
        bool r = black_to_move(k - 1);
        g_.unmake(u);
        if (r) {
          found = true;
          break;
        }
      }
    }
    auto& e2 = memo_[1][g_.key()];
    if (found)
      e2.lo_true = e2.lo_true ? std::min(e2.lo_true, k) : k;
    else
      e2.hi_false = std::max(e2.hi_false, k);
    return found;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct entry {
    std::size_t lo_true = 0;   // smallest k known to win (0: none)
    std::size_t hi_false = 0;  // largest k known not to win
  };

  void tick() {
    if (++nodes_ > opt_.budget_nodes)
      throw error(errc::budget_exceeded,
                  "draughts search explored more than " + std::to_string(opt_.budget_nodes) + " nodes");
  }

  int black_distance(dsq s) const {
    int best = 1 << 29;
    for (dsq b : g_.list(dcolor::black)) best = std::min(best, d_dist(s, b));
    return best;
  }

  // One White move wins iff it leaves Black without moves. A simple move far
  // from every Black piece cannot change Black's options.
  bool wins_now(const std::vector<dmove>& ms) {
    bool far_move = false;
    dgrid::undo u;
    for (const dmove& m : ms) {
      if (!m.is_jump() && black_distance(m.from) > 3 && black_distance(m.to()) > 2) {
        far_move = true;
        continue;
      }
      g_.make(m, u);
      bool stuck = !has_any_move(g_, dcolor::black);
      g_.unmake(u);
      if (stuck) return true;
    }
    return far_move && !has_any_move(g_, dcolor::black);
  }

  // Captures first, then moves far from Black: those are the harmless ones.
  void order_white(std::vector<dmove>& ms) const {
    std::vector<std::pair<int, std::size_t>> key;
    for (std::size_t i = 0; i < ms.size(); ++i)
      key.emplace_back(ms[i].is_jump() ? -(1 << 20) : -black_distance(ms[i].from), i);
    std::stable_sort(key.begin(), key.end());
    std::vector<dmove> out;
    out.reserve(ms.size());
    for (auto& [k, i] : key) out.push_back(std::move(ms[i]));
    ms = std::move(out);
  }

  // Landing squares no White piece can immediately capture come first.
  void order_black(std::vector<dmove>& ms) const {
    auto exposed = [&](const dmove& m) {
      dsq t = m.to();
      for (dsq d : d_dirs) {
        auto q = g_.at(t + d);
        if (!q || q->color != dcolor::white) continue;
        if (std::find(m.captured.begin(), m.captured.end(), t + d) != m.captured.end()) continue;
        dsq land = t - d;
        if (!g_.exists(land)) continue;
        bool vacated = land == m.from ||
                       std::find(m.captured.begin(), m.captured.end(), land) != m.captured.end();
        if (vacated || !g_.at(land)) return true;
      }
      return false;
    };
    std::stable_partition(ms.begin(), ms.end(), [&](const dmove& m) { return !exposed(m); });
  }

  dgrid g_;
  rule_set rs_;
  minimax_options opt_;
  std::uint64_t nodes_ = 0;
  std::array<std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, entry, key_hash>, 2> memo_;
};

// Exhaustive attractor over the reachable state graph; -1 is undefined.
inline long long draughts_attractor(const draughts_position& p, const rule_set& rs,
                                    const minimax_options& opt, dbox w) {
  struct node {
    draughts_position pos;
    std::vector<std::size_t> next;
  };
  std::vector<node> nodes;
  std::map<std::pair<std::vector<std::pair<dsq, dpiece>>, dcolor>, std::size_t> ids;
  auto id_of = [&](const draughts_position& q) {
    std::pair<std::vector<std::pair<dsq, dpiece>>, dcolor> k{{q.pieces.begin(), q.pieces.end()}, q.turn};
    auto [it, fresh] = ids.emplace(std::move(k), nodes.size());
    if (fresh) {
      if (nodes.size() >= opt.max_states)
        throw error(errc::budget_exceeded, "more than " + std::to_string(opt.max_states) +
                                               " reachable draughts states");
      nodes.push_back({q, {}});
    }
    return it->second;
  };
  id_of(p);
  move_options mo;
  mo.window = w;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<dmove> ms;
    detail::generate_moves(detail::position_view{nodes[i].pos, mo}, nodes[i].pos.turn, rs, ms);
    std::vector<std::size_t> nx;
    for (const dmove& m : ms) nx.push_back(id_of(apply_move(nodes[i].pos, m)));
    std::sort(nx.begin(), nx.end());
    nx.erase(std::unique(nx.begin(), nx.end()), nx.end());
    nodes[i].next = std::move(nx);
  }
  std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> prev(n);
  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) {
    pending[i] = nodes[i].next.size();
    for (std::size_t j : nodes[i].next) prev[j].push_back(i);
  }
  std::vector<long long> val(n, -1);
  std::vector<std::vector<std::size_t>> bucket(1);
  for (std::size_t i = 0; i < n; ++i)
    if (nodes[i].pos.turn == dcolor::black && nodes[i].next.empty()) {
      val[i] = 0;
      bucket[0].push_back(i);
    }
  for (std::size_t b = 0; b < bucket.size(); ++b)
    for (std::size_t qi = 0; qi < bucket[b].size(); ++qi) {
      std::size_t s = bucket[b][qi];
      for (std::size_t q : prev[s]) {
        if (val[q] >= 0) continue;
        if (nodes[q].pos.turn == dcolor::white) {
          val[q] = static_cast<long long>(b) + 1;
          if (bucket.size() <= b + 1) bucket.resize(b + 2);
          bucket[b + 1].push_back(q);
        } else if (--pending[q] == 0) {
          val[q] = static_cast<long long>(b);
          bucket[b].push_back(q);
        }
      }
    }
  return val[0];
}

}  // namespace detail

// Value for White (the open player): the least number of White moves that
// forces Black out of moves. The bounded search settles every finite value
// up to max_white_moves; past that, the full state graph inside the window
// decides between a larger value and undefined (cycles are not White wins).
inline game_value minimax_value(const draughts_position& p, const rule_set& rs,
                                const minimax_options& opt = {}, minimax_stats* stats = nullptr) {
  validate(p);
  if (!p.ladders.empty())
    throw error(errc::precondition_failed, "minimax needs a position without ladders");
  dbox w = opt.window ? *opt.window : p.bounds().grown(static_cast<int>(opt.max_white_moves) + 2);
  if (w.empty()) w = {0, 0, 0, 0};
  detail::draughts_search s(p, rs, opt, w);
  auto done = [&](std::size_t k) {
    if (stats) stats->nodes = s.nodes();
    return game_value(ordinal(static_cast<std::uint64_t>(k)));
  };
  for (std::size_t k = 0; k <= opt.max_white_moves; ++k) {
    bool win = p.turn == dcolor::black ? s.black_to_move(k) : s.white_to_move(k);
    if (win) return done(k);
  }
  long long v = detail::draughts_attractor(p, rs, opt, w);
  if (stats) {
    stats->nodes = s.nodes();
    stats->exhaustive = true;
  }
  return v < 0 ? game_value::undefined() : game_value(ordinal(static_cast<std::uint64_t>(v)));
}


// ---------------------------------------------------------------- king trees

enum class kt_role : std::uint8_t { tree_king, leaf_king, guardian };

struct kt_item {
  dsq square;
  kt_role role = kt_role::tree_king;
  path node;                          // tree node whose gadget holds the piece
  std::vector<std::uint8_t> lineage;  // copy taken at each resting square above it
  int edge = -1;                      // child of `node` it leads to; -1 on the trunk
};

// A square where a Black jump through the king tree is meant to end: the
// resting square of an internal node or the trap of a leaf.
struct tree_stop {
  dsq square;
  path node;
  std::vector<std::uint8_t> lineage;
  bool resting = false;
};

struct king_tree {
  draughts_position position;
  rule_set rules;
  std::optional<dsq> root;
  std::vector<kt_item> items;
  std::vector<tree_stop> stops;

  std::vector<dsq> guardians() const {
    std::vector<dsq> g;
    for (const auto& it : items)
      if (it.role == kt_role::guardian) g.push_back(it.square);
    return g;
  }
  const tree_stop* stop_at(dsq s) const {
    for (const auto& st : stops)
      if (st.square == s) return &st;
    return nullptr;
  }
};

struct king_tree_options {
  std::uint64_t omega_cutoff = 5;  // family members compiled explicitly
  int max_extent = 1 << 14;        // |u|, |v| bound before EmbeddingOverflow
};

namespace detail {

template <class T>
bool starts_with(const std::vector<T>& pre, const std::vector<T>& v) {
  return pre.size() <= v.size() && std::equal(pre.begin(), pre.end(), v.begin());
}

inline std::vector<tree_ptr> tree_children(const wf_tree& t, std::uint64_t cutoff) {
  std::vector<tree_ptr> ks = t.children;
  if (t.omega)
    for (std::uint64_t n = 0; n <= cutoff; ++n) ks.push_back(t.omega->sample(n));
  return ks;
}

struct kt_gadget {
  std::vector<kt_item> items;
  std::vector<tree_stop> stops;
  std::vector<ladder> ladders;
  int width = 0, height = 0;
};

// Gadget of an internal node in its own frame: Black arrives on (0,0), the
// first king is (1,0), the trunk runs NE along v = 0 and every child hangs
// off it to the NW in its own strip. An internal child ends on a resting
// square R with two copies of its gadget, one as is and one mirrored in u.
class kt_builder {
 public:
  kt_builder(rule_set rs, king_tree_options opt) : rs_(std::move(rs)), opt_(opt) {}

  const kt_gadget& gadget(const tree_ptr& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    keep_.push_back(t);
    auto ks = tree_children(*t, opt_.omega_cutoff);
    kt_gadget g;
    auto add = [&](dsq s, kt_role r, int edge) { g.items.push_back({s, r, {}, {}, edge}); };
    bool guards = rs_.same_rules(rs_b());
    int prev_end = 0, last = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const tree_ptr& c = ks[i];
      if (c->infinite_branch)
        throw error(errc::precondition_failed, "king trees need a well-founded tree");
      int e = static_cast<int>(i);
      const kt_gadget* cg = c->is_leaf() ? nullptr : &gadget(c);
      int half = cg ? cg->width : 0;
      int x = i == 0 ? std::max(2, half + 2) : prev_end + 4 + half;
      if (x % 2) ++x;
      for (int u = last + 1; u < x; u += 2) add({u, 0}, kt_role::tree_king, -1);
      last = x;
      add({x, 1}, kt_role::tree_king, e);
      add({x, 3}, kt_role::tree_king, e);
      if (!cg) {
        g.stops.push_back({{x, 2}, {i}, {}, false});
        add({x, 4}, kt_role::leaf_king, e);
        g.height = std::max(g.height, 4);
      } else {
        dsq r{x, 4};
        g.stops.push_back({r, {i}, {}, true});
        if (guards) {
          add(r + dsq{0, 2}, kt_role::guardian, e);
          add(r + dsq{1, -1}, kt_role::guardian, e);
        }
        for (std::uint8_t copy : {std::uint8_t{0}, std::uint8_t{1}}) {
          auto place = [&](dsq s) { return dsq{r.u + (copy ? -s.u : s.u), r.v + s.v}; };
          for (const auto& it : cg->items) {
            kt_item n = it;
            n.square = place(it.square);
            n.node.insert(n.node.begin(), i);
            n.lineage.insert(n.lineage.begin(), copy);
            g.items.push_back(std::move(n));
          }
          for (const auto& st : cg->stops) {
            tree_stop n = st;
            n.square = place(st.square);
            n.node.insert(n.node.begin(), i);
            n.lineage.insert(n.lineage.begin(), copy);
            g.stops.push_back(std::move(n));
          }
          for (const auto& l : cg->ladders)
            g.ladders.push_back({place(l.start), {copy ? -l.dir.u : l.dir.u, l.dir.v}, l.color});
        }
        g.height = std::max(g.height, 4 + cg->height);
      }
      prev_end = x + half;
      g.width = std::max(g.width, x + half);
    }
    if (t->omega) {
      g.ladders.push_back({{last + 1, 0}, {1, 0}, dcolor::white});
      g.width = std::max(g.width, last + 1);
    } else {
      add({last + 1, 0}, kt_role::tree_king, -1);
      add({last + 2, 0}, kt_role::leaf_king, -1);
      g.width = std::max(g.width, last + 2);
    }
    if (g.width > opt_.max_extent || g.height > opt_.max_extent)
      throw error(errc::embedding_overflow, "king tree needs a " + std::to_string(g.width) + "x" +
                                                std::to_string(g.height) + " box");
    return memo_.emplace(t.get(), std::move(g)).first->second;
  }

 private:
  rule_set rs_;
  king_tree_options opt_;
  std::unordered_map<const wf_tree*, kt_gadget> memo_;
  std::vector<tree_ptr> keep_;
};

}  // namespace detail

// D_T: Black king on (0,0) to move, every other piece a White king. A leaf
// is a landing square with a blocked pair of kings beyond it, so White
// captures at once. An internal node is a resting square between two
// mirrored copies of its subtree: White can spoil only one of them per
// move. Every other square a jump can stop on has a king straight ahead and
// is a trap. RS-B adds two guardians at the root and at each resting square.
inline king_tree build_king_tree(const tree_ptr& t, const rule_set& rs,
                                 const king_tree_options& opt = {}) {
  if (!rs.same_rules(rs_a()) && !rs.same_rules(rs_b()))
    throw error(errc::unsupported_rule_set,
                "king trees are compiled for RS-A and RS-B; RS-C has only its node template");
  if (t->infinite_branch)
    throw error(errc::precondition_failed, "king trees need a well-founded tree");
  king_tree kt;
  kt.rules = rs;
  kt.position.turn = dcolor::black;
  if (t->is_leaf()) return kt;
  detail::kt_builder b(rs, opt);
  const detail::kt_gadget& g = b.gadget(t);
  kt.root = dsq{0, 0};
  kt.items = g.items;
  kt.stops = g.stops;
  if (rs.same_rules(rs_b())) {
    kt.items.push_back({{-1, 1}, kt_role::guardian, {}, {}, -1});
    kt.items.push_back({{1, -1}, kt_role::guardian, {}, {}, -1});
  }
  kt.position.pieces[*kt.root] = {dcolor::black, dkind::king};
  for (const auto& it : kt.items) {
    if (std::abs(it.square.u) > opt.max_extent || std::abs(it.square.v) > opt.max_extent)
      throw error(errc::embedding_overflow, "king on " + it.square.str() + " is out of bounds");
    if (!kt.position.pieces.emplace(it.square, dpiece{dcolor::white, dkind::king}).second)
      throw std::logic_error("king tree layout collides at " + it.square.str());
  }
  kt.position.ladders = g.ladders;
  validate(kt.position);
  return kt;
}

// ---------------------------------------------------------------- validation

struct king_tree_report {
  bool root_ok = true;       // one Black king, touching exactly one tree king
  bool capturable = true;    // every tree king can be jumped from the root
  bool unique_paths = true;  // one jump sequence per node
  bool degree_ok = true;     // no empty square touches 4 tree kings
  std::optional<dsq> root;
  std::vector<dsq> uncaptured, reached_twice, overloaded;
  std::size_t nodes = 0, tree_kings = 0, leaf_kings = 0;

  bool ok() const { return root_ok && capturable && unique_paths && degree_ok; }
};

// A White king sitting where a jump would land ends that branch: it is a
// leaf king, not part of the tree. `extra` lists pieces outside the tree
// (guardians). Ladders are unrolled to `ladder_unroll` kings.
inline king_tree_report validate_king_tree(const draughts_position& p,
                                           const std::vector<dsq>& extra = {},
                                           std::size_t ladder_unroll = 16) {
  king_tree_report r;
  std::set<dsq> white, others;
  std::vector<dsq> blacks;
  for (const auto& [s, pc] : p.pieces) {
    if (std::find(extra.begin(), extra.end(), s) != extra.end()) {
      others.insert(s);
      continue;
    }
    if (pc.color == dcolor::black)
      blacks.push_back(s);
    else if (pc.kind == dkind::king)
      white.insert(s);
    else
      others.insert(s);
  }
  for (const auto& l : p.ladders)
    for (std::size_t k = 0; k < ladder_unroll; ++k)
      (l.color == dcolor::white ? white : others).insert(l.at(k));
  if (blacks.empty()) {
    r.root_ok = white.empty();
    r.capturable = white.empty();
    for (dsq w : white) r.uncaptured.push_back(w);
    return r;
  }
  if (blacks.size() != 1) r.root_ok = false;
  dsq root = blacks.front();
  r.root = root;
  for (std::size_t i = 1; i < blacks.size(); ++i) others.insert(blacks[i]);

  std::set<dsq> captured, leaf;
  std::map<dsq, std::size_t> arrivals;
  std::vector<dsq> on_path;
  auto empty_sq = [&](dsq s) { return s == root || (!white.count(s) && !others.count(s)); };
  std::function<void(dsq)> walk = [&](dsq cur) {
    for (dsq d : d_dirs) {
      dsq over = cur + d, land = over + d;
      if (!white.count(over) || leaf.count(over)) continue;
      if (std::find(on_path.begin(), on_path.end(), over) != on_path.end()) continue;
      if (empty_sq(land)) {
        captured.insert(over);
        if (++arrivals[land] > 1) continue;
        on_path.push_back(over);
        walk(land);
        on_path.pop_back();
      } else if (white.count(land) && !captured.count(land)) {
        captured.insert(over);
        leaf.insert(land);
        ++arrivals[land];
      }
    }
  };
  walk(root);
  for (auto& [s, n] : arrivals)
    if (n > 1) r.reached_twice.push_back(s);
  if (arrivals.count(root)) r.reached_twice.push_back(root);
  r.unique_paths = r.reached_twice.empty();
  for (dsq w : white)
    if (!captured.count(w) && !leaf.count(w)) r.uncaptured.push_back(w);
  r.capturable = r.uncaptured.empty();
  std::set<dsq> seen;
  for (dsq k : captured)
    for (dsq d : d_dirs) {
      dsq s = k + d;
      if (!empty_sq(s) || !seen.insert(s).second) continue;
      int n = 0;
      for (dsq e : d_dirs) n += captured.count(s + e) ? 1 : 0;
      if (n == 4) r.overloaded.push_back(s);
    }
  r.degree_ok = r.overloaded.empty();
  int touching = 0;
  for (dsq d : d_dirs) touching += captured.count(root + d) ? 1 : 0;
  if (touching != 1) r.root_ok = false;
  r.nodes = arrivals.size();
  r.tree_kings = captured.size();
  r.leaf_kings = leaf.size();
  return r;
}

// ---------------------------------------------------------------- strategies

using draughts_strategy = std::function<std::optional<dmove>(const draughts_position&)>;

inline std::optional<dsq> black_king_square(const draughts_position& p) {
  for (const auto& [s, pc] : p.pieces)
    if (pc.color == dcolor::black) return s;
  return std::nullopt;
}

// Climbing-game path of a tree node: each child index followed by the
// Observer's single reply.
inline path climbing_path_of(const path& node) {
  path out;
  for (std::size_t c : node) {
    out.push_back(c);
    out.push_back(0);
  }
  return out;
}

// The copy below a resting square is intact when its kings stand where they
// were and no piece has arrived next to any of its squares.
inline bool copy_intact(const king_tree& kt, const draughts_position& p, const path& node,
                        const std::vector<std::uint8_t>& lineage) {
  std::vector<dsq> squares;
  for (const auto& it : kt.items)
    if (it.role != kt_role::guardian && detail::starts_with(node, it.node) &&
        detail::starts_with(lineage, it.lineage)) {
      auto q = p.at(it.square);
      if (!q || q->color != dcolor::white) return false;
      squares.push_back(it.square);
    }
  for (const auto& st : kt.stops)
    if (detail::starts_with(node, st.node) && detail::starts_with(lineage, st.lineage))
      squares.push_back(st.square);
  for (dsq s : squares)
    for (dsq d : d_dirs) {
      dsq n = s + d;
      auto now = p.pieces.find(n);
      if (now == p.pieces.end() || now->second.color == dcolor::black) continue;
      auto was = kt.position.pieces.find(n);
      if (was == kt.position.pieces.end() || was->second != now->second) return false;
    }
  return true;
}

// Black follows the Climber: from the resting square of node P it jumps to
// the stop of child climber(P), inside an intact copy when there is one.
inline draughts_strategy strategy_transfer(const king_tree& kt, const tree_ptr& t,
                                           const strategy& climber) {
  if (!kt.rules.same_rules(rs_a()))
    throw error(errc::rule_set_mismatch,
                "strategy transfer needs a king tree compiled for RS-A, not " + kt.rules.name);
  return [kt, t, climber](const draughts_position& p) -> std::optional<dmove> {
    auto legal = legal_moves(p, kt.rules);
    if (legal.empty()) return std::nullopt;
    auto b = black_king_square(p);
    path node;
    std::vector<std::uint8_t> lin;
    if (!(kt.root && b == *kt.root)) {
      const tree_stop* st = b ? kt.stop_at(*b) : nullptr;
      if (!st || !st->resting) return legal.front();
      node = st->node;
      lin = st->lineage;
    }
    std::size_t c = climber.at(climbing_path_of(node)).value_or(0);
    path want = node;
    want.push_back(c);
    std::vector<const tree_stop*> targets;
    for (const auto& st : kt.stops) {
      if (st.node != want) continue;
      if (node.empty() ? st.lineage != lin
                       : (st.lineage.size() != lin.size() + 1 || !detail::starts_with(lin, st.lineage)))
        continue;
      targets.push_back(&st);
    }
    std::stable_partition(targets.begin(), targets.end(), [&](const tree_stop* st) {
      return node.empty() || copy_intact(kt, p, node, st->lineage);
    });
    for (const tree_stop* st : targets)
      for (const dmove& m : legal)
        if (m.to() == st->square) return m;
    return legal.front();
  };
}

// Inverse direction: the Climber path traced by Black's successive stops,
// or nothing if the stops do not descend the tree one child at a time.
inline std::optional<path> climber_path(const king_tree& kt, const std::vector<dsq>& stops) {
  path node;
  std::vector<std::uint8_t> lin;
  for (dsq s : stops) {
    const tree_stop* st = kt.stop_at(s);
    if (!st || st->node.size() != node.size() + 1 || !detail::starts_with(node, st->node))
      return std::nullopt;
    if (node.empty() ? st->lineage != lin
                     : (st->lineage.size() != lin.size() + 1 || !detail::starts_with(lin, st->lineage)))
      return std::nullopt;
    node = st->node;
    lin = st->lineage;
  }
  return climbing_path_of(node);
}

struct draughts_playout {
  std::vector<dmove> moves;
  std::vector<dsq> black_stops;
  bool black_lost = false, white_lost = false;
};

inline draughts_playout play(draughts_position p, const rule_set& rs, const draughts_strategy& black,
                             const draughts_strategy& white, std::size_t max_plies = 64) {
  draughts_playout out;
  for (std::size_t ply = 0; ply < max_plies; ++ply) {
    auto legal = legal_moves(p, rs);
    if (legal.empty()) {
      (p.turn == dcolor::black ? out.black_lost : out.white_lost) = true;
      break;
    }
    auto m = (p.turn == dcolor::black ? black : white)(p);
    if (!m) m = legal.front();
    if (p.turn == dcolor::black && !m->to_infinity) out.black_stops.push_back(m->to());
    out.moves.push_back(*m);
    p = apply_move(p, *m);
  }
  return out;
}

// Captures when it can, otherwise a uniformly random legal move.
inline draughts_strategy random_strategy(std::uint64_t seed, rule_set rs) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, rs](const draughts_position& p) -> std::optional<dmove> {
    auto legal = legal_moves(p, rs);
    if (legal.empty()) return std::nullopt;
    for (const auto& m : legal)
      if (m.is_jump()) return m;
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    return legal[pick(*rng)];
  };
}

// ---------------------------------------------------------------- templates

struct node_template {
  std::string name;
  draughts_position position;
  std::vector<dsq> guardians;
  std::optional<dsq> resting;  // the node's resting square, when it has one
  std::vector<dsq> exits;      // expected sub-branch resting squares
};

// RS-B: the guarded root (a one-edge tree) and a guarded branching node (a
// two-edge chain, whose middle node rests between guarded copies).
// RS-C: a branching node with seven exits. Black rests on (0,0), which
// touches no king; the four kings on its diagonal-of-diagonal squares can be
// jumped from each of the four squares next to it, and the king on (1,-2)
// closes one of those eight jumps.
inline std::vector<node_template> extended_node_templates(const rule_set& rs) {
  std::vector<node_template> out;
  if (rs.same_rules(rs_b())) {
    king_tree root = build_king_tree(tree_chain(1), rs);
    out.push_back({"guarded-root", root.position, root.guardians(), std::nullopt, {}});
    king_tree branch = build_king_tree(tree_chain(2), rs);
    std::optional<dsq> r;
    for (const auto& st : branch.stops)
      if (st.resting) r = st.square;
    out.push_back({"guarded-branch", branch.position, branch.guardians(), r, {}});
    return out;
  }
  if (rs.same_rules(rs_c())) {
    node_template t{"seven-branch", {}, {}, dsq{0, 0}, {}};
    t.position.pieces[{0, 0}] = {dcolor::black, dkind::king};
    for (dsq s : {dsq{1, 1}, dsq{-1, 1}, dsq{1, -1}, dsq{-1, -1}, dsq{1, -2}})
      t.position.pieces[s] = {dcolor::white, dkind::king};
    t.exits = {{1, 2}, {-1, 2}, {-1, -2}, {2, 1}, {-2, 1}, {2, -1}, {-2, -1}};
    std::sort(t.exits.begin(), t.exits.end());
    out.push_back(std::move(t));
    return out;
  }
  throw error(errc::unsupported_rule_set,
              "node templates extend RS-B and RS-C; " + rs.name + " needs none");
}

struct template_report {
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
  }
};

namespace detail {
inline bool white_can_capture(draughts_position p) {
  p.turn = dcolor::white;
  for (const auto& m : legal_moves(p, rs_standard()))
    if (m.is_jump()) return true;
  return false;
}
}  // namespace detail

inline template_report check_template(const node_template& t, const rule_set& rs,
                                      const minimax_options& opt = {}) {
  template_report r;
  auto value = [&](const draughts_position& p) { return minimax_value(p, rs, opt); };
  auto at_most = [](const game_value& v, std::uint64_t n) {
    return v.defined() && v.value().is_finite() && v.value().to_nat() <= n;
  };
  if (t.name == "guarded-root" || t.name == "guarded-branch") {
    auto rep = validate_king_tree(t.position, t.guardians);
    r.check(rep.ok(), "king tree clauses hold");
    std::uint64_t rank = t.name == "guarded-root" ? 1 : 2;
    game_value v = value(t.position);
    r.check(v == game_value(ordinal(rank)), "value is " + std::to_string(rank) + " (got " + v.str() + ")");
    for (const auto& m : legal_moves(t.position, rs)) {
      if (m.is_jump()) continue;
      game_value d = value(apply_move(t.position, m));
      r.check(at_most(d, 2), "opening " + m.str() + " loses within 2 White moves (" + d.str() + ")");
    }
    if (t.resting) {
      // Black on the resting square with the move, as if White had passed.
      draughts_position p = t.position;
      for (const auto& m : legal_moves(p, rs))
        if (m.to() == *t.resting) {
          p = apply_move(p, m);
          break;
        }
      r.check(black_king_square(p) == t.resting, "resting square reached by a jump");
      p.turn = dcolor::black;
      std::uint64_t main_line = 0;
      for (const auto& m : legal_moves(p, rs))
        if (m.is_jump()) {
          game_value d = value(apply_move(p, m));
          if (d.defined()) main_line = std::max(main_line, d.value().to_nat());
        }
      for (const auto& m : legal_moves(p, rs)) {
        if (m.is_jump()) continue;
        game_value d = value(apply_move(p, m));
        r.check(at_most(d, main_line), "deviation " + m.str() + " is no slower than the main line (" +
                                           d.str() + " vs " + std::to_string(main_line) + ")");
      }
    }
    return r;
  }
  if (t.name == "seven-branch") {
    dsq rest = *t.resting;
    r.check(!detail::white_can_capture(t.position), "resting square is safe");
    std::set<dsq> ends;
    for (const auto& step : legal_moves(t.position, rs)) {
      if (step.is_jump()) {
        r.check(false, "no jump from the resting square itself (" + step.str() + ")");
        continue;
      }
      draughts_position s = apply_move(t.position, step);
      r.check(!detail::white_can_capture(s), "starred square " + step.to().str() + " is safe");
      s.turn = dcolor::black;
      for (const auto& m : legal_moves(s, rs)) {
        if (!m.is_jump()) continue;
        draughts_position e = apply_move(s, m);
        r.check(!m.to_infinity && !detail::white_can_capture(e),
                "exit " + m.str() + " ends on a safe square");
        ends.insert(m.to());
      }
    }
    std::vector<dsq> got(ends.begin(), ends.end());
    r.check(got == t.exits, std::to_string(got.size()) + " distinct exits from " + rest.str());
    return r;
  }
  throw error(errc::invalid_argument, "unknown template '" + t.name + "'");
}

// ---------------------------------------------------------------- embedding

struct tree_layout {
  std::vector<dsq> nodes;                   // preorder, root first
  std::vector<int> parent;                  // -1 for the root
  std::vector<std::vector<dsq>> corridors;  // parent (excluded) to node (included)
  dbox bounds;
};

// Binary trees in the positive quadrant. The first child sits node_width
// above its parent; the second sits at the same height, to the right of the
// whole first subtree, reached along the parent's row and then up. A larger
// stretch pushes second children further right, flattening the cone that
// holds the layout.
inline tree_layout embed_binary_tree(const tree_ptr& t, int node_width = 2, int stretch = 1) {
  if (node_width < 1 || stretch < 1)
    throw error(errc::invalid_argument, "node width and stretch must be positive");
  std::function<tree_layout(const wf_tree&)> lay = [&](const wf_tree& n) {
    if (n.omega || n.infinite_branch)
      throw error(errc::invalid_argument, "embedding needs a finitely presented tree");
    if (n.children.size() > 2) throw error(errc::invalid_argument, "embedding needs a binary tree");
    tree_layout out;
    out.nodes.push_back({0, 0});
    out.parent.push_back(-1);
    out.corridors.emplace_back();
    out.bounds.add({0, 0});
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      tree_layout sub = lay(*n.children[i]);
      dsq at{0, node_width};
      std::vector<dsq> corridor;
      if (i == 1) {
        at.u = std::max(node_width, stretch * (out.bounds.u1 + node_width));
        for (int u = 1; u <= at.u; ++u) corridor.push_back({u, 0});
      }
      for (int v = 1; v <= node_width; ++v) corridor.push_back({at.u, v});
      int base = static_cast<int>(out.nodes.size());
      for (std::size_t k = 0; k < sub.nodes.size(); ++k) {
        out.nodes.push_back(sub.nodes[k] + at);
        out.parent.push_back(sub.parent[k] < 0 ? 0 : sub.parent[k] + base);
        std::vector<dsq> c;
        if (k == 0)
          c = corridor;
        else
          for (dsq s : sub.corridors[k]) c.push_back(s + at);
        for (dsq s : c) out.bounds.add(s);
        out.corridors.push_back(std::move(c));
      }
    }
    return out;
  };
  return lay(*t);
}

}  // namespace og
