#pragma once

// Hex on finite rhombic boards and on the infinite board.
//
// Cells use axial coordinates (c, r); the six neighbours of (c, r) are
// (c±1, r), (c, r±1), (c+1, r−1), (c−1, r+1). On an m×n board Red joins
// row 0 (SW side) to row m−1 (NE side) and Blue joins column 0 (NW side)
// to column n−1 (SE side). On the infinite board the quadrant tests are
// sign tests on both coordinates.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "og/error.hpp"
#include "og/gamecore.hpp"
#include "og/stoneplacing.hpp"

namespace og {

enum class hex_color : std::uint8_t { empty, red, blue };

inline hex_color opponent(hex_color c) {
  return c == hex_color::red ? hex_color::blue : c == hex_color::blue ? hex_color::red : c;
}

inline const char* hex_color_name(hex_color c) {
  return c == hex_color::red ? "Red" : c == hex_color::blue ? "Blue" : "Empty";
}

struct hex_cell {
  int c = 0, r = 0;
  friend auto operator<=>(const hex_cell&, const hex_cell&) = default;
  friend hex_cell operator+(hex_cell a, hex_cell b) { return {a.c + b.c, a.r + b.r}; }
  friend hex_cell operator-(hex_cell a, hex_cell b) { return {a.c - b.c, a.r - b.r}; }
  std::string str() const { return "(" + std::to_string(c) + "," + std::to_string(r) + ")"; }
};

inline constexpr std::array<hex_cell, 6> hex_dirs{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};

inline std::array<hex_cell, 6> hex_neighbors(hex_cell x) {
  std::array<hex_cell, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = x + hex_dirs[i];
  return out;
}

inline bool hex_adjacent(hex_cell a, hex_cell b) {
  hex_cell d = b - a;
  return std::find(hex_dirs.begin(), hex_dirs.end(), d) != hex_dirs.end();
}

// ---------------------------------------------------------------- finite boards

struct hex_board {
  int rows = 0, cols = 0;
  hex_color first = hex_color::red;
  std::vector<hex_color> cells;  // row-major, index r*cols + c
  std::vector<int> history;      // move order when known

  int size() const { return rows * cols; }
  bool inside(hex_cell x) const { return x.c >= 0 && x.c < cols && x.r >= 0 && x.r < rows; }
  int index(hex_cell x) const { return x.r * cols + x.c; }
  hex_cell cell(int i) const { return {i % cols, i / cols}; }
  hex_color at(hex_cell x) const { return cells[index(x)]; }
  int count(hex_color k) const { return static_cast<int>(std::count(cells.begin(), cells.end(), k)); }
  int empty_count() const { return count(hex_color::empty); }
  bool full() const { return empty_count() == 0; }
  hex_color to_move() const {
    return count(first) > count(opponent(first)) ? opponent(first) : first;
  }
  vmask mask(hex_color k) const {
    vmask m = 0;
    for (int i = 0; i < size(); ++i)
      if (cells[i] == k) m |= bit(i);
    return m;
  }
};

inline hex_board make_hex_board(int rows, int cols, hex_color first = hex_color::red) {
  if (rows < 1 || cols < 1 || rows * cols > 64)
    throw error(errc::invalid_argument, "hex boards need 1 <= rows*cols <= 64");
  if (first == hex_color::empty) throw error(errc::invalid_argument, "first player must be a colour");
  hex_board b;
  b.rows = rows;
  b.cols = cols;
  b.first = first;
  b.cells.assign(rows * cols, hex_color::empty);
  return b;
}

// Stone counts must be consistent with alternating play.
inline void check_parity(const hex_board& b) {
  int d = b.count(b.first) - b.count(opponent(b.first));
  if (d != 0 && d != 1)
    throw error(errc::malformed_position, "stone counts do not fit alternating play from " +
                                              std::string(hex_color_name(b.first)));
}

inline hex_board hex_play(const hex_board& b, int i) {
  if (i < 0 || i >= b.size()) throw error(errc::out_of_range, "cell index " + std::to_string(i));
  if (b.cells[i] != hex_color::empty)
    throw error(errc::occupied, "cell " + b.cell(i).str() + " is occupied");
  hex_board n = b;
  n.cells[i] = b.to_move();
  n.history.push_back(i);
  return n;
}

namespace detail {

// Neighbour masks and side masks for bitboard flood fills.
struct hex_geometry {
  int rows, cols;
  std::vector<vmask> nbr;
  vmask red_start = 0, red_goal = 0, blue_start = 0, blue_goal = 0;

  hex_geometry(int m, int n) : rows(m), cols(n), nbr(m * n, 0) {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) {
        for (hex_cell y : hex_neighbors({c, r}))
          if (y.c >= 0 && y.c < n && y.r >= 0 && y.r < m) nbr[r * n + c] |= bit(y.r * n + y.c);
        if (r == 0) red_start |= bit(r * n + c);
        if (r == m - 1) red_goal |= bit(r * n + c);
        if (c == 0) blue_start |= bit(r * n + c);
        if (c == n - 1) blue_goal |= bit(r * n + c);
      }
  }

  bool connects(vmask stones, vmask from, vmask to) const {
    vmask reach = stones & from, frontier = reach;
    while (frontier) {
      vmask next = 0;
      for (int v : members(frontier)) next |= nbr[v];
      next &= stones & ~reach;
      reach |= next;
      frontier = next;
    }
    return (reach & to) != 0;
  }
  bool red_wins(vmask red) const { return connects(red, red_start, red_goal); }
  bool blue_wins(vmask blue) const { return connects(blue, blue_start, blue_goal); }
};

}  // namespace detail

// Flood-fill winner; empty colour when nobody has a chain.
inline hex_color winner_by_connectivity(const hex_board& b) {
  detail::hex_geometry geo(b.rows, b.cols);
  if (geo.red_wins(b.mask(hex_color::red))) return hex_color::red;
  if (geo.blue_wins(b.mask(hex_color::blue))) return hex_color::blue;
  return hex_color::empty;
}

// ---------------------------------------------------------------- Gale's tour

using hex_edge = std::pair<hex_cell, hex_cell>;  // the two cells the edge separates

struct gale_result {
  hex_color winner = hex_color::empty;
  std::vector<hex_cell> chain;             // winner's chain of board cells, side to side
  std::vector<hex_edge> tour;              // edges walked between the two outside corners
  std::vector<std::array<hex_cell, 3>> vertices;  // lattice vertices visited, as cell triples
  char end = '?';                          // exit corner: 'e', 'n' or 'w'
};

namespace detail {

// Colour of a cell in the board padded with one ring of outside cells:
// rows -1 and m are Red, columns -1 and n are Blue, the two obtuse outside
// corners (n,-1) and (-1,m) are Red, everything further out is absent.
inline std::optional<hex_color> padded_color(const hex_board& b, hex_cell x) {
  if (b.inside(x)) return b.at(x);
  int m = b.rows, n = b.cols;
  if (x.c >= 0 && x.c < n && (x.r == -1 || x.r == m)) return hex_color::red;
  if (x.r >= 0 && x.r < m && (x.c == -1 || x.c == n)) return hex_color::blue;
  if (x == hex_cell{n, -1} || x == hex_cell{-1, m}) return hex_color::red;
  return std::nullopt;
}

inline hex_cell other_common_neighbor(hex_cell a, hex_cell b, hex_cell not_this) {
  for (hex_cell y : hex_neighbors(a))
    if (y != not_this && hex_adjacent(y, b)) return y;
  throw std::logic_error("adjacent cells always share two neighbours");
}

inline std::vector<hex_cell> simple_path(const std::vector<hex_cell>& walk) {
  std::vector<hex_cell> out;
  for (hex_cell x : walk) {
    auto it = std::find(out.begin(), out.end(), x);
    if (it != out.end())
      out.erase(it + 1, out.end());
    else
      out.push_back(x);
  }
  return out;
}

}  // namespace detail

// Walks the lattice edges that separate a Red cell from a Blue cell, starting
// at the outside corner s next to the obtuse board corner (n-1, 0). The walk
// leaves the board at corner e (Red has won), w (Blue has won) or n.
inline gale_result gale_tour(const hex_board& b) {
  if (!b.full()) throw error(errc::not_full, std::to_string(b.empty_count()) + " empty cells");
  const int m = b.rows, n = b.cols;
  auto col = [&](hex_cell x) { return detail::padded_color(b, x); };

  gale_result res;
  hex_cell red{n, -1}, blue{n, 0};
  hex_cell third = detail::other_common_neighbor(red, blue, hex_cell{n + 1, -1});
  std::vector<hex_cell> red_walk{red}, blue_walk{blue};
  std::set<std::array<hex_cell, 3>> seen;
  for (;;) {
    std::array<hex_cell, 3> v{red, blue, third};
    std::sort(v.begin(), v.end());
    if (!seen.insert(v).second) throw std::logic_error("Gale tour revisited a vertex");
    res.vertices.push_back(v);
    hex_cell dropped;
    if (*col(third) == hex_color::red) {
      dropped = red;
      red = third;
      red_walk.push_back(red);
    } else {
      dropped = blue;
      blue = third;
      blue_walk.push_back(blue);
    }
    third = detail::other_common_neighbor(red, blue, dropped);
    if (!col(third)) break;
    res.tour.push_back({red, blue});
  }

  if (red == hex_cell{n - 1, m} && blue == hex_cell{n, m - 1}) {
    res.end = 'e';
    res.winner = hex_color::red;
  } else if (red == hex_cell{0, -1} && blue == hex_cell{-1, 0}) {
    res.end = 'w';
    res.winner = hex_color::blue;
  } else if (red == hex_cell{-1, m} && blue == hex_cell{-1, m - 1}) {
    throw std::logic_error("Gale tour ended at n: both players would have won");
  } else {
    throw std::logic_error("Gale tour left the board away from a corner");
  }
  // Winner's cells along the tour, cut to the stretch strictly between its
  // two outside sides, then loops removed.
  const auto& walk = res.winner == hex_color::red ? red_walk : blue_walk;
  auto at_start = [&](hex_cell x) { return res.winner == hex_color::red ? x.r < 0 : x.c >= n; };
  auto at_goal = [&](hex_cell x) { return res.winner == hex_color::red ? x.r >= m : x.c < 0; };
  std::size_t lo = 0;
  for (std::size_t i = 0; i < walk.size(); ++i)
    if (at_start(walk[i])) lo = i + 1;
  std::vector<hex_cell> mid;
  for (std::size_t i = lo; i < walk.size() && !at_goal(walk[i]); ++i) mid.push_back(walk[i]);
  res.chain = detail::simple_path(mid);
  return res;
}

// ---------------------------------------------------------------- exhaustive solver

struct hex_options {
  int max_empty = 13;
};

using hex_strategy = std::function<int(const hex_board&)>;

namespace detail {

class hex_solver {
 public:
  struct entry {
    hex_color winner;
    int plies;  // to the end of the game under optimal play
    int best;   // -1 at terminal positions
  };

  hex_solver(int rows, int cols, hex_color first) : geo_(rows, cols), first_(first) {}

  entry solve(vmask red, vmask blue) {
    key k{red, blue};
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    entry e = compute(red, blue);
    memo_.emplace(k, e);
    return e;
  }

  hex_color mover(vmask red, vmask blue) const {
    vmask f = first_ == hex_color::red ? red : blue, s = first_ == hex_color::red ? blue : red;
    return popcount(f) > popcount(s) ? opponent(first_) : first_;
  }

  // Optimal move; falls back to the first empty cell once the game is over.
  int move(const hex_board& b) {
    entry e = solve(b.mask(hex_color::red), b.mask(hex_color::blue));
    if (e.best >= 0) return e.best;
    for (int i = 0; i < b.size(); ++i)
      if (b.cells[i] == hex_color::empty) return i;
    return -1;
  }

  std::size_t positions() const { return memo_.size(); }

 private:
  struct key {
    vmask red, blue;
    bool operator==(const key&) const = default;
  };
  struct key_hash {
    std::size_t operator()(const key& k) const {
      return std::hash<vmask>()(k.red * 0x9E3779B97F4A7C15ull ^ k.blue);
    }
  };

  entry compute(vmask red, vmask blue) {
    if (geo_.red_wins(red)) return {hex_color::red, 0, -1};
    if (geo_.blue_wins(blue)) return {hex_color::blue, 0, -1};
    vmask free = full_mask(geo_.rows * geo_.cols) & ~(red | blue);
    if (!free) throw std::logic_error("full Hex board without a winner");
    hex_color me = mover(red, blue);
    entry best{opponent(me), -1, -1};
    for (int v : members(free)) {
      entry c = me == hex_color::red ? solve(red | bit(v), blue) : solve(red, blue | bit(v));
      int plies = c.plies + 1;
      if (c.winner == me) {
        if (best.winner != me || plies < best.plies) best = {me, plies, v};
      } else if (best.winner != me && plies > best.plies) {
        best = {c.winner, plies, v};
      }
    }
    return best;
  }

  hex_geometry geo_;
  hex_color first_;
  std::unordered_map<key, entry, key_hash> memo_;
};

}  // namespace detail

struct hex_solution {
  hex_color to_move = hex_color::empty;
  hex_color winner = hex_color::empty;
  int plies = 0;
  int best = -1;
  std::shared_ptr<detail::hex_solver> solver;

  // Optimal play for both sides from any position on the same board.
  hex_strategy strategy() const {
    auto s = solver;
    return [s](const hex_board& b) { return s->move(b); };
  }
};

inline hex_solution solve(const hex_board& b, hex_options opt = {}) {
  check_parity(b);
  if (b.empty_count() > opt.max_empty)
    throw error(errc::budget_exceeded, std::to_string(b.empty_count()) +
                                           " empty cells exceed the exhaustive limit " +
                                           std::to_string(opt.max_empty));
  hex_solution sol;
  sol.solver = std::make_shared<detail::hex_solver>(b.rows, b.cols, b.first);
  auto e = sol.solver->solve(b.mask(hex_color::red), b.mask(hex_color::blue));
  sol.to_move = b.to_move();
  sol.winner = e.winner;
  sol.plies = e.plies;
  sol.best = e.best;
  return sol;
}

// ---------------------------------------------------------------- pairing

// Pairing of the (n+1)×n board (n+1 rows, n columns): (c, r) with r <= c is
// matched with (r, c+1). Blue has the long sides and wins as second player by
// answering every Red stone with its mate.
inline std::vector<std::pair<hex_cell, hex_cell>> asymmetric_pairing(int n) {
  if (n < 1) throw error(errc::invalid_argument, "pairing needs n >= 1");
  std::vector<std::pair<hex_cell, hex_cell>> out;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r <= c; ++r) out.push_back({{c, r}, {r, c + 1}});
  return out;
}

// Reply with the mate of the opponent's last stone, or the first empty cell.
inline hex_strategy pairing_strategy(std::vector<std::pair<hex_cell, hex_cell>> pairs) {
  auto mate = std::make_shared<std::map<hex_cell, hex_cell>>();
  for (auto [a, b] : pairs) {
    (*mate)[a] = b;
    (*mate)[b] = a;
  }
  return [mate](const hex_board& b) {
    if (!b.history.empty()) {
      auto it = mate->find(b.cell(b.history.back()));
      if (it != mate->end() && b.inside(it->second) && b.at(it->second) == hex_color::empty)
        return b.index(it->second);
    }
    for (int i = 0; i < b.size(); ++i)
      if (b.cells[i] == hex_color::empty) return i;
    return -1;
  };
}

// ---------------------------------------------------------------- strategy stealing

// The first player claims `opening` (default: cell size/2), then plays sigma on the transposed board
// with colours swapped, pretending to be the second player. When sigma asks
// for the stone already held as the extra one, the first empty cell is taken
// instead and becomes the new extra stone. Needs the board history.
inline hex_strategy steal_strategy(hex_strategy sigma, const hex_board& empty, int opening = -1) {
  if (empty.rows != empty.cols)
    throw error(errc::asymmetric_board, std::to_string(empty.rows) + "x" +
                                            std::to_string(empty.cols) + " board is not square");
  if (empty.empty_count() != empty.size())
    throw error(errc::precondition_failed, "strategy stealing starts from the empty board");
  if (opening < 0) opening = empty.size() / 2;
  if (opening >= empty.size()) throw error(errc::out_of_range, "opening cell " + std::to_string(opening));
  const hex_color me = empty.first;
  const int rows = empty.rows;
  return [sigma = std::move(sigma), me, rows, opening](const hex_board& b) -> int {
    if (b.first != me || b.rows != rows || b.cols != rows)
      throw error(errc::precondition_failed, "board does not match the stolen game");
    if (static_cast<int>(b.history.size()) != b.size() - b.empty_count())
      throw error(errc::precondition_failed, "strategy stealing needs the full move history");
    auto transpose = [rows](int i) { return (i % rows) * rows + i / rows; };
    auto first_empty = [](const hex_board& x) {
      for (int i = 0; i < x.size(); ++i)
        if (x.cells[i] == hex_color::empty) return i;
      return -1;
    };

    hex_board real = make_hex_board(rows, rows, me);
    hex_board imagined = make_hex_board(rows, rows, me);
    int extra = -1;
    // Our move in `real`; advances `imagined` and `extra`.
    auto respond = [&]() -> int {
      if (extra < 0) {
        extra = opening;
        return extra;
      }
      int y = sigma(imagined);
      if (y < 0 || y >= imagined.size() || imagined.cells[y] != hex_color::empty)
        throw error(errc::precondition_failed, "sigma proposed an illegal move");
      imagined = hex_play(imagined, y);
      int x = transpose(y);
      if (real.cells[x] == hex_color::empty) return x;
      // x is the extra stone: it now stands for sigma's move
      extra = first_empty(real);
      return extra;
    };

    for (std::size_t i = 0; i < b.history.size(); ++i) {
      int h = b.history[i];
      if (i % 2 == 0) {
        int want = respond();
        if (want != h) throw error(errc::precondition_failed, "history was not produced by this strategy");
      } else {
        imagined = hex_play(imagined, transpose(h));
      }
      real = hex_play(real, h);
    }
    if (b.history.size() % 2 == 1) throw error(errc::precondition_failed, "not the stealer's turn");
    if (real.full()) return -1;
    return respond();
  };
}

// ---------------------------------------------------------------- infinite board

// Motif cells repeated at every non-negative multiple of `step`.
struct periodic_region {
  std::vector<std::pair<hex_cell, hex_color>> motif;
  hex_cell step;

  std::optional<hex_color> color_at(hex_cell x) const {
    for (auto [m, k] : motif) {
      hex_cell d = x - m;
      long long t;
      if (step.c != 0) {
        if (d.c % step.c) continue;
        t = d.c / step.c;
        if (static_cast<long long>(d.r) != t * step.r) continue;
      } else {
        if (d.c != 0 || d.r % step.r) continue;
        t = d.r / step.r;
      }
      if (t >= 0) return k;
    }
    return std::nullopt;
  }
};

struct infinite_position {
  std::map<hex_cell, hex_color> cells;
  std::vector<periodic_region> regions;
  hex_color turn = hex_color::red;

  hex_color at(hex_cell x) const {
    if (auto it = cells.find(x); it != cells.end()) return it->second;
    for (const auto& g : regions)
      if (auto k = g.color_at(x)) return *k;
    return hex_color::empty;
  }
  bool empty() const { return cells.empty() && regions.empty(); }
};

namespace detail {

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

// Integer solutions of i*d1 - j*d2 = diff with i, j >= 0.
inline bool progressions_meet(hex_cell diff, hex_cell d1, hex_cell d2) {
  long long det = static_cast<long long>(d1.c) * -d2.r + static_cast<long long>(d2.c) * d1.r;
  if (det != 0) {
    long long in = static_cast<long long>(diff.c) * -d2.r + static_cast<long long>(d2.c) * diff.r;
    long long jn = static_cast<long long>(d1.c) * diff.r - static_cast<long long>(d1.r) * diff.c;
    if (in % det || jn % det) return false;
    return in / det >= 0 && jn / det >= 0;
  }
  // parallel steps: scan i over a range that must contain a solution if any
  long long span = std::abs(diff.c) + std::abs(diff.r) + std::abs(d2.c) + std::abs(d2.r) + 1;
  for (long long i = 0; i <= span; ++i) {
    long long ec = i * d1.c - diff.c, er = i * d1.r - diff.r;  // = j*d2
    long long j;
    if (d2.c != 0) {
      if (ec % d2.c) continue;
      j = ec / d2.c;
      if (er != j * d2.r) continue;
    } else {
      if (ec != 0 || er % d2.r) continue;
      j = er / d2.r;
    }
    if (j >= 0) return true;
  }
  return false;
}

}  // namespace detail

// Throws MalformedPosition when regions overlap with different colours or a
// region disagrees with an explicitly placed stone.
inline void validate(const infinite_position& p) {
  if (p.turn == hex_color::empty) throw error(errc::malformed_position, "turn must be Red or Blue");
  for (const auto& g : p.regions) {
    if (g.step == hex_cell{0, 0}) throw error(errc::malformed_position, "zero displacement vector");
    for (auto [m, k] : g.motif)
      if (k == hex_color::empty) throw error(errc::malformed_position, "empty cell in a motif");
  }
  for (auto [x, k] : p.cells)
    for (const auto& g : p.regions)
      if (auto gk = g.color_at(x); gk && *gk != k)
        throw error(errc::malformed_position, "stone at " + x.str() + " conflicts with a region");
  for (std::size_t a = 0; a < p.regions.size(); ++a)
    for (std::size_t b = a + 1; b < p.regions.size(); ++b)
      for (auto [x, kx] : p.regions[a].motif)
        for (auto [y, ky] : p.regions[b].motif)
          if (kx != ky && detail::progressions_meet(y - x, p.regions[a].step, p.regions[b].step))
            throw error(errc::malformed_position, "periodic regions " + std::to_string(a) + " and " +
                                                      std::to_string(b) + " overlap");
}

// ---------------------------------------------------------------- periodic paths

// Cells start, start+d1, start+d1+d2, ... with the motif of steps repeating.
struct path_tail {
  hex_cell start;
  std::vector<hex_cell> motif;
  hex_cell period() const {
    hex_cell s{0, 0};
    for (hex_cell d : motif) s = s + d;
    return s;
  }
  hex_cell at(long long j) const {
    long long L = static_cast<long long>(motif.size());
    hex_cell p = period();
    long long q = j / L, rem = j % L;
    hex_cell x{static_cast<int>(start.c + q * p.c), static_cast<int>(start.r + q * p.r)};
    for (long long i = 0; i < rem; ++i) x = x + motif[i];
    return x;
  }
};

// A bi-infinite path: index 0..k-1 runs through the core, k, k+1, ... through
// the positive tail and -1, -2, ... through the negative tail.
struct periodic_path {
  hex_color color = hex_color::red;
  std::vector<hex_cell> core;
  path_tail pos, neg;

  hex_cell at(long long m) const {
    long long k = static_cast<long long>(core.size());
    if (m >= 0 && m < k) return core[m];
    if (m >= k) return pos.at(m - k);
    return neg.at(-1 - m);
  }
};

inline void validate(const periodic_path& p) {
  for (const path_tail* t : {&p.pos, &p.neg}) {
    if (t->motif.empty()) throw error(errc::malformed_position, "tail without a motif");
    for (hex_cell d : t->motif)
      if (!hex_adjacent({0, 0}, d)) throw error(errc::malformed_position, "motif step " + d.str() + " is not a neighbour step");
    if (t->period() == hex_cell{0, 0}) throw error(errc::malformed_position, "tail does not move away");
  }
  long long k = static_cast<long long>(p.core.size());
  long long span = k + 4 * static_cast<long long>(p.pos.motif.size() + p.neg.motif.size()) + 8;
  std::set<hex_cell> seen;
  for (long long m = -span; m <= span; ++m) {
    if (m > -span && !hex_adjacent(p.at(m - 1), p.at(m)))
      throw error(errc::malformed_position, "cells at " + std::to_string(m - 1) + " and " +
                                                std::to_string(m) + " are not adjacent");
    if (!seen.insert(p.at(m)).second)
      throw error(errc::malformed_position, "path revisits " + p.at(m).str());
  }
}

namespace detail {

// Does every far cell of the tail eventually satisfy sign*(x - origin) >= 0
// (or > 0 when strict) in coordinate `axis`?
inline bool tail_eventually(const path_tail& t, hex_cell origin, int axis, int sign, bool strict) {
  auto coord = [axis](hex_cell x) { return axis == 0 ? x.c : x.r; };
  int per = sign * coord(t.period());
  if (per > 0) return true;
  if (per < 0) return false;
  for (std::size_t j = 0; j < t.motif.size(); ++j) {
    int d = sign * (coord(t.at(static_cast<long long>(j))) - coord(origin));
    if (strict ? d <= 0 : d < 0) return false;
  }
  return true;
}

// Quadrant signs (c, r) for the positive end of a winning path.
inline std::pair<int, int> forward_signs(hex_color k) {
  return k == hex_color::blue ? std::pair{-1, 1} : std::pair{1, 1};
}

}  // namespace detail

// Red: the positive end eventually lies in the NE quadrant of `origin` and the
// negative end in the SW quadrant. Blue uses NW and SE. Quadrants include
// their boundary axes unless `strict`.
inline bool is_winning_wrt(const periodic_path& p, hex_cell origin, bool strict = false) {
  auto [sc, sr] = detail::forward_signs(p.color);
  return detail::tail_eventually(p.pos, origin, 0, sc, strict) &&
         detail::tail_eventually(p.pos, origin, 1, sr, strict) &&
         detail::tail_eventually(p.neg, origin, 0, -sc, strict) &&
         detail::tail_eventually(p.neg, origin, 1, -sr, strict);
}

// Winning for every origin: a tail with a zero period component stays in a
// strip, so some origin beyond it fails; nonzero components of the right
// sign pass for every origin.
inline bool decide_winning(const periodic_path& p) {
  auto [sc, sr] = detail::forward_signs(p.color);
  hex_cell a = p.pos.period(), b = p.neg.period();
  return sc * a.c > 0 && sr * a.r > 0 && -sc * b.c > 0 && -sr * b.r > 0;
}

// ---------------------------------------------------------------- mirroring

// Pairs row r >= 0 with row -1-r, shifted so that (c, 0) meets (c, -1).
inline hex_cell theta(hex_cell x) {
  return x.r >= 0 ? hex_cell{x.c + x.r, -1 - x.r} : hex_cell{x.c + 1 + x.r, -1 - x.r};
}

// Second player's answer: the mirror of the first player's last stone.
class mirroring_strategy {
 public:
  explicit mirroring_strategy(const infinite_position& start) {
    if (!start.empty()) throw error(errc::non_empty_start, "mirroring starts from the empty board");
  }
  hex_cell reply(const infinite_position& p, hex_cell opponent_move) const {
    hex_cell t = theta(opponent_move);
    if (p.at(t) != hex_color::empty)
      throw std::logic_error("mirror cell " + t.str() + " is already occupied");
    return t;
  }
};

// ---------------------------------------------------------------- bridge chains

// Red stones on the diagonal (i, i), i = 0..k, with two Red rays leaving
// (k, k) to the NE and (0, 0) to the SW. Consecutive diagonal stones form a
// bridge whose carrier is {(i+1, i), (i, i+1)}. Blue moves first when k >= 1.
inline infinite_position make_bridge_chain(int k) {
  if (k < 0) throw error(errc::invalid_argument, "bridge count must be non-negative");
  infinite_position p;
  for (int i = 0; i <= k; ++i) p.cells[{i, i}] = hex_color::red;
  p.regions.push_back({{{{k + 1, k}, hex_color::red}, {{k + 1, k + 1}, hex_color::red}}, {1, 1}});
  p.regions.push_back({{{{0, -1}, hex_color::red}, {{-1, -1}, hex_color::red}}, {-1, -1}});
  p.turn = k >= 1 ? hex_color::blue : hex_color::red;
  return p;
}

inline std::vector<hex_cell> bridge_window(int k) {
  std::vector<hex_cell> w;
  for (int i = 0; i < k; ++i) {
    w.push_back({i + 1, i});
    w.push_back({i, i + 1});
  }
  return w;
}

namespace detail {

// Are all periodic regions of colour k joined by k-coloured cells inside the
// bounding box of the finite data, grown by one?
inline bool regions_joined(const infinite_position& p, hex_color k, const std::set<hex_cell>& extra,
                           int lo_c, int hi_c, int lo_r, int hi_r) {
  std::vector<hex_cell> anchors;
  for (const auto& g : p.regions)
    for (auto [m, mk] : g.motif)
      if (mk == k) {
        anchors.push_back(m);
        break;
      }
  if (anchors.size() < 2) return false;
  auto ok = [&](hex_cell x) {
    return x.c >= lo_c && x.c <= hi_c && x.r >= lo_r && x.r <= hi_r &&
           (p.at(x) == k || extra.count(x));
  };
  std::set<hex_cell> reach{anchors.front()};
  std::vector<hex_cell> stack{anchors.front()};
  while (!stack.empty()) {
    hex_cell x = stack.back();
    stack.pop_back();
    for (hex_cell y : hex_neighbors(x))
      if (ok(y) && reach.insert(y).second) stack.push_back(y);
  }
  return std::all_of(anchors.begin(), anchors.end(), [&](hex_cell a) { return reach.count(a) > 0; });
}

}  // namespace detail

// Value of the stone-placing game restricted to `window`: each player wins by
// joining all of his periodic regions; every empty cell outside the window is
// treated as dead. The open player needs at least two regions.
inline game_value bounded_minimax(const infinite_position& p, const std::vector<hex_cell>& window,
                                  hex_color open, stone_options opt = {}) {
  validate(p);
  if (open == hex_color::empty) throw error(errc::invalid_argument, "open player must be a colour");
  int regions_open = 0;
  for (const auto& g : p.regions)
    if (!g.motif.empty() && g.motif.front().second == open) ++regions_open;
  if (regions_open < 2)
    throw error(errc::precondition_failed, "open player needs two periodic regions to join");
  if (window.size() > 20) throw error(errc::budget_exceeded, "window larger than 20 cells");
  for (hex_cell x : window)
    if (p.at(x) != hex_color::empty) throw error(errc::precondition_failed, x.str() + " in the window is occupied");

  int lo_c = 0, hi_c = 0, lo_r = 0, hi_r = 0;
  bool any = false;
  auto grow = [&](hex_cell x) {
    if (!any) {
      lo_c = hi_c = x.c;
      lo_r = hi_r = x.r;
      any = true;
    }
    lo_c = std::min(lo_c, x.c);
    hi_c = std::max(hi_c, x.c);
    lo_r = std::min(lo_r, x.r);
    hi_r = std::max(hi_r, x.r);
  };
  for (auto [x, k] : p.cells) grow(x);
  for (hex_cell x : window) grow(x);
  for (const auto& g : p.regions)
    for (auto [m, k] : g.motif) {
      grow(m);
      grow(m + g.step);
    }
  --lo_c, ++hi_c, --lo_r, ++hi_r;

  const int n = static_cast<int>(window.size());
  auto families = [&](hex_color k) {
    std::vector<vmask> fam;
    bool has_regions = false;
    for (const auto& g : p.regions)
      if (!g.motif.empty() && g.motif.front().second == k) has_regions = true;
    if (!has_regions) return fam;
    for (vmask s = 1; s <= full_mask(n); ++s) {
      std::set<hex_cell> extra;
      for (int v : members(s)) extra.insert(window[v]);
      if (detail::regions_joined(p, k, extra, lo_c, hi_c, lo_r, hi_r)) fam.push_back(s);
    }
    return minimize(fam);
  };
  if (detail::regions_joined(p, open, {}, lo_c, hi_c, lo_r, hi_r)) return game_value(ordinal(0));
  auto side_of = [](hex_color k) { return k == hex_color::red ? side::first : side::second; };
  std::vector<vmask> red = families(hex_color::red), blue = families(hex_color::blue);
  stone_game g = make_stone_game(n, red, blue);
  g.turn = side_of(p.turn);
  for (hex_cell x : window) g.labels.push_back(x.str());
  return stone_value(g, side_of(open), opt);
}

}  // namespace og
