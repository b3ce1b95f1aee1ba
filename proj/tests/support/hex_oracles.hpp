#pragma once

// Hex oracles independent of the library's bitboards and solver.

#include <queue>
#include <set>

#include "og/hex.hpp"

namespace og::testing {

// Oracle: breadth-first search over cell sets, independent of the bitboards.
inline bool has_chain(const hex_board& b, hex_color k) {
  std::set<hex_cell> seen;
  std::queue<hex_cell> q;
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      hex_cell x{c, r};
      bool start = k == hex_color::red ? r == 0 : c == 0;
      if (start && b.at(x) == k && seen.insert(x).second) q.push(x);
    }
  while (!q.empty()) {
    hex_cell x = q.front();
    q.pop();
    if (k == hex_color::red ? x.r == b.rows - 1 : x.c == b.cols - 1) return true;
    for (auto d : {hex_cell{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}) {
      hex_cell y = x + d;
      if (b.inside(y) && b.at(y) == k && seen.insert(y).second) q.push(y);
    }
  }
  return false;
}

inline hex_board full_coloring(int rows, int cols, unsigned bits) {
  hex_board b = make_hex_board(rows, cols);
  for (int i = 0; i < b.size(); ++i) b.cells[i] = (bits >> i & 1) ? hex_color::red : hex_color::blue;
  return b;
}

// Plain minimax over move sequences with the BFS oracle; no memo.
inline hex_color naive_winner(hex_board b) {
  if (has_chain(b, hex_color::red)) return hex_color::red;
  if (has_chain(b, hex_color::blue)) return hex_color::blue;
  hex_color me = b.to_move();
  for (int i = 0; i < b.size(); ++i)
    if (b.cells[i] == hex_color::empty) {
      hex_board c = b;
      c.cells[i] = me;
      if (naive_winner(c) == me) return me;
    }
  return opponent(me);
}

// Does strategy s (playing colour `me`) win against every opponent line?
inline bool beats_everything(hex_board b, hex_color me, const hex_strategy& s) {
  hex_color w = winner_by_connectivity(b);
  if (w != hex_color::empty || b.full()) return w == me;
  if (b.to_move() == me) return beats_everything(hex_play(b, s(b)), me, s);
  for (int i = 0; i < b.size(); ++i)
    if (b.cells[i] == hex_color::empty && !beats_everything(hex_play(b, i), me, s)) return false;
  return true;
}

}  // namespace og::testing
