#pragma once

// Plain memoised minimax for finite stone-placing games, written against
// play_move only.

#include <map>
#include <utility>

#include "og/stoneplacing.hpp"

namespace og::testing {

// Number of Open moves Open needs against best defence; -1 when Open
// cannot force a win.
inline int naive_stone_value(const stone_game& g, side open) {
  std::map<std::pair<vmask, vmask>, int> memo;
  std::function<int(const stone_game&)> go = [&](const stone_game& s) -> int {
    if (s.winner == open) return 0;
    if (s.winner != side::none || s.full()) return -1;
    auto key = std::pair{s.first, s.second};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int best = -1;
    bool open_moves = s.turn == open;
    for (int v = 0; v < s.n; ++v) {
      if (s.marked() & bit(v)) continue;
      int r = go(play_move(s, v));
      if (open_moves) {
        if (r >= 0 && (best < 0 || r + 1 < best)) best = r + 1;
      } else {
        if (r < 0) {
          best = -1;
          break;
        }
        best = std::max(best, r);
      }
    }
    return memo[key] = best;
  };
  return go(g);
}

// |f ∩ θ[f]| for every first-player winning set.
inline std::vector<int> naive_mirror_counts(const stone_game& g, const involution& t) {
  std::vector<int> out;
  for (vmask f : g.first_win) {
    int k = 0;
    for (int v = 0; v < g.n; ++v)
      if ((f >> v & 1) && (f >> t.image[v] & 1)) ++k;
    out.push_back(k);
  }
  return out;
}

}  // namespace og::testing
