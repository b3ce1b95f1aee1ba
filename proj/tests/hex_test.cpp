#include <gtest/gtest.h>

#include <functional>
#include <queue>
#include <random>
#include <set>

#include "og/hex.hpp"
#include "support/hex_oracles.hpp"

using namespace og;
using namespace og::testing;

namespace {

void check_tour(const hex_board& b) {
  bool red = has_chain(b, hex_color::red), blue = has_chain(b, hex_color::blue);
  ASSERT_NE(red, blue);
  gale_result g = gale_tour(b);
  EXPECT_EQ(g.winner, red ? hex_color::red : hex_color::blue);
  EXPECT_EQ(g.winner, winner_by_connectivity(b));
  ASSERT_FALSE(g.chain.empty());
  for (std::size_t i = 0; i < g.chain.size(); ++i) {
    EXPECT_EQ(b.at(g.chain[i]), g.winner);
    if (i) {
      EXPECT_TRUE(hex_adjacent(g.chain[i - 1], g.chain[i]));
    }
  }
  if (g.winner == hex_color::red) {
    EXPECT_EQ(g.chain.front().r, 0);
    EXPECT_EQ(g.chain.back().r, b.rows - 1);
  } else {
    EXPECT_EQ(g.chain.front().c, b.cols - 1);
    EXPECT_EQ(g.chain.back().c, 0);
  }
  // every tour edge separates a Red cell from a Blue cell
  for (auto [x, y] : g.tour) {
    EXPECT_TRUE(hex_adjacent(x, y));
    if (b.inside(x)) {
      EXPECT_EQ(b.at(x), hex_color::red);
    }
    if (b.inside(y)) {
      EXPECT_EQ(b.at(y), hex_color::blue);
    }
  }
  std::set<std::array<hex_cell, 3>> vs(g.vertices.begin(), g.vertices.end());
  EXPECT_EQ(vs.size(), g.vertices.size());
  gale_result again = gale_tour(b);
  EXPECT_EQ(again.tour, g.tour);
}

periodic_path straight(hex_color k, hex_cell forward, hex_cell at = {0, 0}) {
  periodic_path p;
  p.color = k;
  p.pos = {at, {forward}};
  p.neg = {at - forward, {hex_cell{0, 0} - forward}};
  return p;
}

hex_cell random_step(std::mt19937_64& rng) { return hex_dirs[rng() % 6]; }

// Random path near the origin. With `winning`, tails are drawn until their
// periods point into the required quadrants.
std::optional<periodic_path> random_path(std::mt19937_64& rng, hex_color k, bool winning) {
  periodic_path p;
  p.color = k;
  hex_cell x{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
  int core = static_cast<int>(rng() % 5);
  for (int i = 0; i < core; ++i) {
    p.core.push_back(x);
    x = x + random_step(rng);
  }
  int sc = k == hex_color::red ? 1 : -1;
  auto tail = [&](int sign) {
    path_tail t;
    for (int tries = 0; tries < 200; ++tries) {
      t.motif.clear();
      int len = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i) t.motif.push_back(random_step(rng));
      hex_cell per = t.period();
      if (!winning || (sign * sc * per.c > 0 && sign * per.r > 0)) break;
    }
    return t;
  };
  p.pos = tail(1);
  p.pos.start = x;
  p.neg = tail(-1);
  p.neg.start = p.core.empty() ? x - p.neg.motif.back() : p.core.front() + random_step(rng);
  if (p.core.empty()) {
    // first negative cell must neighbour the first positive one
    p.neg.start = x + random_step(rng);
  }
  try {
    validate(p);
  } catch (const error&) {
    return std::nullopt;
  }
  return p;
}

}  // namespace

TEST(Hex, WinnerByConnectivity) {
  hex_board one = make_hex_board(1, 1);
  one.cells[0] = hex_color::red;
  EXPECT_EQ(winner_by_connectivity(one), hex_color::red);
  hex_board blue = make_hex_board(2, 2);
  std::fill(blue.cells.begin(), blue.cells.end(), hex_color::blue);
  EXPECT_EQ(winner_by_connectivity(blue), hex_color::blue);
  EXPECT_EQ(winner_by_connectivity(make_hex_board(3, 3)), hex_color::empty);
}

TEST(Hex, GaleTourSingleCell) {
  hex_board b = make_hex_board(1, 1);
  b.cells[0] = hex_color::red;
  gale_result g = gale_tour(b);
  EXPECT_EQ(g.winner, hex_color::red);
  EXPECT_EQ(g.chain, (std::vector<hex_cell>{hex_cell{0, 0}}));
  EXPECT_EQ(g.tour.size(), 1u);
  EXPECT_EQ(g.end, 'e');
  EXPECT_THROW(gale_tour(make_hex_board(2, 2)), error);
}

TEST(Hex, GaleTourAllSmallColorings) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (unsigned bits = 0; bits < (1u << (m * n)); ++bits) check_tour(full_coloring(m, n, bits));
}

TEST(Hex, GaleTourSampled4x4And5x4) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) check_tour(full_coloring(4, 4, static_cast<unsigned>(rng())));
  for (int i = 0; i < 500; ++i) check_tour(full_coloring(5, 4, static_cast<unsigned>(rng())));
}

TEST(Hex, SolveSmallBoards) {
  hex_solution s1 = solve(make_hex_board(1, 1));
  EXPECT_EQ(s1.winner, hex_color::red);
  EXPECT_EQ(s1.plies, 1);
  for (int n = 2; n <= 3; ++n) {
    hex_board b = make_hex_board(n, n);
    hex_solution s = solve(b);
    EXPECT_EQ(s.winner, hex_color::red);
    EXPECT_EQ(s.winner, naive_winner(b));
    EXPECT_TRUE(beats_everything(b, hex_color::red, s.strategy()));
  }
  hex_board blue_first = make_hex_board(3, 3, hex_color::blue);
  EXPECT_EQ(solve(blue_first).winner, hex_color::blue);
  EXPECT_THROW(solve(make_hex_board(4, 4)), error);
  hex_options wide;
  wide.max_empty = 16;
  hex_board b44 = make_hex_board(4, 4);
  for (int i : {5, 0, 10, 3}) b44 = hex_play(b44, i);
  EXPECT_EQ(solve(b44, wide).winner, naive_winner(b44));
}

TEST(Hex, SolveMidGamePositions) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    hex_board b = make_hex_board(3, 3, i % 2 ? hex_color::blue : hex_color::red);
    int k = static_cast<int>(rng() % 5);
    for (int j = 0; j < k; ++j) {
      std::vector<int> free;
      for (int v = 0; v < b.size(); ++v)
        if (b.cells[v] == hex_color::empty) free.push_back(v);
      b = hex_play(b, free[rng() % free.size()]);
    }
    EXPECT_EQ(solve(b).winner, naive_winner(b));
  }
}

TEST(Hex, AsymmetricPairing) {
  for (int n = 1; n <= 3; ++n) {
    auto pairs = asymmetric_pairing(n);
    hex_board b = make_hex_board(n + 1, n);
    std::set<hex_cell> covered;
    for (auto [x, y] : pairs) {
      EXPECT_TRUE(b.inside(x) && b.inside(y));
      EXPECT_TRUE(covered.insert(x).second);
      EXPECT_TRUE(covered.insert(y).second);
    }
    EXPECT_EQ(static_cast<int>(covered.size()), b.size());
    EXPECT_TRUE(beats_everything(b, hex_color::blue, pairing_strategy(pairs))) << n;
  }
  EXPECT_EQ(asymmetric_pairing(1).size(), 1u);
}

TEST(Hex, StealStrategy) {
  hex_board one = make_hex_board(1, 1);
  hex_strategy any = [](const hex_board&) { return 0; };
  EXPECT_EQ(steal_strategy(any, one)(one), 0);

  hex_board b = make_hex_board(2, 2);
  hex_strategy sigma = solve(b).strategy();
  EXPECT_TRUE(beats_everything(b, hex_color::red, steal_strategy(sigma, b)));

  // sigma asks for the centre, which the stealer already holds
  hex_strategy greedy = [](const hex_board& x) {
    if (x.cells[4] == hex_color::empty) return 4;
    for (int i = 0; i < x.size(); ++i)
      if (x.cells[i] == hex_color::empty) return i;
    return -1;
  };
  hex_board c = make_hex_board(3, 3);
  hex_strategy stolen = steal_strategy(greedy, c);
  c = hex_play(c, stolen(c));
  EXPECT_EQ(c.history.front(), 4);
  c = hex_play(c, 8);
  int next = stolen(c);
  EXPECT_EQ(next, 0);  // substitute: first empty cell
  c = hex_play(c, next);
  c = hex_play(c, 7);
  EXPECT_EQ(c.cells[stolen(c)], hex_color::empty);

  EXPECT_THROW(steal_strategy(any, make_hex_board(3, 2)), error);
  try {
    steal_strategy(any, make_hex_board(2, 3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::asymmetric_board);
  }
}

TEST(Hex, WinningPathExamples) {
  periodic_path diag = straight(hex_color::red, {1, 1}, {0, 0});
  diag.pos.motif = {{1, 0}, {0, 1}};
  diag.neg = {{0, -1}, {{-1, 0}, {0, -1}}};
  validate(diag);
  EXPECT_TRUE(is_winning_wrt(diag, {0, 0}));
  EXPECT_TRUE(is_winning_wrt(diag, {-50, 70}));
  EXPECT_TRUE(decide_winning(diag));

  periodic_path column = straight(hex_color::red, {0, 1});
  validate(column);
  EXPECT_FALSE(is_winning_wrt(column, {3, 0}));
  EXPECT_TRUE(is_winning_wrt(column, {0, 5}));
  EXPECT_FALSE(is_winning_wrt(column, {0, 5}, true));
  EXPECT_FALSE(decide_winning(column));

  periodic_path prong = diag;
  prong.pos.motif = {{1, 0}};
  validate(prong);
  EXPECT_FALSE(decide_winning(prong));

  periodic_path loop = straight(hex_color::red, {0, 1});
  loop.pos.motif = {{0, 1}, {0, -1}};
  EXPECT_THROW(validate(loop), error);
}

TEST(Hex, DecideWinningMatchesOriginGrid) {
  std::mt19937_64 rng(21);
  int done = 0, winning = 0;
  while (done < 500) {
    hex_color k = rng() % 2 ? hex_color::red : hex_color::blue;
    auto p = random_path(rng, k, rng() % 2);
    if (!p) continue;
    ++done;
    bool all = true;
    for (int c = -10; c <= 10; ++c)
      for (int r = -10; r <= 10; ++r) all = all && is_winning_wrt(*p, {c, r});
    EXPECT_EQ(decide_winning(*p), all);
    winning += all;
  }
  EXPECT_GT(winning, 50);
  EXPECT_LT(winning, 450);
}

TEST(Hex, WinningPathsIntersect) {
  std::mt19937_64 rng(22);
  int done = 0;
  while (done < 500) {
    auto red = random_path(rng, hex_color::red, true);
    auto blue = random_path(rng, hex_color::blue, true);
    if (!red || !blue || !decide_winning(*red) || !decide_winning(*blue)) continue;
    ++done;
    std::set<hex_cell> cells;
    for (long long m = -200; m <= 200; ++m) cells.insert(red->at(m));
    bool meet = false;
    for (long long m = -200; m <= 200 && !meet; ++m) meet = cells.count(blue->at(m)) > 0;
    EXPECT_TRUE(meet);
  }
}

TEST(Hex, ThetaProperties) {
  for (int c = -20; c <= 20; ++c)
    for (int r = -20; r <= 20; ++r) {
      hex_cell x{c, r};
      EXPECT_EQ(theta(theta(x)), x);
      EXPECT_NE(theta(x), x);
      EXPECT_EQ(x.r >= 0, theta(x).r < 0);
    }
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    hex_cell x{static_cast<int>(rng() % 2001) - 1000, static_cast<int>(rng() % 2001) - 1000};
    EXPECT_EQ(theta(theta(x)), x);
    EXPECT_NE(theta(x), x);
  }
  EXPECT_EQ(theta({4, 0}).r, -1);
  EXPECT_TRUE(hex_adjacent({4, 0}, theta({4, 0})));
}

TEST(Hex, MirroringStrategy) {
  infinite_position start;
  mirroring_strategy mu(start);
  infinite_position p;
  std::mt19937_64 rng(12);
  for (int move = 0; move < 200; ++move) {
    hex_cell x;
    do {
      x = {static_cast<int>(rng() % 41) - 20, static_cast<int>(rng() % 41) - 20};
    } while (p.at(x) != hex_color::empty);
    p.cells[x] = hex_color::red;
    hex_cell y = mu.reply(p, x);
    EXPECT_EQ(y, theta(x));
    ASSERT_EQ(p.at(y), hex_color::empty);
    p.cells[y] = hex_color::blue;
    for (auto [z, k] : p.cells) {
      EXPECT_EQ(p.at(theta(z)), opponent(k));
      if (k == hex_color::red) {
        EXPECT_NE(p.at(theta(z)), hex_color::red);
      }
    }
  }
  infinite_position busy;
  busy.cells[{0, 0}] = hex_color::red;
  try {
    mirroring_strategy bad(busy);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::non_empty_start);
  }
}

TEST(Hex, BridgeChainValues) {
  for (int k = 0; k <= 3; ++k) {
    infinite_position p = make_bridge_chain(k);
    validate(p);
    EXPECT_EQ(bounded_minimax(p, bridge_window(k), hex_color::red), game_value(ordinal(k))) << k;
  }
  // Red to move on a single bridge: already as good as joined after one move
  infinite_position p = make_bridge_chain(1);
  p.turn = hex_color::red;
  EXPECT_EQ(bounded_minimax(p, bridge_window(1), hex_color::red), game_value(ordinal(1)));
  // a Blue stone inside one carrier leaves Red a single reply
  infinite_position q = make_bridge_chain(2);
  q.cells[{1, 0}] = hex_color::blue;
  q.turn = hex_color::red;
  EXPECT_EQ(bounded_minimax(q, {{0, 1}, {2, 1}, {1, 2}}, hex_color::red), game_value(ordinal(2)));
}

TEST(Hex, InfinitePositionValidation) {
  infinite_position p = make_bridge_chain(1);
  p.cells[{3, 3}] = hex_color::blue;  // lies on the NE ray
  EXPECT_THROW(validate(p), error);
  infinite_position q;
  q.regions.push_back({{{{0, 0}, hex_color::red}}, {1, 0}});
  q.regions.push_back({{{{5, 0}, hex_color::blue}}, {-1, 0}});
  EXPECT_THROW(validate(q), error);
  infinite_position apart;
  apart.regions.push_back({{{{0, 0}, hex_color::red}}, {1, 0}});
  apart.regions.push_back({{{{0, 1}, hex_color::blue}}, {1, 0}});
  EXPECT_NO_THROW(validate(apart));
}

namespace {

// Minimal Red winning sets of an empty board, by enumeration.
hypergraph red_paths(int rows, int cols) {
  hex_board b = make_hex_board(rows, cols);
  hypergraph h{b.size(), {}};
  for (vmask s = 1; s <= full_mask(b.size()); ++s) {
    hex_board x = b;
    for (int v : members(s)) x.cells[v] = hex_color::red;
    if (has_chain(x, hex_color::red)) h.edges.push_back(s);
  }
  h.edges = minimize(h.edges);
  return h;
}

}  // namespace

TEST(HexAsStones, WindowFamilyHasFiniteBasis) {
  hypergraph h = red_paths(3, 3);
  win_family f{h.edges, {}};
  EXPECT_TRUE(has_finite_basis(f).finite_basis);
  EXPECT_FALSE(h.edges.empty());
}

TEST(HexAsStones, PairingGivesProperColoring) {
  // 3 rows, 2 columns: Red is Maker, Blue breaks with the pairing
  hypergraph h = red_paths(3, 2);
  hex_board b = make_hex_board(3, 2);
  std::vector<std::pair<int, int>> pairs;
  for (auto [x, y] : asymmetric_pairing(2)) pairs.push_back({b.index(x), b.index(y)});
  breaker_strategy pairing = [pairs, n = b.size()](vmask m, vmask k) {
    vmask free = full_mask(n) & ~(m | k);
    for (auto [x, y] : pairs) {
      if ((m & bit(x)) && (free & bit(y))) return y;
      if ((m & bit(y)) && (free & bit(x))) return x;
    }
    return free ? std::countr_zero(free) : -1;
  };
  coloring c = breaker_to_2coloring(h, pairing);
  EXPECT_TRUE(proper_coloring(h, c.white));
  for (vmask e : h.edges) EXPECT_NE(e & c.white, 0u);
}

TEST(HexAsStones, BridgeWindowsAgreeWithStoneValue) {
  for (int k = 1; k <= 3; ++k) {
    // one cell of every carrier pair
    std::vector<vmask> transversals;
    for (vmask pick = 0; pick < (vmask{1} << k); ++pick) {
      vmask s = 0;
      for (int i = 0; i < k; ++i) s |= bit(2 * i + ((pick >> i) & 1));
      transversals.push_back(s);
    }
    stone_game g = make_stone_game(2 * k, transversals, {});
    g.turn = side::second;
    EXPECT_EQ(stone_value(g, side::first),
              bounded_minimax(make_bridge_chain(k), bridge_window(k), hex_color::red));
  }
}
