#pragma once

// The ten acceptance criteria as plain functions, run by tests/acceptance.cpp
// and by `og verify-all`. Each check compares the library with the oracles
// in this directory or with values stated for the figures.

#include <chrono>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "og/draughts.hpp"
#include "og/gamecore.hpp"
#include "og/hex.hpp"
#include "og/stoneplacing.hpp"
#include "support/draughts_oracles.hpp"
#include "support/hex_oracles.hpp"
#include "support/instances.hpp"
#include "support/stone_oracles.hpp"
#include "support/trees.hpp"

namespace og::testing {

struct suite_options {
  bool quick = false;  // skip the 4x4 Hex sample
  std::uint64_t seed = 0;
};

struct criterion_result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a short summary
  double seconds = 0;
  double limit = 0;
};

// Collects the first failure; later ones only bump the count.
class tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  template <class F>
  void guard(F&& f, const std::string& what) {
    try {
      f();
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(checks_) + " checks";
    return std::to_string(failures_) + "/" + std::to_string(checks_) + " failed; first: " + first_;
  }

 private:
  std::uint64_t checks_ = 0, failures_ = 0;
  std::string first_;
};

// ---------------------------------------------------------------- 1-3 Hex

inline void hex_tour_check(tally& t, const hex_board& b) {
  bool red = has_chain(b, hex_color::red), blue = has_chain(b, hex_color::blue);
  t.check(red != blue, "oracle finds " + std::string(red ? "two" : "no") + " winners");
  gale_result g = gale_tour(b);
  t.check(g.winner == (red ? hex_color::red : hex_color::blue), "gale_tour winner differs from flood fill");
  bool chain_ok = !g.chain.empty();
  for (std::size_t i = 0; i < g.chain.size(); ++i)
    chain_ok = chain_ok && b.at(g.chain[i]) == g.winner && (i == 0 || hex_adjacent(g.chain[i - 1], g.chain[i]));
  t.check(chain_ok, "gale_tour chain is not a chain of the winner");
}

inline tally criterion_1(const suite_options& o) {
  tally t;
  for (unsigned bits = 0; bits < 512; ++bits)
    t.guard([&] { hex_tour_check(t, full_coloring(3, 3, bits)); }, "3x3 colouring " + std::to_string(bits));
  if (!o.quick) {
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < 2000; ++i) {
      unsigned bits = static_cast<unsigned>(rng() & 0xFFFF);
      t.guard([&] { hex_tour_check(t, full_coloring(4, 4, bits)); }, "4x4 colouring " + std::to_string(bits));
    }
  }
  return t;
}

inline tally criterion_2(const suite_options&) {
  tally t;
  for (int n = 1; n <= 3; ++n)
    t.guard(
        [&] {
          hex_board b = make_hex_board(n, n);
          hex_solution s = solve(b);
          t.check(s.winner == hex_color::red, std::to_string(n) + "x" + std::to_string(n) + " is not a first-player win");
          t.check(naive_winner(b) == hex_color::red, "oracle disagrees on " + std::to_string(n) + "x" + std::to_string(n));
          t.check(beats_everything(b, hex_color::red, s.strategy()), "solver strategy loses a line");
        },
        "solve");
  return t;
}

inline tally criterion_3(const suite_options&) {
  tally t;
  for (int n = 1; n <= 3; ++n)
    t.guard(
        [&] {
          auto pairs = asymmetric_pairing(n);
          hex_board b = make_hex_board(n + 1, n);
          t.check(static_cast<int>(pairs.size()) * 2 == b.size(), "pairing does not cover the board");
          t.check(beats_everything(b, hex_color::blue, pairing_strategy(pairs)),
                  "pairing loses a line for n = " + std::to_string(n));
        },
        "pairing");
  return t;
}

// ---------------------------------------------------------------- 4 ranks

inline tally criterion_4(const suite_options& o) {
  tally t;
  std::mt19937_64 rng(o.seed + 4);
  for (int i = 0; i < 200; ++i)
    t.guard(
        [&] {
          flat_tree f = random_flat(rng, 40);
          tree_ptr tr = to_tree(f);
          game_ptr g = climbing_game(tr);
          game_value v = game_value_of(g);
          std::uint64_t h = static_cast<std::uint64_t>(height_oracle(f));
          t.check(rank(tr) == game_value(ordinal(h)), "rank differs from height on tree " + std::to_string(i));
          t.check(v == game_value(ordinal(h)), "climbing value differs from rank on tree " + std::to_string(i));
          for (int k = 0; k < 5; ++k) {
            std::uint64_t b = rng() % (h + 1);
            path p = find_position_with_value(g, b);
            t.check(game_value_of(game_at(g, p)) == game_value(ordinal(b)), "reach " + std::to_string(b));
          }
        },
        "random tree");
  t.guard(
      [&] {
        tree_ptr w3 = example_tree_omega_plus_3();
        ordinal want = parse_ordinal("w+3");
        game_ptr g = climbing_game(w3);
        t.check(rank(w3) == game_value(want), "figure tree rank is " + rank(w3).str());
        t.check(game_value_of(g) == game_value(want), "figure tree value is " + game_value_of(g).str());
        for (const char* b : {"0", "2", "w", "w+1", "w+3"}) {
          path p = find_position_with_value(g, parse_ordinal(b));
          t.check(game_value_of(game_at(g, p)) == game_value(parse_ordinal(b)), std::string("reach ") + b);
        }
      },
      "w+3 tree");
  return t;
}

// ---------------------------------------------------------------- 5 bridges

inline tally criterion_5(const suite_options&) {
  tally t;
  for (int k = 0; k <= 3; ++k)
    t.guard(
        [&] {
          game_value v = bounded_minimax(make_bridge_chain(k), bridge_window(k), hex_color::red);
          t.check(v == game_value(ordinal(static_cast<std::uint64_t>(k))),
                  "bridge chain " + std::to_string(k) + " has value " + v.str());
          // Independent view: Red must take one cell of each carrier, Blue moves first.
          std::vector<vmask> transversals;
          for (vmask pick = 0; pick < (vmask{1} << k); ++pick) {
            vmask s = 0;
            for (int i = 0; i < k; ++i) s |= bit(2 * i + static_cast<int>((pick >> i) & 1));
            transversals.push_back(s);
          }
          if (k == 0) return;
          stone_game g = make_stone_game(2 * k, transversals, {});
          g.turn = side::second;
          t.check(naive_stone_value(g, side::first) == k, "carrier game oracle disagrees at k = " + std::to_string(k));
        },
        "bridge chain");
  return t;
}

// ---------------------------------------------------------------- 6-8 stone placing

inline tally criterion_6(const suite_options& o) {
  tally t;
  std::mt19937_64 rng(o.seed + 6);
  int valued = 0;
  for (int i = 0; i < 300; ++i)
    t.guard(
        [&] {
          auto inst = random_open_instance(rng);
          game_value v = stone_value(inst.game, inst.open);
          int oracle = naive_stone_value(inst.game, inst.open);
          t.check(v.defined() == (oracle >= 0) && (!v.defined() || v.value() == ordinal(static_cast<std::uint64_t>(oracle))),
                  "instance " + std::to_string(i) + ": value " + v.str() + ", oracle " + std::to_string(oracle));
          if (!v.defined()) return;
          ++valued;
          t.check(v.value().is_finite(), "infinite value");
          auto r = dead_region(inst.game, inst.open);
          stone_game gifted = gift(inst.game, r.region, other(inst.open));
          t.check(naive_stone_value(gifted, inst.open) == oracle,
                  "instance " + std::to_string(i) + ": gifting B\\D changes the value");
          auto chk = verify_dead_region(inst.game, inst.open, r);
          t.check(chk.plan_wins && chk.gifted_value == v, "instance " + std::to_string(i) + ": region plan fails");
        },
        "stone instance");
  t.check(valued >= 50, "only " + std::to_string(valued) + " valued instances");
  return t;
}

inline tally criterion_7(const suite_options& o) {
  tally t;
  for (int c = -20; c <= 20; ++c)
    for (int r = -20; r <= 20; ++r) {
      hex_cell x{c, r}, y = theta(x);
      t.check(theta(y) == x && y != x, "theta fails at " + x.str());
    }
  std::mt19937_64 rng(o.seed + 7);
  for (int play = 0; play < 5; ++play)
    t.guard(
        [&] {
          infinite_position p;
          mirroring_strategy mu(p);
          for (int move = 0; move < 200; ++move) {
            hex_cell x;
            do {
              x = {static_cast<int>(rng() % 41) - 20, static_cast<int>(rng() % 41) - 20};
            } while (p.at(x) != hex_color::empty);
            p.cells[x] = hex_color::red;
            hex_cell y = mu.reply(p, x);
            t.check(y == theta(x) && p.at(y) == hex_color::empty, "mirror reply is not the free image");
            p.cells[y] = hex_color::blue;
          }
          for (auto [z, k] : p.cells) t.check(p.at(theta(z)) == opponent(k), "position is not mirror symmetric");
        },
        "mirror playout");
  for (int i = 0; i < 100; ++i)
    t.guard(
        [&] {
          auto inst = random_mirror_instance(rng);
          auto lib = mirror_intersections(inst.game, inst.theta);
          auto ref = naive_mirror_counts(inst.game, inst.theta);
          t.check(lib == ref, "intersection counts differ from the oracle");
          for (int k : ref) t.check(k % 2 == 0, "odd |f ∩ θ[f]|");
        },
        "mirror instance");
  return t;
}

inline tally criterion_8(const suite_options& o) {
  tally t;
  std::mt19937_64 rng(o.seed + 8);
  for (int i = 0; i < 100; ++i)
    t.guard(
        [&] {
          hypergraph h = random_breaker_win(rng);
          auto sb = std::make_shared<solved_breaker>(h);
          coloring c = breaker_to_2coloring(h, [sb](vmask m, vmask b) { return (*sb)(m, b); });
          for (vmask e : h.edges) {
            bool white = false, black = false;
            for (int v = 0; v < h.n; ++v)
              if (e >> v & 1) (c.white >> v & 1 ? white : black) = true;
            t.check(white && black, "monochromatic edge in instance " + std::to_string(i));
          }
        },
        "two-colouring");
  for (int i = 0; i < 20; ++i) {
    int n = 4 + 2 * static_cast<int>(rng() % 3);
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < n; v += 2) pairs.push_back({v, v + 1});
    stone_game g = make_stone_game(n, {random_subset(rng, n, 1, 3)}, {random_subset(rng, n, 1, 3)});
    bool rejected = false;
    try {
      strategy_steal_check(g, involution_from_pairs(n, pairs));
    } catch (const error& e) {
      rejected = e.code() == errc::not_strictly_not_open;
    }
    t.check(rejected, "finite second-player set accepted in instance " + std::to_string(i));
  }
  t.guard(
      [&] {
        progression_game pg;
        pg.reflect = -1;
        pg.second_win = {{0, 1}, {5, 2}};
        pg.first_win = {{-1, -1}, {-6, -2}};
        t.check(strategy_steal_check(pg, 100).certified, "infinite progression game not certified");
        pg.second_finite = {mask_of({3})};
        bool rejected = false;
        try {
          strategy_steal_check(pg);
        } catch (const error& e) {
          rejected = e.code() == errc::not_strictly_not_open;
        }
        t.check(rejected, "progression game with a finite second-player set accepted");
      },
      "progressions");
  return t;
}

// ---------------------------------------------------------------- 9-10 draughts

inline std::uint64_t tree_height(const tree_ptr& t) {
  std::uint64_t h = 0;
  for (const auto& c : t->children) h = std::max(h, tree_height(c) + 1);
  return h;
}

inline tally criterion_9(const suite_options&) {
  tally t;
  auto trees = small_trees(3);
  t.check(trees.size() == 60, "expected 60 trees of rank <= 3 with <= 7 nodes, got " + std::to_string(trees.size()));
  for (std::size_t i = 0; i < trees.size(); ++i)
    t.guard(
        [&] {
          const tree_ptr& tr = trees[i];
          king_tree kt = build_king_tree(tr, rs_a());
          game_value v = minimax_value(kt.position, rs_a());
          t.check(v == game_value(ordinal(tree_height(tr))),
                  "tree " + std::to_string(i) + ": value " + v.str() + ", rank " + std::to_string(tree_height(tr)));
          std::string defect = resting_bijection_defect(kt, tr);
          t.check(defect.empty(), "tree " + std::to_string(i) + ": " + defect);
        },
        "tree " + std::to_string(i));
  return t;
}

inline tally criterion_10(const suite_options&) {
  tally t;
  t.guard(
      [&] {
        auto templates = extended_node_templates(rs_b());
        const node_template& root = templates.at(0);
        int openings = 0;
        for (const auto& m : legal_moves(root.position, rs_b())) {
          if (m.is_jump()) continue;
          ++openings;
          int v = naive_value(apply_move(root.position, m), rs_b(), 2);
          t.check(v >= 1 && v <= 2, "guarded root: opening " + m.str() + " is not punished within 2 White moves");
        }
        t.check(openings > 0, "guarded root offers no simple move");
      },
      "RS-B guarded root");
  t.guard(
      [&] {
        draughts_position p;
        p.pieces[{0, 0}] = {dcolor::black, dkind::king};
        p.pieces[{6, -5}] = {dcolor::white, dkind::king};
        p.ladders.push_back({{1, 0}, {1, 0}, dcolor::white});
        const dmove* inf = nullptr;
        auto ms = legal_moves(p, rs_c());
        for (const auto& m : ms)
          if (m.to_infinity) inf = &m;
        t.check(inf != nullptr, "RS-C offers no jump to infinity");
        if (!inf) return;
        auto q = apply_move(p, *inf);
        t.check(!q.has_pieces(dcolor::black), "the jumping king survives the ladder");
        auto w = legal_moves(q, rs_c());
        t.check(!w.empty() && legal_moves(apply_move(q, w.front()), rs_c()).empty(), "Black does not lose");
      },
      "RS-C ladder");
  t.guard(
      [&] {
        auto p = board({{0, 1}, {1, 0}, {2, 1}, {2, -1}}, {0, 0});
        std::set<dsq> std_ends = endpoints(legal_moves(p, rs_standard()));
        t.check(std_ends == std::set<dsq>{{0, 2}, {2, 2}, {2, -2}}, "maximal jumps end elsewhere than the dagger and stars");
        t.check(!std_ends.count({2, 0}), "the circled square is a legal stop under maximal iteration");
        std::set<dsq> optional_ends = endpoints(legal_moves(p, rs_a()));
        t.check(optional_ends.count({2, 0}) == 1, "the circled square is missing under optional iteration");
        for (const auto& rs : {rs_standard(), rs_a()}) {
          std::set<std::pair<dsq, std::vector<dsq>>> got;
          for (const auto& m : legal_moves(p, rs)) got.insert({m.from, m.path});
          t.check(got == reference_moves(p, rs), rs.name + " move set differs from the brute-force oracle");
        }
      },
      "multi-jump figure");
  return t;
}

// ---------------------------------------------------------------- runner

struct criterion {
  int id;
  const char* name;
  double limit;  // seconds
  tally (*run)(const suite_options&);
};

inline const std::vector<criterion>& criteria() {
  static const std::vector<criterion> all = {
      {1, "hex-theorem-exhaustive", 10, criterion_1},
      {2, "no-tie-first-player-win", 30, criterion_2},
      {3, "asymmetric-pairing", 60, criterion_3},
      {4, "rank-value-agreement", 20, criterion_4},
      {5, "bridge-chain-values", 30, criterion_5},
      {6, "stone-finiteness-locality", 120, criterion_6},
      {7, "mirroring-properties", 20, criterion_7},
      {8, "two-colouring-and-stealing", 60, criterion_8},
      {9, "draughts-value-correspondence", 300, criterion_9},
      {10, "rule-variant-templates", 30, criterion_10},
  };
  return all;
}

// A criterion passes when its checks hold and it finishes within its limit.
inline std::vector<criterion_result> run_acceptance(const suite_options& o,
                                                    const std::function<void(const criterion_result&)>& each = {}) {
  std::vector<criterion_result> out;
  for (const auto& c : criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    tally t;
    try {
      t = c.run(o);
    } catch (const std::exception& e) {
      t.check(false, e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    criterion_result r{c.id, c.name, t.ok() && s <= c.limit, t.summary(), s, c.limit};
    if (t.ok() && s > c.limit) r.detail = "over the time limit: " + r.detail;
    if (each) each(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace og::testing
