// og: command-line front end. JSON results go to stdout (or --out); exit
// code 0 on success, 1 on a domain error, 2 on a usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "og/draughts.hpp"
#include "og/gamecore.hpp"
#include "og/hex.hpp"
#include "og/json_io.hpp"
#include "og/ordinal.hpp"
#include "og/render.hpp"
#include "og/stoneplacing.hpp"
#include "support/acceptance.hpp"

namespace {

using og::io::json;

struct globals {
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> omega_cutoff;
  std::uint64_t seed = 0;
  std::string out;
};

globals G;

json read_json(const std::string& file) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) throw og::error(og::errc::invalid_argument, "cannot open " + file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw og::error(og::errc::syntax, (file == "-" ? std::string("stdin") : file) + ": " + e.what());
  }
}

void emit_text(const std::string& s) {
  if (G.out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(G.out);
  if (!f) throw og::error(og::errc::invalid_argument, "cannot write " + G.out);
  f << s;
}

void emit(const json& j) { emit_text(j.dump(2) + "\n"); }

og::eval_options eval_opts() {
  og::eval_options o;
  if (G.budget) o.budget_nodes = *G.budget;
  if (G.omega_cutoff) o.omega_cutoff = *G.omega_cutoff;
  return o;
}

og::rule_set rules_for(const og::io::draughts_input& in, const std::string& flag) {
  if (!flag.empty()) return og::rule_set_by_name(flag);
  if (in.rules) return *in.rules;
  return og::rs_a();
}

og::side side_from(const std::string& s) { return s == "second" ? og::side::second : og::side::first; }

json cells_json(const std::vector<og::hex_cell>& cs) {
  json a = json::array();
  for (auto x : cs) a.push_back(og::io::cell_json(x));
  return a;
}

// Empty cells in the box of the finite stones that touch two cells of the
// open colour: the carriers of its virtual links.
std::vector<og::hex_cell> auto_window(const og::infinite_position& p, og::hex_color open) {
  if (p.cells.empty()) return {};
  int c0 = p.cells.begin()->first.c, c1 = c0, r0 = p.cells.begin()->first.r, r1 = r0;
  for (auto [x, k] : p.cells) c0 = std::min(c0, x.c), c1 = std::max(c1, x.c), r0 = std::min(r0, x.r), r1 = std::max(r1, x.r);
  std::vector<og::hex_cell> w;
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) {
      og::hex_cell x{c, r};
      if (p.at(x) != og::hex_color::empty) continue;
      int touching = 0;
      for (auto y : og::hex_neighbors(x)) touching += p.at(y) == open;
      if (touching >= 2) w.push_back(x);
    }
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"og: transfinite game values for trees, Hex, stone-placing games and draughts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget-nodes", G.budget, "node budget for searches")->envname("OG_BUDGET");
  app.add_option("--omega-cutoff", G.omega_cutoff, "omega-family members sampled")->envname("OG_OMEGA_CUTOFF");
  app.add_option("--seed", G.seed, "seed for randomised verbs")->envname("OG_SEED");
  app.add_option("--out", G.out, "write the result to this file");

  std::string input = "-";
  auto with_input = [&](CLI::App* c) { c->add_option("input", input, "JSON input file, - for stdin"); };

  // ---------------------------------------------------------------- ordinal
  auto* ord = app.add_subcommand("ordinal", "Cantor normal form arithmetic");
  ord->require_subcommand(1);
  std::string expr, expr2;
  auto* ord_eval = ord->add_subcommand("eval", "normalise an ordinal expression");
  ord_eval->add_option("expr", expr)->required();
  ord_eval->callback([&] { emit(og::io::to_json(og::parse_ordinal(expr))); });
  auto* ord_cmp = ord->add_subcommand("cmp", "compare two ordinals");
  ord_cmp->add_option("a", expr)->required();
  ord_cmp->add_option("b", expr2)->required();
  ord_cmp->callback([&] {
    emit_text(std::string(og::cmp_name(og::compare3(og::parse_ordinal(expr), og::parse_ordinal(expr2)))) + "\n");
  });

  // ---------------------------------------------------------------- tree
  auto* tree = app.add_subcommand("tree", "well-founded trees");
  tree->require_subcommand(1);
  std::string rank_expr;
  auto* tree_build = tree->add_subcommand("build", "canonical tree of a given rank");
  tree_build->add_option("--rank", rank_expr, "rank as an ordinal expression")->required();
  tree_build->callback([&] { emit(og::io::to_json(og::build_tree_of_rank(og::parse_ordinal(rank_expr)))); });
  auto* tree_rank = tree->add_subcommand("rank", "rank of a tree");
  with_input(tree_rank);
  tree_rank->callback([&] { emit(og::io::to_json(og::rank(og::io::tree_from(read_json(input)), eval_opts()))); });

  // ---------------------------------------------------------------- game
  auto* game = app.add_subcommand("game", "climbing games of trees");
  game->require_subcommand(1);
  auto* game_value = game->add_subcommand("value", "value of the climbing game");
  with_input(game_value);
  game_value->callback([&] {
    auto g = og::climbing_game(og::io::tree_from(read_json(input)));
    emit(og::io::to_json(og::game_value_of(g, eval_opts())));
  });
  auto* game_strategy = game->add_subcommand("strategy", "value-reducing strategy for the climber");
  with_input(game_strategy);
  game_strategy->callback([&] {
    auto g = og::climbing_game(og::io::tree_from(read_json(input)));
    json a = json::array();
    for (const auto& [p, m] : og::value_reducing_strategy(g, eval_opts()).moves)
      a.push_back({{"path", og::io::to_json(p)}, {"move", m}});
    emit(a);
  });
  std::string beta;
  auto* game_reach = game->add_subcommand("reach", "a position of the given value");
  with_input(game_reach);
  game_reach->add_option("--beta", beta, "target value")->required();
  game_reach->callback([&] {
    auto g = og::climbing_game(og::io::tree_from(read_json(input)));
    og::path p = og::find_position_with_value(g, og::parse_ordinal(beta), eval_opts());
    emit({{"path", og::io::to_json(p)}, {"value", og::io::to_json(og::game_value_of(og::game_at(g, p), eval_opts()))}});
  });

  // ---------------------------------------------------------------- hex
  auto* hex = app.add_subcommand("hex", "finite and infinite Hex");
  hex->require_subcommand(1);
  auto* hex_tour = hex->add_subcommand("tour", "Gale tour of a full board");
  with_input(hex_tour);
  hex_tour->callback([&] {
    auto r = og::gale_tour(og::io::hex_board_from(read_json(input)));
    emit({{"winner", og::hex_color_name(r.winner)}, {"chain", cells_json(r.chain)}, {"tourLength", r.tour.size()}});
  });
  std::string window = "auto", open_color = "red";
  auto* hex_solve = hex->add_subcommand("solve", "exhaustive solve, or bounded minimax on an infinite position");
  with_input(hex_solve);
  hex_solve->add_option("--window", window, "infinite positions: 'auto' or a JSON list of cells");
  hex_solve->add_option("--open", open_color, "infinite positions: the open player")->check(CLI::IsMember({"red", "blue"}));
  hex_solve->callback([&] {
    json j = read_json(input);
    if (j.contains("rows")) {
      auto b = og::io::hex_board_from(j);
      auto s = og::solve(b);
      emit({{"toMove", og::hex_color_name(s.to_move)},
            {"winner", og::hex_color_name(s.winner)},
            {"plies", s.plies},
            {"best", s.best >= 0 ? og::io::cell_json(b.cell(s.best)) : json(nullptr)}});
      return;
    }
    auto p = og::io::infinite_position_from(j);
    og::hex_color open = open_color == "red" ? og::hex_color::red : og::hex_color::blue;
    std::vector<og::hex_cell> w;
    if (window == "auto") {
      w = auto_window(p, open);
    } else {
      json cells;
      try {
        cells = json::parse(window);
      } catch (const json::parse_error&) {
        throw CLI::ValidationError("--window", "expected 'auto' or a JSON list of [c, r] cells");
      }
      for (const auto& c : cells) w.push_back(og::io::cell_from(c));
    }
    og::stone_options so;
    if (G.budget) so.eval.budget_nodes = *G.budget;
    emit(og::io::to_json(og::bounded_minimax(p, w, open, so)));
  });
  int pairing_n = 2;
  auto* hex_pairing = hex->add_subcommand("pairing", "pairing strategy of the (n+1)xn board");
  hex_pairing->add_option("--n", pairing_n, "columns")->check(CLI::Range(1, 7));
  hex_pairing->callback([&] {
    json pairs = json::array();
    for (auto [a, b] : og::asymmetric_pairing(pairing_n))
      pairs.push_back({og::io::cell_json(a), og::io::cell_json(b)});
    emit({{"rows", pairing_n + 1}, {"cols", pairing_n}, {"pairs", pairs}});
  });
  int sim_moves = 200, sim_radius = 20;
  auto* hex_mirror = hex->add_subcommand("mirror-sim", "random first-player moves against the mirroring strategy");
  hex_mirror->add_option("--moves", sim_moves, "first-player moves")->check(CLI::Range(0, 100000));
  hex_mirror->add_option("--radius", sim_radius, "moves drawn from [-radius, radius]^2")->check(CLI::Range(1, 1000));
  hex_mirror->callback([&] {
    std::mt19937_64 rng(G.seed);
    og::infinite_position p;
    og::mirroring_strategy mu(p);
    long long side = 2LL * sim_radius + 1;
    if (sim_moves * 2 > side * side) throw CLI::ValidationError("--moves", "more moves than cells in the radius");
    bool symmetric = true;
    for (int i = 0; i < sim_moves; ++i) {
      og::hex_cell x;
      do {
        x = {static_cast<int>(static_cast<long long>(rng() % side) - sim_radius),
             static_cast<int>(static_cast<long long>(rng() % side) - sim_radius)};
      } while (p.at(x) != og::hex_color::empty);
      p.cells[x] = og::hex_color::red;
      p.cells[mu.reply(p, x)] = og::hex_color::blue;
    }
    for (auto [z, k] : p.cells) symmetric = symmetric && p.at(og::theta(z)) == og::opponent(k);
    emit({{"moves", sim_moves}, {"seed", G.seed}, {"symmetric", symmetric}});
  });
  int bridges_k = 1;
  auto* hex_bridges = hex->add_subcommand("bridges", "chain of k bridges between two Red rays");
  hex_bridges->add_option("--k", bridges_k, "bridges")->required()->check(CLI::Range(0, 64));
  hex_bridges->callback([&] { emit(og::io::to_json(og::make_bridge_chain(bridges_k))); });
  auto* hex_path = hex->add_subcommand("path-decide", "is a periodic path winning");
  with_input(hex_path);
  hex_path->callback([&] { emit({{"winning", og::decide_winning(og::io::periodic_path_from(read_json(input)))}}); });

  // ---------------------------------------------------------------- stone
  auto* stone = app.add_subcommand("stone", "stone-placing games");
  stone->require_subcommand(1);
  std::string open_side = "first";
  auto open_flag = [&](CLI::App* c) {
    c->add_option("--open", open_side, "the open player")->check(CLI::IsMember({"first", "second"}));
  };
  auto stone_opts = [] {
    og::stone_options so;
    so.eval = eval_opts();
    return so;
  };
  auto* stone_value = stone->add_subcommand("value", "exact value for the open player");
  with_input(stone_value);
  open_flag(stone_value);
  stone_value->callback([&] {
    auto in = og::io::stone_from(read_json(input));
    emit(og::io::to_json(og::stone_value(in.game, side_from(open_side), stone_opts())));
  });
  auto* stone_dual = stone->add_subcommand("dual", "minimal transversals of the first player's sets");
  with_input(stone_dual);
  stone_dual->callback([&] {
    auto in = og::io::stone_from(read_json(input));
    auto d = og::maker_breaker_dual({in.game.n, in.game.first_win});
    json t = json::array();
    for (auto m : d.transversals) t.push_back(og::io::vertex_set(m, in.board));
    emit({{"transversals", t}, {"degenerate", d.degenerate}});
  });
  auto* stone_dead = stone->add_subcommand("dead-region", "a region whose complement can be gifted away");
  with_input(stone_dead);
  open_flag(stone_dead);
  stone_dead->callback([&] {
    auto in = og::io::stone_from(read_json(input));
    og::side open = side_from(open_side);
    auto r = og::dead_region(in.game, open, stone_opts());
    auto chk = og::verify_dead_region(in.game, open, r, stone_opts());
    emit({{"value", r.value},
          {"region", og::io::vertex_set(r.region, in.board)},
          {"giftedValue", og::io::to_json(chk.gifted_value)},
          {"planWins", chk.plan_wins}});
  });
  auto* stone_color = stone->add_subcommand("two-color", "proper 2-colouring from a Breaker win");
  with_input(stone_color);
  stone_color->callback([&] {
    auto in = og::io::stone_from(read_json(input));
    og::hypergraph h{in.game.n, in.game.first_win};
    auto sb = std::make_shared<og::solved_breaker>(h);
    auto c = og::breaker_to_2coloring(h, [sb](og::vmask m, og::vmask b) { return (*sb)(m, b); });
    emit({{"white", og::io::vertex_set(c.white, in.board)},
          {"black", og::io::vertex_set(c.black, in.board)},
          {"proper", og::proper_coloring(h, c.white)}});
  });
  int playouts = 100;
  auto* stone_steal = stone->add_subcommand("steal-check", "strategy-stealing preconditions");
  with_input(stone_steal);
  stone_steal->add_option("--playouts", playouts, "progression games: random playouts")->check(CLI::Range(0, 100000));
  stone_steal->callback([&] {
    json j = read_json(input);
    og::steal_verdict v;
    if (j.contains("reflect")) {
      v = og::strategy_steal_check(og::io::progression_game_from(j), playouts, G.seed);
    } else {
      auto in = og::io::stone_from(j);
      if (!in.theta) throw og::error(og::errc::syntax, "steal-check needs an 'involution'");
      v = og::strategy_steal_check(in.game, *in.theta);
    }
    emit({{"certified", v.certified}, {"playouts", v.playouts}, {"detail", v.detail}});
  });

  // ---------------------------------------------------------------- draughts
  auto* dr = app.add_subcommand("draughts", "infinite draughts");
  dr->require_subcommand(1);
  std::string tree_file, rules_name;
  auto rules_flag = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--rules", rules_name, "RS-A, RS-B, RS-C or STD");
    if (required) o->required();
  };
  auto king_opts = [] {
    og::king_tree_options o;
    if (G.omega_cutoff) o.omega_cutoff = *G.omega_cutoff;
    return o;
  };
  auto* dr_build = dr->add_subcommand("build", "king tree position of a tree");
  dr_build->add_option("--tree", tree_file, "tree JSON file")->required();
  rules_flag(dr_build, true);
  dr_build->callback([&] {
    og::rule_set rs = og::rule_set_by_name(rules_name);
    auto kt = og::build_king_tree(og::io::tree_from(read_json(tree_file)), rs, king_opts());
    json j = og::io::to_json(kt.position, rs);
    auto g = kt.guardians();
    if (!g.empty()) {
      json a = json::array();
      for (auto s : g) a.push_back(og::io::sq_json(s));
      j["guardians"] = a;
    }
    emit(j);
  });
  auto* dr_moves = dr->add_subcommand("moves", "legal moves of the side to move");
  with_input(dr_moves);
  rules_flag(dr_moves, false);
  dr_moves->callback([&] {
    auto in = og::io::draughts_from(read_json(input));
    json a = json::array();
    for (const auto& m : og::legal_moves(in.position, rules_for(in, rules_name))) a.push_back(og::io::to_json(m));
    emit(a);
  });
  int max_white = 8;
  auto* dr_value = dr->add_subcommand("value", "minimax value for White");
  with_input(dr_value);
  rules_flag(dr_value, false);
  dr_value->add_option("--max-white-moves", max_white, "depth of the bounded search")->check(CLI::Range(1, 64));
  dr_value->callback([&] {
    auto in = og::io::draughts_from(read_json(input));
    og::minimax_options o;
    if (G.budget) o.budget_nodes = *G.budget;
    o.max_white_moves = max_white;
    emit(og::io::to_json(og::minimax_value(in.position, rules_for(in, rules_name), o)));
  });
  auto* dr_validate = dr->add_subcommand("validate", "king-tree structure check; exit 1 when violated");
  with_input(dr_validate);
  int validate_status = 0;
  dr_validate->callback([&] {
    json j = read_json(input);
    auto in = og::io::draughts_from(j);
    std::vector<og::dsq> extra;
    if (j.contains("guardians"))
      for (const auto& s : j.at("guardians")) extra.push_back(og::io::sq_from(s));
    auto r = og::validate_king_tree(in.position, extra);
    emit(og::io::to_json(r));
    if (!r.ok()) validate_status = 1;
  });
  std::size_t max_plies = 200;
  auto* dr_transfer = dr->add_subcommand("transfer", "play the climber's value-reducing strategy on the king tree");
  dr_transfer->add_option("--tree", tree_file, "tree JSON file")->required();
  dr_transfer->add_option("--max-plies", max_plies, "playout length")->check(CLI::Range(1, 100000));
  dr_transfer->callback([&] {
    auto t = og::io::tree_from(read_json(tree_file));
    auto kt = og::build_king_tree(t, og::rs_a(), king_opts());
    auto climber = og::value_reducing_strategy(og::climbing_game(t), eval_opts());
    auto out = og::play(kt.position, og::rs_a(), og::strategy_transfer(kt, t, climber),
                        og::random_strategy(G.seed, og::rs_a()), max_plies);
    json stops = json::array();
    for (auto s : out.black_stops) stops.push_back(og::io::sq_json(s));
    auto back = og::climber_path(kt, out.black_stops);
    emit({{"blackStops", stops},
          {"climbingPath", back ? og::io::to_json(*back) : json(nullptr)},
          {"plies", out.moves.size()},
          {"blackLost", out.black_lost}});
  });

  // ---------------------------------------------------------------- render
  std::string format = "ascii";
  auto* render = app.add_subcommand("render", "draw a draughts or Hex position");
  with_input(render);
  render->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  render->callback([&] {
    json j = read_json(input);
    bool svg = format == "svg";
    if (j.contains("pieces")) {
      auto p = og::io::draughts_from(j).position;
      emit_text(svg ? og::render::svg(p) : og::render::ascii(p));
    } else if (j.contains("rows")) {
      auto b = og::io::hex_board_from(j);
      std::vector<og::hex_cell> chain;
      if (b.full()) chain = og::gale_tour(b).chain;
      emit_text(svg ? og::render::svg(b, chain) : og::render::ascii(b));
    } else if (j.contains("periodicRegions") || j.contains("cells")) {
      auto p = og::io::infinite_position_from(j);
      emit_text(svg ? og::render::svg(p) : og::render::ascii(p));
    } else {
      throw og::error(og::errc::syntax, "input is neither a draughts nor a Hex position");
    }
  });

  // ---------------------------------------------------------------- verify-all
  bool quick = false, no_timings = false;
  int verify_status = 0;
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  verify->add_flag("--quick", quick, "skip the 4x4 Hex sample");
  verify->add_flag("--no-timings", no_timings, "omit timings, for byte-identical reports");
  verify->callback([&] {
    og::testing::suite_options o;
    o.quick = quick;
    o.seed = G.seed;
    std::ostringstream table;
    og::testing::run_acceptance(o, [&](const og::testing::criterion_result& r) {
      char line[512];
      if (no_timings)
        std::snprintf(line, sizeof line, "%s %2d %-30s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                      r.detail.c_str());
      else
        std::snprintf(line, sizeof line, "%s %2d %-30s %7.2fs (limit %.0fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.seconds, r.limit, r.detail.c_str());
      table << line;
      if (G.out.empty()) std::cout << line << std::flush;
      if (!r.pass) verify_status = 1;
    });
    if (!G.out.empty()) emit_text(table.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const og::error& e) {
    std::cerr << "og: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "og: Syntax: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "og: " << e.what() << "\n";
    return 1;
  }
  return validate_status | verify_status;
}
