#pragma once

// JSON readers and writers for every module's artifacts. Readers throw
// og::error(syntax) on malformed input.

#include <string>
#include <vector>

#include "json.hpp"
#include "og/draughts.hpp"
#include "og/gamecore.hpp"
#include "og/hex.hpp"
#include "og/ordinal.hpp"
#include "og/stoneplacing.hpp"

namespace og::io {

using json = nlohmann::json;

[[noreturn]] inline void bad(const std::string& what) { throw error(errc::syntax, what); }

inline const json& field(const json& j, const char* k) {
  if (!j.is_object() || !j.contains(k)) bad(std::string("missing field '") + k + "'");
  return j.at(k);
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

// ---------------------------------------------------------------- ordinals

// Naturals as numbers, everything else as its CNF string.
inline json to_json(const ordinal& a) {
  if (a.is_finite()) return a.to_nat();
  return a.str();
}

inline json to_json(const game_value& v) { return v.defined() ? to_json(v.value()) : json(nullptr); }

inline ordinal ordinal_from(const json& j) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return ordinal(j.get<std::uint64_t>());
  if (j.is_string()) return parse_ordinal(j.get<std::string>());
  bad("ordinal must be a natural number or a string");
}

// ---------------------------------------------------------------- trees

inline std::shared_ptr<const tree_family> family_from(const json& j) {
  std::string schema = field(j, "schema").get<std::string>();
  std::shared_ptr<const tree_family> f;
  if (schema == "chain") {
    f = chain_family();
  } else if (schema == "rank") {
    const json& p = field(j, "params");
    f = rank_family(ordinal_from(field(p, "alpha")));
  } else {
    bad("unknown family schema '" + schema + "'");
  }
  if (j.contains("ranks") && j.at("ranks").get<std::string>() != f->pattern())
    bad("family '" + schema + "' has ranks " + f->pattern() + ", not " + j.at("ranks").get<std::string>());
  if (j.contains("sup") && ordinal_from(j.at("sup")) != f->sup())
    bad("family '" + schema + "' has sup " + f->sup().str());
  return f;
}

inline json family_json(const tree_family& f) {
  json p = json::object();
  for (const auto& [k, v] : f.params()) p[k] = v;
  return {{"schema", f.schema()}, {"params", p}, {"ranks", f.pattern()}, {"sup", f.sup().str()}};
}

inline json to_json(const tree_ptr& t) {
  json j = json::object();
  json kids = json::array();
  for (const auto& c : t->children) kids.push_back(to_json(c));
  j["children"] = kids;
  if (t->omega) j["omega"] = family_json(*t->omega);
  if (t->infinite_branch) j["infiniteBranch"] = true;
  return j;
}

inline tree_ptr tree_from(const json& j) {
  if (!j.is_object()) bad("tree node must be an object");
  if (j.value("infiniteBranch", false)) return tree_infinite_branch();
  std::vector<tree_ptr> kids;
  if (j.contains("children")) {
    if (!j.at("children").is_array()) bad("'children' must be an array");
    for (const auto& c : j.at("children")) kids.push_back(tree_from(c));
  }
  if (j.contains("omega")) return tree_omega(family_from(j.at("omega")), std::move(kids));
  return kids.empty() ? tree_leaf() : tree_node(std::move(kids));
}

// ---------------------------------------------------------------- paths

inline json to_json(const path& p) { return json(std::vector<std::size_t>(p.begin(), p.end())); }

// ---------------------------------------------------------------- stone placing

inline json vertex_set(vmask m, const json& board) {
  json out = json::array();
  for (int v : members(m)) out.push_back(v < static_cast<int>(board.size()) ? board[v] : json(v));
  return out;
}

struct stone_input {
  stone_game game;
  json board;
  std::optional<involution> theta;
};

inline stone_input stone_from(const json& j) {
  stone_input in;
  in.board = field(j, "board");
  if (!in.board.is_array()) bad("'board' must be an array of vertex labels");
  int n = static_cast<int>(in.board.size());
  if (n > max_stone_vertices) bad("board has more than 64 vertices");
  auto index_of = [&](const json& x) {
    for (int i = 0; i < n; ++i)
      if (in.board[i] == x) return i;
    bad("vertex " + x.dump() + " is not on the board");
  };
  auto sets = [&](const char* k) {
    std::vector<vmask> out;
    if (!j.contains(k)) return out;
    for (const auto& s : j.at(k)) {
      vmask m = 0;
      for (const auto& x : s) m |= bit(index_of(x));
      out.push_back(m);
    }
    return out;
  };
  in.game = make_stone_game(n, sets("first_win_minimal"), sets("second_win_minimal"));
  for (int i = 0; i < n; ++i) in.game.labels.push_back(in.board[i].is_string() ? in.board[i].get<std::string>() : in.board[i].dump());
  for (auto [k, s] : {std::pair{"first_marks", side::first}, std::pair{"second_marks", side::second}})
    if (j.contains(k))
      for (const auto& x : j.at(k)) (s == side::first ? in.game.first : in.game.second) |= bit(index_of(x));
  if (in.game.first & in.game.second) bad("a vertex is marked by both players");
  std::string turn = j.value("turn", "first");
  if (turn != "first" && turn != "second") bad("'turn' must be \"first\" or \"second\"");
  in.game.turn = turn == "first" ? side::first : side::second;
  settle_winner(in.game);
  if (j.contains("involution")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("involution")) {
      if (!p.is_array() || p.size() != 2) bad("involution entries are vertex pairs");
      pairs.push_back({index_of(p[0]), index_of(p[1])});
    }
    in.theta = involution_from_pairs(n, pairs);
  }
  return in;
}

inline json to_json(const stone_input& in) {
  const stone_game& g = in.game;
  json j = {{"board", in.board}, {"turn", side_name(g.turn)}};
  auto fam = [&](const std::vector<vmask>& f) {
    json a = json::array();
    for (vmask m : f) a.push_back(vertex_set(m, in.board));
    return a;
  };
  j["first_win_minimal"] = fam(g.first_win);
  j["second_win_minimal"] = fam(g.second_win);
  if (g.first) j["first_marks"] = vertex_set(g.first, in.board);
  if (g.second) j["second_marks"] = vertex_set(g.second, in.board);
  if (in.theta) {
    json pairs = json::array();
    for (int v = 0; v < g.n; ++v)
      if (v < in.theta->image[v]) pairs.push_back({in.board[v], in.board[in.theta->image[v]]});
    j["involution"] = pairs;
  }
  return j;
}

inline progression_game progression_game_from(const json& j) {
  progression_game pg;
  pg.reflect = field(j, "reflect").get<long long>();
  auto read = [&](const char* k) {
    std::vector<progression> out;
    if (!j.contains(k)) return out;
    for (const auto& p : j.at(k)) {
      if (!p.is_array() || p.size() != 2) bad("progressions are [start, step] pairs");
      out.push_back({p[0].get<long long>(), p[1].get<long long>()});
    }
    return out;
  };
  pg.first_win = read("first_progressions");
  pg.second_win = read("second_progressions");
  return pg;
}

// ---------------------------------------------------------------- hex

inline char hex_char(hex_color k) { return k == hex_color::red ? 'R' : k == hex_color::blue ? 'B' : '.'; }

inline hex_color hex_color_from(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "R" || s == "red" || s == "Red") return hex_color::red;
  if (s == "B" || s == "blue" || s == "Blue") return hex_color::blue;
  if (s == "." || s == "empty") return hex_color::empty;
  bad("unknown hex colour '" + s + "'");
}

inline json cell_json(hex_cell x) { return json::array({x.c, x.r}); }

inline hex_cell cell_from(const json& j) {
  if (!j.is_array() || j.size() < 2) bad("cells are [c, r] arrays");
  return {as_int(j[0], "cell column"), as_int(j[1], "cell row")};
}

// Finite boards: rows of 'R', 'B', '.' from row 0 upwards.
inline json to_json(const hex_board& b) {
  json rows = json::array();
  for (int r = 0; r < b.rows; ++r) {
    std::string s;
    for (int c = 0; c < b.cols; ++c) s += hex_char(b.at({c, r}));
    rows.push_back(s);
  }
  json j = {{"rows", b.rows}, {"cols", b.cols}, {"first", b.first == hex_color::red ? "red" : "blue"}, {"cells", rows}};
  if (!b.history.empty()) j["history"] = b.history;
  return j;
}

inline hex_board hex_board_from(const json& j) {
  hex_color first = j.contains("first") ? hex_color_from(j.at("first")) : hex_color::red;
  hex_board b = make_hex_board(as_int(field(j, "rows"), "rows"), as_int(field(j, "cols"), "cols"), first);
  const json& cells = field(j, "cells");
  if (!cells.is_array() || static_cast<int>(cells.size()) != b.rows) bad("'cells' needs one string per row");
  for (int r = 0; r < b.rows; ++r) {
    std::string s = cells[r].get<std::string>();
    if (static_cast<int>(s.size()) != b.cols) bad("row " + std::to_string(r) + " has the wrong width");
    for (int c = 0; c < b.cols; ++c) b.cells[b.index({c, r})] = hex_color_from(json(std::string(1, s[c])));
  }
  if (j.contains("history")) b.history = j.at("history").get<std::vector<int>>();
  check_parity(b);
  return b;
}

inline json to_json(const infinite_position& p) {
  json cells = json::array();
  for (auto [x, k] : p.cells) cells.push_back({x.c, x.r, std::string(1, hex_char(k))});
  json regions = json::array();
  for (const auto& g : p.regions) {
    json motif = json::array();
    for (auto [x, k] : g.motif) motif.push_back({x.c, x.r, std::string(1, hex_char(k))});
    regions.push_back({{"motif", motif}, {"displacement", cell_json(g.step)}});
  }
  return {{"cells", cells}, {"periodicRegions", regions}, {"turn", p.turn == hex_color::red ? "red" : "blue"}};
}

inline infinite_position infinite_position_from(const json& j) {
  infinite_position p;
  auto colored = [&](const json& e) {
    if (!e.is_array() || e.size() != 3) bad("coloured cells are [c, r, \"R|B\"]");
    hex_color k = hex_color_from(e[2]);
    if (k == hex_color::empty) bad("coloured cells need a colour");
    return std::pair{cell_from(e), k};
  };
  if (j.contains("cells"))
    for (const auto& e : j.at("cells")) {
      auto [x, k] = colored(e);
      if (!p.cells.emplace(x, k).second) bad("cell " + x.str() + " listed twice");
    }
  if (j.contains("periodicRegions"))
    for (const auto& g : j.at("periodicRegions")) {
      periodic_region r;
      for (const auto& e : field(g, "motif")) r.motif.push_back(colored(e));
      r.step = cell_from(field(g, "displacement"));
      p.regions.push_back(std::move(r));
    }
  if (j.contains("turn")) p.turn = hex_color_from(j.at("turn"));
  validate(p);
  return p;
}

inline periodic_path periodic_path_from(const json& j) {
  periodic_path p;
  p.color = hex_color_from(field(j, "color"));
  for (const auto& x : j.value("core", json::array())) p.core.push_back(cell_from(x));
  auto tail = [&](const char* k) {
    path_tail t;
    const json& e = field(j, k);
    t.start = cell_from(field(e, "start"));
    for (const auto& d : field(e, "motif")) t.motif.push_back(cell_from(d));
    return t;
  };
  p.pos = tail("pos");
  p.neg = tail("neg");
  validate(p);
  return p;
}

// ---------------------------------------------------------------- draughts

inline json sq_json(dsq s) { return json::array({s.u, s.v}); }

inline dsq sq_from(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("squares are [u, v] arrays");
  return {as_int(j[0], "u"), as_int(j[1], "v")};
}

inline dcolor dcolor_from(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "W" || s == "white" || s == "White") return dcolor::white;
  if (s == "B" || s == "black" || s == "Black") return dcolor::black;
  bad("unknown draughts colour '" + s + "'");
}

inline json to_json(const draughts_position& p, const std::optional<rule_set>& rs = std::nullopt) {
  json pieces = json::array();
  for (const auto& [s, pc] : p.pieces)
    pieces.push_back({s.u, s.v, pc.color == dcolor::white ? "W" : "B", pc.kind == dkind::king ? "K" : "P"});
  json ladders = json::array();
  for (const auto& l : p.ladders)
    ladders.push_back({{"start", sq_json(l.start)}, {"dir", sq_json(l.dir)}, {"color", l.color == dcolor::white ? "W" : "B"}});
  json j = {{"pieces", pieces}, {"ladders", ladders}, {"turn", p.turn == dcolor::white ? "white" : "black"}};
  if (p.black_king_row) j["blackKingRow"] = *p.black_king_row;
  if (p.white_king_row) j["whiteKingRow"] = *p.white_king_row;
  if (rs) j["rules"] = rs->name;
  return j;
}

struct draughts_input {
  draughts_position position;
  std::optional<rule_set> rules;
};

inline draughts_input draughts_from(const json& j) {
  draughts_input in;
  draughts_position& p = in.position;
  for (const auto& e : field(j, "pieces")) {
    if (!e.is_array() || e.size() != 4) bad("pieces are [u, v, \"W|B\", \"K|P\"]");
    dsq s{as_int(e[0], "u"), as_int(e[1], "v")};
    std::string kind = e[3].get<std::string>();
    if (kind != "K" && kind != "P") bad("piece kind must be \"K\" or \"P\"");
    dpiece pc{dcolor_from(e[2]), kind == "K" ? dkind::king : dkind::pawn};
    if (!p.pieces.emplace(s, pc).second) bad("square " + s.str() + " listed twice");
  }
  if (j.contains("ladders"))
    for (const auto& l : j.at("ladders"))
      p.ladders.push_back({sq_from(field(l, "start")), sq_from(field(l, "dir")), dcolor_from(field(l, "color"))});
  if (j.contains("turn")) p.turn = dcolor_from(j.at("turn"));
  if (j.contains("blackKingRow")) p.black_king_row = as_int(j.at("blackKingRow"), "blackKingRow");
  if (j.contains("whiteKingRow")) p.white_king_row = as_int(j.at("whiteKingRow"), "whiteKingRow");
  if (j.contains("rules")) in.rules = rule_set_by_name(j.at("rules").get<std::string>());
  validate(p);
  return in;
}

inline json to_json(const dmove& m) {
  json path = json::array();
  for (dsq s : m.path) path.push_back(sq_json(s));
  json cap = json::array();
  for (dsq s : m.captured) cap.push_back(sq_json(s));
  json j = {{"from", sq_json(m.from)}, {"path", path}, {"captured", cap}, {"notation", m.str()}};
  if (m.to_infinity) j["toInfinity"] = true;
  return j;
}

inline json to_json(const king_tree_report& r) {
  auto squares = [](const std::vector<dsq>& v) {
    json a = json::array();
    for (dsq s : v) a.push_back(sq_json(s));
    return a;
  };
  json j = {{"ok", r.ok()},
            {"rootOk", r.root_ok},
            {"capturable", r.capturable},
            {"uniquePaths", r.unique_paths},
            {"degreeOk", r.degree_ok},
            {"nodes", r.nodes},
            {"treeKings", r.tree_kings},
            {"leafKings", r.leaf_kings},
            {"uncaptured", squares(r.uncaptured)},
            {"reachedTwice", squares(r.reached_twice)},
            {"overloaded", squares(r.overloaded)}};
  j["root"] = r.root ? sq_json(*r.root) : json(nullptr);
  return j;
}

}  // namespace og::io
