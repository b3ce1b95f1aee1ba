#pragma once

// Text and SVG pictures of draughts and Hex positions.

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "og/draughts.hpp"
#include "og/hex.hpp"

namespace og::render {

// ---------------------------------------------------------------- draughts

namespace detail {

// Chessboard coordinates of (u,v): file x = u - v, rank y = u + v.
inline int file_of(dsq s) { return s.u - s.v; }
inline int rank_of(dsq s) { return s.u + s.v; }

inline const char* glyph(dpiece pc) {
  if (pc.color == dcolor::white) return pc.kind == dkind::king ? "♔" : "♙";
  return pc.kind == dkind::king ? "♚" : "♟";
}

struct board_frame {
  int x0, x1, y0, y1;
};

// Shows every explicit piece and the first `ladder_shown` rungs of each
// ladder, with a one-square margin.
inline board_frame frame_of(const draughts_position& p, int ladder_shown) {
  bool any = false;
  board_frame f{0, 0, 0, 0};
  auto grow = [&](dsq s) {
    int x = file_of(s), y = rank_of(s);
    if (!any) f = {x, x, y, y}, any = true;
    f.x0 = std::min(f.x0, x), f.x1 = std::max(f.x1, x);
    f.y0 = std::min(f.y0, y), f.y1 = std::max(f.y1, y);
  };
  for (const auto& [s, pc] : p.pieces) grow(s);
  for (const auto& l : p.ladders)
    for (int k = 0; k < ladder_shown; ++k) grow(l.at(k));
  if (!any) grow({0, 0});
  f.x0 -= 1, f.x1 += 1, f.y0 -= 1, f.y1 += 1;
  return f;
}

inline std::optional<dpiece> shown_at(const draughts_position& p, dsq s, int ladder_shown) {
  if (auto it = p.pieces.find(s); it != p.pieces.end()) return it->second;
  for (const auto& l : p.ladders)
    if (auto k = l.index_of(s); k && *k < static_cast<std::size_t>(ladder_shown)) return dpiece{l.color, dkind::king};
  return std::nullopt;
}

}  // namespace detail

// North at the top; dark squares are the playing squares, shown as '·'.
inline std::string ascii(const draughts_position& p, int ladder_shown = 4) {
  auto f = detail::frame_of(p, ladder_shown);
  std::ostringstream out;
  for (int y = f.y1; y >= f.y0; --y) {
    for (int x = f.x0; x <= f.x1; ++x) {
      if ((x + y) % 2 != 0) {
        out << "  ";
        continue;
      }
      dsq s{(x + y) / 2, (y - x) / 2};
      auto pc = detail::shown_at(p, s, ladder_shown);
      out << (pc ? detail::glyph(*pc) : "·") << ' ';
    }
    out << '\n';
  }
  for (const auto& l : p.ladders)
    out << "ladder " << l.start.str() << " towards " << compass(l.dir) << " continues for ever\n";
  out << dcolor_name(p.turn) << " to move\n";
  return out.str();
}

inline std::string svg(const draughts_position& p, int ladder_shown = 4) {
  auto f = detail::frame_of(p, ladder_shown);
  const int cell = 40;
  int w = (f.x1 - f.x0 + 1) * cell, h = (f.y1 - f.y0 + 1) * cell;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  for (int y = f.y1; y >= f.y0; --y)
    for (int x = f.x0; x <= f.x1; ++x) {
      int px = (x - f.x0) * cell, py = (f.y1 - y) * cell;
      bool dark = (x + y) % 2 == 0;
      out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << (dark ? "#8b6f47" : "#f0e2c0") << "\"/>\n";
      if (!dark) continue;
      dsq s{(x + y) / 2, (y - x) / 2};
      auto pc = detail::shown_at(p, s, ladder_shown);
      if (!pc) continue;
      bool white = pc->color == dcolor::white;
      out << "<circle cx=\"" << px + cell / 2 << "\" cy=\"" << py + cell / 2 << "\" r=\"" << cell * 2 / 5
          << "\" fill=\"" << (white ? "#fafafa" : "#202020") << "\" stroke=\"#000\"/>\n";
      if (pc->kind == dkind::king)
        out << "<text x=\"" << px + cell / 2 << "\" y=\"" << py + cell / 2 + 6
            << "\" text-anchor=\"middle\" font-size=\"18\" fill=\"" << (white ? "#000" : "#fff") << "\">K</text>\n";
    }
  for (const auto& l : p.ladders) {
    dsq e = l.at(ladder_shown - 1);
    int px = (detail::file_of(e) - f.x0) * cell + cell / 2, py = (f.y1 - detail::rank_of(e)) * cell + cell / 2;
    out << "<text x=\"" << px << "\" y=\"" << py << "\" font-size=\"14\" fill=\"#c00\">…</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------- hex

// Rows drawn top to bottom with a half-cell shift per row, so the six axial
// neighbours of a cell touch it.
inline std::string ascii(const hex_board& b) {
  std::ostringstream out;
  for (int r = b.rows - 1; r >= 0; --r) {
    out << std::string(static_cast<std::size_t>(r), ' ');
    for (int c = 0; c < b.cols; ++c) {
      hex_color k = b.at({c, r});
      out << (k == hex_color::red ? 'R' : k == hex_color::blue ? 'B' : '.') << ' ';
    }
    out << '\n';
  }
  return out.str();
}

inline std::string ascii(const infinite_position& p, int margin = 2) {
  int c0 = 0, c1 = 0, r0 = 0, r1 = 0;
  bool any = false;
  auto grow = [&](hex_cell x) {
    if (!any) c0 = c1 = x.c, r0 = r1 = x.r, any = true;
    c0 = std::min(c0, x.c), c1 = std::max(c1, x.c), r0 = std::min(r0, x.r), r1 = std::max(r1, x.r);
  };
  grow({0, 0});
  for (auto [x, k] : p.cells) grow(x);
  for (const auto& g : p.regions)
    for (auto [m, k] : g.motif) grow(m);
  c0 -= margin, c1 += margin, r0 -= margin, r1 += margin;
  std::ostringstream out;
  for (int r = r1; r >= r0; --r) {
    out << std::string(static_cast<std::size_t>(r - r0), ' ');
    for (int c = c0; c <= c1; ++c) {
      hex_color k = p.at({c, r});
      bool periodic = !p.cells.count({c, r}) && k != hex_color::empty;
      char ch = k == hex_color::red ? 'R' : k == hex_color::blue ? 'B' : '.';
      out << static_cast<char>(periodic ? std::tolower(ch) : ch) << ' ';
    }
    out << '\n';
  }
  out << "cells " << c0 << ".." << c1 << " x " << r0 << ".." << r1
      << "; lower case marks periodic regions\n";
  return out.str();
}

namespace detail {

inline std::string hexagon(double cx, double cy, double s, const char* fill, const char* stroke, double sw) {
  std::ostringstream out;
  out << "<polygon points=\"";
  for (int i = 0; i < 6; ++i) {
    double a = (60.0 * i + 30.0) * 3.14159265358979 / 180.0;
    out << cx + s * std::cos(a) << ',' << cy + s * std::sin(a) << (i < 5 ? " " : "");
  }
  out << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << sw << "\"/>\n";
  return out.str();
}

}  // namespace detail

// `highlight` cells (a winning chain, say) get a heavy outline.
inline std::string svg(const hex_board& b, const std::vector<hex_cell>& highlight = {}) {
  const double s = 20, dx = s * std::sqrt(3.0), dy = s * 1.5;
  std::set<hex_cell> hi(highlight.begin(), highlight.end());
  double w = (b.cols + b.rows * 0.5 + 1) * dx, h = (b.rows + 1) * dy + s;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << std::lround(w) << "\" height=\""
      << std::lround(h) << "\">\n";
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      hex_color k = b.at({c, r});
      double cx = dx * (c + 1 + 0.5 * r), cy = s + dy * (b.rows - 1 - r) + s * 0.5;
      const char* fill = k == hex_color::red ? "#d33" : k == hex_color::blue ? "#36c" : "#eee";
      bool on = hi.count({c, r}) > 0;
      out << detail::hexagon(cx, cy, s, fill, on ? "#000" : "#777", on ? 3.0 : 1.0);
    }
  out << "</svg>\n";
  return out.str();
}

inline std::string svg(const infinite_position& p, int margin = 2) {
  int c0 = 0, c1 = 0, r0 = 0, r1 = 0;
  for (auto [x, k] : p.cells) c0 = std::min(c0, x.c), c1 = std::max(c1, x.c), r0 = std::min(r0, x.r), r1 = std::max(r1, x.r);
  for (const auto& g : p.regions)
    for (auto [m, k] : g.motif) c0 = std::min(c0, m.c), c1 = std::max(c1, m.c), r0 = std::min(r0, m.r), r1 = std::max(r1, m.r);
  c0 -= margin, c1 += margin, r0 -= margin, r1 += margin;
  hex_board view = make_hex_board(1, 1);
  view.rows = r1 - r0 + 1;
  view.cols = c1 - c0 + 1;
  view.cells.assign(static_cast<std::size_t>(view.rows * view.cols), hex_color::empty);
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) view.cells[view.index({c - c0, r - r0})] = p.at({c, r});
  return svg(view);
}

}  // namespace og::render
