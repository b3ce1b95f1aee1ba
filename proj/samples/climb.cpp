// Builds trees of a few ranks, plays the climbing game on each, and compiles
// the rank-2 tree into a draughts position.

#include <iostream>

#include "og/draughts.hpp"
#include "og/gamecore.hpp"
#include "og/render.hpp"

int main() {
  for (const char* r : {"0", "3", "w", "w+2", "w*2", "w^2"}) {
    auto t = og::build_tree_of_rank(og::parse_ordinal(r));
    auto v = og::game_value_of(og::climbing_game(t));
    std::cout << "rank " << r << ": climbing value " << v.str() << "\n";
  }
  auto kt = og::build_king_tree(og::build_tree_of_rank(2), og::rs_a());
  std::cout << "\n" << og::render::ascii(kt.position);
  std::cout << "minimax value " << og::minimax_value(kt.position, og::rs_a()).str() << "\n";
}
