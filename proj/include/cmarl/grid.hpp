#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace cmarl {

struct GridPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

inline int manhattan(GridPos a, GridPos b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

inline int chebyshev(GridPos a, GridPos b) {
  int dr = std::abs(a.row - b.row);
  int dc = std::abs(a.col - b.col);
  return dr > dc ? dr : dc;
}

// Two cells are Moore-adjacent when they touch but do not coincide.
inline bool moore_adjacent(GridPos a, GridPos b) { return chebyshev(a, b) == 1; }

// Encoding is stable: 0..4 in this order.
enum class Action : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3, Stay = 4 };

inline constexpr int kActionCount = 5;

inline GridPos apply_action(GridPos p, Action a) {
  switch (a) {
    case Action::Up: return {p.row - 1, p.col};
    case Action::Down: return {p.row + 1, p.col};
    case Action::Left: return {p.row, p.col - 1};
    case Action::Right: return {p.row, p.col + 1};
    case Action::Stay: return p;
  }
  return p;
}

const char* action_name(Action a);

// Cell contents are single-byte codes so observations stay compact and
// trivially serializable:
//   0 = OutOfBounds, 1 = Empty, 2 = Agent, 3 = Prey, 3+l = Tree of level l.
class CellContent {
 public:
  constexpr CellContent() : code_(1) {}
  static constexpr CellContent out_of_bounds() { return CellContent(0); }
  static constexpr CellContent empty() { return CellContent(1); }
  static constexpr CellContent agent() { return CellContent(2); }
  static constexpr CellContent prey() { return CellContent(3); }
  static CellContent tree(int level);
  static constexpr CellContent from_code(std::uint8_t code) { return CellContent(code); }

  constexpr std::uint8_t code() const { return code_; }
  constexpr bool is_tree() const { return code_ >= 4; }
  constexpr int tree_level() const { return is_tree() ? code_ - 3 : 0; }

  friend bool operator==(const CellContent&, const CellContent&) = default;

 private:
  constexpr explicit CellContent(std::uint8_t code) : code_(code) {}
  std::uint8_t code_;
};

// An agent's local view: the (2k+1)x(2k+1) Moore neighborhood around its
// own cell (row-major, the center cell is always Agent) plus its absolute
// position.
struct Observation {
  GridPos center;
  int mask_radius = 1;
  std::vector<std::uint8_t> mask;

  int side() const { return 2 * mask_radius + 1; }

  CellContent at(int dr, int dc) const {
    int k = mask_radius;
    return CellContent::from_code(mask[(dr + k) * side() + (dc + k)]);
  }

  bool contains(CellContent c) const;
  int count(CellContent c) const;
  bool contains_tree() const;
  // Lowest level among visible trees; 0 when none are visible.
  int min_visible_tree_level() const;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Canonical byte encoding of an observation. Injective over distinct
// (center, mask) contents and stable across runs and platforms; grid
// dimensions are limited to 255 so positions fit one byte each.
using StateKey = std::string;

StateKey state_key(const Observation& obs);

std::string key_to_hex(const StateKey& key);
StateKey key_from_hex(const std::string& hex);

}  // namespace cmarl
