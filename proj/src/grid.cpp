#include "cmarl/grid.hpp"

#include <stdexcept>

namespace cmarl {

const char* action_name(Action a) {
  switch (a) {
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Stay: return "stay";
  }
  return "?";
}

CellContent CellContent::tree(int level) {
  if (level < 1 || level > 251) throw std::out_of_range("tree level out of range");
  return CellContent(static_cast<std::uint8_t>(3 + level));
}

bool Observation::contains(CellContent c) const {
  for (std::uint8_t code : mask)
    if (code == c.code()) return true;
  return false;
}

int Observation::count(CellContent c) const {
  int n = 0;
  for (std::uint8_t code : mask)
    if (code == c.code()) ++n;
  return n;
}

bool Observation::contains_tree() const {
  for (std::uint8_t code : mask)
    if (CellContent::from_code(code).is_tree()) return true;
  return false;
}

int Observation::min_visible_tree_level() const {
  int best = 0;
  for (std::uint8_t code : mask) {
    CellContent c = CellContent::from_code(code);
    if (c.is_tree() && (best == 0 || c.tree_level() < best)) best = c.tree_level();
  }
  return best;
}

StateKey state_key(const Observation& obs) {
  StateKey key;
  key.reserve(3 + obs.mask.size());
  key.push_back(static_cast<char>(obs.mask_radius));
  key.push_back(static_cast<char>(obs.center.row));
  key.push_back(static_cast<char>(obs.center.col));
  key.append(reinterpret_cast<const char*>(obs.mask.data()), obs.mask.size());
  return key;
}

std::string key_to_hex(const StateKey& key) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char b : key) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

StateKey key_from_hex(const std::string& hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit in state key");
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex state key");
  StateKey out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  return out;
}

}  // namespace cmarl
