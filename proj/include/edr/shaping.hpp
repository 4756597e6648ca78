#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace edr {

// A partial colouring of window indices together with a colouring of index
// pairs. Colours are small integers.
struct Shaping {
  std::vector<std::optional<int>> colour;     // per window index; empty where undefined
  std::vector<std::vector<int>> pair_colour;  // [j][j2], read for j < j2

  std::size_t window() const { return colour.size(); }
  std::optional<int> at(std::size_t j) const { return colour[j]; }
  int between(std::size_t j, std::size_t j2) const { return pair_colour[j][j2]; }
};

// levels[i] holds i + 1 shapings.
using ShapingLevels = std::vector<std::vector<Shaping>>;

struct ShapingSelection {
  std::vector<std::size_t> levels;                // strictly increasing, 0-based
  std::vector<std::size_t> indices;               // strictly increasing window indices
  std::vector<std::vector<std::size_t>> members;  // positions in the chosen level, at least n + 1 for step n
};

// count steps with: every member of steps n-1 and n agrees on a defined colour
// at indices[n]; every member of step n agrees on the pair colour of
// (indices[n], indices[n+1]). The lexicographically least level and index
// sequence is returned, each step keeping every member that fits. Throws
// NeedsLargerHorizon when the window holds no such sequence, with the longest
// achievable length, and when some shaping has no defined colour anywhere.
ShapingSelection shaping_select(const ShapingLevels& levels, std::size_t count);

// Longest count shaping_select can meet on this window.
std::size_t longest_shaping_selection(const ShapingLevels& levels);

// Recomputes both agreement conditions and the size and ordering rules.
std::vector<std::string> check_shaping_selection(const ShapingLevels& levels, const ShapingSelection& sel);

}  // namespace edr
