#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "edr/graph_core.hpp"
#include "edr/separations.hpp"

namespace edr {

// Alternating word v1 x1 v2 ... x(n-1) vn. Letters are 'l', 'm' or 'r'.
struct Word {
  std::vector<VertexId> vertices;
  std::vector<char> letters;  // vertices.size() - 1 entries, none when empty

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  // "ε" for the empty word, else space separated tokens.
  std::string text() const;
  static Word parse(const std::string& text);
  // p followed by the letter and q; either side may be empty.
  static Word join(const Word& p, char letter, const Word& q);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
};

using ShapeWord = Word;
using LinkWord = Word;

struct TwoShape {
  ShapeWord first;
  ShapeWord second;
  std::string text() const { return "(" + first.text() + ", " + second.text() + ")"; }
  friend bool operator==(const TwoShape&, const TwoShape&) = default;
  friend std::strong_ordering operator<=>(const TwoShape&, const TwoShape&) = default;
};

struct TwoLink {
  LinkWord first;
  LinkWord second;
  std::string text() const { return "(" + first.text() + ", " + second.text() + ")"; }
  friend bool operator==(const TwoLink&, const TwoLink&) = default;
  friend std::strong_ordering operator<=>(const TwoLink&, const TwoLink&) = default;
};

// Crossings of the separator, in ray order. The prefix must end strictly on
// the B side.
ShapeWord induce_shape(const Path& prefix, const Separation& sep);
// Crossings of two nested separators with the region letter of each segment.
LinkWord induce_link(const Path& prefix, const Separation& first, const Separation& second);

namespace bullet {
inline constexpr const char* kNonempty = "nonempty-shapes";
inline constexpr const char* kVertexSet = "vertex-set";
inline constexpr const char* kOrder = "order";
inline constexpr const char* kEndpoints = "endpoints";
inline constexpr const char* kLetters = "letters";
inline constexpr const char* kLeftWords = "l-subwords";
inline constexpr const char* kRightWords = "r-subwords";
inline constexpr const char* kDistinct = "distinct";
}  // namespace bullet

struct LinkCheck {
  std::vector<std::string> violations;  // bullet names, in checking order
  bool ok() const { return violations.empty(); }
  bool violates(const std::string& name) const;
};

LinkCheck is_allowed_link(const LinkWord& link, const ShapeWord& from, const ShapeWord& to);

inline constexpr std::size_t kShapeVertexBound = 6;

// By length, then vertex sequence, then letters (l before r).
std::vector<ShapeWord> enumerate_shapes(const std::vector<VertexId>& separator, std::size_t bound = kShapeVertexBound);
// Ordered pairs of shapes; vertex-disjoint pairs only unless all_pairs.
std::vector<TwoShape> enumerate_two_shapes(const std::vector<VertexId>& separator, bool all_pairs = false,
                                           std::size_t bound = kShapeVertexBound);
std::vector<LinkWord> enumerate_allowed_links(const ShapeWord& from, const ShapeWord& to);

// Counts over a separator of size k, memoized.
std::size_t two_shape_count(std::size_t k);       // vertex-disjoint 2-shapes
std::size_t shape_pair_count(std::size_t k);      // all ordered pairs of shapes
std::size_t link_bound(std::size_t k);            // most allowed links between two nonempty shapes
std::size_t two_shape_link_bound(std::size_t k);  // most allowed links between two 2-shapes

}  // namespace edr
