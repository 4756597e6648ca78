#pragma once

#include <memory>
#include <string>
#include <vector>

#include "edr/graph_core.hpp"

namespace edr {

enum class Side { A, B, X };

// A separation read off a truncation: the separator X, and for every other
// vertex whether it lies beyond X (B) or on the root side (A). The B side is
// the union of the components of truncation - X that reach the truncation
// boundary; vertices outside the truncation count as B. Edges with both ends
// in X belong to B.
class Separation {
 public:
  Separation(std::vector<VertexId> separator, std::shared_ptr<const FiniteGraph> truncation);

  const std::vector<VertexId>& separator() const { return separator_; }
  std::size_t order() const { return separator_.size(); }
  int horizon() const { return truncation_->radius(); }
  const FiniteGraph& truncation() const { return *truncation_; }
  std::shared_ptr<const FiniteGraph> truncation_ptr() const { return truncation_; }

  Side side_of(const VertexId& v) const;
  Side edge_side(const VertexId& a, const VertexId& b) const;
  // Same, by vertex index in the truncation.
  Side side_at(int i) const { return static_cast<Side>(sides_->by_index[static_cast<std::size_t>(i)]); }
  Side edge_side_at(int a, int b) const { return side_at(a) == Side::A || side_at(b) == Side::A ? Side::A : Side::B; }
  bool in_a(const VertexId& v) const { return side_of(v) != Side::B; }  // vertex of the subgraph A
  bool in_b(const VertexId& v) const { return side_of(v) != Side::A; }
  bool in_x(const VertexId& v) const { return sides_->x.count(v) != 0; }
  const VertexSet& a_interior() const { return sides_->a; }

 private:
  std::vector<VertexId> separator_;
  std::shared_ptr<const FiniteGraph> truncation_;
  // Immutable once built, so copies of a separation share it.
  struct Sides {
    VertexSet x;
    VertexSet a;
    std::vector<char> by_index;
  };
  std::shared_ptr<const Sides> sides_;
};

struct CapturingSequence {
  int end_id = 0;
  std::size_t k = 0;
  std::vector<Separation> seps;
};

// Separations following the min-cut recipe: X_i is a minimum vertex cut
// between the region consumed so far (witness starts, first i BFS vertices,
// earlier separators' connecting trees and A-sides) and the truncation
// boundary. Throws NeedsLargerHorizon when count separations do not fit.
CapturingSequence capture_end(const LazyGraph& g, int end_id, std::size_t count, int horizon);

// As many separations as the horizon supports (possibly none).
CapturingSequence capture_end_window(const LazyGraph& g, int end_id, int horizon, std::size_t limit = 1'000'000);

struct BulletResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct CaptureReport {
  std::vector<BulletResult> bullets;
  bool ok() const;
  std::string first_failure() const;
};

inline constexpr const char* kBulletDisjoint = "disjoint-regions";
inline constexpr const char* kBulletConnected = "connected-regions";
inline constexpr const char* kBulletExhaustion = "exhaustion";
inline constexpr const char* kBulletOrder = "order";
inline constexpr const char* kBulletWitness = "witness-tail";

// Re-derives every side from the separators on truncate(g, horizon) and checks
// the five capture conditions independently of how seq was built.
CaptureReport verify_capture(const CapturingSequence& seq, const LazyGraph& g, int horizon);

CapturingSequence subsequence(const CapturingSequence& seq, const std::vector<std::size_t>& indices);

// Vertices and edges of A_{i+1} ∩ B_i on the truncation (the region between
// two separations).
FiniteGraph region_between(const Separation& earlier, const Separation& later);

}  // namespace edr
