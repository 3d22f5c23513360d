#pragma once

// Intersections of a closed geodesic with the lifted ideal triangulation:
// crossing points, looping segments and their self-intersection counts.

#include <string>
#include <vector>

#include "goldman/domain.hpp"

namespace goldman {

// Base edges of the triangle (a, b, c); the second base triangle is (b, c, d).
enum class EdgeBase : std::uint8_t { AB = 0, BC = 1, CA = 2 };

// The edge g * base. Lifted edges have trivial stabilizer, so the reduced g
// is unique.
struct EdgeId {
  Word g;
  EdgeBase base;
  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

// Ideal vertex g * {a, b, c}[type], g the shortlex-least coset element.
struct VertexId {
  int type;
  Word rep;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

std::array<VertexId, 2> edge_vertices(const EdgeId& e);

struct SelfCrossing {
  double param;  // position along the lifted segment, 0 at its start
  int power;     // the crossing lies on X^power of the lift
  Vec3 point;    // in the frame of the common vertex
};

struct LoopingSegment {
  std::size_t first;   // edge index of the opening crossing point
  int f_count;         // |F|: edges met strictly inside the segment
  int self_intersections;
  VertexId vertex;     // common endpoint of the edges met
  Mat3 generator;      // X, the stabilizer generator in the frame of vertex
  std::vector<SelfCrossing> crossings;  // sorted by param
};

struct GeodesicDecomposition {
  std::string word;
  int m = 0;  // crossing points per period
  std::vector<std::size_t> crossing_indices;
  std::vector<LoopingSegment> looping;
  std::vector<EdgeId> edges;  // one period, in the direction of the flow
  double period_length = 0.0;
  int depth = 0;

  int hash_sum() const;
};

inline constexpr int kDefaultTraceDepth = 8;

// Traces one period of the axis of w through triangles g * Delta with
// |g| <= depth. Throws NotTypical, DepthInsufficient.
GeodesicDecomposition decompose_geodesic(const HolonomyTriple& h, const Hexagon& hex, const CyclicWord& w,
                                         int depth = kDefaultTraceDepth);

// Doubles the depth after each DepthInsufficient, up to max_depth.
GeodesicDecomposition decompose_geodesic_retry(const HolonomyTriple& h, const Hexagon& hex, const CyclicWord& w,
                                               int depth = kDefaultTraceDepth, int max_depth = 64);

}  // namespace goldman
