#pragma once

// Inner approximations of the developing domain by orbit hulls, the Hilbert
// metric on convex polygons, and axes of holonomy words.

#include <cstdint>
#include <utility>
#include <vector>

#include "goldman/words.hpp"

namespace goldman {

using Vec2 = Eigen::Vector2d;

// Affine chart {phi = 1} with orthonormal coordinates on ker(phi).
class AffineChart {
 public:
  explicit AffineChart(const Vec3& functional);

  const Vec3& functional() const { return phi_; }
  // Representative with phi = 1; OutsideDomain if phi vanishes.
  Vec3 normalize(const Vec3& x) const;
  Vec2 project(const Vec3& x) const;
  Vec2 project(const ProjectivePoint& p) const { return project(p.coords()); }
  Vec3 lift(const Vec2& y) const;

 private:
  Vec3 phi_, origin_, u1_, u2_;
};

// Functional positive on the domain of the structure: the domain lies in the
// triangle spanned by the fixed points of A, on the side of the hexagon.
Vec3 cone_functional(const HolonomyTriple& h, const Hexagon& hex);

// Convex polygon in an affine chart, vertices counter-clockwise.
class ConvexDomain {
 public:
  // Convex hull of the given points; collinear boundary points are dropped.
  ConvexDomain(const AffineChart& chart, const std::vector<Vec3>& points);

  const AffineChart& chart() const { return chart_; }
  const std::vector<Vec2>& vertices() const { return v_; }
  std::vector<ProjectivePoint> projective_vertices() const;
  double area() const;
  double diameter() const { return diameter_; }

  // Closed containment with a distance tolerance relative to the diameter.
  bool contains(const Vec2& y, double rel_tol = 1e-10) const;
  bool contains(const ProjectivePoint& p, double rel_tol = 1e-10) const { return contains(chart_.project(p), rel_tol); }

  // Parameters [t0, t1] of the line y + t v inside the closed polygon.
  // A line along an edge yields that edge. OutsideDomain if y is not in it.
  std::pair<double, double> chord(const Vec2& y, const Vec2& v) const;

  // Exit parameter of the ray y + t v, t > 0, for y in the interior.
  // Logarithmic in the vertex count.
  double ray_exit(const Vec2& y, const Vec2& v) const;

 private:
  AffineChart chart_;
  std::vector<Vec2> v_;
  double diameter_ = 0.0;
};

class OrbitHull : public ConvexDomain {
 public:
  OrbitHull(ConvexDomain dom, int depth) : ConvexDomain(std::move(dom)), depth_(depth) {}
  int depth() const { return depth_; }

 private:
  int depth_;
};

inline constexpr int kDefaultMaxHullDepth = 8;

// Hull of the orbit of the hexagon vertices under words of length <= depth
// together with both fixed points of every such nonempty word.
OrbitHull orbit_hull(const HolonomyTriple& h, const Hexagon& hex, int depth,
                     int max_depth = kDefaultMaxHullDepth);  // throws DepthTooLarge

// Klein model: regular n-gon inscribed in the unit circle of the chart z = 1.
ConvexDomain klein_disk(int n);

// Half the log of the boundary cross ratio along the chord through p and q.
// Points on a boundary edge use that edge as the chord.
double hilbert_distance(const ConvexDomain& dom, const ProjectivePoint& p, const ProjectivePoint& q);

// |v|/2 (1/|x - x+| + 1/|x - x-|) for a chart tangent vector v at x.
double finsler_norm(const ConvexDomain& dom, const ProjectivePoint& x, const Vec2& v);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Monte Carlo integral over a convex chart polygon of pi / mu(B_1(x)), where
// the Lebesgue measure of the unit Finsler ball is integrated in polar form
// over `angles` directions.
Estimate busemann_area(const ConvexDomain& dom, const std::vector<Vec2>& region, int samples,
                       std::uint64_t seed, int angles = 128);

struct Axis {
  ProjectivePoint attracting, repelling;
};

// Fixed points of a positive hyperbolic matrix: top eigenvectors of m and m^-1.
Axis axis_of(const Mat3& m, const Mat3& m_inverse);
Axis axis(const HolonomyTriple& h, const CyclicWord& w);  // throws NotHyperbolic

struct TranslationCheck {
  double hd_measured = 0.0;
  double eig_length = 0.0;
};

// Hilbert displacement of an axis point versus log(lambda_max/lambda_min).
// The axis point is chosen so that it and its image sit symmetrically
// between the fixed points. Both fixed points must lie in the domain.
TranslationCheck translation_check(const ConvexDomain& dom, const Mat3& m, const Mat3& m_inverse);
TranslationCheck translation_check(const HolonomyTriple& h, const ConvexDomain& dom, const CyclicWord& w);

}  // namespace goldman
