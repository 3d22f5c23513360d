#pragma once

// Projective-plane primitives: homogeneous points and lines, unimodular
// matrices, cross ratios, 3x3 spectra and convex-position tests.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "goldman/error.hpp"

namespace goldman {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

// Point of RP^2. The stored representative has its largest-magnitude
// coordinate equal to +1.
class ProjectivePoint {
 public:
  ProjectivePoint() : v_(0.0, 0.0, 1.0) {}
  explicit ProjectivePoint(const Vec3& v);
  ProjectivePoint(double x, double y, double z) : ProjectivePoint(Vec3(x, y, z)) {}

  const Vec3& coords() const { return v_; }

  // All 2x2 minors of [p | q] vanish within tol.
  bool approx_equal(const ProjectivePoint& q, double tol = 1e-9) const;

 private:
  Vec3 v_;
};

// Line of RP^2 as a dual vector, normalized like ProjectivePoint.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(const Vec3& coeffs);

  static ProjectiveLine through(const ProjectivePoint& p, const ProjectivePoint& q);

  const Vec3& coeffs() const { return l_; }
  bool incident(const ProjectivePoint& p, double tol = 1e-9) const;
  ProjectivePoint meet(const ProjectiveLine& other) const;

 private:
  Vec3 l_;
};

class UnimodularMatrix {
 public:
  UnimodularMatrix() : m_(Mat3::Identity()) {}

  // Rescales by the real cube root of the determinant.
  static UnimodularMatrix from_matrix(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  UnimodularMatrix inverse() const;
  ProjectivePoint apply(const ProjectivePoint& p) const { return ProjectivePoint(m_ * p.coords()); }

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    UnimodularMatrix r;
    r.m_ = x.m_ * y.m_;
    return r;
  }

 private:
  Mat3 m_;
};

// Cross ratio result; infinity is a tag, never a floating special.
class CrossRatioValue {
 public:
  static CrossRatioValue finite(double v) { return CrossRatioValue(false, v); }
  static CrossRatioValue infinity() { return CrossRatioValue(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  // Throws Degenerate on the infinite value.
  double value() const;

 private:
  CrossRatioValue(bool inf, double v) : infinite_(inf), v_(v) {}
  bool infinite_;
  double v_;
};

// (a1,a2,a3,a4)_o = (o^a1^a3)(o^a4^a2) / ((o^a1^a2)(o^a4^a3)).
CrossRatioValue cross_ratio_pencil(const ProjectivePoint& o, const ProjectivePoint& a1,
                                   const ProjectivePoint& a2, const ProjectivePoint& a3,
                                   const ProjectivePoint& a4);

// (a1-a3)(a2-a4) / ((a1-a2)(a3-a4)) with signed positions along the common
// line; for points in order along the line this is the unsigned distance form.
CrossRatioValue cross_ratio_collinear(const ProjectivePoint& a1, const ProjectivePoint& a2,
                                      const ProjectivePoint& a3, const ProjectivePoint& a4);

struct SpectralData {
  std::array<double, 3> eigenvalues;  // ascending
  std::array<ProjectivePoint, 3> eigenvectors;
};

// Ascending real roots of x^3 - t x^2 + sigma x - delta. The extreme roots
// are computed from the polynomial and its reciprocal so that both keep full
// relative precision when the spread is large.
std::array<double, 3> real_cubic_roots(double t, double sigma, double delta);

SpectralData spectral(const UnimodularMatrix& m);

// Eigenvalues of a determinant-one matrix from tr(M) and tr(M^-1).
std::array<double, 3> spectrum_from_traces(double trace, double trace_inverse);

// Eigenvector for a known eigenvalue, from the best-conditioned cross
// product of two rows of M - lambda I.
Vec3 eigenvector(const Mat3& m, double lambda);

bool is_positive_hyperbolic(const UnimodularMatrix& m);

// True iff some affine chart shows the points as the vertices of a strictly
// convex polygon in the given cyclic order.
bool convex_position(const std::vector<ProjectivePoint>& points);

}  // namespace goldman
