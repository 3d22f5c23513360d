#pragma once

// Goldman parameters of a convex projective pair of pants: hexagon,
// holonomy, boundary lengths and the tabulated cross ratios.

#include <array>
#include <string>
#include <string_view>

#include "goldman/core.hpp"

namespace goldman {

// Boundary invariant (lambda, tau) in the cell 0 < lambda < 1,
// 2/sqrt(lambda) < tau < 1/lambda^2 + lambda.
class BoundaryInvariant {
 public:
  BoundaryInvariant(double lambda, double tau);  // throws InvalidParameters

  double lambda() const { return lambda_; }
  double tau() const { return tau_; }

  // lambda, (tau - sqrt(tau^2 - 4/lambda))/2, (tau + sqrt(tau^2 - 4/lambda))/2
  std::array<double, 3> eigenvalues() const;

 private:
  double lambda_;
  double tau_;
};

// log((tau + sqrt(tau^2 - 4/lambda)) / (2 lambda)) = log(lambda_max / lambda_min).
double boundary_length(const BoundaryInvariant& b);

using BoundaryTriple = std::array<BoundaryInvariant, 3>;  // order A, B, C

enum class InternalChart { ST, SR };

class PantsParams {
 public:
  static PantsParams from_st(const BoundaryTriple& R, double s, double t);
  static PantsParams from_sr(const BoundaryTriple& R, double s, double r);

  const BoundaryTriple& R() const { return R_; }
  InternalChart chart() const { return chart_; }
  double s() const { return s_; }
  // Second stored coordinate: t in the ST chart, r in the SR chart.
  double second() const { return second_; }
  // Either internal coordinate, converting if needed.
  double t() const;
  double r() const;

 private:
  PantsParams(const BoundaryTriple& R, double s, double second, InternalChart chart);
  BoundaryTriple R_;
  double s_;
  double second_;
  InternalChart chart_;
};

// rho_1 = 1 + sqrt(lC lA / lB) tA x + (lC/lB) x^2, and cyclically.
double rho(int i, const BoundaryTriple& R, double x);
std::array<double, 3> rhos(const BoundaryTriple& R, double x);
// rho_i(x) - 1, free of cancellation for small x.
double rho_excess(int i, const BoundaryTriple& R, double x);

// Positive root of rho_i(x) = y; OutOfRange for y <= 1.
double rho_inverse(int i, const BoundaryTriple& R, double y);

// Switches chart via r = t rho_2(s).
PantsParams convert_params(const PantsParams& p);

enum class Vertex { a = 0, f = 1, b = 2, d = 3, c = 4, e = 5 };  // boundary order
inline constexpr std::array<Vertex, 6> kBoundaryOrder = {Vertex::a, Vertex::f, Vertex::b,
                                                         Vertex::d, Vertex::c, Vertex::e};
char vertex_name(Vertex v);

// Vertices in the normalized chart a=[1:0:0], b=[0:1:0], c=[0:0:1],
// f=[2:2:-1]. The stored lifts lie in one convex cone.
struct Hexagon {
  std::array<Vec3, 6> lift;  // indexed by Vertex

  const Vec3& operator[](Vertex v) const { return lift[static_cast<int>(v)]; }
  Vec3& operator[](Vertex v) { return lift[static_cast<int>(v)]; }
  ProjectivePoint point(Vertex v) const { return ProjectivePoint((*this)[v]); }
};

Hexagon build_hexagon(const PantsParams& p);  // throws NonConvexHexagon

struct HolonomyTriple {
  UnimodularMatrix A, B, C;
};

// A fixes a and maps (c, e) to multiples of (f, b); B fixes b and maps
// (a, f) to multiples of (d, c); C = (BA)^-1.
HolonomyTriple solve_holonomy(const PantsParams& p);
HolonomyTriple solve_holonomy(const PantsParams& p, const Hexagon& hex);

// Cr_{x,y}: cross ratio centred at x of the other four vertices, read along
// the boundary starting next to x.
double geometric_cross_ratio(const Hexagon& hex, Vertex x, Vertex y);

struct CrossRatioCatalogue {
  double af, ad, ae, fd, fe, bd, be, bf, de, df, ce, cf, cd, ef, ed;

  struct Entry {
    Vertex x, y;
    double CrossRatioCatalogue::*field;
    const char* name;
  };
  static const std::array<Entry, 15>& entries();
};

CrossRatioCatalogue catalogue(const PantsParams& p);
CrossRatioCatalogue catalogue_from_rho(const std::array<double, 3>& rho, double r);

// Cyclic relabelling A -> B -> C of the boundary data; (s, r) unchanged.
PantsParams rotate_labels(const PantsParams& p);

// Hexagon with labels (a,f,b,d,c,e) moved to the vertices formerly named
// (b,d,c,e,a,f); the ordered boundary data become (B, C, A).
Hexagon relabel_hexagon(const Hexagon& hex);

// Internal coordinates read off a hexagon through the cross ratios:
// s from rho_1^{-1}(Cr_{a,d}) and r = (Cr_{a,e} - 1) Cr_{c,f}.
struct RecoveredSR {
  double s_from_ad, s_from_be, s_from_cf;
  double r_ae_cf, r_cd_be, r_bf_ad;
};
RecoveredSR recover_sr(const BoundaryTriple& R, const Hexagon& hex);

}  // namespace goldman
