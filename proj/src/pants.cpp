#include "goldman/pants.hpp"

#include <cmath>
#include <vector>

namespace goldman {

BoundaryInvariant::BoundaryInvariant(double lambda, double tau) : lambda_(lambda), tau_(tau) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw Error(ErrorCode::InvalidParameters, "lambda must lie in (0,1)");
  if (!(tau > 2.0 / std::sqrt(lambda) && tau < 1.0 / (lambda * lambda) + lambda))
    throw Error(ErrorCode::InvalidParameters, "tau must satisfy 2/sqrt(lambda) < tau < 1/lambda^2 + lambda");
}

std::array<double, 3> BoundaryInvariant::eigenvalues() const {
  double disc = std::sqrt(tau_ * tau_ - 4.0 / lambda_);
  // Product of the two larger roots is 1/lambda; use it for the middle one.
  double hi = 0.5 * (tau_ + disc);
  return {lambda_, 1.0 / (lambda_ * hi), hi};
}

double boundary_length(const BoundaryInvariant& b) {
  double disc = std::sqrt(b.tau() * b.tau() - 4.0 / b.lambda());
  return std::log((b.tau() + disc) / (2.0 * b.lambda()));
}

PantsParams::PantsParams(const BoundaryTriple& R, double s, double second, InternalChart chart)
    : R_(R), s_(s), second_(second), chart_(chart) {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidParameters, "s must be positive");
  if (!(second > 0.0) || !std::isfinite(second))
    throw Error(ErrorCode::InvalidParameters, chart == InternalChart::ST ? "t must be positive" : "r must be positive");
}

PantsParams PantsParams::from_st(const BoundaryTriple& R, double s, double t) {
  return PantsParams(R, s, t, InternalChart::ST);
}

PantsParams PantsParams::from_sr(const BoundaryTriple& R, double s, double r) {
  return PantsParams(R, s, r, InternalChart::SR);
}

double PantsParams::t() const { return chart_ == InternalChart::ST ? second_ : second_ / rho(2, R_, s_); }

double PantsParams::r() const { return chart_ == InternalChart::SR ? second_ : second_ * rho(2, R_, s_); }

namespace {

// rho_i(x) = 1 + lin * x + quad * x^2
void rho_coefficients(int i, const BoundaryTriple& R, double& lin, double& quad) {
  double lA = R[0].lambda(), lB = R[1].lambda(), lC = R[2].lambda();
  switch (i) {
    case 1:
      lin = std::sqrt(lC * lA / lB) * R[0].tau();
      quad = lC / lB;
      return;
    case 2:
      lin = std::sqrt(lA * lB / lC) * R[1].tau();
      quad = lA / lC;
      return;
    case 3:
      lin = std::sqrt(lB * lC / lA) * R[2].tau();
      quad = lB / lA;
      return;
  }
  throw Error(ErrorCode::InvalidParameters, "rho index must be 1, 2 or 3");
}

}  // namespace

double rho(int i, const BoundaryTriple& R, double x) {
  double lin, quad;
  rho_coefficients(i, R, lin, quad);
  return 1.0 + lin * x + quad * x * x;
}

double rho_excess(int i, const BoundaryTriple& R, double x) {
  double lin, quad;
  rho_coefficients(i, R, lin, quad);
  return x * (lin + quad * x);
}

std::array<double, 3> rhos(const BoundaryTriple& R, double x) { return {rho(1, R, x), rho(2, R, x), rho(3, R, x)}; }

double rho_inverse(int i, const BoundaryTriple& R, double y) {
  if (!(y > 1.0)) throw Error(ErrorCode::OutOfRange, "rho_inverse needs y > 1");
  double lin, quad;
  rho_coefficients(i, R, lin, quad);
  double u = y - 1.0;
  return 2.0 * u / (lin + std::sqrt(lin * lin + 4.0 * quad * u));
}

PantsParams convert_params(const PantsParams& p) {
  if (p.chart() == InternalChart::ST) return PantsParams::from_sr(p.R(), p.s(), p.r());
  return PantsParams::from_st(p.R(), p.s(), p.t());
}

char vertex_name(Vertex v) {
  static constexpr char names[] = {'a', 'f', 'b', 'd', 'c', 'e'};
  return names[static_cast<int>(v)];
}

Hexagon build_hexagon(const PantsParams& p) {
  double s = p.s(), t = p.t();
  std::array<double, 3> r = rhos(p.R(), s);
  Hexagon h;
  h[Vertex::a] = Vec3(1, 0, 0);
  h[Vertex::b] = Vec3(0, 1, 0);
  h[Vertex::c] = Vec3(0, 0, 1);
  h[Vertex::f] = Vec3(2, 2, -1);
  h[Vertex::d] = Vec3(-1, r[2] / t, r[1] / 2.0);
  h[Vertex::e] = Vec3(t, -1, r[0] / 2.0);
  std::vector<ProjectivePoint> pts;
  for (Vertex v : kBoundaryOrder) pts.push_back(h.point(v));
  if (!convex_position(pts)) throw Error(ErrorCode::NonConvexHexagon, "hexagon a,f,b,d,c,e is not convex");
  return h;
}

namespace {

struct Branch {
  Mat3 m;
  double alpha, beta;
};

// Linear map X with X fix = lambda fix, X src0 = alpha dst0, X src1 = beta dst1,
// det X = 1 and tr X = lambda + tau. Keeps the branches that are positive
// hyperbolic with smallest eigenvalue lambda at fix and carry the source
// triangle's interior to the target's (alpha, beta > 0).
std::vector<Branch> solve_generator(const BoundaryInvariant& inv, const Vec3& fix, const Vec3& src0,
                                    const Vec3& src1, const Vec3& dst0, const Vec3& dst1) {
  Mat3 S;
  S << fix, src0, src1;
  Mat3 Si = S.inverse();
  double lambda = inv.lambda(), tau = inv.tau();
  double p = Si.row(1).dot(dst0);
  double q = Si.row(2).dot(dst1);
  double D = det3(fix, dst0, dst1) / S.determinant();
  double P = 1.0 / (lambda * D);  // alpha * beta
  double disc = tau * tau - 4.0 * p * P * q;
  std::vector<Branch> out;
  if (disc < 0.0) return out;
  for (double sign : {1.0, -1.0}) {
    double alpha = (tau + sign * std::sqrt(disc)) / (2.0 * p);
    double beta = P / alpha;
    if (!(alpha > 0.0 && beta > 0.0)) continue;
    Mat3 T;
    T << lambda * fix, alpha * dst0, beta * dst1;
    Mat3 X = T * Si;
    try {
      SpectralData sd = spectral(UnimodularMatrix::from_matrix(X));
      if (!(sd.eigenvalues[0] > 0.0)) continue;
      if (std::abs(sd.eigenvalues[0] - lambda) > 1e-8 * lambda) continue;
      if (!sd.eigenvectors[0].approx_equal(ProjectivePoint(fix), 1e-7)) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back({X, alpha, beta});
  }
  return out;
}

// Largest relative eigenvalue deviation; infinite if m is not hyperbolic.
double invariant_mismatch(const Mat3& m, const BoundaryInvariant& inv) {
  try {
    SpectralData sd = spectral(UnimodularMatrix::from_matrix(m));
    std::array<double, 3> want = inv.eigenvalues();
    double err = 0.0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(sd.eigenvalues[i] - want[i]) / want[i]);
    return err;
  } catch (const Error&) {
    return INFINITY;
  }
}

}  // namespace

HolonomyTriple solve_holonomy(const PantsParams& p) { return solve_holonomy(p, build_hexagon(p)); }

HolonomyTriple solve_holonomy(const PantsParams& p, const Hexagon& h) {
  const BoundaryTriple& R = p.R();
  auto as = solve_generator(R[0], h[Vertex::a], h[Vertex::c], h[Vertex::e], h[Vertex::f], h[Vertex::b]);
  auto bs = solve_generator(R[1], h[Vertex::b], h[Vertex::a], h[Vertex::f], h[Vertex::d], h[Vertex::c]);
  if (as.empty() || bs.empty())
    throw Error(ErrorCode::NoRealBranch, "no admissible branch of the holonomy equations");
  // Branches are discrete, so take the best fit; entries grow with s and r
  // and cost C a few digits at extreme parameters.
  const Branch* best_a = nullptr;
  const Branch* best_b = nullptr;
  double best = INFINITY;
  for (const Branch& ba : as)
    for (const Branch& bb : bs) {
      const double err = invariant_mismatch((bb.m * ba.m).inverse(), R[2]);
      if (err < best) best = err, best_a = &ba, best_b = &bb;
    }
  if (best <= 1e-6) {
    HolonomyTriple out;
    out.A = UnimodularMatrix::from_matrix(best_a->m);
    out.B = UnimodularMatrix::from_matrix(best_b->m);
    out.C = (out.B * out.A).inverse();
    return out;
  }
  throw Error(ErrorCode::ConsistencyFailure, "derived C does not carry the boundary invariant of C");
}

double geometric_cross_ratio(const Hexagon& hex, Vertex x, Vertex y) {
  int i = static_cast<int>(x);
  std::array<ProjectivePoint, 4> rest;
  int n = 0;
  for (int k = 1; k <= 5; ++k) {
    Vertex v = kBoundaryOrder[(i - k + 6) % 6];
    if (v != y) rest[n++] = hex.point(v);
  }
  return cross_ratio_pencil(hex.point(x), rest[0], rest[1], rest[2], rest[3]).value();
}

const std::array<CrossRatioCatalogue::Entry, 15>& CrossRatioCatalogue::entries() {
  using V = Vertex;
  using C = CrossRatioCatalogue;
  static const std::array<Entry, 15> list = {{
      {V::a, V::f, &C::af, "Cr_af"}, {V::a, V::d, &C::ad, "Cr_ad"}, {V::a, V::e, &C::ae, "Cr_ae"},
      {V::f, V::d, &C::fd, "Cr_fd"}, {V::f, V::e, &C::fe, "Cr_fe"}, {V::b, V::d, &C::bd, "Cr_bd"},
      {V::b, V::e, &C::be, "Cr_be"}, {V::b, V::f, &C::bf, "Cr_bf"}, {V::d, V::e, &C::de, "Cr_de"},
      {V::d, V::f, &C::df, "Cr_df"}, {V::c, V::e, &C::ce, "Cr_ce"}, {V::c, V::f, &C::cf, "Cr_cf"},
      {V::c, V::d, &C::cd, "Cr_cd"}, {V::e, V::f, &C::ef, "Cr_ef"}, {V::e, V::d, &C::ed, "Cr_ed"},
  }};
  return list;
}

CrossRatioCatalogue catalogue_from_rho(const std::array<double, 3>& rho, double r) {
  const double p1 = rho[0], p2 = rho[1], p3 = rho[2];
  CrossRatioCatalogue c;
  c.af = 1.0 + p3 * p1 / r;
  c.ad = p1;
  c.ae = 1.0 + r / p3;
  c.fd = (r + p1 * p2) / (p2 * (p1 - 1.0));
  c.fe = (p2 * p3 + r * p2) / (r * (p2 - 1.0));
  c.bd = 1.0 + p1 * p2 / r;
  c.be = p2;
  c.bf = 1.0 + r / p1;
  c.de = (r + p2 * p3) / (p3 * (p2 - 1.0));
  c.df = (p3 * p1 + r * p3) / (r * (p3 - 1.0));
  c.ce = 1.0 + p2 * p3 / r;
  c.cf = p3;
  c.cd = 1.0 + r / p2;
  c.ef = (r + p3 * p1) / (p1 * (p3 - 1.0));
  c.ed = p1 * (p2 + r) / (r * (p1 - 1.0));
  return c;
}

CrossRatioCatalogue catalogue(const PantsParams& p) { return catalogue_from_rho(rhos(p.R(), p.s()), p.r()); }

PantsParams rotate_labels(const PantsParams& p) {
  const BoundaryTriple& R = p.R();
  return PantsParams::from_sr({R[1], R[2], R[0]}, p.s(), p.r());
}

Hexagon relabel_hexagon(const Hexagon& hex) {
  Hexagon out;
  out[Vertex::a] = hex[Vertex::b];
  out[Vertex::f] = hex[Vertex::d];
  out[Vertex::b] = hex[Vertex::c];
  out[Vertex::d] = hex[Vertex::e];
  out[Vertex::c] = hex[Vertex::a];
  out[Vertex::e] = hex[Vertex::f];
  return out;
}

RecoveredSR recover_sr(const BoundaryTriple& R, const Hexagon& hex) {
  using V = Vertex;
  double ad = geometric_cross_ratio(hex, V::a, V::d);
  double be = geometric_cross_ratio(hex, V::b, V::e);
  double cf = geometric_cross_ratio(hex, V::c, V::f);
  double ae = geometric_cross_ratio(hex, V::a, V::e);
  double cd = geometric_cross_ratio(hex, V::c, V::d);
  double bf = geometric_cross_ratio(hex, V::b, V::f);
  return {rho_inverse(1, R, ad), rho_inverse(2, R, be), rho_inverse(3, R, cf),
          (ae - 1.0) * cf,       (cd - 1.0) * be,       (bf - 1.0) * ad};
}

}  // namespace goldman
