#include "goldman/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace goldman {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::CoincidentWithCenter: return "CoincidentWithCenter";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonConvexHexagon: return "NonConvexHexagon";
    case ErrorCode::NoRealBranch: return "NoRealBranch";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotTypical: return "NotTypical";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::TrivialWord: return "TrivialWord";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CutoffUncertified: return "CutoffUncertified";
    case ErrorCode::NoGeodesicsBelowT: return "NoGeodesicsBelowT";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

namespace {

constexpr double kIncidenceTol = 1e-12;

Vec3 normalize_homogeneous(const Vec3& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (!(std::abs(v[k]) > 0.0) || !v.allFinite())
    throw Error(ErrorCode::Degenerate, "homogeneous vector is zero or not finite");
  return v / v[k];
}

bool is_zero_det(double d) { return std::abs(d) <= kIncidenceTol; }

}  // namespace

ProjectivePoint::ProjectivePoint(const Vec3& v) : v_(normalize_homogeneous(v)) {}

bool ProjectivePoint::approx_equal(const ProjectivePoint& q, double tol) const {
  const Vec3& p = v_;
  const Vec3& r = q.v_;
  return std::abs(p[0] * r[1] - p[1] * r[0]) <= tol && std::abs(p[0] * r[2] - p[2] * r[0]) <= tol &&
         std::abs(p[1] * r[2] - p[2] * r[1]) <= tol;
}

ProjectiveLine::ProjectiveLine(const Vec3& coeffs) : l_(normalize_homogeneous(coeffs)) {}

ProjectiveLine ProjectiveLine::through(const ProjectivePoint& p, const ProjectivePoint& q) {
  Vec3 l = p.coords().cross(q.coords());
  if (l.norm() <= kIncidenceTol) throw Error(ErrorCode::Degenerate, "line through coincident points");
  return ProjectiveLine(l);
}

bool ProjectiveLine::incident(const ProjectivePoint& p, double tol) const {
  return std::abs(l_.dot(p.coords())) <= tol;
}

ProjectivePoint ProjectiveLine::meet(const ProjectiveLine& other) const {
  Vec3 p = l_.cross(other.l_);
  if (p.norm() <= kIncidenceTol) throw Error(ErrorCode::Degenerate, "meet of coincident lines");
  return ProjectivePoint(p);
}

UnimodularMatrix UnimodularMatrix::from_matrix(const Mat3& m) {
  double d = m.determinant();
  if (!std::isfinite(d) || d == 0.0) throw Error(ErrorCode::Degenerate, "singular matrix");
  UnimodularMatrix r;
  r.m_ = m / std::cbrt(d);
  if (std::abs(r.m_.determinant() - 1.0) >= 1e-9)
    throw Error(ErrorCode::Degenerate, "matrix too ill-conditioned to rescale to determinant 1");
  return r;
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  UnimodularMatrix r;
  r.m_ = m_.inverse();
  return r;
}

double CrossRatioValue::value() const {
  if (infinite_) throw Error(ErrorCode::Degenerate, "cross ratio is infinite");
  return v_;
}

CrossRatioValue cross_ratio_pencil(const ProjectivePoint& o, const ProjectivePoint& a1,
                                   const ProjectivePoint& a2, const ProjectivePoint& a3,
                                   const ProjectivePoint& a4) {
  const std::array<const ProjectivePoint*, 4> a = {&a1, &a2, &a3, &a4};
  std::array<Vec3, 4> dir;
  for (int i = 0; i < 4; ++i) {
    if (o.approx_equal(*a[i], kIncidenceTol))
      throw Error(ErrorCode::CoincidentWithCenter, "a point coincides with the pencil center");
    dir[i] = o.coords().cross(a[i]->coords()).normalized();
  }
  auto same_line = [&](int i, int j) { return dir[i].cross(dir[j]).norm() <= kIncidenceTol; };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (same_line(i, j) && same_line(j, k))
          throw Error(ErrorCode::DegeneratePencil, "three lines of the pencil coincide");

  const Vec3& v = o.coords();
  double n13 = det3(v, a1.coords(), a3.coords());
  double n42 = det3(v, a4.coords(), a2.coords());
  double d12 = det3(v, a1.coords(), a2.coords());
  double d43 = det3(v, a4.coords(), a3.coords());
  if (is_zero_det(d12) || is_zero_det(d43)) return CrossRatioValue::infinity();
  return CrossRatioValue::finite((n13 / d12) * (n42 / d43));
}

CrossRatioValue cross_ratio_collinear(const ProjectivePoint& a1, const ProjectivePoint& a2,
                                      const ProjectivePoint& a3, const ProjectivePoint& a4) {
  const std::array<const ProjectivePoint*, 4> a = {&a1, &a2, &a3, &a4};
  auto eq = [&](int i, int j) { return a[i]->approx_equal(*a[j], kIncidenceTol); };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (eq(i, j) && eq(j, k)) throw Error(ErrorCode::Degenerate, "three points coincide");

  // Supporting line from the most separated pair.
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double n = a[i]->coords().cross(a[j]->coords()).norm();
      if (n > best) best = n, bi = i, bj = j;
    }
  Vec3 line = a[bi]->coords().cross(a[bj]->coords()).normalized();
  for (int i = 0; i < 4; ++i)
    if (std::abs(line.dot(a[i]->coords())) > 1e-9)
      throw Error(ErrorCode::NotCollinear, "points are not collinear");

  // Affine chart whose line at infinity stays far from all four points.
  const std::array<Vec3, 7> charts = {Vec3(1, 0, 0), Vec3(0, 1, 0),  Vec3(0, 0, 1), Vec3(1, 1, 1),
                                      Vec3(1, -1, 1), Vec3(1, 1, -1), Vec3(-1, 1, 1)};
  Vec3 phi = charts[0];
  double margin = -1.0;
  for (const Vec3& c : charts) {
    double m = 1e300;
    for (int i = 0; i < 4; ++i) m = std::min(m, std::abs(c.dot(a[i]->coords())));
    if (m > margin) margin = m, phi = c;
  }
  std::array<Vec3, 4> x;
  for (int i = 0; i < 4; ++i) x[i] = a[i]->coords() / phi.dot(a[i]->coords());
  Vec3 u = (x[bj] - x[bi]).normalized();
  std::array<double, 4> s;
  for (int i = 0; i < 4; ++i) s[i] = (x[i] - x[0]).dot(u);

  if (eq(0, 1) || eq(2, 3)) return CrossRatioValue::infinity();
  return CrossRatioValue::finite((s[0] - s[2]) * (s[1] - s[3]) / ((s[0] - s[1]) * (s[2] - s[3])));
}

namespace {

// Largest real root of x^3 - t x^2 + s x - d with all roots real.
double largest_real_root(double t, double s, double d) {
  double scale = std::max({1.0, std::abs(t), std::sqrt(std::abs(s)), std::cbrt(std::abs(d))});
  double a = -t / scale, b = s / (scale * scale), c = -d / (scale * scale * scale);
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double disc = 4.0 * p * p * p + 27.0 * q * q;
  double root;
  if (p >= 0.0) {
    if (std::abs(p) > 1e-12 || std::abs(q) > 1e-12)
      throw Error(ErrorCode::ComplexSpectrum, "characteristic cubic has complex roots");
    root = -a / 3.0;
  } else {
    if (disc > 1e-10 * (4.0 * std::abs(p * p * p) + 27.0 * q * q))
      throw Error(ErrorCode::ComplexSpectrum, "characteristic cubic has complex roots");
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    root = m * std::cos(std::acos(arg) / 3.0) - a / 3.0;
  }
  double x = root * scale;
  for (int it = 0; it < 6; ++it) {
    double f = ((x - t) * x + s) * x - d;
    double fp = (3.0 * x - 2.0 * t) * x + s;
    if (fp <= 0.0) break;
    double nx = x - f / fp;
    if (!std::isfinite(nx) || nx == x) break;
    x = nx;
  }
  return x;
}

std::array<double, 3> trig_roots(double t, double s, double d) {
  double scale = std::max({1.0, std::abs(t), std::sqrt(std::abs(s)), std::cbrt(std::abs(d))});
  double a = -t / scale, b = s / (scale * scale), c = -d / (scale * scale * scale);
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double disc = 4.0 * p * p * p + 27.0 * q * q;
  if (p >= 0.0) {
    if (std::abs(p) > 1e-12 || std::abs(q) > 1e-12)
      throw Error(ErrorCode::ComplexSpectrum, "characteristic cubic has complex roots");
    double r = -a / 3.0 * scale;
    return {r, r, r};
  }
  if (disc > 1e-10 * (4.0 * std::abs(p * p * p) + 27.0 * q * q))
    throw Error(ErrorCode::ComplexSpectrum, "characteristic cubic has complex roots");
  double m = 2.0 * std::sqrt(-p / 3.0);
  double phi = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
  std::array<double, 3> r;
  for (int k = 0; k < 3; ++k)
    r[k] = (m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0) * scale;
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

std::array<double, 3> real_cubic_roots(double t, double sigma, double delta) {
  std::array<double, 3> r = trig_roots(t, sigma, delta);
  // Alternating coefficient signs rule out negative roots.
  if (t > 0.0 && sigma > 0.0 && delta > 0.0) {
    double hi = largest_real_root(t, sigma, delta);
    double lo = 1.0 / largest_real_root(sigma / delta, t / delta, 1.0 / delta);
    return {lo, delta / (lo * hi), hi};
  }
  return r;
}

std::array<double, 3> spectrum_from_traces(double trace, double trace_inverse) {
  return real_cubic_roots(trace, trace_inverse, 1.0);
}

Vec3 eigenvector(const Mat3& m, double lambda) {
  Mat3 n = m - lambda * Mat3::Identity();
  std::array<Vec3, 3> c = {Vec3(n.row(0).cross(n.row(1))), Vec3(n.row(1).cross(n.row(2))),
                           Vec3(n.row(2).cross(n.row(0)))};
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (c[i].norm() > c[k].norm()) k = i;
  if (!(c[k].norm() > 0.0)) throw Error(ErrorCode::RepeatedEigenvalue, "eigenspace is not one-dimensional");
  return c[k].normalized();
}

SpectralData spectral(const UnimodularMatrix& um) {
  const Mat3& m = um.matrix();
  double t = m.trace();
  double sigma = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                 m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  double delta = m.determinant();
  std::array<double, 3> ev = real_cubic_roots(t, sigma, delta);
  for (int i = 0; i < 2; ++i) {
    double scale = std::max(std::abs(ev[i]), std::abs(ev[i + 1]));
    if (!(ev[i + 1] - ev[i] > 1e-9 * scale))
      throw Error(ErrorCode::RepeatedEigenvalue, "eigenvalues are not separated");
  }
  SpectralData out;
  out.eigenvalues = ev;
  for (int i = 0; i < 3; ++i) out.eigenvectors[i] = ProjectivePoint(eigenvector(m, ev[i]));
  return out;
}

bool is_positive_hyperbolic(const UnimodularMatrix& m) {
  try {
    SpectralData s = spectral(m);
    return s.eigenvalues[0] > 0.0;
  } catch (const Error&) {
    return false;
  }
}

bool convex_position(const std::vector<ProjectivePoint>& points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::InvalidParameters, "convex_position needs at least three points");
  std::vector<Vec3> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = points[i].coords();

  // Choose lift signs e_i so that every consecutive pair (i,i+1) leaves all
  // other lifts strictly on one side; such lifts span a pointed cone, hence
  // an affine chart exists in which the polygon is convex.
  // The sign of v[1] relative to v[0] is part of the choice.
  for (int combo = 0; combo < 4; ++combo) {
    const double orient = combo & 1 ? -1.0 : 1.0;
    std::vector<double> eps(n, 1.0);
    eps[1] = combo & 2 ? -1.0 : 1.0;
    bool ok = true;
    for (std::size_t j = 2; j < n && ok; ++j) {
      double d = orient * eps[1] * det3(v[0], v[1], v[j]);
      if (std::abs(d) <= kIncidenceTol) ok = false;
      eps[j] = d > 0.0 ? 1.0 : -1.0;
    }
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::size_t i1 = (i + 1) % n;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (j == i || j == i1) continue;
        double d = orient * eps[i] * eps[i1] * eps[j] * det3(v[i], v[i1], v[j]);
        if (!(d > kIncidenceTol)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace goldman
