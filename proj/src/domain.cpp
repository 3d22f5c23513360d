#include "goldman/domain.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace goldman {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Monotone in the angle from e to d, values in [0, 4).
double pseudo_angle(const Vec2& e, const Vec2& d) {
  const double x = e.dot(d), y = cross2(e, d);
  const double s = std::abs(x) + std::abs(y);
  if (s == 0.0) return 0.0;
  const double p = y / s;  // in [-1, 1]
  if (x >= 0.0) return p >= 0.0 ? p : 4.0 + p;
  return 2.0 - p;
}

}  // namespace

AffineChart::AffineChart(const Vec3& functional) : phi_(functional) {
  const double n2 = phi_.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorCode::Degenerate, "zero chart functional");
  origin_ = phi_ / n2;
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(phi_[i]) < std::abs(phi_[k])) k = i;
  // For phi = e3 this gives the standard coordinates (x, y).
  u1_ = (Vec3::Unit(k) - phi_ * (phi_[k] / n2)).normalized();
  u2_ = phi_.cross(u1_).normalized();
}

Vec3 AffineChart::normalize(const Vec3& x) const {
  const double f = phi_.dot(x);
  if (!(std::abs(f) > 1e-14 * phi_.norm() * x.norm())) throw Error(ErrorCode::OutsideDomain, "point at infinity of the chart");
  return x / f;
}

Vec2 AffineChart::project(const Vec3& x) const {
  const Vec3 y = normalize(x);
  return Vec2(u1_.dot(y), u2_.dot(y));
}

Vec3 AffineChart::lift(const Vec2& y) const { return origin_ + y.x() * u1_ + y.y() * u2_; }

Vec3 cone_functional(const HolonomyTriple& h, const Hexagon& hex) {
  const SpectralData sd = spectral(h.A);
  Mat3 E;
  for (int i = 0; i < 3; ++i) E.col(i) = sd.eigenvectors[i].coords();
  const Mat3 Einv = E.inverse();
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& v : hex.lift) centroid += v / v.norm();
  const Vec3 c = Einv * centroid;
  Vec3 phi = Vec3::Zero();
  for (int i = 0; i < 3; ++i) phi += (c[i] >= 0.0 ? 1.0 : -1.0) * Einv.row(i).transpose();
  for (const Vec3& v : hex.lift) {
    const Vec3 cv = Einv * v;
    for (int i = 0; i < 3; ++i)
      if (cv[i] * c[i] < -1e-9 * cv.norm()) throw Error(ErrorCode::ConsistencyFailure, "hexagon not in one eigen-triangle of A");
  }
  return phi;
}

ConvexDomain::ConvexDomain(const AffineChart& chart, const std::vector<Vec3>& points) : chart_(chart) {
  std::vector<Vec2> p;
  p.reserve(points.size());
  for (const Vec3& x : points) p.push_back(chart_.project(x));
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw Error(ErrorCode::Degenerate, "fewer than three distinct points");
  std::vector<Vec2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw Error(ErrorCode::Degenerate, "points are collinear");
  v_ = std::move(h);
  Vec2 lo = v_[0], hi = v_[0];
  for (const Vec2& q : v_) lo = lo.cwiseMin(q), hi = hi.cwiseMax(q);
  diameter_ = (hi - lo).norm();
}

std::vector<ProjectivePoint> ConvexDomain::projective_vertices() const {
  std::vector<ProjectivePoint> out;
  out.reserve(v_.size());
  for (const Vec2& y : v_) out.emplace_back(chart_.lift(y));
  return out;
}

double ConvexDomain::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) a += cross2(v_[i], v_[(i + 1) % v_.size()]);
  return 0.5 * a;
}

bool ConvexDomain::contains(const Vec2& y, double rel_tol) const {
  const double tol = rel_tol * diameter_;
  const std::size_t n = v_.size();
  const Vec2& o = v_[0];
  auto side = [&](const Vec2& a, const Vec2& b) { return cross2(b - a, y - a) / (b - a).norm(); };
  if (side(o, v_[1]) < -tol || side(v_[n - 1], o) < -tol) return false;
  std::size_t lo = 1, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cross2(v_[mid] - o, y - o) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return side(v_[lo], v_[lo + 1]) >= -tol;
}

std::pair<double, double> ConvexDomain::chord(const Vec2& y, const Vec2& v) const {
  if (!contains(y)) throw Error(ErrorCode::OutsideDomain, "chord base point outside the domain");
  const double tol = 1e-10 * diameter_;
  const double vn = v.norm();
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v_[(i + 1) % n] - v_[i];
    const Vec2 nrm = Vec2(-e.y(), e.x()) / e.norm();
    const double num = nrm.dot(y - v_[i]);
    const double den = nrm.dot(v);
    // Lines running along an edge through y keep that edge as the chord.
    if (std::abs(den) <= 1e-14 * vn || (std::abs(num) <= tol && std::abs(den) <= 1e-10 * vn)) continue;
    const double t = -num / den;
    if (den > 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
  }
  if (!(t0 <= t1) || !std::isfinite(t0) || !std::isfinite(t1)) throw Error(ErrorCode::OutsideDomain, "empty chord");
  return {t0, t1};
}

double ConvexDomain::ray_exit(const Vec2& y, const Vec2& v) const {
  const Vec2 e = v_[0] - y;
  const double target = pseudo_angle(e, v);
  std::size_t lo = 0, hi = v_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (pseudo_angle(e, v_[mid] - y) <= target)
      lo = mid;
    else
      hi = mid;
  }
  const Vec2& p = v_[lo];
  const Vec2 edge = v_[(lo + 1) % v_.size()] - p;
  return cross2(p - y, edge) / cross2(v, edge);
}

Axis axis_of(const Mat3& m, const Mat3& m_inverse) {
  std::array<double, 3> ev, ev_inv;
  try {
    ev = spectrum_from_traces(m.trace(), m_inverse.trace());
    ev_inv = spectrum_from_traces(m_inverse.trace(), m.trace());
  } catch (const Error& e) {
    throw Error(ErrorCode::NotHyperbolic, e.what());
  }
  if (!(ev[0] > 0.0) || !(ev[1] - ev[0] > 1e-9 * ev[1]) || !(ev[2] - ev[1] > 1e-9 * ev[2]))
    throw Error(ErrorCode::NotHyperbolic, "eigenvalues not positive and distinct");
  return {ProjectivePoint(eigenvector(m, ev[2])), ProjectivePoint(eigenvector(m_inverse, ev_inv[2]))};
}

Axis axis(const HolonomyTriple& h, const CyclicWord& w) {
  const GeneratorMatrices g = GeneratorMatrices::from(h);
  return axis_of(word_matrix(g, w.letters()), word_matrix(g, inverse(w.letters())));
}

namespace {

// Hexagon vertices as (offset word, ideal vertex type a/b/c): a, f = Ac,
// b, d = Ba, c, e = Cb.
const std::array<std::pair<Word, int>, 6>& hexagon_vertex_cosets() {
  static const std::array<std::pair<Word, int>, 6> v = {
      std::pair<Word, int>{Word{}, 0}, {Word{Letter::A}, 2}, {Word{}, 1},
      {Word{Letter::B}, 0}, {Word{}, 2}, {word_C(), 1}};
  return v;
}

struct OrbitPoints {
  std::set<std::pair<int, Word>> vertices;  // (type, coset representative)
  std::vector<Vec3> fixed_points;
};

// Ideal vertices are collected as cosets: the same point reached through
// different words would otherwise carry rounding errors magnified by the
// expansion of the cuff holonomy near it.
void collect_orbit(const GeneratorMatrices& g, const Word& prefix, const Mat3& m, const Mat3& m_inv, int depth,
                   OrbitPoints& out) {
  for (const auto& [offset, type] : hexagon_vertex_cosets())
    out.vertices.emplace(type, coset_representative(multiply(prefix, offset), stabilizer_generator(type)));
  if (!prefix.empty()) {
    const Axis ax = axis_of(m, m_inv);
    out.fixed_points.push_back(ax.attracting.coords());
    out.fixed_points.push_back(ax.repelling.coords());
  }
  if (static_cast<int>(prefix.size()) == depth) return;
  Word next = prefix;
  next.push_back(Letter::A);
  for (Letter l : {Letter::A, Letter::Ai, Letter::B, Letter::Bi}) {
    if (!prefix.empty() && cancels(prefix.back(), l)) continue;
    next.back() = l;
    collect_orbit(g, next, m * g[l], g[inverse(l)] * m_inv, depth, out);
  }
}

}  // namespace

OrbitHull orbit_hull(const HolonomyTriple& h, const Hexagon& hex, int depth, int max_depth) {
  if (depth < 0 || depth > max_depth)
    throw Error(ErrorCode::DepthTooLarge, "hull depth " + std::to_string(depth) + " outside [0, " + std::to_string(max_depth) + "]");
  const GeneratorMatrices g = GeneratorMatrices::from(h);
  const AffineChart chart(cone_functional(h, hex));
  OrbitPoints orbit;
  collect_orbit(g, Word{}, Mat3::Identity(), Mat3::Identity(), 0, orbit);
  if (depth > 0) {
    // Subtrees by first letter are independent; merged in letter order.
    std::vector<std::future<OrbitPoints>> parts;
    for (Letter l : {Letter::A, Letter::Ai, Letter::B, Letter::Bi}) {
      parts.push_back(std::async(std::launch::async, [&, l] {
        OrbitPoints out;
        collect_orbit(g, Word{l}, g[l], g[inverse(l)], depth, out);
        return out;
      }));
    }
    for (auto& f : parts) {
      OrbitPoints part = f.get();
      orbit.vertices.merge(part.vertices);
      orbit.fixed_points.insert(orbit.fixed_points.end(), part.fixed_points.begin(), part.fixed_points.end());
    }
  }
  const std::array<Vec3, 3> ideal = {hex[Vertex::a], hex[Vertex::b], hex[Vertex::c]};
  std::vector<Vec3> points = std::move(orbit.fixed_points);
  for (const auto& [type, rep] : orbit.vertices) points.push_back(word_matrix(g, rep) * ideal[type]);
  return OrbitHull(ConvexDomain(chart, points), depth);
}

ConvexDomain klein_disk(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidParameters, "polygon needs at least three vertices");
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    pts.emplace_back(std::cos(th), std::sin(th), 1.0);
  }
  return ConvexDomain(AffineChart(Vec3(0.0, 0.0, 1.0)), pts);
}

double hilbert_distance(const ConvexDomain& dom, const ProjectivePoint& p, const ProjectivePoint& q) {
  const Vec2 yp = dom.chart().project(p), yq = dom.chart().project(q);
  if (!dom.contains(yp) || !dom.contains(yq)) throw Error(ErrorCode::OutsideDomain, "point outside the domain");
  const Vec2 v = yq - yp;
  if (v.norm() <= 1e-15 * (1.0 + yp.norm())) return 0.0;
  const auto [t0, t1] = dom.chord(yp, v);
  if (!(t0 < 0.0) || !(t1 > 1.0)) throw Error(ErrorCode::OutsideDomain, "point on the boundary");
  // Boundary points at t0, t1; the points at 0 and 1.
  return 0.5 * (std::log1p(-t0) - std::log(-t0) + std::log(t1) - std::log(t1 - 1.0));
}

double finsler_norm(const ConvexDomain& dom, const ProjectivePoint& x, const Vec2& v) {
  if (!(v.norm() > 0.0)) throw Error(ErrorCode::ZeroVector, "tangent vector is zero");
  const Vec2 y = dom.chart().project(x);
  const auto [t0, t1] = dom.chord(y, v);
  if (!(t0 < 0.0) || !(t1 > 0.0)) throw Error(ErrorCode::OutsideDomain, "point on the boundary");
  return 0.5 * (1.0 / t1 - 1.0 / t0);
}

Estimate busemann_area(const ConvexDomain& dom, const std::vector<Vec2>& region, int samples,
                       std::uint64_t seed, int angles) {
  if (samples < 2 || angles < 4) throw Error(ErrorCode::InvalidParameters, "need at least 2 samples and 4 angles");
  if (region.size() < 3) return {};
  for (const Vec2& y : region)
    if (!dom.contains(y, 0.0)) throw Error(ErrorCode::OutsideDomain, "region vertex outside the domain");
  // Fan triangulation from region[0].
  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < region.size(); ++i) {
    total += 0.5 * std::abs(cross2(region[i] - region[0], region[i + 1] - region[0]));
    cumulative.push_back(total);
  }
  if (!(total > 0.0)) return {};

  std::vector<Vec2> dirs(angles);
  for (int j = 0; j < angles; ++j) {
    const double th = std::numbers::pi * j / angles;
    dirs[j] = Vec2(std::cos(th), std::sin(th));
  }
  // pi / mu(B_1) with mu(B_1) = int_0^pi F(u_theta)^-2 dtheta.
  auto density = [&](const Vec2& x) {
    double s = 0.0;
    for (const Vec2& u : dirs) {
      const double f = 0.5 * (1.0 / dom.ray_exit(x, u) + 1.0 / dom.ray_exit(x, -u));
      s += 1.0 / (f * f);
    }
    return angles / s;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double pick = uni(rng) * total;
    const std::size_t t = std::min<std::size_t>(std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(),
                                                cumulative.size() - 1);
    double r1 = uni(rng), r2 = uni(rng);
    if (r1 + r2 > 1.0) r1 = 1.0 - r1, r2 = 1.0 - r2;
    const Vec2 x = region[0] + r1 * (region[t + 1] - region[0]) + r2 * (region[t + 2] - region[0]);
    const double d = density(x);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sum2 - samples * mean * mean) / (samples - 1));
  return {total * mean, total * std::sqrt(var / samples)};
}

TranslationCheck translation_check(const ConvexDomain& dom, const Mat3& m, const Mat3& m_inverse) {
  const Axis ax = axis_of(m, m_inverse);
  if (!dom.contains(ax.attracting) || !dom.contains(ax.repelling))
    throw Error(ErrorCode::OutsideDomain, "fixed points not in the domain");
  const double lmax = spectrum_from_traces(m.trace(), m_inverse.trace())[2];
  const double lmax_inv = spectrum_from_traces(m_inverse.trace(), m.trace())[2];
  const double eig = std::log(lmax) + std::log(lmax_inv);
  const Vec3 xp = dom.chart().normalize(ax.attracting.coords());
  const Vec3 xm = dom.chart().normalize(ax.repelling.coords());
  const Vec3 x = xm + std::exp(-0.5 * eig) * xp;
  const Vec3 wx = m * x;
  return {hilbert_distance(dom, ProjectivePoint(x), ProjectivePoint(wx)), eig};
}

TranslationCheck translation_check(const HolonomyTriple& h, const ConvexDomain& dom, const CyclicWord& w) {
  const GeneratorMatrices g = GeneratorMatrices::from(h);
  return translation_check(dom, word_matrix(g, w.letters()), word_matrix(g, inverse(w.letters())));
}

}  // namespace goldman
