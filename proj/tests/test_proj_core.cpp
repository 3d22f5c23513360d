#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "goldman/core.hpp"
#include "goldman/pants.hpp"

using namespace goldman;
using fixtures::rel_err;

namespace {

ProjectivePoint affine(double x, double y) { return ProjectivePoint(x, y, 1.0); }

Mat3 random_unimodular(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = n(rng) + (i == j ? 2.0 : 0.0);
    if (std::abs(m.determinant()) > 0.1) return UnimodularMatrix::from_matrix(m).matrix();
  }
}

// Points on the ellipse x^2/4 + y^2 = 1 at increasing angles.
ProjectivePoint on_ellipse(double theta) { return affine(2.0 * std::cos(theta), std::sin(theta)); }

double pencil(const ProjectivePoint& o, const ProjectivePoint& a1, const ProjectivePoint& a2, const ProjectivePoint& a3,
              const ProjectivePoint& a4) {
  return cross_ratio_pencil(o, a1, a2, a3, a4).value();
}

}  // namespace

TEST_CASE("projective point normalization") {
  const ProjectivePoint p(Vec3(-2.0, 4.0, -8.0));
  CHECK(p.coords().isApprox(Vec3(0.25, -0.5, 1.0)));
  CHECK(p.approx_equal(ProjectivePoint(1.0, -2.0, 4.0)));
  CHECK_FALSE(p.approx_equal(ProjectivePoint(1.0, 2.0, 4.0)));
  CHECK_THROWS_AS(ProjectivePoint(0.0, 0.0, 0.0), Error);
}

TEST_CASE("lines: incidence and meet") {
  const ProjectiveLine l = ProjectiveLine::through(affine(0, 0), affine(1, 1));
  CHECK(l.incident(affine(3, 3)));
  CHECK_FALSE(l.incident(affine(3, 2)));
  const ProjectiveLine k = ProjectiveLine::through(affine(0, 2), affine(2, 0));
  CHECK(l.meet(k).approx_equal(affine(1, 1)));
}

TEST_CASE("unimodular rescaling uses the real cube root") {
  Mat3 m = Mat3::Identity() * -2.0;
  const UnimodularMatrix u = UnimodularMatrix::from_matrix(m);
  CHECK(u.matrix().determinant() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.matrix()(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(UnimodularMatrix::from_matrix(Mat3::Zero()), Error);
}

TEST_CASE("pencil cross ratio: distance examples") {
  CHECK(pencil(affine(0, 1), affine(0, 0), affine(1, 0), affine(2, 0), affine(4, 0)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(pencil(affine(0.3, -2), affine(0, 0), affine(1, 0), affine(2, 0), affine(3, 0)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("pencil cross ratio: errors and infinity") {
  CHECK_THROWS_AS(cross_ratio_pencil(affine(0, 0), affine(0, 0), affine(1, 0), affine(2, 0), affine(4, 0)), Error);
  try {
    (void)cross_ratio_pencil(affine(0, 0), affine(1, 0), affine(2, 0), affine(3, 0), affine(0, 1));
    FAIL("expected DegeneratePencil");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePencil);
  }
  try {
    (void)cross_ratio_pencil(affine(0, 1), affine(0, 1), affine(1, 0), affine(2, 0), affine(4, 0));
    FAIL("expected CoincidentWithCenter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentWithCenter);
  }
  // a1 = a2 puts a zero in the denominator.
  const CrossRatioValue inf = cross_ratio_pencil(affine(0, 1), affine(0, 0), affine(0, 0), affine(2, 0), affine(4, 0));
  CHECK(inf.is_infinite());
  CHECK_THROWS_AS((void)inf.value(), Error);
}

TEST_CASE("pencil cross ratio is projectively invariant") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ProjectivePoint o = affine(u(rng), u(rng) + 6.0);
    std::array<ProjectivePoint, 4> a;
    for (auto& p : a) p = affine(u(rng), u(rng));
    const double before = pencil(o, a[0], a[1], a[2], a[3]);
    if (!std::isfinite(before) || std::abs(before) > 1e6 || std::abs(before) < 1e-6) continue;
    const UnimodularMatrix X = UnimodularMatrix::from_matrix(random_unimodular(rng));
    const double after = pencil(X.apply(o), X.apply(a[0]), X.apply(a[1]), X.apply(a[2]), X.apply(a[3]));
    // Homogeneous rescaling of every input leaves the value alone as well.
    const double scaled = cross_ratio_pencil(ProjectivePoint(-3.0 * o.coords()), ProjectivePoint(2.0 * a[0].coords()),
                                             a[1], ProjectivePoint(-0.5 * a[2].coords()), a[3])
                              .value();
    worst = std::max({worst, rel_err(after, before), rel_err(scaled, before)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("collinear cross ratio examples") {
  CHECK(cross_ratio_collinear(affine(0, 0), affine(1, 0), affine(3, 0), affine(4, 0)).value() == doctest::Approx(9.0).epsilon(1e-12));
  for (double x : {-0.7, 0.0, 0.25, 0.9}) {
    const double v = cross_ratio_collinear(affine(-1, 0), affine(0, 0), affine(x, 0), affine(1, 0)).value();
    CHECK(v == doctest::Approx((1 + x) / (1 - x)).epsilon(1e-12));
  }
  try {
    (void)cross_ratio_collinear(affine(0, 0), affine(1, 0), affine(3, 1), affine(4, 0));
    FAIL("expected NotCollinear");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCollinear);
  }
  try {
    (void)cross_ratio_collinear(affine(1, 0), affine(1, 0), affine(1, 0), affine(4, 0));
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Degenerate);
  }
}

TEST_CASE("collinear form agrees with the pencil form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 p0(u(rng), u(rng), 1.0), dir(u(rng), u(rng), 0.0);
    std::array<double, 4> t = {u(rng), u(rng), u(rng), u(rng)};
    std::sort(t.begin(), t.end());
    if (t[1] - t[0] < 0.05 || t[2] - t[1] < 0.05 || t[3] - t[2] < 0.05) continue;
    std::array<ProjectivePoint, 4> a;
    for (int i = 0; i < 4; ++i) a[i] = ProjectivePoint(p0 + t[i] * dir);
    const ProjectivePoint o(p0 + Vec3(-dir.y(), dir.x(), 0.0) * (0.5 + std::abs(u(rng))));
    const double lin = cross_ratio_collinear(a[0], a[1], a[2], a[3]).value();
    // Signed product of position differences, computed here from the parameters.
    const double direct = (t[0] - t[2]) * (t[1] - t[3]) / ((t[0] - t[1]) * (t[2] - t[3]));
    worst = std::max({worst, rel_err(lin, pencil(o, a[0], a[1], a[2], a[3])), rel_err(lin, direct)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("ordered points on an ellipse: bounds, cocycle and monotonicity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<double, 7> th;
    for (double& x : th) x = u(rng) * 2.0 * std::numbers::pi;
    std::sort(th.begin(), th.end());
    // o, a1, x, a2, a3, y, a4 in boundary order.
    const ProjectivePoint o = on_ellipse(th[0]), a1 = on_ellipse(th[1]), x = on_ellipse(th[2]), a2 = on_ellipse(th[3]),
                          a3 = on_ellipse(th[4]), y = on_ellipse(th[5]), a4 = on_ellipse(th[6]);
    bool spaced = true;
    for (int i = 1; i < 7; ++i) spaced = spaced && th[i] - th[i - 1] > 1e-3;
    if (!spaced || 2.0 * std::numbers::pi - th[6] + th[0] < 1e-3) continue;
    const double base = pencil(o, a1, a2, a3, a4);
    CHECK(base > 1.0);
    CHECK(std::isfinite(base));
    CHECK(rel_err(base * pencil(o, a1, a3, y, a4), pencil(o, a1, a2, y, a4)) < 1e-9);
    const double slack = 1e-12 * base;
    CHECK(pencil(o, a1, x, a3, a4) >= base - slack);
    CHECK(pencil(o, a1, a2, y, a4) >= base - slack);
    CHECK(pencil(o, x, a2, a3, a4) >= base - slack);
    CHECK(pencil(o, a1, a2, a3, y) >= base - slack);
  }
}

TEST_CASE("spectral: diagonal, identity, conjugates") {
  const double lo = (5.0 - fixtures::kSqrt5) / 2.0, hi = (5.0 + fixtures::kSqrt5) / 2.0;
  Mat3 D = Vec3(0.2, lo, hi).asDiagonal();
  const SpectralData sd = spectral(UnimodularMatrix::from_matrix(D));
  CHECK(sd.eigenvalues[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(sd.eigenvalues[1] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(sd.eigenvalues[2] == doctest::Approx(hi).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(sd.eigenvectors[i].approx_equal(ProjectivePoint(Vec3(Mat3::Identity().col(i)))));

  try {
    (void)spectral(UnimodularMatrix());
    FAIL("expected RepeatedEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RepeatedEigenvalue);
  }
  Mat3 rot;
  rot << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  try {
    (void)spectral(UnimodularMatrix::from_matrix(rot));
    FAIL("expected ComplexSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ComplexSpectrum);
  }

  std::mt19937_64 rng(5);
  double worst = 0.0, residual = 0.0, det_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Mat3 X = random_unimodular(rng);
    const Mat3 M = X * D * X.inverse();
    const SpectralData s = spectral(UnimodularMatrix::from_matrix(M));
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, rel_err(s.eigenvalues[i], D(i, i)));
      const Vec3 v = s.eigenvectors[i].coords();
      residual = std::max(residual, (M * v - s.eigenvalues[i] * v).norm() / (v.norm() * M.norm()));
    }
    det_err = std::max(det_err, std::abs(s.eigenvalues[0] * s.eigenvalues[1] * s.eigenvalues[2] - 1.0));
    // Independent solver for the same spectrum.
    Eigen::EigenSolver<Mat3> es(M);
    std::array<double, 3> ref = {es.eigenvalues()[0].real(), es.eigenvalues()[1].real(), es.eigenvalues()[2].real()};
    std::sort(ref.begin(), ref.end());
    for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_err(s.eigenvalues[i], ref[i]));
  }
  CHECK(worst < 1e-9);
  CHECK(residual < 1e-9);
  CHECK(det_err < 1e-9);
}

TEST_CASE("real cubic roots keep relative precision at wide spread") {
  // Roots 1e-6, 1, 1e6.
  const double a = 1e-6, b = 1.0, c = 1e6;
  const auto r = real_cubic_roots(a + b + c, a * b + b * c + a * c, a * b * c);
  CHECK(rel_err(r[0], a) < 1e-9);
  CHECK(rel_err(r[1], b) < 1e-9);
  CHECK(rel_err(r[2], c) < 1e-9);
  const auto sp = spectrum_from_traces(a + b + c, 1.0 / a + 1.0 / b + 1.0 / c);
  CHECK(rel_err(sp[0], a) < 1e-9);
}

TEST_CASE("positive hyperbolic classification") {
  const double lo = (5.0 - fixtures::kSqrt5) / 2.0, hi = (5.0 + fixtures::kSqrt5) / 2.0;
  CHECK(is_positive_hyperbolic(UnimodularMatrix::from_matrix(Vec3(0.2, lo, hi).asDiagonal())));
  Mat3 rot;
  rot << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK_FALSE(is_positive_hyperbolic(UnimodularMatrix::from_matrix(rot)));
  CHECK_FALSE(is_positive_hyperbolic(UnimodularMatrix::from_matrix(Vec3(-0.5, -2.0, 1.0).asDiagonal())));
  CHECK_FALSE(is_positive_hyperbolic(UnimodularMatrix()));
}

TEST_CASE("convex position") {
  std::vector<ProjectivePoint> pent;
  for (int i = 0; i < 5; ++i) pent.push_back(affine(std::cos(2 * std::numbers::pi * i / 5), std::sin(2 * std::numbers::pi * i / 5)));
  CHECK(convex_position(pent));
  std::reverse(pent.begin(), pent.end());
  CHECK(convex_position(pent));
  std::swap(pent[1], pent[3]);
  CHECK_FALSE(convex_position(pent));

  // A projective image may straddle the line at infinity of the standard chart.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const UnimodularMatrix X = UnimodularMatrix::from_matrix(random_unimodular(rng));
    std::vector<ProjectivePoint> img;
    for (const auto& q : pent) img.push_back(X.apply(q));
    CHECK_FALSE(convex_position(img));
    std::swap(img[1], img[3]);
    CHECK(convex_position(img));
  }

  const Hexagon hex = build_hexagon(fixtures::reference());
  std::vector<ProjectivePoint> pts;
  for (Vertex v : kBoundaryOrder) pts.push_back(hex.point(v));
  CHECK(convex_position(pts));
  std::swap(pts[0], pts[1]);
  CHECK_FALSE(convex_position(pts));
}
