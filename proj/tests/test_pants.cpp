#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "goldman/pants.hpp"

using namespace goldman;
using fixtures::kGolden2;
using fixtures::kSqrt5;
using fixtures::R0;
using fixtures::rel_err;

namespace {

double inf_norm(const Mat3& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

bool proportional(const Vec3& x, const Vec3& y, double tol) {
  return x.normalized().cross(y.normalized()).norm() <= tol;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Degenerate;
}

}  // namespace

TEST_CASE("boundary invariant cell") {
  CHECK(code_of([] { BoundaryInvariant(0.0, 5.0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { BoundaryInvariant(1.0, 3.0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { BoundaryInvariant(0.25, 4.0); }) == ErrorCode::InvalidParameters);   // tau = 2/sqrt(lambda)
  CHECK(code_of([] { BoundaryInvariant(0.5, 4.5); }) == ErrorCode::InvalidParameters);    // tau = 1/lambda^2 + lambda
  CHECK_NOTHROW(BoundaryInvariant(0.5, 4.49));
  const auto ev = BoundaryInvariant(0.2, 5.0).eigenvalues();
  CHECK(ev[0] == doctest::Approx(0.2));
  CHECK(ev[1] == doctest::Approx((5.0 - kSqrt5) / 2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx((5.0 + kSqrt5) / 2.0).epsilon(1e-14));
}

TEST_CASE("boundary length closed forms") {
  CHECK(boundary_length(BoundaryInvariant(0.2, 5.0)) == doctest::Approx(std::log((25.0 + 5.0 * kSqrt5) / 2.0)).epsilon(1e-14));
  CHECK(boundary_length(BoundaryInvariant(0.2, 5.0)) == doctest::Approx(2.8953687).epsilon(1e-7));
  CHECK(boundary_length(BoundaryInvariant(std::exp(-1.0), 1.0 + std::exp(1.0))) == doctest::Approx(2.0).epsilon(1e-13));
  // Edge of the cell: the radical vanishes.
  CHECK(boundary_length(BoundaryInvariant(0.25, 4.0 + 1e-12)) == doctest::Approx(std::log(8.0)).epsilon(1e-5));
}

TEST_CASE("rho and its inverse") {
  CHECK(rho(1, R0(), 1.0) == doctest::Approx(kGolden2).epsilon(1e-15));
  CHECK(rho(2, R0(), 2.0) == doctest::Approx(5.0 + 2.0 * kSqrt5).epsilon(1e-15));
  for (int i = 1; i <= 3; ++i) {
    CHECK(rho(i, R0(), 1e-8) - 1.0 < 1e-6);
    CHECK(rho_excess(i, R0(), 1e-20) == doctest::Approx(std::sqrt(0.2) * 5.0 * 1e-20).epsilon(1e-12));
  }
  CHECK(rho_inverse(1, R0(), kGolden2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(code_of([] { (void)rho_inverse(1, R0(), 1.0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { (void)rho_inverse(2, R0(), 0.5); }) == ErrorCode::OutOfRange);
  CHECK(rho_inverse(3, R0(), 1.0 + 1e-12) < 1e-6);

  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const BoundaryTriple R = {fixtures::random_invariant(rng), fixtures::random_invariant(rng), fixtures::random_invariant(rng)};
    const double x = fixtures::log_uniform(rng, 1e-3, 1e3);
    for (int i = 1; i <= 3; ++i) {
      worst = std::max(worst, rel_err(rho_inverse(i, R, rho(i, R, x)), x));
      CHECK(rho(i, R, x * 1.01) > rho(i, R, x));
      CHECK(rel_err(rho_excess(i, R, x) + 1.0, rho(i, R, x)) < 1e-14);
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("chart conversion") {
  const PantsParams sr = convert_params(fixtures::reference());
  CHECK(sr.chart() == InternalChart::SR);
  CHECK(sr.s() == 1.0);
  CHECK(sr.r() == doctest::Approx(kGolden2).epsilon(1e-15));
  const PantsParams st = convert_params(PantsParams::from_sr(R0(), 1.0, kGolden2));
  CHECK(st.chart() == InternalChart::ST);
  CHECK(st.t() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(code_of([] { (void)PantsParams::from_st(R0(), 0.0, 1.0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { (void)PantsParams::from_sr(R0(), 1.0, -2.0); }) == ErrorCode::InvalidParameters);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const PantsParams p = fixtures::random_params(rng);
    const PantsParams back = convert_params(convert_params(p));
    CHECK(back.chart() == p.chart());
    CHECK(rel_err(back.second(), p.second()) < 1e-12);
    CHECK(rel_err(p.r(), p.t() * rho(2, p.R(), p.s())) < 1e-12);
  }
}

TEST_CASE("hexagon at the reference point") {
  const Hexagon hex = build_hexagon(fixtures::reference());
  CHECK(hex.point(Vertex::d).approx_equal(ProjectivePoint(-1.0, kGolden2, kGolden2 / 2.0)));
  CHECK(hex.point(Vertex::e).approx_equal(ProjectivePoint(1.0, -1.0, kGolden2 / 2.0)));
  std::vector<ProjectivePoint> pts;
  for (Vertex v : kBoundaryOrder) pts.push_back(hex.point(v));
  CHECK(convex_position(pts));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Hexagon h = build_hexagon(fixtures::random_params(rng));
    CHECK(h.point(Vertex::a).approx_equal(ProjectivePoint(1, 0, 0)));
    CHECK(h.point(Vertex::b).approx_equal(ProjectivePoint(0, 1, 0)));
    CHECK(h.point(Vertex::c).approx_equal(ProjectivePoint(0, 0, 1)));
    CHECK(h.point(Vertex::f).approx_equal(ProjectivePoint(2, 2, -1)));
  }
}

TEST_CASE("holonomy at the reference point") {
  const HolonomyTriple h = solve_holonomy(fixtures::reference());
  const auto ev = spectral(h.A).eigenvalues;
  CHECK(ev[0] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(ev[1] == doctest::Approx((5.0 - kSqrt5) / 2.0).epsilon(1e-9));
  CHECK(ev[2] == doctest::Approx((5.0 + kSqrt5) / 2.0).epsilon(1e-9));
}

TEST_CASE("holonomy invariants on random parameters") {
  std::mt19937_64 rng(14);
  double cba = 0.0, eig = 0.0, len = 0.0, incid = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const fixtures::Structure st(fixtures::random_params(rng));
    const auto& [A, B, C] = st.h;
    cba = std::max(cba, inf_norm((C * B * A).matrix() - Mat3::Identity()));
    const std::array<const UnimodularMatrix*, 3> X = {&A, &B, &C};
    const std::array<Vertex, 3> repelling = {Vertex::a, Vertex::b, Vertex::c};
    for (int k = 0; k < 3; ++k) {
      CHECK(is_positive_hyperbolic(*X[k]));
      const SpectralData sd = spectral(*X[k]);
      const auto want = st.p.R()[k].eigenvalues();
      for (int i = 0; i < 3; ++i) eig = std::max(eig, rel_err(sd.eigenvalues[i], want[i]));
      len = std::max(len, std::abs(std::log(sd.eigenvalues[2] / sd.eigenvalues[0]) - boundary_length(st.p.R()[k])));
      CHECK(proportional(sd.eigenvectors[0].coords(), st.hex[repelling[k]], 1e-7));
    }
    incid = std::max({incid, proportional(B.matrix() * st.hex[Vertex::a], st.hex[Vertex::d], 1e-9) ? 0.0 : 1.0,
                      proportional(A.matrix() * st.hex[Vertex::c], st.hex[Vertex::f], 1e-9) ? 0.0 : 1.0,
                      proportional(C.matrix() * st.hex[Vertex::b], st.hex[Vertex::e], 1e-9) ? 0.0 : 1.0});
  }
  CHECK(cba < 1e-9);
  CHECK(eig < 1e-9);
  CHECK(len < 1e-9);
  CHECK(incid == 0.0);
}

TEST_CASE("catalogue at the reference point") {
  const CrossRatioCatalogue cat = catalogue(fixtures::reference());
  CHECK(cat.ad == doctest::Approx(kGolden2).epsilon(1e-14));
  CHECK(cat.cd == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((cat.ae - 1.0) * cat.cf == doctest::Approx(kGolden2).epsilon(1e-12));
}

TEST_CASE("catalogue formulas match the geometric cross ratios") {
  std::mt19937_64 rng(15);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PantsParams p = fixtures::random_params(rng);
    const Hexagon hex = build_hexagon(p);
    const CrossRatioCatalogue cat = catalogue(p);
    for (const auto& e : CrossRatioCatalogue::entries()) {
      const double formula = cat.*e.field;
      CHECK(formula > 1.0);
      worst = std::max(worst, rel_err(formula, geometric_cross_ratio(hex, e.x, e.y)));
    }
    const CrossRatioCatalogue from_rho = catalogue_from_rho(rhos(p.R(), p.s()), p.r());
    for (const auto& e : CrossRatioCatalogue::entries()) worst = std::max(worst, rel_err(from_rho.*e.field, cat.*e.field));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("internal coordinates recovered from cross ratios") {
  std::mt19937_64 rng(16);
  double s_err = 0.0, r_err = 0.0, rho_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PantsParams p = fixtures::random_params(rng);
    const Hexagon hex = build_hexagon(p);
    const RecoveredSR rec = recover_sr(p.R(), hex);
    for (double s : {rec.s_from_ad, rec.s_from_be, rec.s_from_cf}) s_err = std::max(s_err, rel_err(s, p.s()));
    for (double r : {rec.r_ae_cf, rec.r_cd_be, rec.r_bf_ad}) r_err = std::max(r_err, rel_err(r, p.r()));
    const auto rh = rhos(p.R(), p.s());
    rho_err = std::max({rho_err, rel_err(geometric_cross_ratio(hex, Vertex::a, Vertex::d), rh[0]),
                        rel_err(geometric_cross_ratio(hex, Vertex::b, Vertex::e), rh[1]),
                        rel_err(geometric_cross_ratio(hex, Vertex::c, Vertex::f), rh[2])});
  }
  CHECK(s_err < 1e-9);
  CHECK(r_err < 1e-9);
  CHECK(rho_err < 1e-9);
}

TEST_CASE("cyclic relabelling") {
  const BoundaryTriple R = {BoundaryInvariant(0.2, 5.0), BoundaryInvariant(0.3, 4.0), BoundaryInvariant(0.25, 4.5)};
  const PantsParams p = PantsParams::from_sr(R, 1.3, 2.0);
  const PantsParams q = rotate_labels(p);
  CHECK(q.R()[0].lambda() == 0.3);
  CHECK(q.R()[0].tau() == 4.0);
  CHECK(q.R()[1].lambda() == 0.25);
  CHECK(q.R()[2].lambda() == 0.2);
  CHECK(q.s() == 1.3);
  CHECK(q.r() == 2.0);
  const PantsParams back = rotate_labels(rotate_labels(q));
  for (int k = 0; k < 3; ++k) {
    CHECK(back.R()[k].lambda() == R[k].lambda());
    CHECK(back.R()[k].tau() == R[k].tau());
  }

  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const PantsParams sr = convert_params(fixtures::random_params(rng));
    const Hexagon moved = relabel_hexagon(build_hexagon(sr));
    const RecoveredSR rec = recover_sr(rotate_labels(sr).R(), moved);
    worst = std::max({worst, rel_err(rec.s_from_ad, sr.s()), rel_err(rec.s_from_be, sr.s()), rel_err(rec.s_from_cf, sr.s()),
                      rel_err(rec.r_ae_cf, sr.r()), rel_err(rec.r_cd_be, sr.r()), rel_err(rec.r_bf_ad, sr.r())});
  }
  CHECK(worst < 1e-9);
}
