#include "goldman/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace goldman {

namespace {

const Word kB = {Letter::B};
const Word kBi = {Letter::Bi};
const Word kBA = {Letter::B, Letter::A};

VertexId vertex(int type, const Word& g) { return {type, coset_representative(g, stabilizer_generator(type))}; }

struct Step {
  EdgeId edge;
  int next_type;
  Word next_g;
};

// Crossing the side of triangle (type, g) opposite its local vertex i.
// Type 0 is (a, b, c); type 1 is (b, c, d) with d = B a.
Step step(int type, const Word& g, int i) {
  if (type == 0) {
    switch (i) {
      case 0: return {{g, EdgeBase::BC}, 1, g};
      case 1: return {{g, EdgeBase::CA}, 1, multiply(g, word_C())};
      default: return {{g, EdgeBase::AB}, 1, multiply(g, kBi)};
    }
  }
  switch (i) {
    case 0: return {{multiply(g, kBA), EdgeBase::CA}, 0, multiply(g, kBA)};
    case 1: return {{multiply(g, kB), EdgeBase::AB}, 0, multiply(g, kB)};
    default: return {{g, EdgeBase::BC}, 0, g};
  }
}

struct Frame {
  GeneratorMatrices gens;
  AffineChart chart;
  std::array<Vec3, 4> lift;  // a, b, c, d with phi = 1
  double lmax, lmax_inv;     // top eigenvalues of W and W^-1
  Word w;

  std::array<Vec3, 3> triangle(int type) const {
    return type == 0 ? std::array<Vec3, 3>{lift[0], lift[1], lift[2]} : std::array<Vec3, 3>{lift[1], lift[2], lift[3]};
  }

  // Endpoints (repelling, attracting) of g^-1 * axis(w), normalized.
  std::pair<Vec3, Vec3> axis_in(const Word& g) const {
    const Word u = multiply(multiply(inverse(g), w), g);
    const Mat3 m = word_matrix(gens, u), mi = word_matrix(gens, inverse(u));
    return {chart.normalize(eigenvector(mi, lmax_inv)), chart.normalize(eigenvector(m, lmax))};
  }

  std::array<Vec3, 2> edge_points(const Word& frame, const EdgeId& e) const {
    const Mat3 m = word_matrix(gens, multiply(inverse(frame), e.g));
    static constexpr int ends[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    const int* k = ends[static_cast<int>(e.base)];
    return {chart.normalize(m * lift[k[0]]), chart.normalize(m * lift[k[1]])};
  }
};

Vec3 barycentric(const std::array<Vec3, 3>& t, const Vec3& z) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) m.col(i) = t[i];
  return m.partialPivLu().solve(z);
}

void check_depth(const Word& g, int depth) {
  if (static_cast<int>(g.size()) > depth)
    throw Error(ErrorCode::DepthInsufficient, "trace needs triangles beyond word length " + std::to_string(depth));
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Proper crossing of segments [p0,p1] and [q0,q1]; returns the parameter on p.
std::optional<double> segment_crossing(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
  const Vec2 r = p1 - p0, s = q1 - q0;
  const double d1 = cross2(r, q0 - p0), d2 = cross2(r, q1 - p0);
  const double d3 = cross2(s, p0 - q0), d4 = cross2(s, p1 - q0);
  if (!(d1 * d2 < 0.0) || !(d3 * d4 < 0.0)) return std::nullopt;
  return d3 / (d3 - d4);
}

}  // namespace

std::array<VertexId, 2> edge_vertices(const EdgeId& e) {
  switch (e.base) {
    case EdgeBase::AB: return {vertex(0, e.g), vertex(1, e.g)};
    case EdgeBase::BC: return {vertex(1, e.g), vertex(2, e.g)};
    default: return {vertex(2, e.g), vertex(0, e.g)};
  }
}

int GeodesicDecomposition::hash_sum() const {
  int s = 0;
  for (const LoopingSegment& l : looping) s += l.self_intersections;
  return s;
}

GeodesicDecomposition decompose_geodesic(const HolonomyTriple& h, const Hexagon& hex, const CyclicWord& w,
                                         int depth) {
  if (!w.typical()) throw Error(ErrorCode::NotTypical, w.str() + " is peripheral");
  Frame fr{GeneratorMatrices::from(h), AffineChart(cone_functional(h, hex)), {}, 0.0, 0.0, w.letters()};
  fr.lift = {fr.chart.normalize(hex[Vertex::a]), fr.chart.normalize(hex[Vertex::b]), fr.chart.normalize(hex[Vertex::c]),
             fr.chart.normalize(hex[Vertex::d])};
  const Mat3 W = word_matrix(fr.gens, fr.w), Wi = word_matrix(fr.gens, inverse(fr.w));
  fr.lmax = spectrum_from_traces(W.trace(), Wi.trace())[2];
  fr.lmax_inv = spectrum_from_traces(Wi.trace(), W.trace())[2];

  // Approach: straight walk from the base triangle towards a point of the axis.
  const auto [xm, xp] = fr.axis_in(Word{});
  const Vec3 z = 0.5 * (xm + xp);
  int type = 0;
  Word g;
  for (int guard = 0;; ++guard) {
    check_depth(g, depth);
    if (guard > 64 * (depth + 1)) throw Error(ErrorCode::ConsistencyFailure, "approach walk did not converge");
    const Vec3 zb = barycentric(fr.triangle(type), fr.chart.normalize(word_matrix(fr.gens, inverse(g)) * z));
    if (zb.minCoeff() >= -1e-12) break;
    int exit = -1;
    double best = 2.0;
    for (int i = 0; i < 3; ++i) {
      if (zb[i] >= 0.0) continue;
      const double s = (1.0 / 3.0) / (1.0 / 3.0 - zb[i]);
      if (s < best) best = s, exit = i;
    }
    Step st = step(type, g, exit);
    type = st.next_type;
    g = std::move(st.next_g);
  }

  // One period: from T0 to W * T0, always leaving through the forward side.
  const int type0 = type;
  const Word target = multiply(fr.w, g);
  GeodesicDecomposition out;
  out.word = w.str();
  out.depth = depth;
  out.period_length = std::log(fr.lmax) + std::log(fr.lmax_inv);
  do {
    check_depth(g, depth);
    if (out.edges.size() > 64 * (fr.w.size() + 2))
      throw Error(ErrorCode::ConsistencyFailure, "period walk did not close");
    const auto [ym, yp] = fr.axis_in(g);
    const auto tri = fr.triangle(type);
    const Vec3 bm = barycentric(tri, ym), bp = barycentric(tri, yp);
    double enter = -1e300, leave = 1e300;
    int exit = -1;
    for (int i = 0; i < 3; ++i) {
      const double slope = bp[i] - bm[i];
      if (slope == 0.0) continue;
      const double root = bm[i] / (bm[i] - bp[i]);
      if (slope < 0.0 && root < leave) leave = root, exit = i;
      if (slope > 0.0) enter = std::max(enter, root);
    }
    if (exit < 0 || !(enter < leave)) throw Error(ErrorCode::ConsistencyFailure, "axis misses the traced triangle");
    Step st = step(type, g, exit);
    out.edges.push_back(std::move(st.edge));
    type = st.next_type;
    g = std::move(st.next_g);
  } while (!(type == type0 && g == target));

  const std::size_t n = out.edges.size();
  const Word w_inv = inverse(fr.w);
  auto edge_at = [&](long k) {
    long q = k >= 0 ? k / static_cast<long>(n) : -((-k + static_cast<long>(n) - 1) / static_cast<long>(n));
    EdgeId e = out.edges[static_cast<std::size_t>(k - q * static_cast<long>(n))];
    for (; q > 0; --q) e.g = multiply(fr.w, e.g);
    for (; q < 0; ++q) e.g = multiply(w_inv, e.g);
    return e;
  };
  auto shared = [&](long k) {
    const auto u = edge_vertices(edge_at(k)), v = edge_vertices(edge_at(k + 1));
    std::optional<VertexId> common;
    int count = 0;
    for (const VertexId& x : u)
      for (const VertexId& y : v)
        if (x == y) common = x, ++count;
    if (count != 1) throw Error(ErrorCode::ConsistencyFailure, "consecutive edges do not bound one triangle");
    return *common;
  };

  for (std::size_t i = 0; i < n; ++i)
    if (!(shared(static_cast<long>(i) - 1) == shared(static_cast<long>(i)))) out.crossing_indices.push_back(i);
  out.m = static_cast<int>(out.crossing_indices.size());
  if (out.m == 0) throw Error(ErrorCode::NotTypical, "no crossing points");

  for (int j = 0; j < out.m; ++j) {
    const long c0 = static_cast<long>(out.crossing_indices[j]);
    const long c1 = j + 1 < out.m ? static_cast<long>(out.crossing_indices[j + 1]) : static_cast<long>(out.crossing_indices[0] + n);
    LoopingSegment seg;
    seg.first = static_cast<std::size_t>(c0);
    seg.f_count = static_cast<int>(c1 - c0 + 1);
    seg.vertex = shared(c0);
    seg.generator = word_matrix(fr.gens, stabilizer_generator(seg.vertex.type));

    // The lift runs between the edges just before and just after the run.
    const Word& frame = seg.vertex.rep;
    const auto [ym, yp] = fr.axis_in(frame);
    const Vec3 axis_line = ym.cross(yp);
    auto meet = [&](const EdgeId& e) {
      const auto pq = fr.edge_points(frame, e);
      return fr.chart.normalize(axis_line.cross(pq[0].cross(pq[1])));
    };
    const Vec3 s0 = meet(edge_at(c0 - 1)), s1 = meet(edge_at(c1 + 1));
    const Vec2 p0 = fr.chart.project(s0), p1 = fr.chart.project(s1);
    const int reach = seg.f_count + 2;
    seg.self_intersections = 0;
    for (int sign : {1, -1}) {
      const Mat3 x = sign > 0 ? seg.generator : seg.generator.inverse();
      Mat3 xk = Mat3::Identity();
      for (int k = 1; k <= reach; ++k) {
        xk = xk * x;
        const Vec2 q0 = fr.chart.project(xk * s0), q1 = fr.chart.project(xk * s1);
        if (auto t = segment_crossing(p0, p1, q0, q1)) {
          seg.crossings.push_back({*t, sign * k, fr.chart.lift(p0 + *t * (p1 - p0))});
          if (sign > 0) ++seg.self_intersections;
        }
      }
    }
    std::sort(seg.crossings.begin(), seg.crossings.end(),
              [](const SelfCrossing& a, const SelfCrossing& b) { return a.param < b.param; });
    out.looping.push_back(std::move(seg));
  }
  return out;
}

GeodesicDecomposition decompose_geodesic_retry(const HolonomyTriple& h, const Hexagon& hex, const CyclicWord& w,
                                               int depth, int max_depth) {
  for (int d = depth;; d *= 2) {
    try {
      return decompose_geodesic(h, hex, w, std::min(d, max_depth));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DepthInsufficient || d >= max_depth) throw;
    }
  }
}

}  // namespace goldman
