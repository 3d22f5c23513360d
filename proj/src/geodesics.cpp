#include "goldman/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <optional>

namespace goldman {

namespace {

constexpr std::array<Letter, 4> kLetters = {Letter::A, Letter::Ai, Letter::B, Letter::Bi};

// FKM generation of least rotations restricted to reduced words, for one
// length n and one first letter. Prefix products of W and W^-1 are kept
// per level when Track is set.
template <bool Track, class Visit>
struct NecklaceWalk {
  int n;
  const GeneratorMatrices* g;
  Visit& visit;
  Word a;
  std::vector<Mat3> fwd, bwd;

  void run(Letter first) {
    a.assign(n, Letter::A);
    if constexpr (Track) fwd.assign(n + 1, Mat3::Identity()), bwd.assign(n + 1, Mat3::Identity());
    place(0, first, 1);
  }

  void place(int t, Letter x, int p) {
    a[t] = x;
    if constexpr (Track) {
      fwd[t + 1] = fwd[t] * (*g)[x];
      bwd[t + 1] = (*g)[inverse(x)] * bwd[t];
    }
    extend(t + 1, p);
  }

  // t letters placed; p is the period of the longest Lyndon prefix.
  void extend(int t, int p) {
    if (t == n) {
      if (n % p == 0 && !cancels(a[n - 1], a[0])) {
        if constexpr (Track)
          visit(a, p == n, fwd[n], bwd[n]);
        else
          visit(a, p == n);
      }
      return;
    }
    const Letter base = a[t - p];
    for (Letter x : kLetters) {
      if (x < base || cancels(a[t - 1], x)) continue;
      place(t, x, x == base ? p : t + 1);
    }
  }
};

double length_from(const Mat3& m, const Mat3& mi) {
  const double hi = spectrum_from_traces(m.trace(), mi.trace())[2];
  const double hi_inv = spectrum_from_traces(mi.trace(), m.trace())[2];
  return std::log(hi) + std::log(hi_inv);
}

}  // namespace

std::vector<CyclicWord> enumerate_classes(int max_len) {
  std::vector<CyclicWord> out;
  for (int n = 1; n <= max_len; ++n) {
    auto visit = [&](const Word& w, bool) { out.push_back(CyclicWord::from_word(w)); };
    for (Letter first : kLetters) {
      NecklaceWalk<false, decltype(visit)> walk{n, nullptr, visit, {}, {}, {}};
      walk.run(first);
    }
  }
  return out;
}

double class_length(const GeneratorMatrices& g, const Word& w) {
  // A class function; multiplying out a conjugate would only cost digits.
  const Word c = cyclic_reduce(w);
  if (c.empty()) throw Error(ErrorCode::NotHyperbolic, "trivial word");
  try {
    return length_from(word_matrix(g, c), word_matrix(g, inverse(c)));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotHyperbolic, e.what());
  }
}

double class_length(const HolonomyTriple& h, const CyclicWord& w) {
  return class_length(GeneratorMatrices::from(h), w.letters());
}

void for_each_class_length(const HolonomyTriple& h, int max_len,
                           const std::function<void(const Word&, bool, double)>& visit) {
  const GeneratorMatrices g = GeneratorMatrices::from(h);
  std::vector<std::future<void>> jobs;
  for (Letter first : kLetters) {
    jobs.push_back(std::async(std::launch::async, [&, first] {
      auto cb = [&](const Word& w, bool primitive, const Mat3& m, const Mat3& mi) {
        visit(w, primitive, length_from(m, mi));
      };
      for (int n = 1; n <= max_len; ++n) {
        NecklaceWalk<true, decltype(cb)> walk{n, &g, cb, {}, {}, {}};
        walk.run(first);
      }
    }));
  }
  for (auto& j : jobs) j.get();
}

ClassRecord shortest_typical(const HolonomyTriple& h, int max_len) {
  if (max_len < 2) throw Error(ErrorCode::InvalidParameters, "max_len must be at least 2");
  std::mutex mu;
  std::optional<CyclicWord> best;
  double best_len = 0.0;
  for_each_class_length(h, max_len, [&](const Word& w, bool, double len) {
    CyclicWord c = CyclicWord::from_word(w);
    if (!c.typical()) return;
    std::lock_guard<std::mutex> lock(mu);
    const double tie = 1e-9 * std::max(len, best_len);
    if (!best || len < best_len - tie || (std::abs(len - best_len) <= tie && c < *best)) {
      best = c;
      best_len = len;
    }
  });
  return {*best, best_len, true, best->primitive()};
}

double cutoff_constant(const HolonomyTriple& h) {
  const GeneratorMatrices g = GeneratorMatrices::from(h);
  return std::min(class_length(g, Word{Letter::A}), class_length(g, Word{Letter::B})) / 8.0;
}

GeodesicCount count_geodesics_report(const HolonomyTriple& h, double T, int max_len) {
  GeodesicCount out;
  out.required_len = static_cast<int>(std::floor(T / cutoff_constant(h)));
  out.certified = max_len >= out.required_len;
  std::mutex mu;
  for_each_class_length(h, max_len, [&](const Word&, bool primitive, double len) {
    if (!primitive || len > T) return;
    std::lock_guard<std::mutex> lock(mu);
    ++out.count;
  });
  return out;
}

std::uint64_t count_geodesics(const HolonomyTriple& h, double T, int max_len) {
  const int required = static_cast<int>(std::floor(T / cutoff_constant(h)));
  if (max_len < required)
    throw Error(ErrorCode::CutoffUncertified,
                "T = " + std::to_string(T) + " needs max_len >= " + std::to_string(required));
  return count_geodesics_report(h, T, max_len).count;
}

double entropy_from_count(std::uint64_t count, double T) {
  if (count == 0) throw Error(ErrorCode::NoGeodesicsBelowT, "no closed geodesic of length <= " + std::to_string(T));
  return std::log(static_cast<double>(count)) / T;
}

double entropy_estimate(const HolonomyTriple& h, double T, int max_len) {
  return entropy_from_count(count_geodesics(h, T, max_len), T);
}

}  // namespace goldman
