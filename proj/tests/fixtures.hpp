#pragma once

#include <cmath>
#include <random>

#include "goldman/pants.hpp"
#include "goldman/words.hpp"

namespace fixtures {

inline const goldman::BoundaryTriple& R0() {
  static const goldman::BoundaryInvariant b(0.2, 5.0);
  static const goldman::BoundaryTriple R = {b, b, b};
  return R;
}

inline const double kSqrt5 = std::sqrt(5.0);
inline const double kGolden2 = 2.0 + kSqrt5;  // rho at the reference point

inline goldman::PantsParams reference() { return goldman::PantsParams::from_st(R0(), 1.0, 1.0); }
inline goldman::PantsParams reference_sr(double s) { return goldman::PantsParams::from_sr(R0(), s, kGolden2); }

struct Structure {
  goldman::PantsParams p;
  goldman::Hexagon hex;
  goldman::HolonomyTriple h;
  explicit Structure(const goldman::PantsParams& params)
      : p(params), hex(goldman::build_hexagon(p)), h(goldman::solve_holonomy(p, hex)) {}
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

// Interior of the cell, away from its edges by a few percent.
inline goldman::BoundaryInvariant random_invariant(std::mt19937_64& rng) {
  const double lambda = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
  const double lo = 2.0 / std::sqrt(lambda), hi = 1.0 / (lambda * lambda) + lambda;
  const double u = std::uniform_real_distribution<double>(0.03, 0.97)(rng);
  return goldman::BoundaryInvariant(lambda, lo + u * (hi - lo));
}

inline goldman::PantsParams random_params(std::mt19937_64& rng) {
  const goldman::BoundaryTriple R = {random_invariant(rng), random_invariant(rng), random_invariant(rng)};
  return goldman::PantsParams::from_st(R, log_uniform(rng, 0.2, 5.0), log_uniform(rng, 0.2, 5.0));
}

inline goldman::Word random_reduced_word(std::mt19937_64& rng, int len) {
  goldman::Word w;
  std::uniform_int_distribution<int> pick(0, 3);
  while (static_cast<int>(w.size()) < len) {
    const auto l = static_cast<goldman::Letter>(pick(rng));
    if (!w.empty() && goldman::cancels(w.back(), l)) continue;
    w.push_back(l);
  }
  return w;
}

inline double rel_err(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

}  // namespace fixtures
