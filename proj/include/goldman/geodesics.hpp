#pragma once

// Conjugacy classes of the pants group, closed geodesic lengths, and
// entropy estimates by counting.

#include <cstdint>
#include <functional>
#include <vector>

#include "goldman/words.hpp"

namespace goldman {

struct ClassRecord {
  CyclicWord word;
  double length;
  bool typical;
  bool primitive;
};

// Every conjugacy class of word length <= max_len once, shortlex order.
std::vector<CyclicWord> enumerate_classes(int max_len);

// log lambda_max(W) + log lambda_max(W^-1), i.e. log(lambda_max/lambda_min).
double class_length(const GeneratorMatrices& g, const Word& w);
double class_length(const HolonomyTriple& h, const CyclicWord& w);  // throws NotHyperbolic

// Calls visit(canonical letters, primitive, length) for every class of word
// length <= max_len. Classes are split by first letter across workers;
// visit must be safe to call concurrently.
void for_each_class_length(const HolonomyTriple& h, int max_len,
                           const std::function<void(const Word&, bool, double)>& visit);

// Shortest typical class of word length <= max_len; an upper bound for the
// true minimum. Near-ties (relative 1e-9) go to the shortlex-least word.
ClassRecord shortest_typical(const HolonomyTriple& h, int max_len);

// Word-length growth constant: min(l(A), l(B)) / 8.
double cutoff_constant(const HolonomyTriple& h);

struct GeodesicCount {
  std::uint64_t count = 0;  // primitive oriented classes with length <= T
  bool certified = false;
  int required_len = 0;     // floor(T / cutoff_constant)
};

GeodesicCount count_geodesics_report(const HolonomyTriple& h, double T, int max_len);
std::uint64_t count_geodesics(const HolonomyTriple& h, double T, int max_len);  // throws CutoffUncertified

// log R(T) / T.
double entropy_from_count(std::uint64_t count, double T);  // throws NoGeodesicsBelowT
double entropy_estimate(const HolonomyTriple& h, double T, int max_len);

}  // namespace goldman
