#pragma once

// Length and entropy bounds: L, K from the cross-ratio catalogue, the
// lower bound B for decomposed geodesics, counting constants, and the
// exact-binomial entropy rate with its asymptotic closed form.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "goldman/pants.hpp"

namespace goldman {

struct BoundInputs {
  CrossRatioCatalogue catalogue;
  std::array<double, 3> boundary_lengths;
  int genus = 0;
  int boundary_count = 3;

  BoundInputs(const CrossRatioCatalogue& cat, const std::array<double, 3>& lengths, int g = 0, int n = 3);
  static BoundInputs from_params(const PantsParams& p);
};

// min boundary length / 10.
double L_func(const BoundInputs& in);

// The two six-way minima of cross-ratio products (X, Y).
std::pair<double, double> XY_minima(const CrossRatioCatalogue& cat);

// log(X Y) / 48 for a single pants.
double K_func(const BoundInputs& in);

// (X, Y) in closed form from rho = (Cr_ad, Cr_be, Cr_cf) and r.
std::pair<double, double> k_reduced(const std::array<double, 3>& rho, double r);

// log(X Y) / 48 from the closed forms, evaluated with logarithms and the
// exact rho - 1. Stays finite where the catalogue over- or underflows.
double K_log_domain(const BoundaryTriple& R, double s, double r);

struct NValues {
  double prefactor;  // X Y = min over (i, k) of prefactor * Z
  double z;
  double n1, n2, n3;  // prefactor times rho_{i-1}, rho_k, rho_k rho_{k+1} / rho_i
};

// i, k in 1..3, subscripts mod 3.
NValues n_values(int i, int k, const std::array<double, 3>& rho, double r);

// min over (i, k) of prefactor * Z; equals X Y.
double xy_factorized(const std::array<double, 3>& rho, double r);

// m K + hash_sum L.
double B_func(int m, int hash_sum, double K, double L);

struct CountingConstants {
  std::int64_t crossing_triples;  // 24g - 24 + 12n
  std::int64_t psi_fiber_base;    // 18
  std::int64_t entropy_base;      // 432g - 432 + 216n
};

CountingConstants counting_constants(int g, int n);  // throws InvalidTopology

struct BinomRate {
  double rate;  // (1/T) log of the largest binomial
  std::int64_t Q;
};

// Exact max over Q in 1..floor(T/K) of C(floor((T - QK)/L) + Q, Q).
// Scans upward and stops once the sequence has turned down, unless
// full_scan is set. Requires T >= K > L > 0.
BinomRate binom_rate(double T, double K, double L, bool full_scan = false);

// log C(floor((T - QK)/L) + Q, Q) for Q = 1..floor(T/K), exact integers.
std::vector<double> binom_log_profile(double T, double K, double L);

// Finite-T entropy upper bound. Requires T >= 10K and K > L.
double entropy_upper(double T, double K, double L, int g, int n);
// Same expression without the K > L and T >= 10K checks; needs K, L > 0, T >= K.
double entropy_upper_unchecked(double T, double K, double L, int g, int n);

// Closed form rate for Q ~ H T; requires 0 < H <= 1/(L + K).
double asymptotic_rate(double H, double K, double L);  // throws OutOfRange

}  // namespace goldman
