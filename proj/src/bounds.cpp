#include "goldman/bounds.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace goldman {

namespace {

// rho with 1-based, mod-3 subscripts.
double at(const std::array<double, 3>& rho, int i) { return rho[((i - 1) % 3 + 3) % 3]; }

void check_rho(const std::array<double, 3>& rho, double r) {
  for (double x : rho)
    if (!(x > 1.0)) throw Error(ErrorCode::InvalidParameters, "rho values must exceed 1");
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidParameters, "r must be positive");
}

class Binomial {
 public:
  Binomial() { mpz_init(z_); }
  ~Binomial() { mpz_clear(z_); }
  Binomial(const Binomial&) = delete;
  Binomial& operator=(const Binomial&) = delete;

  double log_choose(unsigned long n, unsigned long k) {
    mpz_bin_uiui(z_, n, k);
    long e = 0;
    const double d = mpz_get_d_2exp(&e, z_);
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
  }

 private:
  mpz_t z_;
};

std::int64_t q_max(double T, double K) { return static_cast<std::int64_t>(std::floor(T / K)); }

unsigned long binomial_top(double T, double K, double L, std::int64_t Q) {
  const double room = std::max(0.0, T - static_cast<double>(Q) * K);
  return static_cast<unsigned long>(std::floor(room / L)) + static_cast<unsigned long>(Q);
}

void check_rate_inputs(double T, double K, double L) {
  if (!(L > 0.0 && K > L && T >= K))
    throw Error(ErrorCode::PreconditionViolated, "requires T >= K > L > 0");
}

double upper_expression(double T, double K, double L, std::int64_t base) {
  const std::int64_t n = q_max(T, K);
  Binomial b;
  double best = -INFINITY;
  for (std::int64_t Q = 1; Q <= n; ++Q)
    best = std::max(best, b.log_choose(binomial_top(T, K, L, Q), static_cast<unsigned long>(Q)));
  const double dn = static_cast<double>(n);
  return (std::log(2.0) + dn * std::log(static_cast<double>(base)) + std::log(dn) + best) / T;
}

}  // namespace

BoundInputs::BoundInputs(const CrossRatioCatalogue& cat, const std::array<double, 3>& lengths, int g, int n)
    : catalogue(cat), boundary_lengths(lengths), genus(g), boundary_count(n) {
  for (const auto& e : CrossRatioCatalogue::entries())
    if (!(cat.*(e.field) > 1.0)) throw Error(ErrorCode::InvalidParameters, std::string(e.name) + " <= 1");
  for (double l : lengths)
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidParameters, "boundary lengths must be positive");
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw Error(ErrorCode::InvalidTopology, "need 2g - 2 + n > 0");
}

BoundInputs BoundInputs::from_params(const PantsParams& p) {
  const BoundaryTriple& R = p.R();
  return BoundInputs(goldman::catalogue(p), {boundary_length(R[0]), boundary_length(R[1]), boundary_length(R[2])});
}

double L_func(const BoundInputs& in) {
  return *std::min_element(in.boundary_lengths.begin(), in.boundary_lengths.end()) / 10.0;
}

std::pair<double, double> XY_minima(const CrossRatioCatalogue& c) {
  const double X = std::min({c.fd * c.cf, c.fd * c.bf, c.de * c.ad, c.de * c.cd, c.ef * c.be, c.ef * c.ae});
  const double Y = std::min({c.df * c.bd, c.df * c.ad, c.ed * c.ce, c.ed * c.be, c.fe * c.af, c.fe * c.cf});
  return {X, Y};
}

double K_func(const BoundInputs& in) {
  const auto [X, Y] = XY_minima(in.catalogue);
  return std::log(X * Y) / 48.0;
}

std::pair<double, double> k_reduced(const std::array<double, 3>& rho, double r) {
  check_rho(rho, r);
  double X = INFINITY, Y = INFINITY;
  for (int i = 1; i <= 3; ++i) {
    const double p = at(rho, i - 1), q = at(rho, i), u = at(rho, i + 1);
    X = std::min({X, p * (r + q * u) / (u * (q - 1.0)), (q + r) * (r + q * u) / (q * u * (q - 1.0))});
    // Same index pattern for Y with k = i.
    Y = std::min({Y, p * (q + r) * (r + q * u) / (r * r * (p - 1.0)), q * p * (q + r) / (r * (p - 1.0))});
  }
  return {X, Y};
}

double K_log_domain(const BoundaryTriple& R, double s, double r) {
  if (!(s > 0.0 && r > 0.0)) throw Error(ErrorCode::InvalidParameters, "s, r must be positive");
  std::array<double, 3> lr, le;  // log rho, log(rho - 1)
  for (int i = 0; i < 3; ++i) {
    const double e = rho_excess(i + 1, R, s);
    lr[i] = std::log1p(e);
    le[i] = std::log(e);
  }
  const double lrr = std::log(r);
  auto L = [](const std::array<double, 3>& v, int i) { return v[((i - 1) % 3 + 3) % 3]; };
  auto logsum = [](double x, double y) { return std::max(x, y) + std::log1p(std::exp(-std::abs(x - y))); };
  double lx = INFINITY, ly = INFINITY;
  for (int i = 1; i <= 3; ++i) {
    const double p = L(lr, i - 1), q = L(lr, i), u = L(lr, i + 1), qe = L(le, i), pe = L(le, i - 1);
    const double r_qu = logsum(lrr, q + u), q_r = logsum(q, lrr);
    lx = std::min({lx, p + r_qu - u - qe, q_r + r_qu - q - u - qe});
    ly = std::min({ly, p + q_r + r_qu - 2.0 * lrr - pe, q + p + q_r - lrr - pe});
  }
  return (lx + ly) / 48.0;
}

NValues n_values(int i, int k, const std::array<double, 3>& rho, double r) {
  check_rho(rho, r);
  if (i < 1 || i > 3 || k < 1 || k > 3) throw Error(ErrorCode::InvalidParameters, "i, k must lie in 1..3");
  const double ri = at(rho, i), rim = at(rho, i - 1), rip = at(rho, i + 1);
  const double rk = at(rho, k), rkm = at(rho, k - 1), rkp = at(rho, k + 1);
  NValues v;
  v.prefactor = rkm * (rk + r) * (r + ri * rip) / (r * rip * (rkm - 1.0) * (ri - 1.0));
  v.z = std::min({rim * (r + rk * rkp) / r, (ri + r) * (r + rk * rkp) / (r * ri), rim * rk, rk * (ri + r) / ri});
  v.n1 = v.prefactor * rim;
  v.n2 = v.prefactor * rk;
  v.n3 = v.prefactor * rk * rkp / ri;
  return v;
}

double xy_factorized(const std::array<double, 3>& rho, double r) {
  double best = INFINITY;
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k) {
      const NValues v = n_values(i, k, rho, r);
      best = std::min(best, v.prefactor * v.z);
    }
  return best;
}

double B_func(int m, int hash_sum, double K, double L) { return m * K + hash_sum * L; }

CountingConstants counting_constants(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw Error(ErrorCode::InvalidTopology, "need 2g - 2 + n > 0");
  return {24LL * g - 24 + 12LL * n, 18, 432LL * g - 432 + 216LL * n};
}

std::vector<double> binom_log_profile(double T, double K, double L) {
  check_rate_inputs(T, K, L);
  const std::int64_t n = q_max(T, K);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  Binomial b;
  for (std::int64_t Q = 1; Q <= n; ++Q)
    out.push_back(b.log_choose(binomial_top(T, K, L, Q), static_cast<unsigned long>(Q)));
  return out;
}

BinomRate binom_rate(double T, double K, double L, bool full_scan) {
  check_rate_inputs(T, K, L);
  const std::int64_t n = q_max(T, K);
  Binomial b;
  double best = -INFINITY;
  std::int64_t arg = 1;
  for (std::int64_t Q = 1; Q <= n; ++Q) {
    const double v = b.log_choose(binomial_top(T, K, L, Q), static_cast<unsigned long>(Q));
    if (v > best) {
      best = v;
      arg = Q;
    } else if (!full_scan && v < best) {
      break;
    }
  }
  return {best / T, arg};
}

double entropy_upper_unchecked(double T, double K, double L, int g, int n) {
  if (!(K > 0.0 && L > 0.0 && T >= K)) throw Error(ErrorCode::PreconditionViolated, "requires T >= K, K > 0, L > 0");
  return upper_expression(T, K, L, counting_constants(g, n).entropy_base);
}

double entropy_upper(double T, double K, double L, int g, int n) {
  if (!(K > L)) throw Error(ErrorCode::PreconditionViolated, "requires K > L");
  if (!(T >= 10.0 * K)) throw Error(ErrorCode::PreconditionViolated, "requires T >= 10 K");
  return entropy_upper_unchecked(T, K, L, g, n);
}

double asymptotic_rate(double H, double K, double L) {
  if (!(K > 0.0 && L > 0.0)) throw Error(ErrorCode::InvalidParameters, "K, L must be positive");
  if (!(H > 0.0 && H <= 1.0 / (L + K) * (1.0 + 1e-12)))
    throw Error(ErrorCode::OutOfRange, "H must lie in (0, 1/(L+K)]");
  const double slack = 1.0 - H * K;
  return H * std::log(1.0 - K / L + 1.0 / (H * L)) + slack / L * std::log(1.0 + H * L / slack);
}

}  // namespace goldman
