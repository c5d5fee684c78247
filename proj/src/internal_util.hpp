#pragma once

#include <gmpxx.h>

#include <stdexcept>

#include "csets/dyadic.hpp"
#include "csets/names.hpp"
#include "csets/norms.hpp"

namespace csets {
namespace detail {

inline mpq_class pow2_q(int e) {
  if (e >= 0) return mpq_class(mpz_class(1) << e);
  return mpq_class(mpz_class(1), mpz_class(1) << (-e));
}

/// floor(log2(x)) for rational x > 0.
inline long floor_log2_q(const mpq_class& x) {
  if (sgn(x) <= 0) throw std::invalid_argument("floor_log2_q: x <= 0");
  long nb = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
  long db = static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  long e = nb - db;  // 2^e <= x < 2^(e+2); refine
  while (x < pow2_q(static_cast<int>(e))) --e;
  while (x >= pow2_q(static_cast<int>(e + 1))) ++e;
  return e;
}

/// smallest integer e with x <= 2^e
inline long ceil_log2_q(const mpq_class& x) {
  long e = floor_log2_q(x);
  return (x == pow2_q(static_cast<int>(e))) ? e : e + 1;
}

inline int require_outer(const RepName& n, const char* who) {
  if (!n.advice().outer_radius_exp) throw std::invalid_argument(std::string(who) + ": advice b required");
  return *n.advice().outer_radius_exp;
}

inline int require_inner_exp(const RepName& n, const char* who) {
  if (!n.advice().inner_radius_exp) throw std::invalid_argument(std::string(who) + ": advice r required");
  return *n.advice().inner_radius_exp;
}

inline DyadicPoint require_inner_point(const RepName& n, const char* who) {
  if (!n.advice().inner_point) throw std::invalid_argument(std::string(who) + ": advice a required");
  return *n.advice().inner_point;
}

/// -1/0/+1 of ||q-p1|| vs ||q-p2|| under `norm`, exact.
inline int dist_cmp_points(const Norm& norm, const DyadicPoint& q, const DyadicPoint& p1,
                           const DyadicPoint& p2) {
  if (norm.p == PExp::Two) {
    mpq_class s1 = 0, s2 = 0;
    for (int i = 0; i < q.dim(); ++i) {
      mpq_class d1 = (q[i] - p1[i]).to_rational();
      mpq_class d2 = (q[i] - p2[i]).to_rational();
      s1 += d1 * d1;
      s2 += d2 * d2;
    }
    return ::cmp(s1, s2) < 0 ? -1 : (s1 == s2 ? 0 : 1);
  }
  NormInterval a = norm_interval(norm, q - p1, 8);
  NormInterval b = norm_interval(norm, q - p2, 8);
  return a.lo.cmp(b.lo);
}

/// Exact conversion when the rational is dyadic, otherwise nearest grid point
/// of D_m.
inline Dyadic dyadic_from_mpq(const mpq_class& x, long m) {
  const mpz_class& den = x.get_den();
  if (mpz_scan1(den.get_mpz_t(), 0) == mpz_sizeinbase(den.get_mpz_t(), 2) - 1) {
    return Dyadic::make(x.get_num(), static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1);
  }
  return Dyadic::from_rational(x, m, RoundMode::NearestTiesUp);
}

/// smallest integer e >= floor with ||v||_norm <= 2^e (exact)
inline int norm_ceil_exp(const Norm& norm, const DyadicPoint& v, int floor_e = -62) {
  for (int e = floor_e; e <= 62; ++e) {
    if (norm_cmp(norm, v, pow2_q(e)) <= 0) return e;
  }
  throw std::logic_error("norm_ceil_exp: out of range");
}

}  // namespace detail
}  // namespace csets
