#include "csets/exactval.hpp"

#include <stdexcept>

#include "csets/norms.hpp"

namespace csets {

int ExactAtom::cmp(const mpq_class& t) const {
  if (sgn(s) == 0) return ::cmp(a, t) < 0 ? -1 : (a == t ? 0 : 1);
  mpq_class rhs = t - a;
  return sqrt_cmp(s, rhs);
}

void ExactAtom::interval(int k, Dyadic& lo, Dyadic& hi) const {
  Dyadic alo = Dyadic::from_rational(a, k + 3, RoundMode::Down);
  Dyadic ahi = Dyadic::from_rational(a, k + 3, RoundMode::Up);
  if (sgn(s) == 0) {
    lo = alo;
    hi = ahi;
    return;
  }
  // sqrt bracket via integer square roots, outward rounded
  long j = std::max<long>(k + 3, 1);
  mpz_class scaled = s.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * j);
  mpz_class nd = scaled * s.get_den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), nd.get_mpz_t());
  mpq_class slo(r, s.get_den());
  slo.canonicalize();
  mpq_class shi(r + 1, s.get_den());
  shi.canonicalize();
  lo = alo + Dyadic::from_rational(slo, j + k + 4, RoundMode::Down).mul_pow2(-j);
  hi = ahi + Dyadic::from_rational(shi, j + k + 4, RoundMode::Up).mul_pow2(-j);
}

int ExactVal::cmp(const mpq_class& t) const {
  if (atoms_.empty()) throw std::logic_error("ExactVal: empty");
  bool any_eq = false;
  if (is_min_) {
    for (const auto& at : atoms_) {
      int c = at.cmp(t);
      if (c < 0) return -1;
      if (c == 0) any_eq = true;
    }
    return any_eq ? 0 : 1;
  }
  for (const auto& at : atoms_) {
    int c = at.cmp(t);
    if (c > 0) return 1;
    if (c == 0) any_eq = true;
  }
  return any_eq ? 0 : -1;
}

void ExactVal::interval(int k, Dyadic& lo, Dyadic& hi) const {
  if (atoms_.empty()) throw std::logic_error("ExactVal: empty");
  bool first = true;
  for (const auto& at : atoms_) {
    Dyadic alo, ahi;
    at.interval(k + 1, alo, ahi);
    if (first) {
      lo = alo;
      hi = ahi;
      first = false;
    } else if (is_min_) {
      // keep interval of the min
      lo = Dyadic::min(lo, alo);
      hi = Dyadic::min(hi, ahi);
    } else {
      lo = Dyadic::max(lo, alo);
      hi = Dyadic::max(hi, ahi);
    }
  }
}

Dyadic ExactVal::approx(int k) const {
  Dyadic lo, hi;
  interval(k + 2, lo, hi);
  Dyadic mid = (lo + hi).mul_pow2(-1);
  return mid.round_to(k + 4, RoundMode::NearestTiesUp);
}

}  // namespace csets
