#include "csets/norms.hpp"

#include <sstream>
#include <stdexcept>

namespace csets {

std::string Norm::to_text() const {
  std::string base = p == PExp::One ? "l1" : (p == PExp::Two ? "l2" : "linf");
  if (scale == Dyadic(1)) return base;
  return scale.to_text() + "*" + base;
}

std::optional<Norm> Norm::parse(std::string_view s, int dim) {
  Dyadic sc(1);
  auto star = s.find('*');
  if (star != std::string_view::npos) {
    auto d = Dyadic::parse(s.substr(0, star));
    if (!d || d->sign() <= 0) return std::nullopt;
    sc = *d;
    s = s.substr(star + 1);
  }
  PExp p;
  if (s == "linf") {
    p = PExp::Inf;
  } else if (s == "l1") {
    p = PExp::One;
  } else if (s == "l2") {
    p = PExp::Two;
  } else {
    return std::nullopt;
  }
  return Norm{p, sc, dim};
}

int sqrt_cmp(const mpq_class& s, const mpq_class& t) {
  if (sgn(t) < 0) return 1;  // sqrt(s) >= 0 > t
  mpq_class t2 = t * t;
  return ::cmp(s, t2) < 0 ? -1 : (s == t2 ? 0 : 1);
}

namespace {

// Sum of |v_i| (p=1) or max |v_i| (p=inf), exact.
Dyadic poly_norm_raw(PExp p, const DyadicPoint& v) {
  Dyadic acc;
  for (int i = 0; i < v.dim(); ++i) {
    Dyadic a = v[i].abs();
    acc = (p == PExp::One) ? acc + a : Dyadic::max(acc, a);
  }
  return acc;
}

mpq_class sq_sum(const DyadicPoint& v) {
  mpq_class s = 0;
  for (int i = 0; i < v.dim(); ++i) {
    mpq_class c = v[i].to_rational();
    s += c * c;
  }
  return s;
}

// lo <= sqrt(s) <= hi with hi - lo <= 2^(-k), s rational >= 0.
void sqrt_interval(const mpq_class& s, int k, Dyadic& lo, Dyadic& hi) {
  if (sgn(s) == 0) {
    lo = hi = Dyadic();
    return;
  }
  // floor(sqrt(s * 4^j)) brackets sqrt(s)*2^j within 1/den.
  long j = std::max<long>(k + 1, 1);
  mpz_class scaled_num = s.get_num();
  mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), 2 * j);
  // integer sqrt of num/den: isqrt(num * den) / den >= ... use floor(sqrt(num*den))/den
  mpz_class nd = scaled_num * s.get_den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), nd.get_mpz_t());
  // r <= sqrt(num*den) < r+1, so r/den <= sqrt(num/den)*den/den ... derive via
  // sqrt(num/den) = sqrt(num*den)/den.
  mpq_class lo_q(r, s.get_den());
  lo_q.canonicalize();
  mpq_class hi_q(r + 1, s.get_den());
  hi_q.canonicalize();
  // den can exceed 1; both bounds bracket sqrt(s)*2^j. Convert back.
  lo = Dyadic::from_rational(lo_q, j + k + 4, RoundMode::Down).mul_pow2(-j);
  hi = Dyadic::from_rational(hi_q, j + k + 4, RoundMode::Up).mul_pow2(-j);
  if (lo.sign() < 0) lo = Dyadic();
}

}  // namespace

NormInterval norm_interval(const Norm& norm, const DyadicPoint& v, int k) {
  if (norm.p != PExp::Two) {
    Dyadic x = norm.scale * poly_norm_raw(norm.p, v);
    return {x, x};
  }
  mpq_class s = sq_sum(v);
  mpq_class sc = norm.scale.to_rational();
  s *= sc * sc;  // scale folded into the radicand
  // Tighten until the bracket fits 2^(-k); one extra round suffices in
  // practice because sqrt_interval already overshoots.
  for (int kk = k + 1;; kk += 4) {
    Dyadic lo, hi;
    sqrt_interval(s, kk, lo, hi);
    if (hi - lo <= Dyadic::pow2(-k)) return {lo, hi};
    if (kk > k + 64) throw std::logic_error("norm_interval: no convergence");
  }
}

int norm_cmp(const Norm& norm, const DyadicPoint& v, const mpq_class& t) {
  if (norm.p != PExp::Two) {
    mpq_class x = (norm.scale * poly_norm_raw(norm.p, v)).to_rational();
    return ::cmp(x, t) < 0 ? -1 : (x == t ? 0 : 1);
  }
  mpq_class s = sq_sum(v);
  mpq_class sc = norm.scale.to_rational();
  return sqrt_cmp(s * sc * sc, t);
}

Dyadic cross_norm_bound(const Norm& from, const Norm& to) {
  // ||v||_q <= d^(max(0, 1/q - 1/p)) * ||v||_p for p,q in {1,2,inf}.
  auto inv_p = [](PExp p) { return p == PExp::One ? 2 : (p == PExp::Two ? 1 : 0); };  // 2/p units of 1/2
  int diff = inv_p(to.p) - inv_p(from.p);                                             // in halves
  mpq_class factor = 1;
  mpq_class d(from.dim);
  if (diff >= 2) factor = d;
  else if (diff == 1) {
    // sqrt(d): dyadic upper bound
    mpz_class r;
    mpz_class dz(from.dim);
    mpz_mul_2exp(dz.get_mpz_t(), dz.get_mpz_t(), 40);
    mpz_sqrt(r.get_mpz_t(), dz.get_mpz_t());
    factor = mpq_class(r + 1) / mpq_class(mpz_class(1) << 20);
  }
  mpq_class c = to.scale.to_rational() / from.scale.to_rational() * factor;
  return Dyadic::from_rational(c, 24, RoundMode::Up);
}

bool is_well_behaved(const Norm& norm) {
  if (norm.scale.sign() <= 0 || norm.dim < 1) return false;
  mpq_class lam = norm.scale.to_rational();
  mpq_class d(norm.dim);
  switch (norm.p) {
    case PExp::Inf:
      return lam <= 2;
    case PExp::One:
      return lam * d <= 2;
    case PExp::Two:
      return lam * lam * d <= 4;
  }
  return false;
}

}  // namespace csets
