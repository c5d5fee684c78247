#include "csets/dyadic.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace csets {

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), tz);
    exp_ -= static_cast<long>(tz);
  }
}

Dyadic Dyadic::make(mpz_class numerator, long exponent) {
  Dyadic d;
  d.num_ = std::move(numerator);
  d.exp_ = exponent;
  d.canonicalize();
  return d;
}

Dyadic Dyadic::pow2(long k) { return make(1, -k); }

Dyadic Dyadic::operator-() const {
  Dyadic d;
  d.num_ = -num_;
  d.exp_ = exp_;
  return d;
}

Dyadic Dyadic::mul_pow2(long k) const {
  if (is_zero()) return Dyadic();
  Dyadic d;
  d.num_ = num_;
  d.exp_ = exp_ - k;
  return d;
}

namespace {
// Numerators of a and b rescaled to the common exponent max(ea, eb).
void align(const Dyadic& a, const Dyadic& b, mpz_class& na, mpz_class& nb, long& e) {
  e = std::max(a.exponent(), b.exponent());
  na = a.numerator();
  nb = b.numerator();
  if (a.exponent() < e) mpz_mul_2exp(na.get_mpz_t(), na.get_mpz_t(), e - a.exponent());
  if (b.exponent() < e) mpz_mul_2exp(nb.get_mpz_t(), nb.get_mpz_t(), e - b.exponent());
}
}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  mpz_class na, nb;
  long e;
  align(a, b, na, nb, e);
  return Dyadic::make(na + nb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  mpz_class na, nb;
  long e;
  align(a, b, na, nb, e);
  return Dyadic::make(na - nb, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  Dyadic d = Dyadic::make(a.numerator() * b.numerator(), a.exponent() + b.exponent());
  return d;
}

int Dyadic::cmp(const Dyadic& o) const {
  int sa = sign(), sb = o.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  mpz_class na, nb;
  long e;
  align(*this, o, na, nb, e);
  return ::cmp(na, nb) < 0 ? -1 : (na == nb ? 0 : 1);
}

Dyadic Dyadic::round_to(long m, RoundMode mode) const {
  if (on_grid(m)) return *this;
  long shift = exp_ - m;  // > 0 here
  mpz_class q;
  switch (mode) {
    case RoundMode::Down:
      mpz_fdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), shift);
      break;
    case RoundMode::Up:
      mpz_cdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), shift);
      break;
    case RoundMode::NearestTiesUp: {
      mpz_class half;
      mpz_setbit(half.get_mpz_t(), shift - 1);  // 2^(shift-1)
      mpz_class t = num_ + half;
      mpz_fdiv_q_2exp(q.get_mpz_t(), t.get_mpz_t(), shift);
      break;
    }
  }
  return make(q, m);
}

mpz_class Dyadic::floor_scaled(long m) const {
  mpz_class r = num_;
  long shift = exp_ - m;
  if (shift <= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), -shift);
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), shift);
  }
  return r;
}

mpz_class Dyadic::ceil_scaled(long m) const {
  mpz_class r = num_;
  long shift = exp_ - m;
  if (shift <= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), -shift);
  } else {
    mpz_cdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), shift);
  }
  return r;
}

mpq_class Dyadic::to_rational() const {
  mpq_class r;
  if (exp_ >= 0) {
    mpz_class den;
    mpz_setbit(den.get_mpz_t(), exp_);
    r = mpq_class(num_, den);
  } else {
    mpz_class n = num_;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), -exp_);
    r = mpq_class(n);
  }
  r.canonicalize();
  return r;
}

Dyadic Dyadic::from_rational(const mpq_class& r, long m, RoundMode mode) {
  // value*2^m = num*2^m / den
  mpz_class n = r.get_num();
  if (m >= 0) {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), m);
  }
  mpz_class den = r.get_den();
  if (m < 0) {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -m);
  }
  mpz_class q;
  switch (mode) {
    case RoundMode::Down:
      mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
      break;
    case RoundMode::Up:
      mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
      break;
    case RoundMode::NearestTiesUp: {
      mpz_class t = 2 * n + den;
      mpz_class den2 = 2 * den;
      mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), den2.get_mpz_t());
      break;
    }
  }
  return make(q, m);
}

std::string Dyadic::to_text() const {
  std::ostringstream os;
  os << num_.get_str() << 'p' << -exp_;
  return os.str();
}

std::optional<Dyadic> Dyadic::parse(std::string_view s) {
  auto p = s.find('p');
  if (p == std::string_view::npos || p == 0 || p + 1 >= s.size()) return std::nullopt;
  std::string numpart(s.substr(0, p));
  std::string exppart(s.substr(p + 1));
  for (size_t i = 0; i < numpart.size(); ++i) {
    char c = numpart[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && (c == '-' || c == '+'))))
      return std::nullopt;
  }
  long e = 0;
  auto [ptr, ec] = std::from_chars(exppart.data(), exppart.data() + exppart.size(), e);
  if (ec != std::errc() || ptr != exppart.data() + exppart.size()) return std::nullopt;
  mpz_class n;
  if (mpz_set_str(n.get_mpz_t(), numpart.c_str(), 10) != 0) return std::nullopt;
  return make(n, -e);
}

DyadicPoint DyadicPoint::operator+(const DyadicPoint& o) const {
  std::vector<Dyadic> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return DyadicPoint(std::move(r));
}

DyadicPoint DyadicPoint::operator-(const DyadicPoint& o) const {
  std::vector<Dyadic> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return DyadicPoint(std::move(r));
}

DyadicPoint DyadicPoint::operator-() const {
  std::vector<Dyadic> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return DyadicPoint(std::move(r));
}

DyadicPoint DyadicPoint::scaled(const Dyadic& s) const {
  std::vector<Dyadic> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return DyadicPoint(std::move(r));
}

DyadicPoint DyadicPoint::mul_pow2(long k) const {
  std::vector<Dyadic> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].mul_pow2(k);
  return DyadicPoint(std::move(r));
}

Dyadic DyadicPoint::dot(const DyadicPoint& o) const {
  Dyadic s;
  for (size_t i = 0; i < c_.size(); ++i) s = s + c_[i] * o.c_[i];
  return s;
}

int DyadicPoint::lex_cmp(const DyadicPoint& o) const {
  for (size_t i = 0; i < c_.size(); ++i) {
    int c = c_[i].cmp(o.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string DyadicPoint::to_text() const {
  std::string s = "(";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].to_text();
  }
  s += ')';
  return s;
}

std::optional<DyadicPoint> DyadicPoint::parse(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<Dyadic> coords;
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string_view tok = (comma == std::string_view::npos) ? s.substr(start) : s.substr(start, comma - start);
    auto d = Dyadic::parse(tok);
    if (!d) return std::nullopt;
    coords.push_back(*d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.empty()) return std::nullopt;
  return DyadicPoint(std::move(coords));
}

bool for_each_grid_point(const DyadicPoint& center, const Dyadic& radius, long m,
                         const std::function<bool(const DyadicPoint&)>& visit) {
  if (radius.sign() < 0) return true;
  int d = center.dim();
  std::vector<mpz_class> lo(d), hi(d), cur(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = (center[i] - radius).ceil_scaled(m);
    hi[i] = (center[i] + radius).floor_scaled(m);
    if (lo[i] > hi[i]) return true;  // empty
    cur[i] = lo[i];
  }
  std::vector<Dyadic> coords(d);
  while (true) {
    for (int i = 0; i < d; ++i) coords[i] = Dyadic::make(cur[i], m);
    if (!visit(DyadicPoint(coords))) return false;
    int i = d - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] <= hi[i]) break;
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) return true;
  }
}

std::vector<DyadicPoint> enumerate_grid(const DyadicPoint& center, const Dyadic& radius, long m) {
  if (radius.sign() < 0) throw std::invalid_argument("enumerate_grid: negative radius");
  std::vector<DyadicPoint> out;
  for_each_grid_point(center, radius, m, [&](const DyadicPoint& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace csets
