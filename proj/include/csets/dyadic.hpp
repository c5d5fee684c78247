#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csets {

/// Precision parameter: admissible error is 2^(-n). Negative values are legal
/// and mean coarse answers.
using Precision = int;

enum class RoundMode { NearestTiesUp, Down, Up };

/// Exact binary rational a * 2^(-m). Canonical form: numerator odd, or
/// numerator == 0 and exponent == 0. Immutable after construction.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long v) : num_(v), exp_(0) { canonicalize(); }  // NOLINT(implicit)
  Dyadic(const mpz_class& v) : num_(v), exp_(0) { canonicalize(); }

  /// value = numerator * 2^(-exponent)
  static Dyadic make(mpz_class numerator, long exponent);
  /// 2^k
  static Dyadic pow2(long k);

  const mpz_class& numerator() const { return num_; }
  long exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }
  /// true iff value lies on the grid D_m (spacing 2^(-m))
  bool on_grid(long m) const { return num_ == 0 || exp_ <= m; }

  Dyadic operator-() const;
  Dyadic abs() const { return sign() < 0 ? -*this : *this; }
  Dyadic mul_pow2(long k) const;  // value * 2^k, exact

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  int cmp(const Dyadic& o) const;
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) >= 0; }

  static const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
  static const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

  /// Round onto D_m. Down/Up are one-sided; NearestTiesUp has error <= 2^(-m-1).
  Dyadic round_to(long m, RoundMode mode) const;

  /// floor(value * 2^m) resp. ceil(value * 2^m) as an exact integer.
  mpz_class floor_scaled(long m) const;
  mpz_class ceil_scaled(long m) const;

  mpq_class to_rational() const;
  static Dyadic from_rational(const mpq_class& r, long m, RoundMode mode);

  /// Text form: "<numerator>p<e>" meaning numerator * 2^e, e.g. "3p-2" = 3/4.
  std::string to_text() const;
  static std::optional<Dyadic> parse(std::string_view s);

 private:
  void canonicalize();
  mpz_class num_;
  long exp_;
};

/// Point of fixed dimension d >= 1 with canonical dyadic coordinates.
class DyadicPoint {
 public:
  DyadicPoint() = default;
  explicit DyadicPoint(std::vector<Dyadic> coords) : c_(std::move(coords)) {}
  static DyadicPoint zero(int dim) { return DyadicPoint(std::vector<Dyadic>(dim)); }

  int dim() const { return static_cast<int>(c_.size()); }
  const Dyadic& operator[](int i) const { return c_[i]; }
  const std::vector<Dyadic>& coords() const { return c_; }

  DyadicPoint operator+(const DyadicPoint& o) const;
  DyadicPoint operator-(const DyadicPoint& o) const;
  DyadicPoint operator-() const;
  DyadicPoint scaled(const Dyadic& s) const;
  DyadicPoint mul_pow2(long k) const;
  Dyadic dot(const DyadicPoint& o) const;

  /// Lexicographic order on coordinate tuples; the global tie-break order.
  int lex_cmp(const DyadicPoint& o) const;
  friend bool operator==(const DyadicPoint& a, const DyadicPoint& b) { return a.lex_cmp(b) == 0; }
  friend bool operator!=(const DyadicPoint& a, const DyadicPoint& b) { return a.lex_cmp(b) != 0; }
  friend bool operator<(const DyadicPoint& a, const DyadicPoint& b) { return a.lex_cmp(b) < 0; }

  std::string to_text() const;  // "(a,b,...)"
  static std::optional<DyadicPoint> parse(std::string_view s);

 private:
  std::vector<Dyadic> c_;
};

/// All points of D^d_m within inf-norm distance `radius` of `center`, in
/// lexicographic order. radius >= 0.
std::vector<DyadicPoint> enumerate_grid(const DyadicPoint& center, const Dyadic& radius, long m);

/// Streaming variant of enumerate_grid; visits points in lexicographic order
/// until the visitor returns false. Returns false iff aborted.
bool for_each_grid_point(const DyadicPoint& center, const Dyadic& radius, long m,
                         const std::function<bool(const DyadicPoint&)>& visit);

}  // namespace csets
