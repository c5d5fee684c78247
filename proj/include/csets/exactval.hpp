#pragma once

#include <gmpxx.h>

#include <vector>

#include "csets/dyadic.hpp"

namespace csets {

/// One exact nonnegative-radicand term: value = a + sqrt(s), a,s rational,
/// s >= 0. Rational values use s == 0.
struct ExactAtom {
  mpq_class a;
  mpq_class s;

  static ExactAtom rational(mpq_class v) { return {std::move(v), 0}; }
  static ExactAtom root(mpq_class s) { return {0, std::move(s)}; }

  /// trichotomy of (a + sqrt(s)) vs t
  int cmp(const mpq_class& t) const;
  /// [lo, hi] with hi - lo <= 2^(-k)
  void interval(int k, Dyadic& lo, Dyadic& hi) const;
};

/// Exact min (distances) or max (support values) of finitely many atoms,
/// compared and bracketed without ever evaluating a square root numerically.
class ExactVal {
 public:
  static ExactVal minimum(std::vector<ExactAtom> atoms) { return ExactVal(std::move(atoms), true); }
  static ExactVal maximum(std::vector<ExactAtom> atoms) { return ExactVal(std::move(atoms), false); }

  bool empty() const { return atoms_.empty(); }
  const std::vector<ExactAtom>& atoms() const { return atoms_; }

  int cmp(const mpq_class& t) const;
  void interval(int k, Dyadic& lo, Dyadic& hi) const;
  Dyadic approx(int k) const;  // within 2^(-k) of the value

 private:
  ExactVal(std::vector<ExactAtom> atoms, bool is_min) : atoms_(std::move(atoms)), is_min_(is_min) {}
  std::vector<ExactAtom> atoms_;
  bool is_min_;
};

}  // namespace csets
