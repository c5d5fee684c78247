#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csets/dyadic.hpp"

namespace csets {

enum class PExp { One, Two, Inf };

/// Scaled p-norm lambda * ||.||_p with p in {1,2,inf}. lambda > 0 dyadic.
struct Norm {
  PExp p = PExp::Inf;
  Dyadic scale = Dyadic(1);
  int dim = 1;

  static Norm linf(int d) { return Norm{PExp::Inf, Dyadic(1), d}; }
  static Norm l1(int d) { return Norm{PExp::One, Dyadic(1), d}; }
  static Norm l2(int d) { return Norm{PExp::Two, Dyadic(1), d}; }

  bool same_as(const Norm& o) const { return p == o.p && scale == o.scale && dim == o.dim; }
  std::string to_text() const;  // "linf", "l1", "l2", "<dyadic>*l1"
  static std::optional<Norm> parse(std::string_view s, int dim);
};

struct NormInterval {
  Dyadic lo, hi;  // lo <= ||v|| <= hi
};

/// Bracket of the norm value with width <= 2^(-k); exact (lo == hi) for
/// p in {1, inf}.
NormInterval norm_interval(const Norm& norm, const DyadicPoint& v, int k);

/// Exact trichotomy of ||v|| against a rational threshold: -1/0/+1.
int norm_cmp(const Norm& norm, const DyadicPoint& v, const mpq_class& t);

/// Exact trichotomy of sqrt(s) against rational t (s >= 0).
int sqrt_cmp(const mpq_class& s, const mpq_class& t);

/// Dyadic upper bound c with ||v||_to <= c * ||v||_from for all v.
Dyadic cross_norm_bound(const Norm& from, const Norm& to);

/// Both well-behavedness conditions for the scaled p-norm family reduce to
/// lambda * d^(1/p) <= 2, evaluated exactly.
bool is_well_behaved(const Norm& norm);

/// Finite set D in D^d_k of grid centers whose source balls of radius 2^(-k)
/// sandwich the unit target ball between radii 1 and 3/2.
struct CoveragePattern {
  int k = 0;
  std::vector<DyadicPoint> points;
  Norm source, target;
};

/// Constructive verifier for both pattern inclusions. For polyhedral norm
/// pairs inclusion 1 is decided exactly (the uncovered region of the unit
/// target ball is emptiness-checked as a linear system); Euclidean cases use
/// a margin-corrected probe grid against the radius 15/16 * 2^(-k), which is
/// sufficient because those coverings are never boundary-tight in d <= 2.
bool verify_coverage(const CoveragePattern& pat);

/// Searches k = 0,1,2,... with the candidate set of all p in D^d_k of target
/// norm <= 5/4 whose source ball stays inside the 3/2 target ball; returns
/// the first verified pattern. Throws if none is found up to k_max.
CoveragePattern coverage_pattern(const Norm& source, const Norm& target, int k_max = 8);

}  // namespace csets
