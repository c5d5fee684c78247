#include <stdexcept>

#include "csets/groundtruth.hpp"
#include "csets/norms.hpp"

namespace csets {

namespace {

// Exact inclusion-1 for polyhedral norm pairs in d <= 2: the unit target
// ball, viewed as a shape, must sit inside the union of source balls.
bool exact_cover(const CoveragePattern& pat) {
  std::vector<GroundTruthSet> balls;
  balls.reserve(pat.points.size());
  for (const auto& p : pat.points)
    balls.push_back(GroundTruthSet::norm_ball(p, Dyadic::pow2(-pat.k), pat.source));
  GroundTruthSet cover = GroundTruthSet::finite_union(std::move(balls));
  BallCert c = cover.ball_inside(DyadicPoint::zero(pat.source.dim), Dyadic(1), pat.target);
  if (c == BallCert::Unknown) throw std::logic_error("exact_cover: unexpected Unknown");
  return c == BallCert::Yes;
}

bool probe_cover(const CoveragePattern& pat) {
  const Norm& A = pat.source;
  const Norm& B = pat.target;
  int d = A.dim;
  // covering radius 15/16 * 2^(-k), probe margin 2^(-j)
  int j = pat.k + 5;
  mpq_class radius = mpq_class(15, 16) * Dyadic::pow2(-pat.k).to_rational();
  mpq_class need = radius - Dyadic::pow2(-j).to_rational();
  if (sgn(need) <= 0) return false;
  mpq_class gbound = 1 + Dyadic::pow2(-j).to_rational();
  Dyadic win = cross_norm_bound(B, Norm::linf(d)) * Dyadic(2);
  return for_each_grid_point(DyadicPoint::zero(d), win, j, [&](const DyadicPoint& g) {
    if (norm_cmp(B, g, gbound) > 0) return true;
    for (const auto& p : pat.points) {
      if (norm_cmp(A, g - p, need) <= 0) return true;
    }
    return false;  // uncovered probe point
  });
}

}  // namespace

bool verify_coverage(const CoveragePattern& pat) {
  const Norm& A = pat.source;
  const Norm& B = pat.target;
  if (pat.points.empty()) return false;
  // Inclusion 2, per point: ||p||_B + C_{A->B} * 2^(-k) <= 3/2 exactly.
  Dyadic cab = cross_norm_bound(A, B);
  mpq_class budget = mpq_class(3, 2) - (cab * Dyadic::pow2(-pat.k)).to_rational();
  if (sgn(budget) < 0) return false;
  for (const auto& p : pat.points) {
    if (norm_cmp(B, p, budget) > 0) return false;
  }
  bool polyhedral = A.p != PExp::Two && B.p != PExp::Two && A.dim <= 2;
  return polyhedral ? exact_cover(pat) : probe_cover(pat);
}

CoveragePattern coverage_pattern(const Norm& source, const Norm& target, int k_max) {
  if (!is_well_behaved(source) || !is_well_behaved(target))
    throw std::invalid_argument("coverage_pattern: norms must be well-behaved");
  if (source.dim != target.dim) throw std::invalid_argument("coverage_pattern: dimension mismatch");
  int d = source.dim;
  for (int k = 0; k <= k_max; ++k) {
    CoveragePattern pat;
    pat.k = k;
    pat.source = source;
    pat.target = target;
    Dyadic cab = cross_norm_bound(source, target);
    mpq_class budget = mpq_class(3, 2) - (cab * Dyadic::pow2(-k)).to_rational();
    if (sgn(budget) <= 0) continue;
    Dyadic win = cross_norm_bound(target, Norm::linf(d)) * Dyadic(2);
    mpq_class cand_bound(5, 4);
    for_each_grid_point(DyadicPoint::zero(d), win, k, [&](const DyadicPoint& p) {
      if (norm_cmp(target, p, cand_bound) <= 0 && norm_cmp(target, p, budget) <= 0)
        pat.points.push_back(p);
      return true;
    });
    if (!pat.points.empty() && verify_coverage(pat)) return pat;
  }
  throw std::runtime_error("coverage_pattern: no verified pattern up to k_max for " +
                           source.to_text() + " -> " + target.to_text());
}

}  // namespace csets
