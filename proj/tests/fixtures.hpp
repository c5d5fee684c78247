#pragma once

#include <functional>
#include <string>
#include <vector>

#include "csets/groundtruth.hpp"
#include "csets/validate.hpp"

namespace csets::test {

inline DyadicPoint P2(long x, long y, long e = 0) {
  return DyadicPoint(std::vector<Dyadic>{Dyadic::make(x, e), Dyadic::make(y, e)});
}
inline DyadicPoint P1(long x, long e = 0) {
  return DyadicPoint(std::vector<Dyadic>{Dyadic::make(x, e)});
}

/// The standard fixture family: unit box, inf-ball, 1-ball, dyadic triangle,
/// two-box union, diagonal segment (d = 2), plus 1D variants.
struct Fixture {
  std::string id;
  GroundTruthSet set;
};

inline std::vector<Fixture> standard_fixtures_2d() {
  std::vector<Fixture> out;
  out.push_back({"unit-box", GroundTruthSet::box(P2(0, 0), P2(1, 1))});
  out.push_back({"inf-ball", GroundTruthSet::norm_ball(P2(0, 0), Dyadic(1), Norm::linf(2))});
  out.push_back({"one-ball", GroundTruthSet::norm_ball(P2(0, 0), Dyadic(1), Norm::l1(2))});
  std::vector<Halfspace> hs;
  hs.push_back({P2(-1, 0), Dyadic(0)});
  hs.push_back({P2(0, -1), Dyadic(0)});
  hs.push_back({P2(1, 1), Dyadic(1)});
  out.push_back({"triangle", GroundTruthSet::polytope(hs, 2)});
  out.push_back({"two-box",
                 GroundTruthSet::finite_union({GroundTruthSet::box(P2(-1, -1), P2(0, 0)),
                                               GroundTruthSet::box(P2(1, 0, 1), P2(1, 1))})});
  out.push_back({"segment", GroundTruthSet::segment(P2(0, 0), P2(1, 1))});
  return out;
}

inline std::vector<Fixture> standard_fixtures_1d() {
  std::vector<Fixture> out;
  out.push_back({"unit-interval", GroundTruthSet::box(P1(0), P1(1))});
  out.push_back({"two-point",
                 GroundTruthSet::finite_union({GroundTruthSet::singleton(P1(0)),
                                               GroundTruthSet::singleton(P1(1))})});
  out.push_back({"offset-interval", GroundTruthSet::box(P1(-3, 1), P1(5, 2))});
  return out;
}

/// Valid non-canonical name: flips the canonical answer on a deterministic
/// hash whenever the query sits strictly inside the representation's
/// don't-care region. LocalSet flips inside [9/8, 15/8]*2^-n; WeakMembership
/// flips 1 -> 0 where the ball is certainly not contained; Grid drops
/// members with distance in (2^-(n+1), 2^-n]; Dist/RelDist dither by
/// +-2^-(n+2).
inline RepName gap_perturbed_name(const GroundTruthSet& truth, RepKind kind, const Norm& norm) {
  RepName canon = truth.canonical_name(kind, norm);
  GroundTruthSet t = truth;
  Norm nm = norm;
  auto flip = [](const DyadicPoint& q, int n) {
    std::hash<std::string> h;
    return (h(q.to_text() + "#" + std::to_string(n)) & 1) != 0;
  };
  OracleFn fn;
  switch (kind) {
    case RepKind::LocalSet:
      fn = [t, nm, canon, flip](const DyadicPoint& q, Precision n) {
        Answer a = canon.query(q, n);
        mpq_class lo = mpq_class(9, 8) * Dyadic::pow2(-n).to_rational();
        mpq_class hi = mpq_class(15, 8) * Dyadic::pow2(-n).to_rational();
        if (t.dist_cmp(q, nm, lo) >= 0 && t.dist_cmp(q, nm, hi) <= 0 && flip(q, n))
          return Answer::bit(!a.as_bit());
        return a;
      };
      break;
    case RepKind::WeakMembership:
      fn = [t, nm, canon, flip](const DyadicPoint& q, Precision n) {
        Answer a = canon.query(q, n);
        if (a.as_bit() && flip(q, n) &&
            t.ball_inside(q, Dyadic::pow2(-n), nm) == BallCert::No)
          return Answer::bit(false);
        return a;
      };
      break;
    case RepKind::Grid:
      fn = [t, nm, canon, flip](const DyadicPoint& q, Precision n) {
        Answer a = canon.query(q, n);
        if (a.as_bit() && flip(q, n) &&
            t.dist_cmp(q, nm, Dyadic::pow2(-(n + 1)).to_rational()) > 0)
          return Answer::bit(false);
        return a;
      };
      break;
    case RepKind::Dist:
    case RepKind::RelDist:
      fn = [canon, flip](const DyadicPoint& q, Precision n) {
        Answer a = canon.query(q, n);
        Dyadic v = a.as_scalar();
        if (flip(q, n)) {
          v = v + Dyadic::pow2(-(n + 2));
        } else {
          v = v - Dyadic::pow2(-(n + 2));
          if (v.sign() < 0) v = Dyadic();
        }
        return Answer::scalar(v);
      };
      break;
    default:
      return canon;
  }
  return RepName(kind, truth.dim(), norm, canon.advice(), std::move(fn), "perturbed");
}

}  // namespace csets::test
