#include "csets/set_ops.hpp"

#include <optional>

#include "csets/translators.hpp"
#include "internal_util.hpp"

namespace csets {
namespace set_ops {

using detail::pow2_q;
using detail::require_inner_exp;
using detail::require_outer;

DyadicPoint choice_setrep(const RepName& in, Precision n) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("choice_setrep: local-set input required");
  int b = require_outer(in, "choice_setrep");
  int d = in.dim();
  DyadicPoint cur = DyadicPoint::zero(d);
  // invariant: some x in S has ||x - cur|| <= 2^-m(i), starting at m(0) = -b
  int steps = n + b + 2;
  for (int i = 1; i <= steps; ++i) {
    int m = i - b;
    Dyadic radius = Dyadic::pow2(1 - m) + Dyadic::pow2(-(m + 2));
    Dyadic box = cross_norm_bound(in.norm(), Norm::linf(d)) * radius;
    std::optional<DyadicPoint> pick;
    for_each_grid_point(cur, box, m + 2, [&](const DyadicPoint& p) {
      if (norm_cmp(in.norm(), p - cur, radius.to_rational()) > 0) return true;
      if (in.query(p, m + 1).as_bit()) {
        pick = p;
        return false;  // lexicographically first positive
      }
      return true;
    });
    if (!pick) {
      // a valid name of a nonempty set always yields a candidate; stay put
      break;
    }
    cur = *pick;
  }
  return cur;
}

DyadicPoint choice_wmem(const RepName& in, Precision n) {
  if (in.kind() != RepKind::WeakMembership) throw std::invalid_argument("choice_wmem: wmem input required");
  int r = require_inner_exp(in, "choice_wmem");
  int b = require_outer(in, "choice_wmem");
  int d = in.dim();
  int M = std::max(r + 1, n);
  Dyadic reach = Dyadic::pow2(b) + Dyadic::pow2(-M);
  Dyadic box = cross_norm_bound(in.norm(), Norm::linf(d)) * reach;
  std::optional<DyadicPoint> pick;
  for_each_grid_point(DyadicPoint::zero(d), box, M + 1, [&](const DyadicPoint& p) {
    if (norm_cmp(in.norm(), p, reach.to_rational()) > 0) return true;
    if (in.query(p, M).as_bit()) {
      pick = p;
      return false;
    }
    return true;
  });
  if (!pick) throw std::runtime_error("choice_wmem: no positive point found (invalid advice?)");
  return *pick;
}

namespace {

Advice union_advice(const RepName& a, const RepName& b) {
  Advice adv;
  if (a.advice().outer_radius_exp && b.advice().outer_radius_exp)
    adv.outer_radius_exp = std::max(*a.advice().outer_radius_exp, *b.advice().outer_radius_exp);
  // an inner ball of either part is an inner ball of the union
  if (a.advice().inner_point) {
    adv.inner_point = a.advice().inner_point;
    adv.inner_radius_exp = a.advice().inner_radius_exp;
  } else if (b.advice().inner_point) {
    adv.inner_point = b.advice().inner_point;
    adv.inner_radius_exp = b.advice().inner_radius_exp;
  }
  return adv;
}

void require_same(const RepName& a, const RepName& b, const char* who) {
  if (a.kind() != b.kind() || a.dim() != b.dim() || !a.norm().same_as(b.norm()))
    throw std::invalid_argument(std::string(who) + ": kind/dimension/norm mismatch");
}

}  // namespace

RepName set_union(const RepName& in1, const RepName& in2) {
  require_same(in1, in2, "set_union");
  RepKind k = in1.kind();
  if (k == RepKind::WeakMembership || k == RepKind::WeakOpt)
    throw std::invalid_argument("set_union: supported kinds are Dist, RelDist, LocalSet, Grid");
  OracleFn fn;
  if (k == RepKind::Dist || k == RepKind::RelDist) {
    fn = [in1, in2](const DyadicPoint& q, Precision n) {
      Dyadic v1 = in1.query(q, n).as_scalar();
      Dyadic v2 = in2.query(q, n).as_scalar();
      return Answer::scalar(Dyadic::min(v1, v2));
    };
  } else {
    fn = [in1, in2](const DyadicPoint& q, Precision n) {
      if (in1.query(q, n).as_bit()) return Answer::bit(true);
      return in2.query(q, n);
    };
  }
  return RepName(k, in1.dim(), in1.norm(), union_advice(in1, in2), std::move(fn),
                 in1.label() + "+" + in2.label() + "|union");
}

RepName union_wmem_convex(const RepName& in1, const RepName& in2) {
  require_same(in1, in2, "union_wmem_convex");
  if (in1.kind() != RepKind::WeakMembership)
    throw std::invalid_argument("union_wmem_convex: wmem inputs required");
  OracleFn fn = [in1, in2](const DyadicPoint& q, Precision n) {
    mpq_class reach = mpq_class(3) * pow2_q(-(n + 2));
    Dyadic radius = cross_norm_bound(in1.norm(), Norm::linf(in1.dim())) *
                    Dyadic(3).mul_pow2(-(n + 2));
    bool hit = !for_each_grid_point(q, radius, n + 2, [&](const DyadicPoint& p) {
      if (norm_cmp(in1.norm(), p - q, reach) > 0) return true;
      if (in1.query(p, n + 2).as_bit() || in2.query(p, n + 2).as_bit()) return false;
      return true;
    });
    return Answer::bit(hit);
  };
  return RepName(RepKind::WeakMembership, in1.dim(), in1.norm(), union_advice(in1, in2),
                 std::move(fn), in1.label() + "+" + in2.label() + "|wmem-union");
}

RepName intersection_wmem(const RepName& in1, const RepName& in2) {
  require_same(in1, in2, "intersection_wmem");
  if (in1.kind() != RepKind::WeakMembership)
    throw std::invalid_argument("intersection_wmem: wmem inputs required");
  OracleFn fn = [in1, in2](const DyadicPoint& q, Precision n) {
    if (!in1.query(q, n).as_bit()) return Answer::bit(false);
    return in2.query(q, n);
  };
  Advice adv;  // an inner ball of the intersection is not derivable here
  if (in1.advice().outer_radius_exp && in2.advice().outer_radius_exp)
    adv.outer_radius_exp = std::min(*in1.advice().outer_radius_exp, *in2.advice().outer_radius_exp);
  return RepName(RepKind::WeakMembership, in1.dim(), in1.norm(), adv, std::move(fn),
                 in1.label() + "&" + in2.label() + "|wmem-intersection");
}

RepName intersection_setrep_convex(const RepName& in1, const RepName& in2, int r_prime) {
  require_same(in1, in2, "intersection_setrep_convex");
  if (in1.kind() != RepKind::LocalSet)
    throw std::invalid_argument("intersection_setrep_convex: local-set inputs required");
  int b1 = require_outer(in1, "intersection_setrep_convex");
  int b2 = require_outer(in2, "intersection_setrep_convex");
  int bmax = std::max(b1, b2);
  OracleFn fn = [in1, in2, r_prime, bmax](const DyadicPoint& q, Precision n) {
    int N = n + r_prime + bmax + 2;
    mpq_class reach = mpq_class(3) * pow2_q(-(n + 1) - 1);  // 3/2 * 2^-(n+1)
    Dyadic radius = cross_norm_bound(in1.norm(), Norm::linf(in1.dim())) *
                    Dyadic(3).mul_pow2(-(n + 2));
    bool hit = !for_each_grid_point(q, radius, N, [&](const DyadicPoint& p) {
      if (norm_cmp(in1.norm(), p - q, reach) > 0) return true;
      if (in1.query(p, N).as_bit() && in2.query(p, N).as_bit()) return false;
      return true;
    });
    return Answer::bit(hit);
  };
  Advice adv;
  adv.outer_radius_exp = std::min(b1, b2);
  adv.inner_radius_exp = r_prime;
  return RepName(RepKind::LocalSet, in1.dim(), in1.norm(), adv, std::move(fn),
                 in1.label() + "&" + in2.label() + "|convex-intersection");
}

RepName projection_general(const RepName& in, int e) {
  if (in.kind() != RepKind::Grid) throw std::invalid_argument("projection_general: grid input required");
  if (e < 1 || e > in.dim()) throw std::invalid_argument("projection_general: 1 <= e <= d required");
  int b = require_outer(in, "projection_general");
  int d = in.dim();
  if (e == d) return in;
  // The projected norm: same family on the subspace (coordinate projections
  // of well-behaved norms are 1-Lipschitz onto the first e coordinates).
  Norm sub{in.norm().p, in.norm().scale, e};
  OracleFn fn = [in, e, d, b](const DyadicPoint& q, Precision n) {
    for (int i = 0; i < e; ++i)
      if (!q[i].on_grid(n)) return Answer::bit(false);
    Dyadic reach = Dyadic::pow2(b) + Dyadic::pow2(-n);
    bool hit = !for_each_grid_point(DyadicPoint::zero(d - e), reach, n, [&](const DyadicPoint& y) {
      std::vector<Dyadic> full(d);
      for (int i = 0; i < e; ++i) full[i] = q[i];
      for (int i = e; i < d; ++i) full[i] = y[i - e];
      if (in.query(DyadicPoint(full), n).as_bit()) return false;
      return true;
    });
    return Answer::bit(hit);
  };
  return RepName(RepKind::Grid, e, sub, in.advice(), std::move(fn), in.label() + "|projected");
}

RepName projection_convex_interval(const RepName& in, int axis) {
  if (in.kind() != RepKind::WeakMembership)
    throw std::invalid_argument("projection_convex_interval: wmem input required");
  if (axis < 0 || axis >= in.dim()) throw std::invalid_argument("projection_convex_interval: bad axis");
  int r = require_inner_exp(in, "projection_convex_interval");
  int b = require_outer(in, "projection_convex_interval");
  RepName wopt = translators::wmem_to_wopt(in);
  int d = in.dim();
  Norm sub{in.norm().p, in.norm().scale, 1};
  OracleFn fn = [wopt, axis, d, r, b](const DyadicPoint& q, Precision n) {
    if (!q[0].on_grid(n)) return Answer::bit(false);
    int m = n + std::abs(b) + std::abs(r) + 3;
    std::vector<Dyadic> cplus(d), cminus(d);
    cplus[axis] = Dyadic(1);
    cminus[axis] = Dyadic(-1);
    Answer aplus = wopt.query(DyadicPoint(cplus), m);
    Answer aminus = wopt.query(DyadicPoint(cminus), m);
    if (aplus.kind() != Answer::Kind::Point || aminus.kind() != Answer::Kind::Point)
      return Answer::bit(false);
    Dyadic hi = aplus.as_point()[axis] + Dyadic::pow2(-(n + 1));
    Dyadic lo = aminus.as_point()[axis] - Dyadic::pow2(-(n + 1));
    return Answer::bit(q[0] >= lo && q[0] <= hi);
  };
  Advice adv;
  adv.outer_radius_exp = b;
  return RepName(RepKind::Grid, 1, sub, adv, std::move(fn), in.label() + "|axis-interval");
}

}  // namespace set_ops
}  // namespace csets
