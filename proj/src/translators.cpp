#include "csets/translators.hpp"

#include <algorithm>
#include <optional>

#include "internal_util.hpp"

namespace csets {
namespace translators {

using detail::ceil_log2_q;
using detail::dist_cmp_points;
using detail::dyadic_from_mpq;
using detail::floor_log2_q;
using detail::pow2_q;
using detail::require_inner_exp;
using detail::require_inner_point;
using detail::require_outer;

RepName setrep_norm_exchange(const RepName& in, const Norm& target) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("setrep_norm_exchange: local-set input required");
  CoveragePattern pat = coverage_pattern(in.norm(), target);
  OracleFn fn = [in, pat](const DyadicPoint& q, Precision n) {
    // exactly |D| input queries per output query
    bool hit = false;
    for (const auto& p : pat.points) {
      hit = in.query(q + p.mul_pow2(-n), n + pat.k).as_bit() || hit;
    }
    return Answer::bit(hit);
  };
  return RepName(RepKind::LocalSet, in.dim(), target, in.advice(), std::move(fn),
                 in.label() + "|norm-exchange");
}

RepName scale_set(const RepName& in, int k) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("scale_set: local-set input required");
  // 2^k S at (q, n) carries the same information as S at (2^-k q, n+k):
  // both distance thresholds scale together.
  OracleFn fn = [in, k](const DyadicPoint& q, Precision n) {
    return in.query(q.mul_pow2(-k), n + k);
  };
  Advice adv = in.advice();
  if (adv.outer_radius_exp) adv.outer_radius_exp = *adv.outer_radius_exp + k;
  if (adv.inner_radius_exp) adv.inner_radius_exp = *adv.inner_radius_exp - k;
  if (adv.inner_point) adv.inner_point = adv.inner_point->mul_pow2(k);
  return RepName(RepKind::LocalSet, in.dim(), in.norm(), adv, std::move(fn),
                 in.label() + "|scaled");
}

namespace {

// lambda of the norm as an exact power of two, required by the 1D searches.
long scale_exp_or_throw(const Norm& norm, const char* who) {
  if (norm.scale.numerator() != 1)
    throw std::invalid_argument(std::string(who) + ": norm scale must be a power of two");
  return -norm.scale.exponent();  // scale = 2^j
}

}  // namespace

RepName setrep_to_distrep_1d(const RepName& in) {
  if (in.dim() != 1) throw std::invalid_argument("setrep_to_distrep_1d: dimension 1 required");
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("setrep_to_distrep_1d: local-set input required");
  int b = require_outer(in, "setrep_to_distrep_1d");
  long lam = scale_exp_or_throw(in.norm(), "setrep_to_distrep_1d");
  OracleFn fn = [in, b, lam](const DyadicPoint& q, Precision n) {
    if (in.query(q, n + 1).as_bit()) return Answer::scalar(Dyadic());
    int bp = std::max(1, b);
    int cp = 1;
    if (!q[0].is_zero()) cp = std::max<long>(1, ceil_log2_q(mpq_class(2) + (in.norm().scale * q[0].abs()).to_rational()));
    // coarse scale search
    int imax = n + bp + cp + 2;
    int i = imax;
    for (int j = 1; j <= imax; ++j) {
      if (in.query(q, n + 1 - j).as_bit()) {
        i = j;
        break;
      }
    }
    // certified distance bracket in norm units
    Dyadic U = Dyadic::pow2(i - n);                       // d <= 2*2^-(n+1-i)
    Dyadic loL = Dyadic::pow2(-(n + 1)), loR = loL;       // from the 0 at n+1
    const Dyadic target = Dyadic::pow2(-(n + 1));
    for (int guard = 0; guard < 64 * (n + bp + cp + 8); ++guard) {
      Dyadic lomin = Dyadic::min(loL, loR);
      Dyadic w = U - lomin;
      if (w <= target) break;
      bool left = (loL <= loR);
      if ((left ? loL : loR) >= U) left = !left;  // that side can no longer hold the minimum
      Dyadic& lo = left ? loL : loR;
      if (lo >= U) break;
      Dyadic ww = U - lo;
      // probe radius: the largest power of two <= ww/5
      long m = -floor_log2_q(ww.to_rational() / 5);
      Dyadic delta = Dyadic::pow2(-m);
      // positions are in coordinate units: norm units / lambda
      Dyadic coord_off = (lo + delta).mul_pow2(-lam);
      DyadicPoint c(std::vector<Dyadic>{left ? q[0] - coord_off : q[0] + coord_off});
      // query radius 2^-(m+lam) in coordinate units == 2^-m in norm units
      if (in.query(c, static_cast<int>(m)).as_bit()) {
        U = Dyadic::min(U, lo + delta + delta.mul_pow2(1));
      } else {
        lo = lo + delta.mul_pow2(1);
      }
    }
    Dyadic lomin = Dyadic::min(loL, loR);
    if (lomin > U) lomin = U;
    return Answer::scalar((lomin + U).mul_pow2(-1));
  };
  return RepName(RepKind::Dist, 1, in.norm(), in.advice(), std::move(fn),
                 in.label() + "|dist1d");
}

RepName gridrep_to_setrep(const RepName& in) {
  if (in.kind() != RepKind::Grid) throw std::invalid_argument("gridrep_to_setrep: grid input required");
  require_outer(in, "gridrep_to_setrep");
  OracleFn fn = [in](const DyadicPoint& q, Precision n) {
    mpq_class reach = mpq_class(3) * pow2_q(-(n + 1));
    Dyadic radius = cross_norm_bound(in.norm(), Norm::linf(in.dim())) *
                    Dyadic(3).mul_pow2(-(n + 1));
    bool hit = !for_each_grid_point(q, radius, n + 2, [&](const DyadicPoint& p) {
      if (norm_cmp(in.norm(), p - q, reach) <= 0 && in.query(p, n + 2).as_bit()) return false;
      return true;
    });
    return Answer::bit(hit);
  };
  return RepName(RepKind::LocalSet, in.dim(), in.norm(), in.advice(), std::move(fn),
                 in.label() + "|grid-to-local");
}

RepName setrep_to_gridrep(const RepName& in) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("setrep_to_gridrep: local-set input required");
  require_outer(in, "setrep_to_gridrep");
  OracleFn fn = [in](const DyadicPoint& q, Precision n) {
    for (int i = 0; i < q.dim(); ++i)
      if (!q[i].on_grid(n)) return Answer::bit(false);
    return in.query(q, n + 1);
  };
  return RepName(RepKind::Grid, in.dim(), in.norm(), in.advice(), std::move(fn),
                 in.label() + "|local-to-grid");
}

RepName reldistrep_to_setrep(const RepName& in) {
  if (in.kind() != RepKind::RelDist) throw std::invalid_argument("reldistrep_to_setrep: reldist input required");
  require_outer(in, "reldistrep_to_setrep");
  OracleFn fn = [in](const DyadicPoint& q, Precision n) {
    Dyadic v = in.query(q, n + 4).as_scalar();
    Dyadic thr = Dyadic(5).mul_pow2(-(n + 2)) + Dyadic::pow2(-(n + 4));
    return Answer::bit(v <= thr);
  };
  return RepName(RepKind::LocalSet, in.dim(), in.norm(), in.advice(), std::move(fn),
                 in.label() + "|reldist-to-local");
}

RepName setrep_to_reldistrep(const RepName& in) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("setrep_to_reldistrep: local-set input required");
  int b = require_outer(in, "setrep_to_reldistrep");
  OracleFn fn = [in, b](const DyadicPoint& q, Precision n) {
    if (in.query(q, n + 1).as_bit()) return Answer::scalar(Dyadic());
    int bp = std::max(1, b);
    int cp = 1;
    {
      NormInterval qn = norm_interval(in.norm(), q, 8);
      if (qn.hi.sign() > 0) cp = std::max<long>(1, ceil_log2_q(mpq_class(2) + qn.hi.to_rational()));
    }
    int kmax = n + bp + cp + 2;
    int kp = kmax;
    for (int j = 1; j <= kmax; ++j) {
      if (in.query(q, n + 1 - j).as_bit()) {
        kp = j;
        break;
      }
    }
    // d in [2^(-(n+2)+kp), 2^(-n+kp)]; search the hollow annulus on a fine grid
    int m = n + 5 - kp;
    Dyadic outer = Dyadic::pow2(-n + kp) + Dyadic::pow2(-m + 1);
    Dyadic inner = Dyadic::pow2(-(n + 2) + kp) - Dyadic::pow2(-m + 1);
    if (inner.sign() < 0) inner = Dyadic();
    Dyadic box = cross_norm_bound(in.norm(), Norm::linf(in.dim())) * outer;
    std::optional<DyadicPoint> best;
    for_each_grid_point(q, box, m, [&](const DyadicPoint& p) {
      if (norm_cmp(in.norm(), p - q, outer.to_rational()) > 0) return true;
      if (norm_cmp(in.norm(), p - q, inner.to_rational()) < 0) return true;
      if (!in.query(p, m).as_bit()) return true;
      if (!best || dist_cmp_points(in.norm(), q, p, *best) < 0 ||
          (dist_cmp_points(in.norm(), q, p, *best) == 0 && p < *best))
        best = p;
      return true;
    });
    if (!best) {
      // cannot happen for a valid name; fall back to the bracket midpoint
      return Answer::scalar(Dyadic(3).mul_pow2(-(n + 2) + kp));
    }
    NormInterval d = norm_interval(in.norm(), q - *best, n + 6);
    return Answer::scalar((d.lo + d.hi).mul_pow2(-1));
  };
  return RepName(RepKind::RelDist, in.dim(), in.norm(), in.advice(), std::move(fn),
                 in.label() + "|local-to-reldist");
}

RepName distrep_to_others(const RepName& in, RepKind target) {
  if (in.kind() != RepKind::Dist) throw std::invalid_argument("distrep_to_others: dist input required");
  switch (target) {
    case RepKind::RelDist:
      return in.retagged(RepKind::RelDist);
    case RepKind::LocalSet: {
      OracleFn fn = [in](const DyadicPoint& q, Precision n) {
        Dyadic v = in.query(q, n + 2).as_scalar();
        return Answer::bit(v <= Dyadic(3).mul_pow2(-(n + 1)));
      };
      return RepName(RepKind::LocalSet, in.dim(), in.norm(), in.advice(), std::move(fn),
                     in.label() + "|dist-to-local");
    }
    case RepKind::WeakMembership: {
      OracleFn fn = [in](const DyadicPoint& q, Precision n) {
        Dyadic v = in.query(q, n + 2).as_scalar();
        return Answer::bit(v <= Dyadic::pow2(-(n + 1)));
      };
      return RepName(RepKind::WeakMembership, in.dim(), in.norm(), in.advice(), std::move(fn),
                     in.label() + "|dist-to-wmem");
    }
    default:
      throw std::invalid_argument("distrep_to_others: target must be RelDist, LocalSet or WeakMembership");
  }
}

RepName wmem_to_setrep_1d(const RepName& in) {
  if (in.dim() != 1) throw std::invalid_argument("wmem_to_setrep_1d: dimension 1 required");
  if (in.kind() != RepKind::WeakMembership) throw std::invalid_argument("wmem_to_setrep_1d: wmem input required");
  DyadicPoint a = require_inner_point(in, "wmem_to_setrep_1d");
  int r = require_inner_exp(in, "wmem_to_setrep_1d");
  OracleFn fn = [in, a, r](const DyadicPoint& q, Precision n) {
    int m = std::max(n, std::abs(r)) + 3;
    mpq_class thr = mpq_class(3) * pow2_q(-(n + 1));
    if (q == a) return Answer::bit(true);
    if (in.query(q, m).as_bit()) return Answer::bit(true);  // |q-p| = 0
    // integer bisection on the D_m grid between a and q
    bool right = q[0] > a[0];
    mpz_class ia = right ? a[0].ceil_scaled(m) : a[0].floor_scaled(m);
    mpz_class iq = right ? q[0].floor_scaled(m) : q[0].ceil_scaled(m);
    mpz_class P = ia, N = iq;
    auto positive = [&](const mpz_class& idx) {
      return in.query(DyadicPoint(std::vector<Dyadic>{Dyadic::make(idx, m)}), m).as_bit();
    };
    if ((right && P >= N) || (!right && P <= N)) {
      // query adjacent to the inner point; distance |q-a| bounded by grid
      return Answer::bit(norm_cmp(in.norm(), q - a, thr) <= 0);
    }
    if (positive(N)) {
      P = N;
    } else {
      while (true) {
        mpz_class gap = right ? N - P : P - N;
        if (gap <= 1) break;
        mpz_class mid = (P + N) / 2;
        if (positive(mid)) P = mid;
        else N = mid;
      }
    }
    DyadicPoint p(std::vector<Dyadic>{Dyadic::make(P, m)});
    return Answer::bit(norm_cmp(in.norm(), q - p, thr) <= 0);
  };
  return RepName(RepKind::LocalSet, 1, in.norm(), in.advice(), std::move(fn),
                 in.label() + "|wmem-to-local1d");
}

RepName distrep_from_setrep_bruteforce(const RepName& in) {
  if (in.kind() != RepKind::LocalSet) throw std::invalid_argument("distrep_from_setrep_bruteforce: local-set input required");
  int b = require_outer(in, "distrep_from_setrep_bruteforce");
  OracleFn fn = [in, b](const DyadicPoint& q, Precision n) {
    int m = n + 3;
    Dyadic reach = Dyadic::pow2(b) + Dyadic::pow2(-m + 1);
    Dyadic box = cross_norm_bound(in.norm(), Norm::linf(in.dim())) * reach;
    std::optional<DyadicPoint> best;
    for_each_grid_point(DyadicPoint::zero(in.dim()), box, m, [&](const DyadicPoint& p) {
      if (norm_cmp(in.norm(), p, reach.to_rational()) > 0) return true;
      if (!in.query(p, n + 2).as_bit()) return true;
      if (!best || dist_cmp_points(in.norm(), q, p, *best) < 0 ||
          (dist_cmp_points(in.norm(), q, p, *best) == 0 && p < *best))
        best = p;
      return true;
    });
    if (!best) {
      NormInterval qn = norm_interval(in.norm(), q, n + 6);
      return Answer::scalar(qn.hi + Dyadic::pow2(b));
    }
    NormInterval d = norm_interval(in.norm(), q - *best, n + 6);
    Dyadic v = (d.lo + d.hi).mul_pow2(-1) - Dyadic::pow2(-(n + 3));
    if (v.sign() < 0) v = Dyadic();
    return Answer::scalar(v);
  };
  return RepName(RepKind::Dist, in.dim(), in.norm(), in.advice(), std::move(fn),
                 in.label() + "|bruteforce-dist");
}

RepName distrep_norm_exchange_search(const RepName& in, const Norm& target) {
  if (in.kind() != RepKind::Dist) throw std::invalid_argument("distrep_norm_exchange_search: dist input required");
  int b = require_outer(in, "distrep_norm_exchange_search");
  OracleFn fn = [in, target, b](const DyadicPoint& q, Precision n) {
    Dyadic cab = cross_norm_bound(in.norm(), target);
    int extra = std::max<long>(0, ceil_log2_q(cab.to_rational()));
    int m = n + 5 + extra;
    Dyadic thr = Dyadic::pow2(-(n + 4 + extra));
    // witness candidates: near-zero input-distance points on the fine grid
    Dyadic reach = Dyadic::pow2(b) + Dyadic::pow2(-m + 1);
    Dyadic box = cross_norm_bound(in.norm(), Norm::linf(in.dim())) * reach;
    std::vector<DyadicPoint> witnesses;
    for_each_grid_point(DyadicPoint::zero(in.dim()), box, m, [&](const DyadicPoint& p) {
      if (norm_cmp(in.norm(), p, reach.to_rational()) > 0) return true;
      if (in.query(p, m).as_scalar() <= thr) witnesses.push_back(p);
      return true;
    });
    Dyadic delta;
    for (int i = 1; i <= n + 2; ++i) {
      Dyadic tol = Dyadic::pow2(-i);
      bool keep = false;
      for (const auto& p : witnesses) {
        // |delta - ||q-p||_target| <= tol, exactly
        mpq_class lo = (delta - tol).to_rational();
        mpq_class hi = (delta + tol).to_rational();
        if (norm_cmp(target, q - p, lo) >= 0 && norm_cmp(target, q - p, hi) <= 0) {
          keep = true;
          break;
        }
      }
      if (!keep) delta = delta + tol;
    }
    return Answer::scalar(delta + Dyadic::pow2(-(n + 3)));
  };
  return RepName(RepKind::Dist, in.dim(), target, in.advice(), std::move(fn),
                 in.label() + "|norm-exchange-search");
}

// ---- weak optimization -------------------------------------------------------

namespace {

// Direction on the boundary of the unit inf-square, parametrized by
// s in [0,8); piecewise linear, dyadic for dyadic s, monotone in angle.
DyadicPoint square_dir(const Dyadic& s) {
  Dyadic one(1), three(3), five(5), seven(7);
  if (s < Dyadic(2)) return DyadicPoint(std::vector<Dyadic>{one, s - one});
  if (s < Dyadic(4)) return DyadicPoint(std::vector<Dyadic>{three - s, one});
  if (s < Dyadic(6)) return DyadicPoint(std::vector<Dyadic>{-one, five - s});
  return DyadicPoint(std::vector<Dyadic>{s - seven, -one});
}

struct AngularBest {
  Dyadic s;
  Dyadic value;
};

// Maximizes a circularly unimodal objective over the square-boundary
// parameter. Probes are snapped to dyadics so repeated searches share memo
// entries; discards are certified against the evaluation error two_err, and
// on an unresolved stall both quartiles are dropped (the best probe seen is
// returned either way).
AngularBest angular_max(const std::function<Dyadic(const Dyadic&)>& eval, const Dyadic& two_err,
                        const Dyadic& target_w, int budget) {
  AngularBest best;
  bool first = true;
  const int coarse = 16;
  for (int i = 0; i < coarse; ++i) {
    Dyadic s = Dyadic::make(i, 1);  // spacing 1/2 over [0,8)
    Dyadic f = eval(s);
    if (first || f > best.value) {
      best = {s, f};
      first = false;
    }
  }
  Dyadic lo = best.s - Dyadic(1);
  Dyadic hi = best.s + Dyadic(1);
  for (int it = 0; it < budget && hi - lo > target_w; ++it) {
    Dyadic w = hi - lo;
    long snap = -floor_log2_q(w.to_rational()) + 4;
    Dyadic m1 = (lo + w.mul_pow2(-2)).round_to(snap, RoundMode::NearestTiesUp);
    Dyadic m2 = (hi - w.mul_pow2(-2)).round_to(snap, RoundMode::NearestTiesUp);
    Dyadic f1 = eval(m1), f2 = eval(m2);
    if (f1 > best.value) best = {m1, f1};
    if (f2 > best.value) best = {m2, f2};
    if (f1 < f2 - two_err) {
      lo = m1;
    } else if (f2 < f1 - two_err) {
      hi = m2;
    } else {
      lo = m1;
      hi = m2;
    }
  }
  return best;
}

struct RadialSearch {
  const RepName* in;
  DyadicPoint a;
  int r, b;

  // Largest certified mu-positive parameter along a + t*u; the returned point
  // is within 2^-mq of the set and within a cone-controlled slack of the true
  // boundary point of the ray.
  std::pair<Dyadic, DyadicPoint> boundary(const DyadicPoint& u, int mq, int steps) const {
    Dyadic lo;  // mu-positive (the inner point itself)
    Dyadic hi = Dyadic::pow2(std::max(b, 0) + 2);
    for (int i = 0; i < steps; ++i) {
      Dyadic mid = (lo + hi).mul_pow2(-1);
      DyadicPoint p = a + u.scaled(mid);
      if (in->query(p, mq).as_bit()) lo = mid;
      else hi = mid;
    }
    return {lo, a + u.scaled(lo)};
  }
};

}  // namespace

RepName wmem_to_wopt(const RepName& in) {
  if (in.kind() != RepKind::WeakMembership) throw std::invalid_argument("wmem_to_wopt: wmem input required");
  if (in.dim() > 2) throw std::invalid_argument("wmem_to_wopt: dimensions 1 and 2 only");
  DyadicPoint a = require_inner_point(in, "wmem_to_wopt");
  int r = require_inner_exp(in, "wmem_to_wopt");
  int b = require_outer(in, "wmem_to_wopt");
  int d = in.dim();

  OracleFn fn = [in, a, r, b, d](const DyadicPoint& c, Precision n) {
    bool zero = true;
    for (int i = 0; i < d; ++i)
      if (!c[i].is_zero()) zero = false;
    if (zero) return Answer::point(a);

    // precision bookkeeping: absolute objective slack 2^-n needs direction-
    // relative slack 2^-(n+Lc) with ||c||_1 <= 2^Lc
    Dyadic c1;
    for (int i = 0; i < d; ++i) c1 = c1 + c[i].abs();
    int Lc = std::max<long>(0, ceil_log2_q(c1.to_rational()));
    int rp = std::max(r, 0), bp = std::max(b, 0);
    int mq = n + Lc + rp + bp + 8;
    int steps = mq + bp + 4;
    RadialSearch rs{&in, a, r, b};

    if (d == 1) {
      DyadicPoint u(std::vector<Dyadic>{Dyadic(c[0].sign() >= 0 ? 1 : -1)});
      return Answer::point(rs.boundary(u, mq, steps).second);
    }

    // 2D: maximize f(s) = c . boundary(s) over the circular square-boundary
    // parameter; f is unimodal along the monotone angular parametrization.
    // evaluation error: |c.p~ - f(s)| <= ||c||_1 * sqrt2 * slack_t with
    // slack_t <= 2^(b+r+2-mq) + bisection resolution
    Dyadic two_err = Dyadic::pow2(Lc + bp + rp + 5 - mq);
    Dyadic target_w = Dyadic::pow2(-(n + 2 * Lc + 2 * bp + rp + 6));
    int budget = 25 * d * d * (std::abs(n) + std::abs(b) + std::abs(r) + 8);
    auto eval = [&](const Dyadic& s) { return c.dot(rs.boundary(square_dir(s), mq, steps).second); };
    AngularBest top = angular_max(eval, two_err, target_w, budget);
    return Answer::point(rs.boundary(square_dir(top.s), mq, steps).second);
  };
  Norm l2 = Norm::l2(d);
  return RepName(RepKind::WeakOpt, d, l2, in.advice(), std::move(fn), in.label() + "|wopt")
      .with_source(in);
}

DyadicPoint project_point(const DyadicPoint& p, const DyadicPoint& q, int k) {
  mpq_class qq = 0, pq = 0;
  for (int i = 0; i < q.dim(); ++i) {
    mpq_class qi = q[i].to_rational();
    qq += qi * qi;
    pq += p[i].to_rational() * qi;
  }
  if (sgn(qq) == 0) throw std::invalid_argument("project_point: q must be nonzero");
  mpq_class f = pq / qq;
  std::vector<Dyadic> out(q.dim());
  for (int i = 0; i < q.dim(); ++i) out[i] = dyadic_from_mpq(f * q[i].to_rational(), k + 2);
  return DyadicPoint(std::move(out));
}

RepName polar_distrep(const RepName& in, int r0, int b) {
  if (in.kind() != RepKind::WeakOpt) throw std::invalid_argument("polar_distrep: wopt input required");
  if (in.dim() > 2) throw std::invalid_argument("polar_distrep: dimensions 1 and 2 only");
  int d = in.dim();
  // d(q, polar(S)) = max_w (q.w - h_polar(w)) / ||w||  with
  // h_polar(w) = max_u (w.u) / h_S(u); both angular maxima are unimodal
  // (their superlevel sets are direction arcs of convex cones), and h_S comes
  // from the weak-optimization oracle. All probe directions are snapped
  // dyadics, so evaluations are shared across queries through the memo.
  // When the optimization name carries its membership source, the polar
  // gauge h_polar(w) = 1/rho_S(w) is read off a single radial bisection
  // instead of the inner angular maximum.
  std::optional<RepName> mu_src;
  if (in.source() && in.source()->kind() == RepKind::WeakMembership &&
      in.source()->advice().inner_point && in.source()->advice().inner_radius_exp &&
      in.source()->advice().outer_radius_exp) {
    mu_src = *in.source();
  }
  OracleFn fn = [in, mu_src, r0, b, d](const DyadicPoint& q, Precision n) {
    bool zero = true;
    for (int i = 0; i < d; ++i)
      if (!q[i].is_zero()) zero = false;
    if (zero) return Answer::scalar(Dyadic());
    int m = n + 2 * (std::abs(b) + std::abs(r0)) + 12;
    auto support = [&](const DyadicPoint& u) {  // h_S(u) within ~2^-(m-Lc)
      Answer a = in.query(u, m);
      if (a.kind() != Answer::Kind::Point) return Dyadic();
      return u.dot(a.as_point());
    };
    int budget = 25 * d * d * (std::abs(n) + std::abs(b) + std::abs(r0) + 8);
    Dyadic inner_err = Dyadic::pow2(-(n + 8));
    Dyadic inner_w = Dyadic::pow2(-(n + std::abs(b) + std::abs(r0) + 8));
    if (d == 1) {
      // polar of [-l, u] with 0 inside: [-1/u', 1/l']-style; handle directly
      Dyadic hplus = support(DyadicPoint(std::vector<Dyadic>{Dyadic(1)}));
      Dyadic hminus = support(DyadicPoint(std::vector<Dyadic>{Dyadic(-1)}));
      // d(q, [ -1/hminus, 1/hplus ]) computed in rationals
      mpq_class qv = q[0].to_rational();
      mpq_class lo = -1 / hminus.to_rational();
      mpq_class hi = 1 / hplus.to_rational();
      mpq_class dist = 0;
      if (qv > hi) dist = qv - hi;
      if (qv < lo) dist = lo - qv;
      return Answer::scalar(dyadic_from_mpq(dist, n + 6));
    }
    std::function<Dyadic(const DyadicPoint&)> h_polar;
    if (mu_src) {
      // gauge route: h_polar(w) = 1 / rho_S(w) from one radial bisection
      RadialSearch rs{&*mu_src, DyadicPoint::zero(d), r0, b};
      int mq = n + std::abs(b) + 2 * std::abs(r0) + 8;
      int steps = mq + std::max(b, 0) + 4;
      h_polar = [rs, mq, steps, n](const DyadicPoint& w) {
        auto [t, p] = rs.boundary(w, mq, steps);
        if (t.sign() <= 0) return Dyadic::pow2(40);
        return dyadic_from_mpq(1 / t.to_rational(), n + 16);
      };
    } else {
      h_polar = [&, budget, inner_err, inner_w, n](const DyadicPoint& w) {
        auto ratio = [&](const Dyadic& s) {
          DyadicPoint u = square_dir(s);
          Dyadic hs = support(u);
          if (hs.sign() <= 0) return Dyadic(-1024);
          mpq_class r = w.dot(u).to_rational() / hs.to_rational();
          return dyadic_from_mpq(r, n + 16);
        };
        return angular_max(ratio, inner_err, inner_w, budget).value;
      };
    }
    auto phi = [&](const Dyadic& s) {
      DyadicPoint w = square_dir(s);
      Dyadic hp = h_polar(w);
      NormInterval wn = norm_interval(Norm::l2(d), w, n + 16);
      mpq_class num = q.dot(w).to_rational() - hp.to_rational();
      mpq_class den = ((wn.lo + wn.hi).mul_pow2(-1)).to_rational();
      return dyadic_from_mpq(num / den, n + 16);
    };
    Dyadic best = angular_max(phi, Dyadic::pow2(-(n + 6)), Dyadic::pow2(-(n + std::abs(r0) + 8)),
                              budget).value;
    if (best.sign() < 0) best = Dyadic();
    return Answer::scalar(best);
  };
  Advice adv;
  adv.inner_point = DyadicPoint::zero(d);
  adv.inner_radius_exp = b;   // ball(0, 2^-b) inside the polar
  adv.outer_radius_exp = r0;  // polar inside ball(0, 2^r0)
  return RepName(RepKind::Dist, d, Norm::l2(d), adv, std::move(fn), in.label() + "|polar-dist");
}

RepName wmem_to_distrep_convex(const RepName& in) {
  if (in.kind() != RepKind::WeakMembership) throw std::invalid_argument("wmem_to_distrep_convex: wmem input required");
  DyadicPoint a = require_inner_point(in, "wmem_to_distrep_convex");
  int r = require_inner_exp(in, "wmem_to_distrep_convex");
  int b = require_outer(in, "wmem_to_distrep_convex");
  int d = in.dim();

  // recenter: S' = S - a
  OracleFn centered = [in, a](const DyadicPoint& q, Precision n) { return in.query(q + a, n); };
  Advice cadv;
  cadv.inner_point = DyadicPoint::zero(d);
  cadv.inner_radius_exp = r;
  NormInterval an = norm_interval(Norm::l2(d), a, 8);
  int b0 = static_cast<int>(ceil_log2_q(pow2_q(b) + an.hi.to_rational()));
  cadv.outer_radius_exp = b0;
  RepName mu_centered(RepKind::WeakMembership, d, in.norm(), cadv, std::move(centered),
                      in.label() + "|recentered");

  RepName wopt1 = wmem_to_wopt(mu_centered);
  RepName polar1 = polar_distrep(wopt1, r, b0);
  RepName mu_polar = distrep_to_others(polar1, RepKind::WeakMembership);
  RepName wopt2 = wmem_to_wopt(mu_polar);
  RepName polar2 = polar_distrep(wopt2, b0, r);

  OracleFn fn = [polar2, a](const DyadicPoint& q, Precision n) { return polar2.query(q - a, n); };
  return RepName(RepKind::Dist, d, Norm::l2(d), in.advice(), std::move(fn),
                 in.label() + "|convex-dist");
}

}  // namespace translators
}  // namespace csets
