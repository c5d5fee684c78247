#include "csets/groundtruth.hpp"

#include "csets/validate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace csets;

namespace {

DyadicPoint pt2(long x, long y, long e = 0) {
  return DyadicPoint(std::vector<Dyadic>{Dyadic::make(x, e), Dyadic::make(y, e)});
}
DyadicPoint pt1(long x, long e = 0) { return DyadicPoint(std::vector<Dyadic>{Dyadic::make(x, e)}); }

GroundTruthSet unit_box2() { return GroundTruthSet::box(pt2(0, 0), pt2(1, 1)); }

GroundTruthSet triangle() {
  // x >= 0, y >= 0, x + y <= 1
  std::vector<Halfspace> hs;
  hs.push_back({pt2(-1, 0), Dyadic(0)});
  hs.push_back({pt2(0, -1), Dyadic(0)});
  hs.push_back({pt2(1, 1), Dyadic(1)});
  return GroundTruthSet::polytope(hs, 2);
}

}  // namespace

TEST_CASE("box distance is exact for the inf norm") {
  auto box = unit_box2();
  CHECK(box.dist_cmp(pt2(3, 0), Norm::linf(2), 2) == 0);
  CHECK(box.dist_cmp(pt2(3, 0), Norm::linf(2), mpq_class(3, 2)) > 0);
  Dyadic lo, hi;
  box.dist_interval(pt2(3, 0), Norm::linf(2), 20, lo, hi);
  CHECK(lo == Dyadic(2));
  CHECK(hi == Dyadic(2));
  CHECK(box.dist_cmp(pt2(1, 1), Norm::linf(2), 0) == 0);  // boundary point
}

TEST_CASE("segment distance matches a brute-force parameter sweep") {
  auto seg = GroundTruthSet::segment(pt2(0, 0), pt2(1, 1));
  // independent oracle: minimize over a fine t-grid with exact rationals
  auto brute = [&](const DyadicPoint& q, PExp p) {
    mpq_class best;
    bool first = true;
    for (long i = 0; i <= 1024; ++i) {
      mpq_class t(i, 1024);
      mpq_class wx = q[0].to_rational() - t;
      mpq_class wy = q[1].to_rational() - t;
      if (sgn(wx) < 0) wx = -wx;
      if (sgn(wy) < 0) wy = -wy;
      mpq_class v = (p == PExp::One) ? wx + wy : std::max(wx, wy);
      if (first || v < best) best = v, first = false;
    }
    return best;
  };
  test::Rng rng(5);
  for (int it = 0; it < 40; ++it) {
    DyadicPoint q = rng.point(2, 16, 3);
    for (PExp p : {PExp::Inf, PExp::One}) {
      Norm nm{p, Dyadic(1), 2};
      Dyadic lo, hi;
      seg.dist_interval(q, nm, 24, lo, hi);
      mpq_class approx = brute(q, p);
      // the sweep overestimates by at most the t-grid resolution * slope 2
      CHECK(lo.to_rational() <= approx);
      CHECK(hi.to_rational() + mpq_class(1, 128) >= approx);
    }
  }
  // frozen value: d_inf((1,0), diagonal) = 1/2
  CHECK(seg.dist_cmp(pt2(1, 0), Norm::linf(2), mpq_class(1, 2)) == 0);
}

TEST_CASE("singleton and union distances") {
  auto s = GroundTruthSet::singleton(pt2(0, 0));
  CHECK(s.dist_cmp(pt2(0, 0), Norm::l2(2), 0) == 0);
  auto u = GroundTruthSet::finite_union({GroundTruthSet::singleton(pt1(0)),
                                         GroundTruthSet::singleton(pt1(1))});
  // distance of a union is the min over members
  CHECK(u.dist_cmp(pt1(1, 1), Norm::linf(1), mpq_class(1, 2)) == 0);  // q = 1/2
  Dyadic lo, hi;
  u.dist_interval(pt1(3, 2), Norm::linf(1), 20, lo, hi);  // q = 3/4
  CHECK(lo == Dyadic::make(1, 2));
  CHECK(hi == Dyadic::make(1, 2));
}

TEST_CASE("Euclidean distances via exact square-root comparisons") {
  auto box = unit_box2();
  // d_2((2,2), [0,1]^2) = sqrt(2)
  CHECK(box.dist_cmp(pt2(2, 2), Norm::l2(2), mpq_class(7, 5)) > 0);
  CHECK(box.dist_cmp(pt2(2, 2), Norm::l2(2), mpq_class(1414214, 1000000)) < 0);
  CHECK(box.dist_cmp(pt2(2, 2), Norm::l2(2), mpq_class(3, 2)) < 0);
  Dyadic lo, hi;
  box.dist_interval(pt2(2, 2), Norm::l2(2), 16, lo, hi);
  CHECK(hi - lo <= Dyadic::pow2(-16));
  CHECK(lo * lo <= Dyadic(2));
  CHECK(hi * hi >= Dyadic(2));
}

TEST_CASE("support values") {
  auto ball = GroundTruthSet::box(pt2(-1, -1), pt2(1, 1));
  // support of the unit inf-ball in direction (1,1) is 2 = ||c||_1
  ExactVal s = ball.support(pt2(1, 1));
  CHECK(s.cmp(2) == 0);
  // brute force over vertices for random directions
  test::Rng rng(17);
  for (int it = 0; it < 50; ++it) {
    DyadicPoint c = rng.point(2, 20, 3);
    mpq_class best;
    bool first = true;
    for (long sx : {-1, 1}) {
      for (long sy : {-1, 1}) {
        mpq_class v = c[0].to_rational() * sx + c[1].to_rational() * sy;
        if (first || v > best) best = v, first = false;
      }
    }
    CHECK(ball.support(c).cmp(best) == 0);
  }
  auto single = GroundTruthSet::singleton(pt2(3, -2));
  CHECK(single.support(pt2(2, 5)).cmp(3 * 2 + (-2) * 5) == 0);
  CHECK_THROWS(GroundTruthSet::finite_union({single, single}).support(pt2(1, 0)));
}

TEST_CASE("support maximizer stays optimal and ties break lexicographically") {
  auto box = GroundTruthSet::box(pt2(-1, -1), pt2(1, 1));
  DyadicPoint m = box.support_maximizer(pt2(1, 0), 8);
  CHECK(m[0] == Dyadic(1));
  CHECK(m[1] == Dyadic(-1));  // lex-smallest maximizer on the face
  auto tri = triangle();
  DyadicPoint mt = tri.support_maximizer(pt2(1, 1), 8);
  CHECK(tri.support(pt2(1, 1)).cmp(mt.dot(pt2(1, 1)).to_rational()) == 0);
}

TEST_CASE("ball_inside certificates") {
  auto box = unit_box2();
  CHECK(box.ball_inside(pt2(1, 1, 1), Dyadic::make(1, 1), Norm::linf(2)) == BallCert::Yes);
  CHECK(box.ball_inside(pt2(1, 1, 1), Dyadic::make(3, 2), Norm::linf(2)) == BallCert::No);
  // Euclidean ball in a square: corners matter
  CHECK(box.ball_inside(pt2(1, 1, 1), Dyadic::make(1, 1), Norm::l2(2)) == BallCert::Yes);
  auto disk = GroundTruthSet::norm_ball(pt2(0, 0), Dyadic(1), Norm::l2(2));
  CHECK(disk.ball_inside(pt2(0, 0), Dyadic::make(1, 1), Norm::linf(2)) == BallCert::Yes);
  CHECK(disk.ball_inside(pt2(0, 0), Dyadic(1), Norm::linf(2)) == BallCert::No);
  // union cover: the inf-ball of radius 1 at (1,0) inside [0,2]x[-1,1]? yes.
  auto u = GroundTruthSet::finite_union(
      {GroundTruthSet::box(pt2(0, -1), pt2(1, 1)), GroundTruthSet::box(pt2(1, -1), pt2(2, 1))});
  CHECK(u.ball_inside(pt2(1, 0), Dyadic(1), Norm::linf(2)) == BallCert::Yes);
  // but not radius 2
  CHECK(u.ball_inside(pt2(1, 0), Dyadic(2), Norm::linf(2)) == BallCert::No);
  // straddling cover with a strict gap
  auto gap = GroundTruthSet::finite_union(
      {GroundTruthSet::box(pt2(0, -1), pt2(1, 1)),
       GroundTruthSet::box(pt2(9, -8, 3), pt2(2, 1))});  // second box starts at 9/8
  CHECK(gap.ball_inside(pt2(1, 0), Dyadic::make(1, 1), Norm::linf(2)) == BallCert::No);
}

TEST_CASE("advice derivation") {
  auto box = GroundTruthSet::box(pt2(-1, -1), pt2(1, 1));
  Advice a = box.derive_advice(Norm::linf(2), AdvicePolicy::Derive);
  REQUIRE(a.outer_radius_exp.has_value());
  CHECK(*a.outer_radius_exp == 0);
  REQUIRE(a.inner_point.has_value());
  CHECK(*a.inner_point == pt2(0, 0));
  REQUIRE(a.inner_radius_exp.has_value());
  CHECK(*a.inner_radius_exp == 0);

  auto tri = triangle();
  Advice t = tri.derive_advice(Norm::linf(2), AdvicePolicy::Derive);
  REQUIRE(t.outer_radius_exp.has_value());
  CHECK(*t.outer_radius_exp == 0);
  REQUIRE(t.inner_point.has_value());
  CHECK(tri.contains(*t.inner_point));
  CHECK(tri.ball_inside(*t.inner_point, Dyadic::pow2(-*t.inner_radius_exp), Norm::linf(2)) ==
        BallCert::Yes);
}

TEST_CASE("canonical names pass validation on a window") {
  auto fixtures = std::vector<GroundTruthSet>{
      unit_box2(),
      GroundTruthSet::norm_ball(pt2(0, 0), Dyadic(1), Norm::linf(2)),
      triangle(),
      GroundTruthSet::segment(pt2(0, 0), pt2(1, 1)),
  };
  auto queries = window_queries(pt2(-2, -2), pt2(2, 2), 2, -2, 5);
  for (const auto& fx : fixtures) {
    for (RepKind kind : {RepKind::Dist, RepKind::RelDist, RepKind::LocalSet, RepKind::Grid}) {
      if (kind == RepKind::Grid && !fx.is_bounded()) continue;
      RepName name = fx.canonical_name(kind, Norm::linf(2));
      auto rep = validate_name(name, fx, queries);
      INFO(fx.to_text(), " kind=", rep_kind_tag(kind), "\n", rep.to_text());
      CHECK(rep.ok());
    }
    if (fx.is_regular()) {
      RepName mu = fx.canonical_name(RepKind::WeakMembership, Norm::linf(2));
      auto rep = validate_name(mu, fx, queries);
      INFO(fx.to_text(), " wmem\n", rep.to_text());
      CHECK(rep.ok());
    }
  }
  // weak membership of a non-regular set is rejected
  CHECK_THROWS(GroundTruthSet::singleton(pt2(1, 1, 1))
                   .canonical_name(RepKind::WeakMembership, Norm::linf(2)));
}

TEST_CASE("canonical weak optimization on convex bodies") {
  auto box = GroundTruthSet::box(pt2(-1, -1), pt2(1, 1));
  RepName wopt = box.canonical_name(RepKind::WeakOpt, Norm::l2(2));
  std::vector<QueryItem> dirs;
  test::Rng rng(23);
  for (int n = 0; n <= 5; ++n)
    for (int it = 0; it < 10; ++it) dirs.push_back({rng.point(2, 8, 2), n});
  auto rep = validate_name(wopt, box, dirs);
  INFO(rep.to_text());
  CHECK(rep.ok());
}

TEST_CASE("a corrupted local-set name is flagged") {
  auto truth = GroundTruthSet::singleton(pt2(0, 0));
  OracleFn liar = [](const DyadicPoint&, Precision) { return Answer::bit(true); };
  RepName bad(RepKind::LocalSet, 2, Norm::linf(2), {}, liar, "liar");
  std::vector<QueryItem> qs{{pt2(5, 5), 0}};
  auto rep = validate_name(bad, truth, qs);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].line().find("VIOLATION kind=local q=(5p0,5p0) n=0 got=1") == 0);
}

TEST_CASE("grid name fine-probe validation of the unit box") {
  auto box = unit_box2();
  RepName kappa = box.canonical_name(RepKind::Grid, Norm::linf(2));
  for (int n = 0; n <= 5; ++n) {
    auto queries = window_queries(pt2(-2, -2), pt2(2, 2), n + 2, n, n);
    auto rep = validate_name(kappa, box, queries);
    INFO("layer ", n, "\n", rep.to_text());
    CHECK(rep.ok());
  }
}

TEST_CASE("gap answers are legal: perturbed names still validate") {
  auto box = unit_box2();
  GroundTruthSet truth = box;
  Norm norm = Norm::linf(2);
  // flip the canonical answer strictly inside the don't-care band using a
  // deterministic hash
  OracleFn fn = [truth, norm](const DyadicPoint& q, Precision n) {
    mpq_class lo = mpq_class(9, 8) * Dyadic::pow2(-n).to_rational();
    mpq_class hi = mpq_class(15, 8) * Dyadic::pow2(-n).to_rational();
    bool canon = truth.dist_cmp(q, norm, mpq_class(3) * Dyadic::pow2(-n - 1).to_rational()) <= 0;
    if (truth.dist_cmp(q, norm, lo) >= 0 && truth.dist_cmp(q, norm, hi) <= 0) {
      std::hash<std::string> h;
      if (h(q.to_text() + ":" + std::to_string(n)) & 1) return Answer::bit(!canon);
    }
    return Answer::bit(canon);
  };
  RepName perturbed(RepKind::LocalSet, 2, norm, box.derive_advice(norm, AdvicePolicy::Derive), fn,
                    "perturbed");
  auto queries = window_queries(pt2(-2, -2), pt2(2, 2), 3, -2, 6);
  auto rep = validate_name(perturbed, truth, queries);
  INFO(rep.to_text());
  CHECK(rep.ok());
}

TEST_CASE("scene text round-trips") {
  auto tri = triangle();
  auto u = GroundTruthSet::finite_union({unit_box2(), tri});
  CHECK(u.to_text().rfind("union {", 0) == 0);
}

TEST_CASE("translate and scale wrappers are exact") {
  auto box = unit_box2();
  auto moved = box.translated(pt2(-1, 2));
  CHECK(moved.contains(pt2(-1, 2)));
  CHECK(moved.contains(pt2(0, 3)));
  CHECK(!moved.contains(pt2(1, 1, 1)));
  auto big = box.scaled_pow2(2);  // [0,4]^2
  CHECK(big.contains(pt2(4, 4)));
  CHECK(big.dist_cmp(pt2(5, 0), Norm::linf(2), 1) == 0);
  auto tiny = box.scaled_pow2(-2);  // [0,1/4]^2
  CHECK(tiny.dist_cmp(pt2(1, 0, 2), Norm::linf(2), 0) == 0);
}
