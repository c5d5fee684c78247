#include "csets/translators.hpp"

#include "csets/validate.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "support.hpp"

using namespace csets;
using namespace csets::test;
namespace tr = csets::translators;

namespace {

bool dist_within(const GroundTruthSet& truth, const Norm& norm, const DyadicPoint& q,
                 const Dyadic& value, const Dyadic& tol) {
  mpq_class up = value.to_rational() + tol.to_rational();
  mpq_class dn = value.to_rational() - tol.to_rational();
  return truth.dist_cmp(q, norm, up) <= 0 && truth.dist_cmp(q, norm, dn) >= 0;
}

}  // namespace

TEST_CASE("norm exchange preserves validity and uses exactly |D| queries") {
  auto square = GroundTruthSet::box(P2(-1, -1), P2(1, 1));
  Norm linf = Norm::linf(2), l1 = Norm::l1(2);
  RepName in = square.canonical_name(RepKind::LocalSet, linf);
  RepName out = tr::setrep_norm_exchange(in, l1);
  CHECK(out.norm().same_as(l1));

  // boundary point stays positive; far point under the 1-norm is negative
  CHECK(out.query(P2(1, 0), 5).as_bit());
  CHECK(!out.query(P2(4, 0), 0).as_bit());

  // per-query input cost is exactly |D|
  CoveragePattern pat = coverage_pattern(linf, l1);
  auto before = in.ledger();
  out.query(P2(3, 3), 2);
  out.query(P2(-1, 0), 4);
  auto after = in.ledger();
  CHECK(after.raw - before.raw == 2 * pat.points.size());

  auto queries = window_queries(P2(-2, -2), P2(2, 2), 2, -2, 5);
  CHECK(validate_name(out, square, queries).ok());

  // self-exchange sanity
  RepName self = tr::setrep_norm_exchange(in, linf);
  CHECK(validate_name(self, square, queries).ok());

  // perturbed valid input stays valid through the exchange
  RepName pert = gap_perturbed_name(square, RepKind::LocalSet, linf);
  CHECK(validate_name(tr::setrep_norm_exchange(pert, l1), square, queries).ok());
}

TEST_CASE("scale_set delegates with one query and shifted precision") {
  auto interval = GroundTruthSet::box(P1(0), P1(1));
  RepName in = interval.canonical_name(RepKind::LocalSet, Norm::linf(1));
  RepName out = tr::scale_set(in, 3);
  CHECK(out.query(P1(4), 5).as_bit());  // 4/8 inside [0,1]
  auto truth8 = interval.scaled_pow2(3);
  auto queries = window_queries(P1(-6), P1(10), 2, -3, 5);
  CHECK(validate_name(out, truth8, queries).ok());
  // advice shifts with the scale
  CHECK(*out.advice().outer_radius_exp == *in.advice().outer_radius_exp + 3);

  auto before = in.ledger();
  out.query(P1(7), 6);
  CHECK(in.ledger().raw - before.raw == 1);

  // identity behavior for k = 0
  RepName same = tr::scale_set(in, 0);
  CHECK(same.query(P1(1, 1), 4) == in.query(P1(1, 1), 4));

  // shrink: [0,1]^2 scaled by 2^-2
  auto box2 = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName out2 = tr::scale_set(box2.canonical_name(RepKind::LocalSet, Norm::linf(2)), -2);
  CHECK(out2.query(P2(1, 0, 2), 3).as_bit());
}

TEST_CASE("1D distance from local information") {
  auto interval = GroundTruthSet::box(P1(0), P1(1));
  RepName in = interval.canonical_name(RepKind::LocalSet, Norm::linf(1));
  RepName out = tr::setrep_to_distrep_1d(in);
  Dyadic v = out.query(P1(3), 10).as_scalar();
  CHECK(dist_within(interval, Norm::linf(1), P1(3), v, Dyadic::pow2(-10)));
  CHECK((v - Dyadic(2)).abs() <= Dyadic::pow2(-10));
  // inside: distance 0
  CHECK(out.query(P1(1, 1), 8).as_scalar() <= Dyadic::pow2(-8));

  // union of two points: distance 1/2 at the midpoint
  auto two = GroundTruthSet::finite_union(
      {GroundTruthSet::singleton(P1(0)), GroundTruthSet::singleton(P1(1))});
  RepName tin = two.canonical_name(RepKind::LocalSet, Norm::linf(1));
  RepName tout = tr::setrep_to_distrep_1d(tin);
  Dyadic tv = tout.query(P1(1, 1), 8).as_scalar();
  CHECK((tv - Dyadic::make(1, 1)).abs() <= Dyadic::pow2(-8));

  // full validation incl. negative precisions, canonical and perturbed
  auto queries = window_queries(P1(-3), P1(3), 4, -2, 8);
  CHECK(validate_name(out, interval, queries).ok());
  RepName pert = gap_perturbed_name(interval, RepKind::LocalSet, Norm::linf(1));
  CHECK(validate_name(tr::setrep_to_distrep_1d(pert), interval, queries).ok());
  CHECK(validate_name(tout, two, queries).ok());

  // query growth stays linear-ish: doubling n at most quadruples the cost
  auto count = [&](int n) {
    RepName fin = interval.canonical_name(RepKind::LocalSet, Norm::linf(1));
    RepName fout = tr::setrep_to_distrep_1d(fin);
    fout.query(P1(3), n);
    return fin.ledger().raw;
  };
  auto c10 = count(10);
  auto c20 = count(20);
  CHECK(c20 <= 4 * c10);
}

TEST_CASE("grid name to local-set name") {
  auto box = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName in = box.canonical_name(RepKind::Grid, Norm::linf(2));
  RepName out = tr::gridrep_to_setrep(in);
  CHECK(!out.query(P2(2, 0), 2).as_bit());
  CHECK(out.query(P2(1, 1, 1), 6).as_bit());
  CHECK(out.query(P2(1, 1), 4).as_bit());
  auto queries = window_queries(P2(-2, -2), P2(2, 2), 2, -2, 6);
  CHECK(validate_name(out, box, queries).ok());
  RepName pert = gap_perturbed_name(box, RepKind::Grid, Norm::linf(2));
  CHECK(validate_name(tr::gridrep_to_setrep(pert), box, queries).ok());
}

TEST_CASE("local-set name to grid name") {
  auto box = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName in = box.canonical_name(RepKind::LocalSet, Norm::linf(2));
  RepName out = tr::setrep_to_gridrep(in);
  // far points are not members
  CHECK(!out.query(P2(2, 0), 1).as_bit());
  // members carry the canonical threshold at precision n+1
  CHECK(out.query(P2(0, 0), 3).as_bit());
  for (int n = 0; n <= 4; ++n) {
    auto queries = window_queries(P2(-1, -1), P2(2, 2), n + 2, n, n);
    CHECK(validate_name(out, box, queries).ok());
  }
  RepName pert = gap_perturbed_name(box, RepKind::LocalSet, Norm::linf(2));
  RepName pout = tr::setrep_to_gridrep(pert);
  for (int n = 0; n <= 4; ++n) {
    auto queries = window_queries(P2(-1, -1), P2(2, 2), n + 2, n, n);
    CHECK(validate_name(pout, box, queries).ok());
  }
}

TEST_CASE("relative distance to local-set and back") {
  auto box = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName rel = box.canonical_name(RepKind::RelDist, Norm::linf(2));
  RepName out = tr::reldistrep_to_setrep(rel);
  auto queries = window_queries(P2(-2, -2), P2(2, 2), 2, -2, 6);
  CHECK(validate_name(out, box, queries).ok());
  CHECK(out.query(P2(1, 1, 1), 7).as_bit());  // d = 0 forces 1

  RepName pertrel = gap_perturbed_name(box, RepKind::RelDist, Norm::linf(2));
  CHECK(validate_name(tr::reldistrep_to_setrep(pertrel), box, queries).ok());

  RepName loc = box.canonical_name(RepKind::LocalSet, Norm::linf(2));
  RepName rout = tr::setrep_to_reldistrep(loc);
  auto annulus_queries = window_queries(P2(-2, -2), P2(2, 2), 1, -2, 5);
  CHECK(validate_name(rout, box, annulus_queries).ok());
  RepName pertloc = gap_perturbed_name(box, RepKind::LocalSet, Norm::linf(2));
  CHECK(validate_name(tr::setrep_to_reldistrep(pertloc), box, annulus_queries).ok());

  // spec arithmetic: d((5),[0,1]) = 4 and the answer obeys the relative bound
  auto interval = GroundTruthSet::box(P1(0), P1(1));
  RepName li = interval.canonical_name(RepKind::LocalSet, Norm::linf(1));
  Dyadic v = tr::setrep_to_reldistrep(li).query(P1(5), 6).as_scalar();
  CHECK(v.to_rational() >= mpq_class(3) - Dyadic::pow2(-6).to_rational());
  CHECK(v.to_rational() <= mpq_class(5) + Dyadic::pow2(-6).to_rational());
}

TEST_CASE("distance name reinterpreted as the poorer kinds") {
  auto box = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName dist = box.canonical_name(RepKind::Dist, Norm::linf(2));
  auto queries = window_queries(P2(-2, -2), P2(2, 2), 2, -2, 6);

  RepName rel = tr::distrep_to_others(dist, RepKind::RelDist);
  CHECK(rel.kind() == RepKind::RelDist);
  CHECK(validate_name(rel, box, queries).ok());

  RepName loc = tr::distrep_to_others(dist, RepKind::LocalSet);
  CHECK(validate_name(loc, box, queries).ok());
  CHECK(loc.query(P2(1, 1, 1), 6).as_bit());  // value 0 -> 1

  RepName mu = tr::distrep_to_others(dist, RepKind::WeakMembership);
  CHECK(validate_name(mu, box, queries).ok());

  RepName pert = gap_perturbed_name(box, RepKind::Dist, Norm::linf(2));
  CHECK(validate_name(tr::distrep_to_others(pert, RepKind::LocalSet), box, queries).ok());
  CHECK(validate_name(tr::distrep_to_others(pert, RepKind::WeakMembership), box, queries).ok());
}

TEST_CASE("1D weak membership to local-set by bisection") {
  auto interval = GroundTruthSet::box(P1(0), P1(1));
  RepName mu = interval.canonical_name(RepKind::WeakMembership, Norm::linf(1));
  RepName out = tr::wmem_to_setrep_1d(mu);
  CHECK(!out.query(P1(2), 1).as_bit());    // distance 1 >= 1/2
  CHECK(out.query(P1(1, 1), 5).as_bit());  // the inner point itself
  CHECK(out.query(P1(1), 4).as_bit());     // boundary point
  auto queries = window_queries(P1(-3), P1(3), 4, -2, 8);
  CHECK(validate_name(out, interval, queries).ok());

  RepName pert = gap_perturbed_name(interval, RepKind::WeakMembership, Norm::linf(1));
  CHECK(validate_name(tr::wmem_to_setrep_1d(pert), interval, queries).ok());
}

TEST_CASE("brute-force distance from local information") {
  auto box2 = GroundTruthSet::box(P2(0, 0), P2(1, 1));
  RepName in = box2.canonical_name(RepKind::LocalSet, Norm::linf(2));
  RepName out = tr::distrep_from_setrep_bruteforce(in);
  Dyadic v = out.query(P2(2, 2), 3).as_scalar();
  CHECK((v - Dyadic(1)).abs() <= Dyadic::pow2(-3));
  CHECK(out.query(P2(1, 1, 1), 4).as_scalar() <= Dyadic::pow2(-4));
  auto queries = window_queries(P2(-2, -2), P2(2, 2), 1, -2, 3);
  CHECK(validate_name(out, box2, queries).ok());

  // ledger doubles per precision step (d = 2)
  std::vector<std::uint64_t> raws;
  for (int n = 2; n <= 4; ++n) {
    RepName fin = box2.canonical_name(RepKind::LocalSet, Norm::linf(2));
    RepName fout = tr::distrep_from_setrep_bruteforce(fin);
    fout.query(P2(2, 2), n);
    raws.push_back(fin.ledger().raw);
  }
  CHECK(raws[1] >= 2 * raws[0]);
  CHECK(raws[2] >= 2 * raws[1]);
}

TEST_CASE("distance norm-exchange via the iterative witness search") {
  auto seg = GroundTruthSet::segment(P2(0, 0), P2(1, 1));
  RepName in = seg.canonical_name(RepKind::Dist, Norm::l1(2));
  RepName out = tr::distrep_norm_exchange_search(in, Norm::linf(2));
  CHECK(out.norm().same_as(Norm::linf(2)));
  // d_1((1,0), diag) = 1, d_inf = 1/2
  Dyadic v = out.query(P2(1, 0), 3).as_scalar();
  CHECK((v - Dyadic::make(1, 1)).abs() <= Dyadic::pow2(-3));
  // on the set
  CHECK(out.query(P2(1, 1, 1), 3).as_scalar() <= Dyadic::pow2(-3));
  // the witness scan is exponential by construction, so validate a small
  // window here; the acceptance suite measures the scaling per precision
  auto queries = window_queries(P2(-1, -1), P2(2, 2), 0, 0, 1);
  CHECK(validate_name(out, seg, queries).ok());
}

TEST_CASE("point projection onto a direction") {
  DyadicPoint p = tr::project_point(P2(1, 1), P2(1, 0), 8);
  CHECK(p == P2(1, 0));
  DyadicPoint q = P2(3, -5);
  CHECK(tr::project_point(q, q, 6) == q);
  DyadicPoint r = tr::project_point(P2(3, 4), P2(1, 1), 8);
  CHECK(r == P2(7, 7, 1));  // exact: q.q = 2 is a power of two
}

TEST_CASE("weak optimization from weak membership") {
  auto square = GroundTruthSet::box(P2(-1, -1), P2(1, 1));
  RepName mu = square.canonical_name(RepKind::WeakMembership, Norm::linf(2));
  RepName wopt = tr::wmem_to_wopt(mu);
  Answer a = wopt.query(P2(1, 0), 4);
  REQUIRE(a.kind() == Answer::Kind::Point);
  CHECK(a.as_point()[0] >= Dyadic(1) - Dyadic::pow2(-4));
  CHECK(square.dist_cmp(a.as_point(), Norm::l2(2), Dyadic::pow2(-4).to_rational()) <= 0);

  Answer diag = wopt.query(P2(1, 1), 3);
  REQUIRE(diag.kind() == Answer::Kind::Point);
  CHECK(diag.as_point().dot(P2(1, 1)) >= Dyadic(2) - Dyadic::pow2(-3));

  // validator over a direction set
  std::vector<QueryItem> dirs;
  test::Rng rng(31);
  for (int n = 0; n <= 4; ++n)
    for (int it = 0; it < 6; ++it) dirs.push_back({rng.point(2, 6, 2), n});
  CHECK(validate_name(wopt, square, dirs).ok());

  // degenerate advice is rejected up front
  OracleFn noop = [](const DyadicPoint&, Precision) { return Answer::bit(false); };
  RepName bare(RepKind::WeakMembership, 2, Norm::linf(2), {}, noop, "bare");
  CHECK_THROWS(tr::wmem_to_wopt(bare));

  // 1D
  auto iv = GroundTruthSet::box(P1(-1), P1(3));
  RepName mu1 = iv.canonical_name(RepKind::WeakMembership, Norm::linf(1));
  RepName w1 = tr::wmem_to_wopt(mu1);
  Answer a1 = w1.query(P1(1), 6);
  CHECK(a1.as_point()[0] >= Dyadic(3) - Dyadic::pow2(-6));
  Answer a1n = w1.query(P1(-1), 6);
  CHECK(a1n.as_point()[0] <= Dyadic(-1) + Dyadic::pow2(-6));
}

TEST_CASE("polar distance of the square is the cross-polytope distance") {
  auto square = GroundTruthSet::box(P2(-1, -1), P2(1, 1));
  auto cross = GroundTruthSet::norm_ball(P2(0, 0), Dyadic(1), Norm::l1(2));
  RepName mu = square.canonical_name(RepKind::WeakMembership, Norm::linf(2));
  RepName wopt = tr::wmem_to_wopt(mu);
  RepName polar = tr::polar_distrep(wopt, 0, 1);
  // advice swaps
  CHECK(*polar.advice().inner_radius_exp == 1);
  CHECK(*polar.advice().outer_radius_exp == 0);

  for (int n = 0; n <= 4; ++n) {
    Dyadic v = polar.query(P2(2, 0), n).as_scalar();
    CHECK(dist_within(cross, Norm::l2(2), P2(2, 0), v, Dyadic::pow2(-n).mul_pow2(1)));
  }
  // q = 0 answers 0; interior points stay near 0
  CHECK(polar.query(P2(0, 0), 5).as_scalar() == Dyadic());
  CHECK(polar.query(P2(1, 0, 1), 4).as_scalar() <= Dyadic::pow2(-4));

  test::Rng rng(41);
  for (int it = 0; it < 12; ++it) {
    DyadicPoint q = rng.point(2, 12, 3);
    int n = static_cast<int>(rng.range(0, 4));
    Dyadic v = polar.query(q, n).as_scalar();
    CHECK(dist_within(cross, Norm::l2(2), q, v, Dyadic::pow2(-n).mul_pow2(1)));
  }
}

TEST_CASE("double polar recovers the Euclidean distance of a convex body") {
  auto box = GroundTruthSet::box(P2(0, 0), P2(2, 2));
  RepName mu = box.canonical_name(RepKind::WeakMembership, Norm::linf(2));
  RepName dist = tr::wmem_to_distrep_convex(mu);
  for (int n = 0; n <= 3; ++n) {
    Dyadic v = dist.query(P2(4, 1), n).as_scalar();
    CHECK(dist_within(box, Norm::l2(2), P2(4, 1), v, Dyadic::pow2(-n).mul_pow2(1)));
  }
  // the inner point is at distance ~0
  Dyadic v0 = dist.query(P2(1, 1), 3).as_scalar();
  CHECK(v0 <= Dyadic::pow2(-2));
}
