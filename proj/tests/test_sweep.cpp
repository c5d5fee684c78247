#include "csets/sweep.hpp"

#include "csets/validate.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csets;
using namespace csets::test;

TEST_CASE("parallel sweep equals the serial reference") {
  auto box = GroundTruthSet::box(P2(-1, -1), P2(1, 1));
  RepName serial_name = box.canonical_name(RepKind::Dist, Norm::linf(2));
  RepName parallel_name = box.canonical_name(RepKind::Dist, Norm::linf(2));
  std::vector<std::pair<DyadicPoint, Precision>> queries;
  for (int n = -1; n <= 5; ++n)
    for (const auto& item : window_queries(P2(-2, -2), P2(2, 2), 3, n, n))
      queries.push_back({item.q, item.n});
  auto a = sweep_queries(serial_name, queries, SweepMode::Serial);
  auto b = sweep_queries(parallel_name, queries, SweepMode::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  // ledgers agree: every cell queried exactly once in both modes
  CHECK(serial_name.ledger().raw == parallel_name.ledger().raw);
  CHECK(serial_name.ledger().distinct == parallel_name.ledger().distinct);
  CHECK(serial_name.ledger().max_precision == parallel_name.ledger().max_precision);
}

TEST_CASE("validation reports are identical across modes") {
  auto tri = [] {
    std::vector<Halfspace> hs;
    hs.push_back({P2(-1, 0), Dyadic(0)});
    hs.push_back({P2(0, -1), Dyadic(0)});
    hs.push_back({P2(1, 1), Dyadic(1)});
    return GroundTruthSet::polytope(hs, 2);
  }();
  RepName n1 = tri.canonical_name(RepKind::LocalSet, Norm::linf(2));
  RepName n2 = tri.canonical_name(RepKind::LocalSet, Norm::linf(2));
  auto queries = window_queries(P2(-2, -2), P2(2, 2), 3, -2, 6);
  auto rs = validate_name(n1, tri, queries, SweepMode::Serial);
  auto rp = validate_name(n2, tri, queries, SweepMode::Parallel);
  CHECK(rs.to_text() == rp.to_text());

  // a corrupted name yields the same ordered violation list in both modes
  OracleFn liar = [tri](const DyadicPoint& q, Precision n) {
    return Answer::bit(!(tri.dist_cmp(q, Norm::linf(2), mpq_class(3) * Dyadic::pow2(-n - 1).to_rational()) <= 0));
  };
  RepName bad1(RepKind::LocalSet, 2, Norm::linf(2), {}, liar, "liar");
  RepName bad2(RepKind::LocalSet, 2, Norm::linf(2), {}, liar, "liar");
  auto vs = validate_name(bad1, tri, queries, SweepMode::Serial);
  auto vp = validate_name(bad2, tri, queries, SweepMode::Parallel);
  CHECK(!vs.ok());
  CHECK(vs.to_text() == vp.to_text());
}

TEST_CASE("rasters are deterministic and mode-independent") {
  auto ball = GroundTruthSet::norm_ball(P2(0, 0), Dyadic(1), Norm::l1(2));
  RepName n1 = ball.canonical_name(RepKind::LocalSet, Norm::linf(2));
  RepName n2 = ball.canonical_name(RepKind::LocalSet, Norm::linf(2));
  std::string r1 = raster_bits(n1, P2(-2, -2), P2(2, 2), 4, SweepMode::Serial);
  std::string r2 = raster_bits(n2, P2(-2, -2), P2(2, 2), 4, SweepMode::Parallel);
  CHECK(r1 == r2);
  CHECK(r1.rfind("P2\n65 65\n1\n", 0) == 0);
  std::string again = raster_bits(n1, P2(-2, -2), P2(2, 2), 4, SweepMode::Serial);
  CHECK(again == r1);

  // 1D listing
  auto iv = GroundTruthSet::box(P1(0), P1(1));
  RepName ln = iv.canonical_name(RepKind::LocalSet, Norm::linf(1));
  std::string pts = point_list_bits(ln, Dyadic(-1), Dyadic(2), 2, SweepMode::Serial);
  CHECK(pts.find("0p0\n") != std::string::npos);
  CHECK(pts.find("-1p0") == std::string::npos);
}
