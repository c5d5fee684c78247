#include "csets/scene.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace csets;
using namespace csets::test;

TEST_CASE("scene lines parse and round-trip bit-exactly") {
  std::string text =
      "# comment\n"
      "box d=2 min=(-1p0,-1p0) max=(1p0,1p0)\n"
      "ball d=2 c=(0p0,0p0) rad=1p0 norm=linf\n"
      "ball d=2 c=(1p-1,0p0) rad=3p-2 norm=3p-1*l1\n"
      "poly d=2 hs=[(c=(-1p0,0p0),a=0p0);(c=(0p0,-1p0),a=0p0);(c=(1p0,1p0),a=1p0)]\n"
      "segment d=2 a=(0p0,0p0) b=(1p0,1p0)\n"
      "point d=2 p=(1p-1,1p-1)\n"
      "union { box d=1 min=(0p0) max=(0p0) ; point d=1 p=(1p0) }\n";
  auto shapes = parse_scene(text);
  REQUIRE(shapes.size() == 7);
  std::string out = write_scene(shapes);
  auto again = parse_scene(out);
  CHECK(write_scene(again) == out);
  // semantic checks
  CHECK(shapes[0].contains(P2(1, 1)));
  CHECK(shapes[3].contains(P2(1, 1, 1)));
  CHECK(shapes[6].dim() == 1);
}

TEST_CASE("malformed scene lines are rejected") {
  CHECK_THROWS(parse_shape("box d=2 min=(-1p0,-1p0)"));
  CHECK_THROWS(parse_shape("ball d=2 c=(0p0,0p0) rad=1p0 norm=l7"));
  CHECK_THROWS(parse_shape("blob d=2"));
  CHECK_THROWS(parse_shape("box d=2 min=(1p0,1p0) max=(0p0,0p0)"));  // empty
  CHECK_THROWS(parse_shape("poly d=2 hs=[(c=(0p0,0p0),a=1p0)]"));    // zero normal
}

TEST_CASE("function specs parse") {
  auto f = parse_funcspec(
      "affine d=2 e=2 A=[[2p0,0p0],[0p0,1p0]] v=(1p0,-3p0) smin=0 smax=1 "
      "domain={box d=2 min=(0p0,0p0) max=(1p0,1p0)}");
  CHECK(f.dim_in() == 2);
  CHECK(f.dim_out() == 2);
  DyadicPoint v = f.eval(P2(0, 0), 8);
  CHECK((v[0] - Dyadic(1)).abs() <= Dyadic::pow2(-8));
  CHECK((v[1] + Dyadic(3)).abs() <= Dyadic::pow2(-8));

  auto s = parse_funcspec("sqrtmap d=1 lo=1p-2");
  CHECK(s.dim_in() == 1);
  DyadicPoint w = s.eval(P1(1), 8);
  CHECK((w[0] - Dyadic(1)).abs() <= Dyadic::pow2(-8));

  CHECK_THROWS(parse_funcspec("affine d=2 e=2 A=[[2p0,0p0],[0p0,1p0]] v=(1p0,-3p0) smin=0 smax=1"));
  CHECK_THROWS(parse_funcspec("warp d=1"));
}
