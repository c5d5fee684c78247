#pragma once

#include "csets/names.hpp"

namespace csets {
namespace set_ops {

/// A point within 2^-n of the set, from a local-set name with outer radius:
/// iterative grid refinement, lexicographically first positive candidate per
/// step.
DyadicPoint choice_setrep(const RepName& in, Precision n);

/// A point within 2^-n of a bounded body from weak membership with r and b:
/// lexicographically first positive of an exhaustive grid scan at precision
/// max(r+1, n); exponential in |b| + |r|.
DyadicPoint choice_wmem(const RepName& in, Precision n);

/// Binary union for Dist/RelDist (pointwise min), LocalSet/Grid (pointwise
/// max); advice b = max(b1, b2).
RepName set_union(const RepName& in1, const RepName& in2);

/// Union of two convex bodies as a weak-membership name: max over both inputs
/// of the 3*2^-(n+2) neighborhood at precision n+2.
RepName union_wmem_convex(const RepName& in1, const RepName& in2);

/// Intersection of weak-membership names: pointwise min at precision n.
RepName intersection_wmem(const RepName& in1, const RepName& in2);

/// Intersection of two convex local-set names given an inner radius exponent
/// r' of the intersection: local search at precision N = n + r' + max(b1,b2) + 2.
RepName intersection_setrep_convex(const RepName& in1, const RepName& in2, int r_prime);

/// Coordinate projection of a grid name onto the first e coordinates, by
/// enumerating the fiber grid per queried base point. Exponential in
/// (d - e)(n + b).
RepName projection_general(const RepName& in, int e);

/// Axis interval of a convex body from weak membership with full advice, as a
/// one-dimensional grid name; endpoints via weak optimization in -e_i, +e_i.
RepName projection_convex_interval(const RepName& in, int axis);

}  // namespace set_ops
}  // namespace csets
