#pragma once

#include "csets/names.hpp"

namespace csets {
namespace translators {

/// Local-set name w.r.t. a different well-behaved norm: per output query, the
/// max of |D| input queries over a verified coverage pattern.
RepName setrep_norm_exchange(const RepName& in, const Norm& target);

/// Name of 2^k * S; one input query per output query.
RepName scale_set(const RepName& in, int k);

/// 1D distance name from a local-set name with outer radius: coarse doubling
/// search for the distance scale, then certified bracket bisection left and
/// right of the query. O(n + |b| + log(2 + |q|)) input queries.
RepName setrep_to_distrep_1d(const RepName& in);

/// Grid name -> local-set name: max over the 3*2^-(n+1) neighborhood of the
/// (n+2)-layer.
RepName gridrep_to_setrep(const RepName& in);

/// Local-set name with outer radius -> grid name: layer n membership is the
/// input answer at precision n+1.
RepName setrep_to_gridrep(const RepName& in);

/// Relative-distance name with outer radius -> local-set name by the fixed
/// threshold rule at precision n+4.
RepName reldistrep_to_setrep(const RepName& in);

/// Local-set name with outer radius -> relative-distance name: coarse scale
/// search, then nearest positive point in a hollow-ball grid around q.
RepName setrep_to_reldistrep(const RepName& in);

/// Distance name reinterpreted/thresholded as RelDist, LocalSet or
/// WeakMembership.
RepName distrep_to_others(const RepName& in, RepKind target);

/// 1D weak-membership name of a convex body with inner ball advice ->
/// local-set name via bisection between the inner point and the query.
RepName wmem_to_setrep_1d(const RepName& in);

/// Exponential baseline: distance from a local-set name by scanning the full
/// grid of candidate points; Theta(2^(d(n+b))) input queries.
RepName distrep_from_setrep_bruteforce(const RepName& in);

/// Norm exchange for distance names via the iterative delta-search whose
/// witness step scans the full grid (the stand-in for an NP oracle);
/// exponential by construction.
RepName distrep_norm_exchange_search(const RepName& in, const Norm& target);

/// Weak optimization from weak membership with full advice (a, r, b) on a
/// bounded convex body. Euclidean norm. Implemented by radial boundary
/// search over a monotone angular parametrization with certified shrink
/// steps; the step budget is polynomial in d^2 (n + |b| + |r|).
RepName wmem_to_wopt(const RepName& in);

/// Projection of p onto the line through q, within 2^-k.
DyadicPoint project_point(const DyadicPoint& p, const DyadicPoint& q, int k);

/// Distance name of the polar set of a centered convex body, from a weak
/// optimization name: normalize the direction, optimize, project, and read
/// the supporting hyperplane off the projection. Advice swaps (r0' = b,
/// b' = r0).
RepName polar_distrep(const RepName& in, int r0, int b);

/// Euclidean distance name of a convex body from weak membership with full
/// advice: recenter, polar, reinterpret, optimize the polar, polar again,
/// translate back (the double-polar pipeline).
RepName wmem_to_distrep_convex(const RepName& in);

}  // namespace translators
}  // namespace csets
