#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "csets/exactval.hpp"
#include "csets/names.hpp"
#include "csets/norms.hpp"

namespace csets {

/// {x : normal . x <= offset}, normal != 0.
struct Halfspace {
  DyadicPoint normal;
  Dyadic offset;
};

enum class BallCert { No, Yes, Unknown };

enum class AdvicePolicy { None, Derive };

/// Symbolic closed nonempty fixture set with exact distance evaluation.
/// Polytopes (and polyhedral conversions of 1-norm balls) are exact for
/// dimensions 1 and 2, which covers the fixture classes this library works
/// with; other shapes work in any dimension.
class GroundTruthSet {
 public:
  static GroundTruthSet box(DyadicPoint lo, DyadicPoint hi);
  static GroundTruthSet norm_ball(DyadicPoint center, Dyadic radius, Norm ball_norm);
  static GroundTruthSet polytope(std::vector<Halfspace> hs, int dim);
  static GroundTruthSet segment(DyadicPoint a, DyadicPoint b);
  static GroundTruthSet singleton(DyadicPoint p);
  static GroundTruthSet finite_union(std::vector<GroundTruthSet> parts);

  GroundTruthSet translated(const DyadicPoint& v) const;
  GroundTruthSet scaled_pow2(int k) const;

  int dim() const { return dim_; }

  bool contains(const DyadicPoint& q) const;
  /// Exact distance d_S(q) under `norm` as a lazily compared min of atoms.
  ExactVal dist(const DyadicPoint& q, const Norm& norm) const;
  int dist_cmp(const DyadicPoint& q, const Norm& norm, const mpq_class& t) const;
  /// lo <= d_S(q) <= hi, hi - lo <= 2^(-k); exact for polyhedral cases.
  void dist_interval(const DyadicPoint& q, const Norm& norm, int k, Dyadic& lo, Dyadic& hi) const;

  /// Is ball_norm(q, eps) contained in the set? Exact for polyhedral
  /// combinations; Unknown for Euclidean query balls against unions.
  BallCert ball_inside(const DyadicPoint& q, const Dyadic& eps, const Norm& norm) const;

  bool is_regular() const;
  bool is_bounded() const;
  bool is_convex() const;

  /// max_{x in S} c.x as an exact max of atoms; rejects unions.
  ExactVal support(const DyadicPoint& c) const;
  /// A maximizer of c.x over S, rounded onto D_m (lexicographic tie-break).
  DyadicPoint support_maximizer(const DyadicPoint& c, long m) const;
  /// Support of the Euclidean shrink ball(S, -eps); used by the weak
  /// optimization validator. Interval at precision k (may be conservative).
  void shrunk_support_interval(const DyadicPoint& c, const Dyadic& eps, int k, Dyadic& lo,
                               Dyadic& hi, bool& nonempty) const;

  /// Exact outer radius exponent; inner point/radius for full-dimensional
  /// convex shapes when policy == Derive.
  Advice derive_advice(const Norm& norm, AdvicePolicy policy) const;

  /// Mints a canonical oracle for the given representation kind. Answers
  /// follow the fixed gap rule (thresholding exact distances), so they are
  /// reproducible and pass validation by construction.
  RepName canonical_name(RepKind kind, const Norm& norm, AdvicePolicy policy = AdvicePolicy::Derive) const;

  std::string to_text() const;  // scene-line form

  struct Box {
    DyadicPoint lo, hi;
  };
  struct Ball {
    DyadicPoint center;
    Dyadic radius;
    Norm norm;
  };
  struct Poly {
    std::vector<Halfspace> hs;
  };
  struct Seg {
    DyadicPoint a, b;
  };
  struct Pt {
    DyadicPoint p;
  };
  struct Union {
    std::vector<GroundTruthSet> parts;
  };
  using Shape = std::variant<Box, Ball, Poly, Seg, Pt, Union>;
  const Shape& shape() const { return *shape_; }

 private:
  GroundTruthSet(Shape s, int dim);
  std::shared_ptr<const Shape> shape_;
  int dim_ = 0;
};

/// Exact Dist/RelDist/LocalSet/WeakMembership/Grid/WeakOpt checks of `name`
/// against `truth` live in validate.hpp.

}  // namespace csets
