#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csets/groundtruth.hpp"
#include "csets/names.hpp"
#include "csets/sweep.hpp"

namespace csets {

struct QueryItem {
  DyadicPoint q;
  Precision n;
};

/// Full grid D^d_grid_m within [lo, hi] crossed with n in [n_min, n_max],
/// ordered n ascending then lexicographic; the standard validation window.
std::vector<QueryItem> window_queries(const DyadicPoint& lo, const DyadicPoint& hi, int grid_m,
                                      int n_min, int n_max);

struct Violation {
  RepKind kind;
  DyadicPoint q;
  Precision n;
  std::string got;
  Dyadic bound;
  std::string line() const;  // "VIOLATION kind=... q=... n=... got=... bound=..."
};

struct ValidityReport {
  std::vector<Violation> violations;
  std::uint64_t checks = 0;
  std::uint64_t skipped = 0;  // conditions that could not be certified either way
  bool ok() const { return violations.empty(); }
  std::string to_text() const;
};

/// Checks every query against the defining condition of the name's kind using
/// exact distances. A violation is reported only when it is certain; answers
/// inside the representation's don't-care gaps never get flagged.
///   Dist      |v - d| <= 2^-n and v in D_(n+1)
///   RelDist   3/4 d - 2^-n <= v <= 5/4 d + 2^-n
///   LocalSet  1 => d <= 2*2^-n ; 0 => d >= 2^-n
///   WeakMem   1 => d <= 2^-n   ; 0 => ball(q,2^-n) not subset of S
///   Grid      member => on-grid and d <= 2^-n; near-S queries must have a
///             member within 2^-n (+ probe slack) -- Hausdorff both ways
///   WeakOpt   point within 2^-n of S and near-optimal vs the exact support
ValidityReport validate_name(const RepName& name, const GroundTruthSet& truth,
                             const std::vector<QueryItem>& queries,
                             SweepMode mode = SweepMode::Parallel);

}  // namespace csets
