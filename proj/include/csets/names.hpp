#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "csets/norms.hpp"

namespace csets {

enum class RepKind { Dist, RelDist, LocalSet, Grid, WeakMembership, WeakOpt };

const char* rep_kind_tag(RepKind k);
std::optional<RepKind> parse_rep_kind(std::string_view s);

/// Discrete side information attached to a name: inner point a, inner radius
/// exponent r (ball(a, 2^-r) subset S), outer radius exponent b
/// (S subset ball(0, 2^b)).
struct Advice {
  std::optional<DyadicPoint> inner_point;
  std::optional<int> inner_radius_exp;
  std::optional<int> outer_radius_exp;

  /// Field-wise merge; fields set in `over` win.
  Advice merged(const Advice& over) const;
};

/// Oracle answer: a bit (LocalSet/Grid/WeakMembership), a scalar in D_(n+1)
/// (Dist/RelDist), a point (WeakOpt), or the explicit Empty marker (WeakOpt).
class Answer {
 public:
  enum class Kind { Bit, Scalar, Point, Empty };

  static Answer bit(bool b) { return Answer(Kind::Bit, b, {}, {}); }
  static Answer scalar(Dyadic v) { return Answer(Kind::Scalar, false, std::move(v), {}); }
  static Answer point(DyadicPoint p) { return Answer(Kind::Point, false, {}, std::move(p)); }
  static Answer empty() { return Answer(Kind::Empty, false, {}, {}); }

  Kind kind() const { return kind_; }
  bool as_bit() const { return bit_; }
  const Dyadic& as_scalar() const { return scalar_; }
  const DyadicPoint& as_point() const { return point_; }

  bool operator==(const Answer& o) const;
  std::string to_text() const;

 private:
  Answer(Kind k, bool b, Dyadic s, DyadicPoint p)
      : kind_(k), bit_(b), scalar_(std::move(s)), point_(std::move(p)) {}
  Kind kind_;
  bool bit_;
  Dyadic scalar_;
  DyadicPoint point_;
};

struct LedgerSnapshot {
  std::uint64_t raw = 0;
  std::uint64_t distinct = 0;
  int max_precision = INT_MIN;
};

/// Per-oracle counters: raw counts every query, distinct counts first
/// occurrences. Counters never decrease; updates are atomic so names can be
/// queried from concurrent sweeps.
class QueryLedger {
 public:
  void record_raw(int n) {
    raw_.fetch_add(1, std::memory_order_relaxed);
    int cur = maxn_.load(std::memory_order_relaxed);
    while (n > cur && !maxn_.compare_exchange_weak(cur, n, std::memory_order_relaxed)) {
    }
  }
  void record_distinct() { distinct_.fetch_add(1, std::memory_order_relaxed); }
  LedgerSnapshot snapshot() const {
    return {raw_.load(), distinct_.load(), maxn_.load()};
  }

 private:
  std::atomic<std::uint64_t> raw_{0};
  std::atomic<std::uint64_t> distinct_{0};
  std::atomic<int> maxn_{INT_MIN};
};

using OracleFn = std::function<Answer(const DyadicPoint&, Precision)>;

/// A representation-tagged, query-counted set oracle. Queries are memoized by
/// (canonical point, precision), so identical queries always return identical
/// answers and duplicate work is computed exactly once even under concurrent
/// access. Values are cheap handles sharing the oracle state; advise() makes
/// a handle with merged advice over the same oracle and ledger.
class RepName {
 public:
  RepName() = default;
  RepName(RepKind kind, int dim, Norm norm, Advice advice, OracleFn oracle,
          std::string label = {});

  RepKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Norm& norm() const { return norm_; }
  const Advice& advice() const { return advice_; }
  const std::string& label() const;
  bool valid() const { return core_ != nullptr; }

  Answer query(const DyadicPoint& q, Precision n) const;
  RepName advise(const Advice& extra) const;
  /// Same oracle handle retagged with a different kind (Dist -> RelDist).
  RepName retagged(RepKind kind) const;

  /// Derived names may keep a handle to the name they were built from;
  /// consumers can exploit it for cheaper access paths without changing
  /// observable semantics.
  RepName with_source(const RepName& src) const;
  const RepName* source() const { return source_.get(); }

  LedgerSnapshot ledger() const;

 private:
  struct Core;
  RepKind kind_ = RepKind::LocalSet;
  int dim_ = 0;
  Norm norm_;
  Advice advice_;
  std::shared_ptr<Core> core_;
  std::shared_ptr<const RepName> source_;
};

}  // namespace csets
