#include "csets/names.hpp"

#include <stdexcept>
#include <unordered_map>

namespace csets {

const char* rep_kind_tag(RepKind k) {
  switch (k) {
    case RepKind::Dist: return "dist";
    case RepKind::RelDist: return "reldist";
    case RepKind::LocalSet: return "local";
    case RepKind::Grid: return "grid";
    case RepKind::WeakMembership: return "wmem";
    case RepKind::WeakOpt: return "wopt";
  }
  return "?";
}

std::optional<RepKind> parse_rep_kind(std::string_view s) {
  if (s == "dist") return RepKind::Dist;
  if (s == "reldist") return RepKind::RelDist;
  if (s == "local" || s == "psi") return RepKind::LocalSet;
  if (s == "grid" || s == "kappa") return RepKind::Grid;
  if (s == "wmem" || s == "mu") return RepKind::WeakMembership;
  if (s == "wopt") return RepKind::WeakOpt;
  return std::nullopt;
}

Advice Advice::merged(const Advice& over) const {
  Advice a = *this;
  if (over.inner_point) a.inner_point = over.inner_point;
  if (over.inner_radius_exp) a.inner_radius_exp = over.inner_radius_exp;
  if (over.outer_radius_exp) a.outer_radius_exp = over.outer_radius_exp;
  return a;
}

bool Answer::operator==(const Answer& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Bit: return bit_ == o.bit_;
    case Kind::Scalar: return scalar_ == o.scalar_;
    case Kind::Point: return point_ == o.point_;
    case Kind::Empty: return true;
  }
  return false;
}

std::string Answer::to_text() const {
  switch (kind_) {
    case Kind::Bit: return bit_ ? "1" : "0";
    case Kind::Scalar: return scalar_.to_text();
    case Kind::Point: return point_.to_text();
    case Kind::Empty: return "empty";
  }
  return "?";
}

namespace {
struct QKey {
  DyadicPoint q;
  int n;
  bool operator==(const QKey& o) const { return n == o.n && q == o.q; }
};
struct QKeyHash {
  std::size_t operator()(const QKey& k) const {
    std::size_t h = std::hash<int>()(k.n);
    for (const auto& c : k.q.coords()) {
      std::size_t limb = mpz_size(c.numerator().get_mpz_t())
                             ? static_cast<std::size_t>(mpz_getlimbn(c.numerator().get_mpz_t(), 0))
                             : 0;
      limb = limb * 2 + (c.sign() < 0 ? 1 : 0);
      h ^= (limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
      h ^= (static_cast<std::size_t>(c.exponent()) + 0x517cc1b727220a95ull + (h << 6) + (h >> 2));
    }
    return h;
  }
};
}  // namespace

struct RepName::Core {
  OracleFn fn;
  std::string label;
  QueryLedger ledger;
  std::mutex mu;
  std::unordered_map<QKey, std::shared_future<Answer>, QKeyHash> memo;
};

RepName::RepName(RepKind kind, int dim, Norm norm, Advice advice, OracleFn oracle,
                 std::string label)
    : kind_(kind), dim_(dim), norm_(std::move(norm)), advice_(std::move(advice)),
      core_(std::make_shared<Core>()) {
  core_->fn = std::move(oracle);
  core_->label = std::move(label);
}

const std::string& RepName::label() const {
  static const std::string empty;
  return core_ ? core_->label : empty;
}

Answer RepName::query(const DyadicPoint& q, Precision n) const {
  if (!core_) throw std::logic_error("query on empty RepName");
  if (q.dim() != dim_) throw std::invalid_argument("query: dimension mismatch");
  core_->ledger.record_raw(n);
  QKey key{q, n};
  std::shared_future<Answer> fut;
  bool compute = false;
  std::promise<Answer> prom;
  {
    std::lock_guard<std::mutex> lock(core_->mu);
    auto it = core_->memo.find(key);
    if (it == core_->memo.end()) {
      fut = prom.get_future().share();
      core_->memo.emplace(key, fut);
      core_->ledger.record_distinct();
      compute = true;
    } else {
      fut = it->second;
    }
  }
  if (compute) {
    try {
      Answer a = core_->fn(q, n);
      // Distance-flavored values always land in D_(n+1).
      if ((kind_ == RepKind::Dist || kind_ == RepKind::RelDist) &&
          a.kind() == Answer::Kind::Scalar) {
        a = Answer::scalar(a.as_scalar().round_to(n + 1, RoundMode::NearestTiesUp));
      }
      prom.set_value(std::move(a));
    } catch (...) {
      prom.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

RepName RepName::advise(const Advice& extra) const {
  RepName r = *this;
  r.advice_ = advice_.merged(extra);
  return r;
}

RepName RepName::retagged(RepKind kind) const {
  RepName r = *this;
  r.kind_ = kind;
  return r;
}

RepName RepName::with_source(const RepName& src) const {
  RepName r = *this;
  r.source_ = std::make_shared<const RepName>(src);
  return r;
}

LedgerSnapshot RepName::ledger() const {
  if (!core_) return {};
  return core_->ledger.snapshot();
}

}  // namespace csets
