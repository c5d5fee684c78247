#include "csets/validate.hpp"

#include <optional>
#include <sstream>

namespace csets {

namespace {

mpq_class pow2_q(int e) {
  if (e >= 0) return mpq_class(mpz_class(1) << e);
  return mpq_class(mpz_class(1), mpz_class(1) << (-e));
}

}  // namespace

std::vector<QueryItem> window_queries(const DyadicPoint& lo, const DyadicPoint& hi, int grid_m,
                                      int n_min, int n_max) {
  std::vector<QueryItem> out;
  for (int n = n_min; n <= n_max; ++n) {
    // axis-aligned enumeration within [lo, hi]
    int d = lo.dim();
    std::vector<mpz_class> a(d), b(d), cur(d);
    bool empty = false;
    for (int i = 0; i < d; ++i) {
      a[i] = lo[i].ceil_scaled(grid_m);
      b[i] = hi[i].floor_scaled(grid_m);
      if (a[i] > b[i]) empty = true;
      cur[i] = a[i];
    }
    if (empty) continue;
    while (true) {
      std::vector<Dyadic> coords(d);
      for (int i = 0; i < d; ++i) coords[i] = Dyadic::make(cur[i], grid_m);
      out.push_back({DyadicPoint(std::move(coords)), n});
      int i = d - 1;
      while (i >= 0) {
        cur[i] += 1;
        if (cur[i] <= b[i]) break;
        cur[i] = a[i];
        --i;
      }
      if (i < 0) break;
    }
  }
  return out;
}

std::string Violation::line() const {
  std::ostringstream os;
  os << "VIOLATION kind=" << rep_kind_tag(kind) << " q=" << q.to_text() << " n=" << n
     << " got=" << got << " bound=" << bound.to_text();
  return os.str();
}

std::string ValidityReport::to_text() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.line() << '\n';
  os << "CHECKS " << checks << " VIOLATIONS " << violations.size() << " SKIPPED " << skipped
     << '\n';
  return os.str();
}

namespace {

struct CellResult {
  std::optional<Violation> violation;
  bool skipped = false;
};

CellResult check_one(const RepName& name, const GroundTruthSet& truth, const QueryItem& item) {
  CellResult res;
  const Norm& norm = name.norm();
  const DyadicPoint& q = item.q;
  const int n = item.n;
  Answer a = name.query(q, n);
  auto flag = [&](const Dyadic& bound) {
    res.violation = Violation{name.kind(), q, n, a.to_text(), bound};
  };

  switch (name.kind()) {
    case RepKind::Dist: {
      const Dyadic& v = a.as_scalar();
      if (!v.on_grid(n + 1)) {
        flag(Dyadic::pow2(-(n + 1)));
        break;
      }
      mpq_class up = v.to_rational() + pow2_q(-n);
      mpq_class dn = v.to_rational() - pow2_q(-n);
      if (truth.dist_cmp(q, norm, up) > 0 || truth.dist_cmp(q, norm, dn) < 0)
        flag(Dyadic::pow2(-n));
      break;
    }
    case RepKind::RelDist: {
      const Dyadic& v = a.as_scalar();
      if (!v.on_grid(n + 1)) {
        flag(Dyadic::pow2(-(n + 1)));
        break;
      }
      // v >= 3/4 d - 2^-n  <=>  d <= (v + 2^-n)*4/3
      mpq_class hi = (v.to_rational() + pow2_q(-n)) * mpq_class(4, 3);
      // v <= 5/4 d + 2^-n  <=>  d >= (v - 2^-n)*4/5
      mpq_class lo = (v.to_rational() - pow2_q(-n)) * mpq_class(4, 5);
      if (truth.dist_cmp(q, norm, hi) > 0 || truth.dist_cmp(q, norm, lo) < 0)
        flag(Dyadic::pow2(-n));
      break;
    }
    case RepKind::LocalSet: {
      if (a.as_bit()) {
        if (truth.dist_cmp(q, norm, pow2_q(-n + 1)) > 0) flag(Dyadic::pow2(-n + 1));
      } else {
        if (truth.dist_cmp(q, norm, pow2_q(-n)) < 0) flag(Dyadic::pow2(-n));
      }
      break;
    }
    case RepKind::WeakMembership: {
      if (a.as_bit()) {
        if (truth.dist_cmp(q, norm, pow2_q(-n)) > 0) flag(Dyadic::pow2(-n));
      } else {
        BallCert c = truth.ball_inside(q, Dyadic::pow2(-n), norm);
        if (c == BallCert::Yes) flag(Dyadic::pow2(-n));
        if (c == BallCert::Unknown) res.skipped = true;
      }
      break;
    }
    case RepKind::Grid: {
      bool on_grid = true;
      for (int i = 0; i < q.dim(); ++i)
        if (!q[i].on_grid(n)) on_grid = false;
      if (a.as_bit()) {
        // kappa2: members lie on the layer grid within 2^-n of S
        if (!on_grid || truth.dist_cmp(q, norm, pow2_q(-n)) > 0) flag(Dyadic::pow2(-n));
        break;
      }
      // kappa1 probe: a query point certainly 2^-(n+2)-close to S must see a
      // member within 2^-n + 2^-(n+2)
      if (truth.dist_cmp(q, norm, pow2_q(-(n + 2))) > 0) break;
      mpq_class reach = pow2_q(-n) + pow2_q(-(n + 2));
      Dyadic radius = cross_norm_bound(norm, Norm::linf(q.dim())) *
                      Dyadic::from_rational(reach, n + 8, RoundMode::Up);
      bool found = !for_each_grid_point(q, radius, n, [&](const DyadicPoint& g) {
        if (norm_cmp(norm, g - q, reach) <= 0 && name.query(g, n).as_bit()) return false;
        return true;
      });
      if (!found) flag(Dyadic::from_rational(reach, n + 8, RoundMode::Up));
      break;
    }
    case RepKind::WeakOpt: {
      if (a.kind() == Answer::Kind::Empty) {
        // legal only if the 2^-n shrink is empty; certify the opposite via
        // the advice inner ball
        if (name.advice().inner_point && name.advice().inner_radius_exp &&
            n > *name.advice().inner_radius_exp) {
          flag(Dyadic::pow2(-n));
        } else {
          res.skipped = true;
        }
        break;
      }
      const DyadicPoint& p = a.as_point();
      if (truth.dist_cmp(p, norm, pow2_q(-n)) > 0) {
        flag(Dyadic::pow2(-n));
        break;
      }
      // near-optimality vs the exact support of the shrunken body:
      // sup_shrunk >= sup_S - eps * 2^(|b|+|r|+1) * ||c||_2, valid while
      // eps < 2^-r (cone argument on the inner ball)
      if (!name.advice().inner_radius_exp || !name.advice().outer_radius_exp) {
        res.skipped = true;
        break;
      }
      int r = *name.advice().inner_radius_exp;
      int b = *name.advice().outer_radius_exp;
      if (n <= r) {
        res.skipped = true;  // shrink may swallow the inner ball
        break;
      }
      NormInterval cn = norm_interval(Norm::l2(q.dim()), q, 8);
      mpq_class slack = pow2_q(-n) * pow2_q(std::abs(b) + std::abs(r) + 1) * cn.hi.to_rational();
      mpq_class have = p.dot(q).to_rational() + pow2_q(-n) + slack;
      ExactVal sup = truth.support(q);
      if (sup.cmp(have) > 0) flag(Dyadic::pow2(-n));
      break;
    }
  }
  return res;
}

}  // namespace

ValidityReport validate_name(const RepName& name, const GroundTruthSet& truth,
                             const std::vector<QueryItem>& queries, SweepMode mode) {
  std::vector<CellResult> cells(queries.size());
  sweep_indexed(queries.size(), mode, [&](std::size_t i) {
    cells[i] = check_one(name, truth, queries[i]);
  });
  ValidityReport rep;
  rep.checks = queries.size();
  for (auto& c : cells) {
    if (c.violation) rep.violations.push_back(std::move(*c.violation));
    if (c.skipped) ++rep.skipped;
  }
  return rep;
}

}  // namespace csets
