#include "csets/groundtruth.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace csets {

namespace {

using QPoint = std::vector<mpq_class>;

QPoint to_q(const DyadicPoint& p) {
  QPoint r(p.dim());
  for (int i = 0; i < p.dim(); ++i) r[i] = p[i].to_rational();
  return r;
}

mpq_class qdot(const QPoint& a, const QPoint& b) {
  mpq_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpq_class qabs(const mpq_class& x) { return sgn(x) < 0 ? mpq_class(-x) : x; }

// ||v||_p as a rational (p in {1,inf}) or its square (p=2), scale included
// for the rational cases and squared for p=2.
mpq_class poly_norm_q(PExp p, const mpq_class& scale, const QPoint& v) {
  mpq_class acc = 0;
  for (const auto& c : v) {
    mpq_class a = qabs(c);
    acc = (p == PExp::One) ? acc + a : std::max(acc, a);
  }
  return acc * scale;
}

mpq_class sq_sum_q(const QPoint& v) {
  mpq_class s = 0;
  for (const auto& c : v) s += c * c;
  return s;
}

ExactAtom point_dist_atom(const Norm& norm, const QPoint& diff) {
  if (norm.p == PExp::Two) {
    mpq_class sc = norm.scale.to_rational();
    return ExactAtom::root(sc * sc * sq_sum_q(diff));
  }
  return ExactAtom::rational(poly_norm_q(norm.p, norm.scale.to_rational(), diff));
}

// Distance from q to the segment [A,B] (rational endpoints) under a scaled
// p-norm; exact candidate enumeration over the piecewise-linear parameter.
ExactAtom segment_dist_atom(const Norm& norm, const QPoint& A, const QPoint& B, const QPoint& q) {
  size_t d = A.size();
  QPoint u(d), c(d);
  bool degenerate = true;
  for (size_t i = 0; i < d; ++i) {
    u[i] = B[i] - A[i];
    c[i] = q[i] - A[i];
    if (sgn(u[i]) != 0) degenerate = false;
  }
  if (degenerate) return point_dist_atom(norm, c);

  if (norm.p == PExp::Two) {
    mpq_class uu = sq_sum_q(u);
    mpq_class t = qdot(c, u) / uu;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    QPoint w(d);
    for (size_t i = 0; i < d; ++i) w[i] = c[i] - t * u[i];
    mpq_class sc = norm.scale.to_rational();
    return ExactAtom::root(sc * sc * sq_sum_q(w));
  }

  // w_i(t) = c_i - t*u_i; the objective (sum resp. max of |w_i|) is convex
  // piecewise linear, so the minimum over [0,1] is at an endpoint, a kink, or
  // (for max) a crossing of two active lines.
  std::vector<mpq_class> ts{0, 1};
  for (size_t i = 0; i < d; ++i) {
    if (sgn(u[i]) != 0) ts.push_back(c[i] / u[i]);
  }
  if (norm.p == PExp::Inf) {
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = i + 1; j < d; ++j) {
        mpq_class dpos = u[i] - u[j];
        if (sgn(dpos) != 0) ts.push_back((c[i] - c[j]) / dpos);
        mpq_class dneg = u[i] + u[j];
        if (sgn(dneg) != 0) ts.push_back((c[i] + c[j]) / dneg);
      }
    }
  }
  mpq_class sc = norm.scale.to_rational();
  std::optional<mpq_class> best;
  for (const auto& t : ts) {
    if (t < 0 || t > 1) continue;
    mpq_class val = 0;
    for (size_t i = 0; i < d; ++i) {
      mpq_class w = qabs(c[i] - t * u[i]);
      val = (norm.p == PExp::One) ? val + w : std::max(val, w);
    }
    if (!best || val < *best) best = val;
  }
  return ExactAtom::rational(sc * *best);
}

// ---- linear systems over rationals (dimensions 1 and 2) --------------------

struct LinCon {
  QPoint a;
  mpq_class b;
  bool strict = false;  // a.x < b instead of a.x <= b
};

bool feasible_1d(const std::vector<LinCon>& cons) {
  // a*x <=/< b with scalar a
  bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
  mpq_class lo, hi;
  for (const auto& c : cons) {
    const mpq_class& a = c.a[0];
    if (sgn(a) == 0) {
      if (sgn(c.b) < 0 || (c.strict && sgn(c.b) == 0)) return false;
      continue;
    }
    mpq_class bound = c.b / a;
    if (sgn(a) > 0) {  // x <= bound
      if (!has_hi || bound < hi || (bound == hi && c.strict)) {
        hi = bound;
        hi_strict = c.strict;
        has_hi = true;
      }
    } else {  // x >= bound
      if (!has_lo || bound > lo || (bound == lo && c.strict)) {
        lo = bound;
        lo_strict = c.strict;
        has_lo = true;
      }
    }
  }
  if (!has_lo || !has_hi) return true;
  if (lo < hi) return true;
  if (lo == hi) return !lo_strict && !hi_strict;
  return false;
}

bool feasible(const std::vector<LinCon>& cons, int dim) {
  if (dim == 1) return feasible_1d(cons);
  if (dim != 2) throw std::logic_error("feasible: dim > 2 unsupported");
  // Fourier-Motzkin elimination of x2.
  std::vector<LinCon> ones;
  std::vector<const LinCon*> pos, neg;
  for (const auto& c : cons) {
    int s = sgn(c.a[1]);
    if (s == 0) {
      ones.push_back({{c.a[0]}, c.b, c.strict});
    } else if (s > 0) {
      pos.push_back(&c);
    } else {
      neg.push_back(&c);
    }
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      // lower (from n) <= upper (from p):
      //   (a1n*a2p - a1p*a2n) * x <= bn*a2p - bp*a2n
      LinCon c;
      c.a = {n->a[0] * p->a[1] - p->a[0] * n->a[1]};
      c.b = n->b * p->a[1] - p->b * n->a[1];
      c.strict = p->strict || n->strict;
      ones.push_back(std::move(c));
    }
  }
  return feasible_1d(ones);
}

struct HalfspaceQ {
  QPoint a;
  mpq_class b;
};

std::vector<HalfspaceQ> to_hsq(const std::vector<Halfspace>& hs) {
  std::vector<HalfspaceQ> r;
  r.reserve(hs.size());
  for (const auto& h : hs) r.push_back({to_q(h.normal), h.offset.to_rational()});
  return r;
}

// Vertices of a (bounded) polytope in dimension <= 2.
std::vector<QPoint> poly_vertices(const std::vector<HalfspaceQ>& hs, int dim) {
  std::vector<QPoint> verts;
  auto push_unique = [&](QPoint v) {
    for (const auto& w : verts)
      if (w == v) return;
    verts.push_back(std::move(v));
  };
  auto feasible_pt = [&](const QPoint& v) {
    for (const auto& h : hs)
      if (qdot(h.a, v) > h.b) return false;
    return true;
  };
  if (dim == 1) {
    for (const auto& h : hs) {
      if (sgn(h.a[0]) == 0) continue;
      QPoint v{h.b / h.a[0]};
      if (feasible_pt(v)) push_unique(std::move(v));
    }
    return verts;
  }
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      mpq_class det = hs[i].a[0] * hs[j].a[1] - hs[i].a[1] * hs[j].a[0];
      if (sgn(det) == 0) continue;
      QPoint v(2);
      v[0] = (hs[i].b * hs[j].a[1] - hs[j].b * hs[i].a[1]) / det;
      v[1] = (hs[i].a[0] * hs[j].b - hs[j].a[0] * hs[i].b) / det;
      if (feasible_pt(v)) push_unique(std::move(v));
    }
  }
  return verts;
}

bool poly_bounded(const std::vector<HalfspaceQ>& hs, int dim) {
  if (dim == 1) {
    bool lo = false, hi = false;
    for (const auto& h : hs) {
      if (sgn(h.a[0]) > 0) hi = true;
      if (sgn(h.a[0]) < 0) lo = true;
    }
    return lo && hi;
  }
  // Recession cone nontrivial iff some rotated boundary ray satisfies all
  // homogeneous constraints.
  for (const auto& h : hs) {
    QPoint r1{-h.a[1], h.a[0]};
    QPoint r2{h.a[1], -h.a[0]};
    for (const QPoint* u : {&r1, &r2}) {
      if (sgn((*u)[0]) == 0 && sgn((*u)[1]) == 0) continue;
      bool in = true;
      for (const auto& g : hs) {
        if (sgn(qdot(g.a, *u)) > 0) {
          in = false;
          break;
        }
      }
      if (in) return false;
    }
  }
  return true;
}

// Edges of a bounded polytope in dimension 2 as vertex pairs.
std::vector<std::pair<QPoint, QPoint>> poly_edges(const std::vector<HalfspaceQ>& hs,
                                                  const std::vector<QPoint>& verts) {
  std::vector<std::pair<QPoint, QPoint>> edges;
  for (const auto& h : hs) {
    std::vector<const QPoint*> on;
    for (const auto& v : verts)
      if (qdot(h.a, v) == h.b) on.push_back(&v);
    if (on.size() < 2) continue;
    // extremes along the face direction
    QPoint dir{-h.a[1], h.a[0]};
    const QPoint* lo = on[0];
    const QPoint* hi = on[0];
    for (const auto* v : on) {
      if (qdot(dir, *v) < qdot(dir, *lo)) lo = v;
      if (qdot(dir, *v) > qdot(dir, *hi)) hi = v;
    }
    if (*lo == *hi) continue;
    edges.emplace_back(*lo, *hi);
  }
  return edges;
}

mpq_class pow2_q(int e) {
  mpq_class r;
  if (e >= 0) {
    r = mpz_class(1) << e;
  } else {
    r = mpq_class(mpz_class(1), mpz_class(1) << (-e));
  }
  return r;
}

}  // namespace

// ---- construction -----------------------------------------------------------

GroundTruthSet::GroundTruthSet(Shape s, int dim)
    : shape_(std::make_shared<const Shape>(std::move(s))), dim_(dim) {}

GroundTruthSet GroundTruthSet::box(DyadicPoint lo, DyadicPoint hi) {
  if (lo.dim() != hi.dim() || lo.dim() < 1) throw std::invalid_argument("box: bad dims");
  for (int i = 0; i < lo.dim(); ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("box: empty");
  int d = lo.dim();
  return GroundTruthSet(Box{std::move(lo), std::move(hi)}, d);
}

GroundTruthSet GroundTruthSet::norm_ball(DyadicPoint center, Dyadic radius, Norm ball_norm) {
  if (radius.sign() < 0) throw std::invalid_argument("ball: negative radius");
  if (ball_norm.dim != center.dim()) throw std::invalid_argument("ball: dim mismatch");
  int d = center.dim();
  return GroundTruthSet(Ball{std::move(center), std::move(radius), std::move(ball_norm)}, d);
}

GroundTruthSet GroundTruthSet::polytope(std::vector<Halfspace> hs, int dim) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("polytope: only d <= 2");
  for (auto& h : hs) {
    if (h.normal.dim() != dim) throw std::invalid_argument("polytope: dim mismatch");
    bool zero = true;
    for (int i = 0; i < dim; ++i)
      if (!h.normal[i].is_zero()) zero = false;
    if (zero) throw std::invalid_argument("polytope: zero normal");
  }
  auto q = to_hsq(hs);
  std::vector<LinCon> cons;
  for (auto& h : q) cons.push_back({h.a, h.b, false});
  if (!feasible(cons, dim)) throw std::invalid_argument("polytope: empty");
  if (!poly_bounded(q, dim)) throw std::invalid_argument("polytope: unbounded");
  return GroundTruthSet(Poly{std::move(hs)}, dim);
}

GroundTruthSet GroundTruthSet::segment(DyadicPoint a, DyadicPoint b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("segment: dim mismatch");
  int d = a.dim();
  return GroundTruthSet(Seg{std::move(a), std::move(b)}, d);
}

GroundTruthSet GroundTruthSet::singleton(DyadicPoint p) {
  int d = p.dim();
  return GroundTruthSet(Pt{std::move(p)}, d);
}

GroundTruthSet GroundTruthSet::finite_union(std::vector<GroundTruthSet> parts) {
  if (parts.empty()) throw std::invalid_argument("union: empty");
  int d = parts.front().dim();
  for (const auto& p : parts)
    if (p.dim() != d) throw std::invalid_argument("union: dim mismatch");
  return GroundTruthSet(Union{std::move(parts)}, d);
}

GroundTruthSet GroundTruthSet::translated(const DyadicPoint& v) const {
  struct Tr {
    const DyadicPoint& v;
    int dim;
    GroundTruthSet operator()(const Box& b) const { return box(b.lo + v, b.hi + v); }
    GroundTruthSet operator()(const Ball& b) const { return norm_ball(b.center + v, b.radius, b.norm); }
    GroundTruthSet operator()(const Poly& p) const {
      std::vector<Halfspace> hs = p.hs;
      for (auto& h : hs) h.offset = h.offset + h.normal.dot(v);
      return polytope(std::move(hs), dim);
    }
    GroundTruthSet operator()(const Seg& s) const { return segment(s.a + v, s.b + v); }
    GroundTruthSet operator()(const Pt& p) const { return singleton(p.p + v); }
    GroundTruthSet operator()(const Union& u) const {
      std::vector<GroundTruthSet> parts;
      for (const auto& p : u.parts) parts.push_back(p.translated(v));
      return finite_union(std::move(parts));
    }
  };
  return std::visit(Tr{v, dim_}, *shape_);
}

GroundTruthSet GroundTruthSet::scaled_pow2(int k) const {
  struct Sc {
    int k;
    int dim;
    GroundTruthSet operator()(const Box& b) const { return box(b.lo.mul_pow2(k), b.hi.mul_pow2(k)); }
    GroundTruthSet operator()(const Ball& b) const {
      return norm_ball(b.center.mul_pow2(k), b.radius.mul_pow2(k), b.norm);
    }
    GroundTruthSet operator()(const Poly& p) const {
      std::vector<Halfspace> hs = p.hs;
      for (auto& h : hs) h.offset = h.offset.mul_pow2(k);
      return polytope(std::move(hs), dim);
    }
    GroundTruthSet operator()(const Seg& s) const { return segment(s.a.mul_pow2(k), s.b.mul_pow2(k)); }
    GroundTruthSet operator()(const Pt& p) const { return singleton(p.p.mul_pow2(k)); }
    GroundTruthSet operator()(const Union& u) const {
      std::vector<GroundTruthSet> parts;
      for (const auto& p : u.parts) parts.push_back(p.scaled_pow2(k));
      return finite_union(std::move(parts));
    }
  };
  return std::visit(Sc{k, dim_}, *shape_);
}

// ---- polyhedral views -------------------------------------------------------

namespace {

// Halfspace list for convex shapes that admit one (everything except
// Euclidean balls with positive radius).
std::optional<std::vector<HalfspaceQ>> shape_halfspaces(const GroundTruthSet::Shape& sh, int dim) {
  using Sh = GroundTruthSet;
  if (const auto* b = std::get_if<Sh::Box>(&sh)) {
    std::vector<HalfspaceQ> hs;
    for (int i = 0; i < dim; ++i) {
      QPoint e(dim, mpq_class(0)), en(dim, mpq_class(0));
      e[i] = 1;
      en[i] = -1;
      hs.push_back({e, b->hi[i].to_rational()});
      hs.push_back({en, -b->lo[i].to_rational()});
    }
    return hs;
  }
  if (const auto* b = std::get_if<Sh::Ball>(&sh)) {
    mpq_class rho = b->radius.to_rational() / b->norm.scale.to_rational();
    QPoint c = to_q(b->center);
    std::vector<HalfspaceQ> hs;
    if (b->norm.p == PExp::Inf) {
      for (int i = 0; i < dim; ++i) {
        QPoint e(dim, mpq_class(0)), en(dim, mpq_class(0));
        e[i] = 1;
        en[i] = -1;
        hs.push_back({e, c[i] + rho});
        hs.push_back({en, -(c[i] - rho)});
      }
      return hs;
    }
    if (b->norm.p == PExp::One && dim <= 2) {
      if (dim == 1) {
        hs.push_back({{mpq_class(1)}, c[0] + rho});
        hs.push_back({{mpq_class(-1)}, -(c[0] - rho)});
        return hs;
      }
      for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
          QPoint a{mpq_class(s1), mpq_class(s2)};
          hs.push_back({a, qdot(a, c) + rho});
        }
      }
      return hs;
    }
    if (b->radius.is_zero()) {
      // degenerate: point
      std::vector<HalfspaceQ> pt;
      for (int i = 0; i < dim; ++i) {
        QPoint e(dim, mpq_class(0)), en(dim, mpq_class(0));
        e[i] = 1;
        en[i] = -1;
        pt.push_back({e, c[i]});
        pt.push_back({en, -c[i]});
      }
      return pt;
    }
    return std::nullopt;  // Euclidean ball
  }
  if (const auto* p = std::get_if<Sh::Poly>(&sh)) return to_hsq(p->hs);
  if (const auto* s = std::get_if<Sh::Seg>(&sh)) {
    QPoint A = to_q(s->a), B = to_q(s->b);
    std::vector<HalfspaceQ> hs;
    if (dim == 1) {
      mpq_class lo = std::min(A[0], B[0]), hi = std::max(A[0], B[0]);
      hs.push_back({{mpq_class(1)}, hi});
      hs.push_back({{mpq_class(-1)}, -lo});
      return hs;
    }
    if (dim != 2) return std::nullopt;
    QPoint u{B[0] - A[0], B[1] - A[1]};
    if (sgn(u[0]) == 0 && sgn(u[1]) == 0) {
      // single point
      auto pt = GroundTruthSet::Shape(Sh::Pt{s->a});
      return shape_halfspaces(pt, dim);
    }
    QPoint n{-u[1], u[0]};
    QPoint nn{u[1], -u[0]};
    hs.push_back({n, qdot(n, A)});
    hs.push_back({nn, qdot(nn, A)});
    QPoint un{-u[0], -u[1]};
    hs.push_back({u, std::max(qdot(u, A), qdot(u, B))});
    hs.push_back({un, std::max(qdot(un, A), qdot(un, B))});
    return hs;
  }
  if (const auto* p = std::get_if<Sh::Pt>(&sh)) {
    std::vector<HalfspaceQ> hs;
    QPoint c = to_q(p->p);
    for (int i = 0; i < dim; ++i) {
      QPoint e(dim, mpq_class(0)), en(dim, mpq_class(0));
      e[i] = 1;
      en[i] = -1;
      hs.push_back({e, c[i]});
      hs.push_back({en, -c[i]});
    }
    return hs;
  }
  return std::nullopt;  // union
}

// Dual-norm value of a constraint normal against the query norm, as an atom:
// sup { a.v : ||v||_norm <= 1 }.
ExactAtom dual_norm_atom(const Norm& norm, const QPoint& a) {
  mpq_class inv_scale = 1 / norm.scale.to_rational();
  switch (norm.p) {
    case PExp::Inf:
      return ExactAtom::rational(inv_scale * poly_norm_q(PExp::One, 1, a));
    case PExp::One:
      return ExactAtom::rational(inv_scale * poly_norm_q(PExp::Inf, 1, a));
    case PExp::Two:
      return ExactAtom::root(inv_scale * inv_scale * sq_sum_q(a));
  }
  return ExactAtom::rational(0);
}

// Vertices of ball_norm(q, eps) for polyhedral query norms.
std::optional<std::vector<QPoint>> query_ball_vertices(const Norm& norm, const QPoint& q,
                                                       const mpq_class& eps) {
  mpq_class rho = eps / norm.scale.to_rational();
  int d = static_cast<int>(q.size());
  std::vector<QPoint> vs;
  if (norm.p == PExp::Inf) {
    int corners = 1 << d;
    for (int mask = 0; mask < corners; ++mask) {
      QPoint v = q;
      for (int i = 0; i < d; ++i) v[i] += (mask & (1 << i)) ? rho : -rho;
      vs.push_back(std::move(v));
    }
    return vs;
  }
  if (norm.p == PExp::One) {
    for (int i = 0; i < d; ++i) {
      QPoint a = q, b = q;
      a[i] += rho;
      b[i] -= rho;
      vs.push_back(std::move(a));
      vs.push_back(std::move(b));
    }
    return vs;
  }
  return std::nullopt;
}

}  // namespace

// ---- predicates -------------------------------------------------------------

bool GroundTruthSet::contains(const DyadicPoint& q) const {
  struct C {
    const DyadicPoint& q;
    const GroundTruthSet& self;
    bool operator()(const Box& b) const {
      for (int i = 0; i < q.dim(); ++i)
        if (q[i] < b.lo[i] || q[i] > b.hi[i]) return false;
      return true;
    }
    bool operator()(const Ball& b) const {
      return norm_cmp(b.norm, q - b.center, b.radius.to_rational()) <= 0;
    }
    bool operator()(const Poly& p) const {
      for (const auto& h : p.hs)
        if (h.normal.dot(q) > h.offset) return false;
      return true;
    }
    bool operator()(const Seg& s) const {
      QPoint A = to_q(s.a), B = to_q(s.b), x = to_q(q);
      // x = A + t(B-A) with t in [0,1]
      std::optional<mpq_class> t;
      for (size_t i = 0; i < A.size(); ++i) {
        mpq_class u = B[i] - A[i];
        mpq_class c = x[i] - A[i];
        if (sgn(u) == 0) {
          if (sgn(c) != 0) return false;
        } else {
          mpq_class ti = c / u;
          if (t && *t != ti) return false;
          t = ti;
        }
      }
      if (!t) return true;  // degenerate segment equal to x
      return *t >= 0 && *t <= 1;
    }
    bool operator()(const Pt& p) const { return q == p.p; }
    bool operator()(const Union& u) const {
      for (const auto& p : u.parts)
        if (p.contains(q)) return true;
      return false;
    }
  };
  return std::visit(C{q, *this}, *shape_);
}

ExactVal GroundTruthSet::dist(const DyadicPoint& q, const Norm& norm) const {
  std::vector<ExactAtom> atoms;
  struct D {
    const DyadicPoint& q;
    const Norm& norm;
    std::vector<ExactAtom>& atoms;
    const GroundTruthSet& self;

    void operator()(const Box& b) const {
      QPoint gap(q.dim());
      for (int i = 0; i < q.dim(); ++i) {
        Dyadic g;
        if (q[i] < b.lo[i]) g = b.lo[i] - q[i];
        else if (q[i] > b.hi[i]) g = q[i] - b.hi[i];
        gap[i] = g.to_rational();
      }
      atoms.push_back(point_dist_atom(norm, gap));
    }
    void operator()(const Ball& b) const {
      if (b.norm.p == norm.p) {
        if (self.contains(q)) {
          atoms.push_back(ExactAtom::rational(0));
          return;
        }
        // lambda_q * (||q-c||_p - rho)
        mpq_class rho = b.radius.to_rational() / b.norm.scale.to_rational();
        mpq_class sc = norm.scale.to_rational();
        QPoint diff = to_q(q - b.center);
        if (norm.p == PExp::Two) {
          atoms.push_back(ExactAtom{-sc * rho, sc * sc * sq_sum_q(diff)});
        } else {
          atoms.push_back(ExactAtom::rational(sc * (poly_norm_q(norm.p, 1, diff) - rho)));
        }
        return;
      }
      auto hs = shape_halfspaces(*self.shape_, self.dim_);
      if (!hs) throw std::runtime_error("dist: mixed-norm Euclidean ball unsupported");
      dist_poly(*hs);
    }
    void operator()(const Poly& p) const { dist_poly(to_hsq(p.hs)); }
    void dist_poly(const std::vector<HalfspaceQ>& hs) const {
      QPoint x = to_q(q);
      bool inside = true;
      for (const auto& h : hs)
        if (qdot(h.a, x) > h.b) {
          inside = false;
          break;
        }
      if (inside) {
        atoms.push_back(ExactAtom::rational(0));
        return;
      }
      if (self.dim_ == 1) {
        auto vs = poly_vertices(hs, 1);
        for (const auto& v : vs) {
          QPoint diff{x[0] - v[0]};
          atoms.push_back(point_dist_atom(norm, diff));
        }
        return;
      }
      auto vs = poly_vertices(hs, 2);
      auto es = poly_edges(hs, vs);
      for (const auto& e : es) atoms.push_back(segment_dist_atom(norm, e.first, e.second, x));
      if (es.empty()) {
        for (const auto& v : vs) {
          QPoint diff{x[0] - v[0], x[1] - v[1]};
          atoms.push_back(point_dist_atom(norm, diff));
        }
      }
    }
    void operator()(const Seg& s) const {
      atoms.push_back(segment_dist_atom(norm, to_q(s.a), to_q(s.b), to_q(q)));
    }
    void operator()(const Pt& p) const { atoms.push_back(point_dist_atom(norm, to_q(q - p.p))); }
    void operator()(const Union& u) const {
      for (const auto& p : u.parts) {
        ExactVal sub = p.dist(q, norm);
        for (const auto& a : sub.atoms()) atoms.push_back(a);
      }
    }
  };
  std::visit(D{q, norm, atoms, *this}, *shape_);
  return ExactVal::minimum(std::move(atoms));
}

int GroundTruthSet::dist_cmp(const DyadicPoint& q, const Norm& norm, const mpq_class& t) const {
  return dist(q, norm).cmp(t);
}

void GroundTruthSet::dist_interval(const DyadicPoint& q, const Norm& norm, int k, Dyadic& lo,
                                   Dyadic& hi) const {
  dist(q, norm).interval(k, lo, hi);
  if (lo.sign() < 0) lo = Dyadic();
}

BallCert GroundTruthSet::ball_inside(const DyadicPoint& q, const Dyadic& eps,
                                     const Norm& norm) const {
  if (eps.sign() <= 0) return contains(q) ? BallCert::Yes : BallCert::No;
  mpq_class epsq = eps.to_rational();
  QPoint x = to_q(q);

  if (const auto* u = std::get_if<Union>(shape_.get())) {
    for (const auto& p : u->parts) {
      if (p.ball_inside(q, eps, norm) == BallCert::Yes) return BallCert::Yes;
    }
    // polygon-cover check: ball \ union empty?
    if (norm.p == PExp::Two || dim_ > 2) return BallCert::Unknown;
    GroundTruthSet ballgt = GroundTruthSet::norm_ball(q, eps, norm);
    auto qhs = shape_halfspaces(*ballgt.shape_, dim_);
    if (!qhs) return BallCert::Unknown;
    std::vector<std::vector<LinCon>> pieces;
    {
      std::vector<LinCon> base;
      for (const auto& h : *qhs) base.push_back({h.a, h.b, false});
      pieces.push_back(std::move(base));
    }
    for (const auto& part : u->parts) {
      auto phs = shape_halfspaces(*part.shape_, dim_);
      if (!phs) return BallCert::Unknown;
      std::vector<std::vector<LinCon>> next;
      for (const auto& piece : pieces) {
        for (const auto& h : *phs) {
          std::vector<LinCon> sys = piece;
          QPoint na(h.a.size());
          for (size_t i = 0; i < h.a.size(); ++i) na[i] = -h.a[i];
          sys.push_back({na, -h.b, true});  // h.a . x > h.b
          if (feasible(sys, dim_)) next.push_back(std::move(sys));
        }
      }
      pieces = std::move(next);
      if (pieces.empty()) return BallCert::Yes;
    }
    return pieces.empty() ? BallCert::Yes : BallCert::No;
  }

  if (const auto* b = std::get_if<Ball>(shape_.get())) {
    if (b->norm.p == PExp::Two) {
      mpq_class rho = b->radius.to_rational() / b->norm.scale.to_rational();
      QPoint c = to_q(b->center);
      if (norm.p == PExp::Two) {
        mpq_class slack = rho - epsq / norm.scale.to_rational();
        if (sgn(slack) < 0) return BallCert::No;
        QPoint diff(x.size());
        for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - c[i];
        return sqrt_cmp(sq_sum_q(diff), slack) <= 0 ? BallCert::Yes : BallCert::No;
      }
      auto vs = query_ball_vertices(norm, x, epsq);
      if (!vs) return BallCert::Unknown;
      for (const auto& v : *vs) {
        QPoint diff(v.size());
        for (size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - c[i];
        if (sqrt_cmp(sq_sum_q(diff), rho) > 0) return BallCert::No;
      }
      return BallCert::Yes;
    }
  }

  auto hs = shape_halfspaces(*shape_, dim_);
  if (!hs) return BallCert::Unknown;
  for (const auto& h : *hs) {
    // need a.x + eps * dual(a) <= b
    mpq_class room = h.b - qdot(h.a, x);
    ExactAtom dual = dual_norm_atom(norm, h.a);
    // eps * dual <= room ?
    if (sgn(room) < 0) return BallCert::No;
    if (sgn(dual.s) == 0) {
      if (epsq * dual.a > room) return BallCert::No;
    } else {
      if (sqrt_cmp(epsq * epsq * dual.s, room) > 0) return BallCert::No;
    }
  }
  return BallCert::Yes;
}

bool GroundTruthSet::is_regular() const {
  struct R {
    const GroundTruthSet& self;
    bool operator()(const Box& b) const {
      for (int i = 0; i < self.dim_; ++i)
        if (!(b.lo[i] < b.hi[i])) return false;
      return true;
    }
    bool operator()(const Ball& b) const { return b.radius.sign() > 0; }
    bool operator()(const Poly& p) const {
      auto hs = to_hsq(p.hs);
      std::vector<LinCon> cons;
      for (auto& h : hs) cons.push_back({h.a, h.b, true});
      return feasible(cons, self.dim_);
    }
    bool operator()(const Seg&) const { return false; }
    bool operator()(const Pt&) const { return false; }
    bool operator()(const Union& u) const {
      for (const auto& p : u.parts)
        if (!p.is_regular()) return false;
      return true;
    }
  };
  return std::visit(R{*this}, *shape_);
}

bool GroundTruthSet::is_bounded() const {
  if (const auto* u = std::get_if<Union>(shape_.get())) {
    for (const auto& p : u->parts)
      if (!p.is_bounded()) return false;
    return true;
  }
  return true;  // polytopes are bounded by construction; other shapes trivially
}

bool GroundTruthSet::is_convex() const {
  if (const auto* u = std::get_if<Union>(shape_.get())) return u->parts.size() == 1 && u->parts[0].is_convex();
  return true;
}

// ---- support ----------------------------------------------------------------

ExactVal GroundTruthSet::support(const DyadicPoint& c) const {
  std::vector<ExactAtom> atoms;
  struct S {
    const DyadicPoint& c;
    std::vector<ExactAtom>& atoms;
    const GroundTruthSet& self;
    void operator()(const Box& b) const {
      Dyadic s;
      for (int i = 0; i < self.dim_; ++i) s = s + Dyadic::max(c[i] * b.lo[i], c[i] * b.hi[i]);
      atoms.push_back(ExactAtom::rational(s.to_rational()));
    }
    void operator()(const Ball& b) const {
      mpq_class rho = b.radius.to_rational() / b.norm.scale.to_rational();
      mpq_class base = c.dot(b.center).to_rational();
      QPoint cq = to_q(c);
      switch (b.norm.p) {
        case PExp::Inf:
          atoms.push_back(ExactAtom::rational(base + rho * poly_norm_q(PExp::One, 1, cq)));
          break;
        case PExp::One:
          atoms.push_back(ExactAtom::rational(base + rho * poly_norm_q(PExp::Inf, 1, cq)));
          break;
        case PExp::Two:
          atoms.push_back(ExactAtom{base, rho * rho * sq_sum_q(cq)});
          break;
      }
    }
    void operator()(const Poly& p) const {
      auto hs = to_hsq(p.hs);
      auto vs = poly_vertices(hs, self.dim_);
      QPoint cq = to_q(c);
      for (const auto& v : vs) atoms.push_back(ExactAtom::rational(qdot(cq, v)));
    }
    void operator()(const Seg& s) const {
      atoms.push_back(ExactAtom::rational(c.dot(s.a).to_rational()));
      atoms.push_back(ExactAtom::rational(c.dot(s.b).to_rational()));
    }
    void operator()(const Pt& p) const { atoms.push_back(ExactAtom::rational(c.dot(p.p).to_rational())); }
    void operator()(const Union&) const {
      throw std::invalid_argument("support: non-convex (union)");
    }
  };
  std::visit(S{c, atoms, *this}, *shape_);
  return ExactVal::maximum(std::move(atoms));
}

DyadicPoint GroundTruthSet::support_maximizer(const DyadicPoint& c, long m) const {
  struct M {
    const DyadicPoint& c;
    long m;
    const GroundTruthSet& self;
    DyadicPoint operator()(const Box& b) const {
      std::vector<Dyadic> r(self.dim_);
      for (int i = 0; i < self.dim_; ++i) {
        int s = c[i].sign();
        r[i] = s > 0 ? b.hi[i] : b.lo[i];
      }
      return DyadicPoint(std::move(r));
    }
    DyadicPoint operator()(const Ball& b) const {
      if (b.norm.p != PExp::Two) {
        auto hs = shape_halfspaces(*self.shape_, self.dim_);
        return maximizer_from_vertices(poly_vertices(*hs, self.dim_));
      }
      // center + rho * c / ||c||_2, rounded
      QPoint cq = to_q(c);
      mpq_class s2 = sq_sum_q(cq);
      if (sgn(s2) == 0) return b.center;
      mpq_class rho = b.radius.to_rational() / b.norm.scale.to_rational();
      // bracket f = rho / sqrt(s2) tightly and round coordinates
      ExactAtom root = ExactAtom::root(s2);
      Dyadic slo, shi;
      root.interval(static_cast<int>(m) + 16, slo, shi);
      if (slo.sign() <= 0) return b.center;
      mpq_class f = rho / ((slo + shi).mul_pow2(-1)).to_rational();
      std::vector<Dyadic> r(self.dim_);
      for (int i = 0; i < self.dim_; ++i)
        r[i] = b.center[i] + Dyadic::from_rational(cq[i] * f, m, RoundMode::NearestTiesUp);
      return DyadicPoint(std::move(r));
    }
    DyadicPoint operator()(const Poly& p) const {
      return maximizer_from_vertices(poly_vertices(to_hsq(p.hs), self.dim_));
    }
    DyadicPoint maximizer_from_vertices(const std::vector<QPoint>& vs) const {
      QPoint cq = to_q(c);
      const QPoint* best = nullptr;
      for (const auto& v : vs) {
        if (!best) {
          best = &v;
          continue;
        }
        int cm = ::cmp(qdot(cq, v), qdot(cq, *best));
        if (cm > 0 || (cm == 0 && v < *best)) best = &v;
      }
      std::vector<Dyadic> r(self.dim_);
      for (int i = 0; i < self.dim_; ++i)
        r[i] = Dyadic::from_rational((*best)[i], m, RoundMode::NearestTiesUp);
      return DyadicPoint(std::move(r));
    }
    DyadicPoint operator()(const Seg& s) const {
      Dyadic da = c.dot(s.a), db = c.dot(s.b);
      if (da > db) return s.a;
      if (db > da) return s.b;
      return s.a < s.b ? s.a : s.b;
    }
    DyadicPoint operator()(const Pt& p) const { return p.p; }
    DyadicPoint operator()(const Union&) const {
      throw std::invalid_argument("support_maximizer: non-convex (union)");
    }
  };
  return std::visit(M{c, m, *this}, *shape_);
}

// ---- advice -----------------------------------------------------------------

Advice GroundTruthSet::derive_advice(const Norm& norm, AdvicePolicy policy) const {
  Advice adv;
  if (policy == AdvicePolicy::None) return adv;
  if (is_bounded()) {
    // outer bound: exact max of ||x|| over extreme points per shape
    std::vector<ExactAtom> atoms;
    std::function<void(const GroundTruthSet&)> collect = [&](const GroundTruthSet& g) {
      if (const auto* u = std::get_if<Union>(g.shape_.get())) {
        for (const auto& p : u->parts) collect(p);
        return;
      }
      if (const auto* b = std::get_if<Box>(g.shape_.get())) {
        QPoint v(g.dim_);
        for (int i = 0; i < g.dim_; ++i)
          v[i] = Dyadic::max(b->lo[i].abs(), b->hi[i].abs()).to_rational();
        atoms.push_back(point_dist_atom(norm, v));
        return;
      }
      if (const auto* b = std::get_if<Ball>(g.shape_.get())) {
        ExactAtom center = point_dist_atom(norm, to_q(b->center));
        mpq_class extra;
        if (b->norm.p == norm.p) {
          extra = norm.scale.to_rational() * b->radius.to_rational() / b->norm.scale.to_rational();
        } else {
          extra = (cross_norm_bound(b->norm, norm) * b->radius).to_rational();
        }
        atoms.push_back(ExactAtom{center.a + extra, center.s});
        return;
      }
      if (const auto* p = std::get_if<Poly>(g.shape_.get())) {
        for (const auto& v : poly_vertices(to_hsq(p->hs), g.dim_)) {
          atoms.push_back(point_dist_atom(norm, v));
        }
        return;
      }
      if (const auto* s = std::get_if<Seg>(g.shape_.get())) {
        atoms.push_back(point_dist_atom(norm, to_q(s->a)));
        atoms.push_back(point_dist_atom(norm, to_q(s->b)));
        return;
      }
      if (const auto* s = std::get_if<Pt>(g.shape_.get())) {
        atoms.push_back(point_dist_atom(norm, to_q(s->p)));
        return;
      }
    };
    collect(*this);
    ExactVal outer = ExactVal::maximum(std::move(atoms));
    for (int b = -62; b <= 62; ++b) {
      if (outer.cmp(pow2_q(b)) <= 0) {
        adv.outer_radius_exp = b;
        break;
      }
    }
  }
  if (is_convex() && is_regular()) {
    DyadicPoint a = DyadicPoint::zero(dim_);
    if (const auto* b = std::get_if<Box>(shape_.get())) {
      a = (b->lo + b->hi).mul_pow2(-1);
    } else if (const auto* b = std::get_if<Ball>(shape_.get())) {
      a = b->center;
    } else if (const auto* p = std::get_if<Poly>(shape_.get())) {
      auto vs = poly_vertices(to_hsq(p->hs), dim_);
      QPoint cen(dim_, mpq_class(0));
      for (const auto& v : vs)
        for (int i = 0; i < dim_; ++i) cen[i] += v[i];
      for (int i = 0; i < dim_; ++i) cen[i] /= mpq_class(static_cast<long>(vs.size()));
      for (long m = 8; m <= 62; m += 6) {
        std::vector<Dyadic> cc(dim_);
        for (int i = 0; i < dim_; ++i) cc[i] = Dyadic::from_rational(cen[i], m, RoundMode::NearestTiesUp);
        DyadicPoint cand(cc);
        if (contains(cand)) {
          a = cand;
          break;
        }
      }
    }
    if (contains(a)) {
      for (int r = -62; r <= 62; ++r) {
        if (ball_inside(a, Dyadic::pow2(-r), norm) == BallCert::Yes) {
          adv.inner_point = a;
          adv.inner_radius_exp = r;
          break;
        }
      }
    }
  }
  return adv;
}

// ---- canonical names ---------------------------------------------------------

RepName GroundTruthSet::canonical_name(RepKind kind, const Norm& norm, AdvicePolicy policy) const {
  if (norm.dim != dim_) throw std::invalid_argument("canonical_name: norm dim mismatch");
  GroundTruthSet self = *this;
  std::string label = std::string("canonical-") + rep_kind_tag(kind);
  Advice adv = derive_advice(norm, policy);
  switch (kind) {
    case RepKind::Dist:
    case RepKind::RelDist: {
      OracleFn fn = [self, norm](const DyadicPoint& q, Precision n) {
        Dyadic lo, hi;
        self.dist_interval(q, norm, n + 4, lo, hi);
        return Answer::scalar((lo + hi).mul_pow2(-1));
      };
      return RepName(kind, dim_, norm, adv, std::move(fn), label);
    }
    case RepKind::LocalSet: {
      OracleFn fn = [self, norm](const DyadicPoint& q, Precision n) {
        mpq_class thr = mpq_class(3) * pow2_q(-n - 1);  // 3/2 * 2^-n
        return Answer::bit(self.dist_cmp(q, norm, thr) <= 0);
      };
      return RepName(kind, dim_, norm, adv, std::move(fn), label);
    }
    case RepKind::WeakMembership: {
      if (!is_regular()) throw std::invalid_argument("canonical_name: wmem needs a regular set");
      OracleFn fn = [self, norm](const DyadicPoint& q, Precision n) {
        return Answer::bit(self.dist_cmp(q, norm, pow2_q(-n)) <= 0);
      };
      return RepName(kind, dim_, norm, adv, std::move(fn), label);
    }
    case RepKind::Grid: {
      if (!is_bounded()) throw std::invalid_argument("canonical_name: grid needs a bounded set");
      OracleFn fn = [self, norm](const DyadicPoint& q, Precision n) {
        for (int i = 0; i < q.dim(); ++i)
          if (!q[i].on_grid(n)) return Answer::bit(false);
        return Answer::bit(self.dist_cmp(q, norm, pow2_q(-n)) <= 0);
      };
      return RepName(kind, dim_, norm, adv, std::move(fn), label);
    }
    case RepKind::WeakOpt: {
      if (!is_bounded() || !is_convex() || !is_regular())
        throw std::invalid_argument("canonical_name: wopt needs a bounded convex body");
      if (norm.p != PExp::Two)
        throw std::invalid_argument("canonical_name: wopt is tied to the Euclidean norm");
      OracleFn fn = [self](const DyadicPoint& c, Precision n) {
        Dyadic cn;
        for (int i = 0; i < c.dim(); ++i) cn = cn + c[i].abs();
        long extra = 0;
        mpz_class ci = cn.ceil_scaled(0);
        extra = mpz_sizeinbase(ci.get_mpz_t(), 2);
        return Answer::point(self.support_maximizer(c, n + 6 + extra));
      };
      return RepName(kind, dim_, norm, adv, std::move(fn), label);
    }
  }
  throw std::logic_error("canonical_name: unreachable");
}

// ---- text -------------------------------------------------------------------

std::string GroundTruthSet::to_text() const {
  std::ostringstream os;
  struct T {
    std::ostream& os;
    int dim;
    void operator()(const Box& b) const {
      os << "box d=" << dim << " min=" << b.lo.to_text() << " max=" << b.hi.to_text();
    }
    void operator()(const Ball& b) const {
      os << "ball d=" << dim << " c=" << b.center.to_text() << " rad=" << b.radius.to_text()
         << " norm=" << b.norm.to_text();
    }
    void operator()(const Poly& p) const {
      os << "poly d=" << dim << " hs=[";
      for (size_t i = 0; i < p.hs.size(); ++i) {
        if (i) os << ';';
        os << "(c=" << p.hs[i].normal.to_text() << ",a=" << p.hs[i].offset.to_text() << ")";
      }
      os << "]";
    }
    void operator()(const Seg& s) const {
      os << "segment d=" << dim << " a=" << s.a.to_text() << " b=" << s.b.to_text();
    }
    void operator()(const Pt& p) const { os << "point d=" << dim << " p=" << p.p.to_text(); }
    void operator()(const Union& u) const {
      os << "union { ";
      for (size_t i = 0; i < u.parts.size(); ++i) {
        if (i) os << " ; ";
        os << u.parts[i].to_text();
      }
      os << " }";
    }
  };
  std::visit(T{os, dim_}, *shape_);
  return os.str();
}

}  // namespace csets
