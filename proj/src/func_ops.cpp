#include "csets/func_ops.hpp"

#include <future>
#include <mutex>
#include <set>
#include <unordered_map>

#include "csets/translators.hpp"
#include "internal_util.hpp"

namespace csets {
namespace func_ops {

using detail::ceil_log2_q;
using detail::require_outer;

long Modulus::operator()(long n) const {
  // ceil((n + shift) / alpha), exact
  mpq_class v = mpq_class(n + shift) / alpha;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q.get_si();
}

namespace {
struct FKey {
  DyadicPoint q;
  int n;
  bool operator==(const FKey& o) const { return n == o.n && q == o.q; }
};
struct FKeyHash {
  std::size_t operator()(const FKey& k) const {
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

struct FuncName::Core {
  EvalFn fn;
  QueryLedger ledger;
  std::mutex mu;
  std::unordered_map<FKey, std::shared_future<DyadicPoint>, FKeyHash> memo;
};

FuncName::FuncName(int dim_in, int dim_out, EvalFn fn, Modulus mu_upper,
                   std::optional<Modulus> mu_lower, std::optional<RepName> domain_grid_name,
                   std::optional<HoelderAdvice> hoelder, std::string label)
    : d_(dim_in), e_(dim_out), ubar_(mu_upper), lbar_(std::move(mu_lower)),
      domain_(std::move(domain_grid_name)), hoelder_(std::move(hoelder)),
      label_(std::move(label)), core_(std::make_shared<Core>()) {
  core_->fn = std::move(fn);
  if (domain_) {
    if (!domain_->advice().outer_radius_exp)
      throw std::invalid_argument("FuncName: domain grid name needs advice b");
    domain_psi_ = translators::gridrep_to_setrep(*domain_);
  }
}

DyadicPoint FuncName::eval(const DyadicPoint& q, Precision n) const {
  if (q.dim() != d_) throw std::invalid_argument("FuncName::eval: dimension mismatch");
  core_->ledger.record_raw(n);
  FKey key{q, n};
  std::shared_future<DyadicPoint> fut;
  bool compute = false;
  std::promise<DyadicPoint> prom;
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
      prom.set_value(core_->fn(q, n));
    } catch (...) {
      prom.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

LedgerSnapshot FuncName::ledger() const { return core_->ledger.snapshot(); }

FuncName make_affine_func(const std::vector<std::vector<Dyadic>>& A, const DyadicPoint& v,
                          RepName domain_grid, int smin_exp, int smax_exp) {
  int e = static_cast<int>(A.size());
  if (e < 1) throw std::invalid_argument("make_affine_func: empty matrix");
  int d = static_cast<int>(A[0].size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != d) throw std::invalid_argument("make_affine_func: ragged matrix");
  if (v.dim() != e) throw std::invalid_argument("make_affine_func: offset dimension mismatch");
  if (domain_grid.dim() != d) throw std::invalid_argument("make_affine_func: domain dimension mismatch");
  if (smin_exp > smax_exp) throw std::invalid_argument("make_affine_func: smin > smax");
  // full column rank via the Gram determinant (exact), d <= 2
  if (d <= 2) {
    std::vector<std::vector<mpq_class>> g(d, std::vector<mpq_class>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < e; ++k)
          g[i][j] += A[k][i].to_rational() * A[k][j].to_rational();
    mpq_class det = (d == 1) ? g[0][0] : g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (sgn(det) == 0) throw std::invalid_argument("make_affine_func: rank-deficient matrix");
  }
  std::vector<std::vector<Dyadic>> Ac = A;
  DyadicPoint vc = v;
  FuncName::EvalFn fn = [Ac, vc, e, d](const DyadicPoint& q, Precision n) {
    std::vector<Dyadic> out(e);
    for (int i = 0; i < e; ++i) {
      Dyadic s = vc[i];
      for (int j = 0; j < d; ++j) s = s + Ac[i][j] * q[j];
      out[i] = s.round_to(n + 6, RoundMode::NearestTiesUp);
    }
    return DyadicPoint(std::move(out));
  };
  Modulus ubar{1, std::max(0, smax_exp) + 1};
  Modulus lbar{1, std::max(0, -smin_exp) + 1};
  HoelderAdvice h{1, std::max(0, smax_exp) + 1};
  return FuncName(d, e, std::move(fn), ubar, lbar, std::move(domain_grid), h, "affine");
}

FuncName make_sqrt_func(const Dyadic& lo, RepName domain_grid) {
  if (lo.sign() <= 0 || lo > Dyadic(1)) throw std::invalid_argument("make_sqrt_func: need 0 < lo <= 1");
  if (domain_grid.dim() != 1) throw std::invalid_argument("make_sqrt_func: dimension 1 only");
  Dyadic lo_c = lo;
  FuncName::EvalFn fn = [lo_c](const DyadicPoint& q, Precision n) {
    Dyadic x = q[0];
    if (x < lo_c) x = lo_c;
    if (x > Dyadic(1)) x = Dyadic(1);
    ExactAtom root = ExactAtom::root(x.to_rational());
    Dyadic l, h;
    root.interval(n + 6, l, h);
    return DyadicPoint(std::vector<Dyadic>{
        (l + h).mul_pow2(-1).round_to(n + 8, RoundMode::NearestTiesUp)});
  };
  Modulus ubar{mpq_class(1, 2), 1};  // declared (1/2,C)-Hoelder schedule
  Modulus lbar{1, 2};
  HoelderAdvice h{mpq_class(1, 2), 1};
  return FuncName(1, 1, std::move(fn), ubar, lbar, std::move(domain_grid), h, "sqrtmap");
}

namespace {

// Candidate sets live on integer grid coordinates (value = c * 2^-g), packed
// for fast ordered-set operations; dimensions up to 4.
struct GPoint {
  std::array<long long, 4> c{};
  bool operator<(const GPoint& o) const { return c < o.c; }
};

DyadicPoint to_dyadic(const GPoint& p, int d, long g) {
  std::vector<Dyadic> v(d);
  for (int i = 0; i < d; ++i) v[i] = Dyadic::make(mpz_class(static_cast<long>(p.c[i])), g);
  return DyadicPoint(std::move(v));
}

// p rescaled from grid g to the finer grid g' (g' >= g)
GPoint rescale(const GPoint& p, int d, long g, long gp) {
  GPoint r;
  for (int i = 0; i < d; ++i) r.c[i] = p.c[i] << (gp - g);
  return r;
}

using PointSet = std::set<GPoint>;

mpz_class candidate_bound(int d, long mu_lower_of_k2, long m) {
  // (4 * 2^(mu_lower(k+2) - m))^d
  long e = mu_lower_of_k2 - m + 2;  // 4 * 2^x = 2^(x+2)
  if (e < 0) return 1;              // bound below one point: will trip the assert
  mpz_class one = 1;
  mpz_class per = one << static_cast<unsigned long>(e);
  mpz_class r = 1;
  for (int i = 0; i < d; ++i) r *= per;
  return r;
}

// inf-norm distance ||q - img|| <= tol, exact dyadic comparison
bool img_close(const DyadicPoint& q, const DyadicPoint& img, const Dyadic& tol) {
  for (int i = 0; i < q.dim(); ++i) {
    if ((q[i] - img[i]).abs() > tol) return false;
  }
  return true;
}

// Domain filter straight off the grid name: a candidate p (on the finer grid
// g) passes at precision m iff some layer-m point within
// 2^-m + 2^-(g+1) answers 1. A positive certifies d_S(p) <= 2*2^-m; points
// with d_S(p) <= 2^-(g+1) are always accepted (layer condition kappa1).
struct DomainFilter {
  const RepName* dom;
  int d;

  bool pass(const GPoint& p, long g, long m) const {
    // cell range per axis: layer cells within r9 = 2^-m + 2^-(g+1) of p
    GPoint cur, lo, hi;
    for (int i = 0; i < d; ++i) {
      // floor((p*2^-g - r9) * 2^m) etc., in integers: p.c[i] * 2^(m-g)
      long long num = p.c[i];                    // value = num * 2^-g
      long long scaled_floor, scaled_ceil;
      long shift = g - m;                        // > 0: candidate grid finer
      if (shift >= 0) {
        long long unit = 1ll << shift;           // one layer cell in g-units
        long long rad = unit + (1ll << (shift > 0 ? shift - 1 : 0));
        long long a = num - rad, b2 = num + rad;
        scaled_floor = a >= 0 ? a / unit : -((-a + unit - 1) / unit);
        scaled_ceil = b2 >= 0 ? b2 / unit : -((-b2) / unit);
      } else {
        scaled_floor = (num << (-shift)) - 2;
        scaled_ceil = (num << (-shift)) + 2;
      }
      lo.c[i] = scaled_floor;
      hi.c[i] = scaled_ceil;
      cur.c[i] = scaled_floor;
    }
    while (true) {
      if (dom->query(to_dyadic(cur, d, m), static_cast<int>(m)).as_bit()) return true;
      int i = d - 1;
      while (i >= 0) {
        if (++cur.c[i] <= hi.c[i]) break;
        cur.c[i] = lo.c[i];
        --i;
      }
      if (i < 0) return false;
    }
  }
};

// initial candidate set: all domain-positive grid points of D^d_g within the
// advice window
PointSet seed_candidates(const DomainFilter& df, long g, int b, long filter_prec) {
  PointSet S;
  int d = df.d;
  long long reach = (1ll << std::max<long>(0, g + b)) + 1;
  GPoint cur;
  for (int i = 0; i < d; ++i) cur.c[i] = -reach;
  while (true) {
    if (df.pass(cur, g, filter_prec)) S.insert(cur);
    int i = d - 1;
    while (i >= 0) {
      if (++cur.c[i] <= reach) break;
      cur.c[i] = -reach;
      --i;
    }
    if (i < 0) break;
  }
  return S;
}

// refinement: grid-g' points within inf-distance rho = 2^(rho_exp) of p that
// pass the domain filter; `visited` dedups across refinement balls
void refine_into(const DomainFilter& df, const GPoint& p, long g, long gp, long rho_exp,
                 long filter_prec, PointSet& out, PointSet& visited) {
  int d = df.d;
  long long rad = (gp + rho_exp) >= 0 ? (1ll << (gp + rho_exp)) : 0;
  GPoint base = rescale(p, d, g, gp);
  GPoint cur;
  for (int i = 0; i < d; ++i) cur.c[i] = base.c[i] - rad;
  while (true) {
    if (visited.insert(cur).second && df.pass(cur, gp, filter_prec)) out.insert(cur);
    int i = d - 1;
    while (i >= 0) {
      if (++cur.c[i] <= base.c[i] + rad) break;
      cur.c[i] = base.c[i] - rad;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace

std::optional<DyadicPoint> invert_point(const FuncName& f, const DyadicPoint& q, Precision n,
                                        InversionTrace* trace) {
  if (!f.mu_lower()) throw std::invalid_argument("invert_point: modulus of unicity required");
  if (!f.domain_grid()) throw std::invalid_argument("invert_point: domain name required");
  if (f.dim_in() != f.dim_out()) throw std::invalid_argument("invert_point: d == e required");
  if (q.dim() != f.dim_out()) throw std::invalid_argument("invert_point: query dimension mismatch");
  const Modulus& ub = f.mu_upper();
  const Modulus& lb = *f.mu_lower();
  const RepName& dom = *f.domain_grid();
  int b = *dom.advice().outer_radius_exp;
  int d = f.dim_in();
  DomainFilter df{&dom, d};

  auto kof = [&](long i) { return ub(lb(i) + 1) + 1; };
  auto mof = [&](long i) { return lb(i); };
  // schedule step sanity: moduli must advance by at least one per step
  if (kof(1) - kof(0) < 1 || mof(1) - mof(0) < 1)
    throw std::invalid_argument("invert_point: modulus step below 1");

  long i0 = 0;
  while (i0 > -256 && kof(i0 - 1) >= -b) --i0;

  PointSet S = seed_candidates(df, kof(i0), b, mof(i0));

  for (long i = i0; i <= n + 2; ++i) {
    long k = kof(i), m = mof(i);
    Dyadic t2 = Dyadic::pow2(1 - static_cast<int>(m));  // 2 * t_i
    PointSet C;
    for (const auto& p : S) {
      DyadicPoint img = f.eval(to_dyadic(p, d, k), static_cast<int>(k));
      if (img_close(q, img, t2)) C.insert(p);
    }
    mpz_class bound = candidate_bound(d, lb(k + 2), m);
    if (trace) {
      trace->k.push_back(k);
      trace->m.push_back(m);
      trace->s_sizes.push_back(S.size());
      trace->c_sizes.push_back(C.size());
      trace->c_bounds.push_back(bound);
    }
    if (mpz_class(static_cast<unsigned long>(C.size())) >= bound)
      throw std::logic_error("invert_point: candidate bound violated");
    if (C.empty()) {
      if (trace) {
        trace->not_in_image = true;
        trace->not_in_image_threshold = Dyadic::pow2(-static_cast<int>(lb(n + 2)));
      }
      return std::nullopt;
    }
    if (i == n + 2) return to_dyadic(*C.begin(), d, k);
    long k_next = kof(i + 1), m_next = mof(i + 1);
    PointSet Snext, visited;
    for (const auto& p : C) {
      refine_into(df, p, k, k_next, 1 - k, m_next, Snext, visited);
    }
    S = std::move(Snext);
  }
  return std::nullopt;  // unreachable
}

FuncName inverse_name(const FuncName& f) {
  if (!f.mu_lower()) throw std::invalid_argument("inverse_name: modulus of unicity required");
  FuncName base = f;
  int d = f.dim_in(), e = f.dim_out();
  FuncName::EvalFn fn = [base, d](const DyadicPoint& q, Precision n) {
    auto p = invert_point(base, q, n + 1);
    if (!p) return DyadicPoint::zero(d);
    return *p;
  };
  Modulus ubar = *f.mu_lower();
  Modulus lbar = f.mu_upper();
  return FuncName(e, d, std::move(fn), ubar, lbar, std::nullopt, std::nullopt,
                  f.label() + "|inverse");
}

bool image_membership(const FuncName& f, const DyadicPoint& q, Precision n) {
  if (!f.domain_grid()) throw std::invalid_argument("image_membership: domain name required");
  if (q.dim() != f.dim_out()) throw std::invalid_argument("image_membership: query dimension mismatch");
  const Modulus& ub = f.mu_upper();
  const RepName& dom = *f.domain_grid();
  int b = *dom.advice().outer_radius_exp;
  int d = f.dim_in();
  DomainFilter df{&dom, d};

  auto gof = [&](long i) { return ub(i + 2) + 2; };   // candidate grid
  auto fof = [&](long i) { return ub(i + 2) + 1; };   // domain filter precision
  auto cof = [&](long i) { return i + 5; };           // value precision

  long i0 = 0;
  while (i0 > -256 && gof(i0 - 1) >= -b) --i0;

  PointSet S = seed_candidates(df, gof(i0), b, fof(i0));

  for (long i = i0; i <= n; ++i) {
    long g = gof(i);
    Dyadic filter = Dyadic(3).mul_pow2(-static_cast<int>(i) - 1);  // 3/2 * t_i
    PointSet C;
    for (const auto& p : S) {
      DyadicPoint img = f.eval(to_dyadic(p, d, g), static_cast<int>(cof(i)));
      if (img_close(q, img, filter)) C.insert(p);
    }
    if (C.empty()) return false;
    if (i == n) return true;
    long g_next = gof(i + 1), f_next = fof(i + 1);
    PointSet Snext, visited;
    for (const auto& p : C) {
      refine_into(df, p, g, g_next, 1 - g, f_next, Snext, visited);
    }
    S = std::move(Snext);
  }
  return true;
}

RepName image_name(const FuncName& f) {
  if (!f.hoelder()) throw std::invalid_argument("image_name: Hoelder advice required");
  if (!f.domain_grid()) throw std::invalid_argument("image_name: domain name required");
  int e = f.dim_out();
  int b = *f.domain_grid()->advice().outer_radius_exp;
  // image bound: C * (2^(b+1))^alpha + ||f(anchor)|| with one anchor
  // evaluation at a domain layer point
  const HoelderAdvice& h = *f.hoelder();
  mpq_class ab = h.alpha * mpq_class(std::max(b, 0) + 1);
  mpz_class abc;
  mpz_cdiv_q(abc.get_mpz_t(), ab.get_num().get_mpz_t(), ab.get_den().get_mpz_t());
  DyadicPoint anchor = DyadicPoint::zero(f.dim_in());
  {
    const RepName& dom = *f.domain_grid();
    int layer = std::max(0, -b);
    Dyadic reach = Dyadic::pow2(b) + Dyadic::pow2(-layer);
    for_each_grid_point(DyadicPoint::zero(f.dim_in()), reach, layer, [&](const DyadicPoint& p) {
      if (dom.query(p, layer).as_bit()) {
        anchor = p;
        return false;
      }
      return true;
    });
  }
  DyadicPoint f0 = f.eval(anchor, 4);
  Dyadic f0n;
  for (int i = 0; i < e; ++i) f0n = Dyadic::max(f0n, f0[i].abs());
  int b_img = static_cast<int>(
      ceil_log2_q(detail::pow2_q(static_cast<int>(h.log2C + abc.get_si())) + f0n.to_rational() + 1));
  FuncName base = f;
  OracleFn fn = [base](const DyadicPoint& q, Precision n) {
    for (int i = 0; i < q.dim(); ++i)
      if (!q[i].on_grid(n)) return Answer::bit(false);
    return Answer::bit(image_membership(base, q, n + 1));
  };
  Advice adv;
  adv.outer_radius_exp = b_img;
  return RepName(RepKind::Grid, e, Norm::linf(e), adv, std::move(fn), f.label() + "|image");
}

}  // namespace func_ops
}  // namespace csets
