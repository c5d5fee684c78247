#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "csets/groundtruth.hpp"
#include "csets/names.hpp"

namespace csets {
namespace func_ops {

/// Monotone modulus n -> ceil((n + shift) / alpha) with alpha rational in
/// (0, 1]; alpha = 1 gives the affine (Lipschitz) form. Successive values
/// always grow by at least 1.
struct Modulus {
  mpq_class alpha = 1;
  long shift = 0;

  long operator()(long n) const;
};

struct HoelderAdvice {
  mpq_class alpha;  // exponent in (0,1]
  long log2C;       // C <= 2^log2C
};

/// Approximation oracle for a (possibly partial) function plus moduli of
/// continuity and unicity; queries are memoized and counted like set names.
class FuncName {
 public:
  using EvalFn = std::function<DyadicPoint(const DyadicPoint&, Precision)>;

  FuncName(int dim_in, int dim_out, EvalFn fn, Modulus mu_upper,
           std::optional<Modulus> mu_lower, std::optional<RepName> domain_grid_name,
           std::optional<HoelderAdvice> hoelder, std::string label);

  int dim_in() const { return d_; }
  int dim_out() const { return e_; }
  const Modulus& mu_upper() const { return ubar_; }
  const std::optional<Modulus>& mu_lower() const { return lbar_; }
  const std::optional<RepName>& domain_grid() const { return domain_; }
  /// Local-set view of the domain (converted once, shared).
  const std::optional<RepName>& domain_local() const { return domain_psi_; }
  const std::optional<HoelderAdvice>& hoelder() const { return hoelder_; }

  DyadicPoint eval(const DyadicPoint& q, Precision n) const;
  LedgerSnapshot ledger() const;
  const std::string& label() const { return label_; }

 private:
  struct Core;
  int d_, e_;
  Modulus ubar_;
  std::optional<Modulus> lbar_;
  std::optional<RepName> domain_;
  std::optional<RepName> domain_psi_;
  std::optional<HoelderAdvice> hoelder_;
  std::string label_;
  std::shared_ptr<Core> core_;
};

/// Exact affine map x -> A x + v with caller-certified inf-norm singular
/// bounds 2^smin ||x|| <= ||A x|| <= 2^smax ||x||. Rejects rank-deficient A
/// (d <= 2). Moduli are derived from the bounds.
FuncName make_affine_func(const std::vector<std::vector<Dyadic>>& A, const DyadicPoint& v,
                          RepName domain_grid, int smin_exp, int smax_exp);

/// Componentwise square root on [lo, 1], lo > 0; declared (1/2, 1)-Hoelder.
/// The steep declared modulus drives the superpolynomial schedule growth.
FuncName make_sqrt_func(const Dyadic& lo, RepName domain_grid);

struct InversionTrace {
  std::vector<long> k, m;                  // realized schedule per level
  std::vector<std::size_t> s_sizes, c_sizes;
  std::vector<mpz_class> c_bounds;         // the per-level candidate bound
  bool not_in_image = false;
  Dyadic not_in_image_threshold;           // certified d(q, f[S]) > threshold
};

/// Iterative grid-refinement inversion: returns a point p with
/// ||p - x|| <= 2^-n for some x in S with ||f(x) - q|| <= 2^-mu_lower(n), or
/// nothing (NotInImage) when a candidate level empties out. The per-level
/// candidate bound is asserted, never merely logged.
std::optional<DyadicPoint> invert_point(const FuncName& f, const DyadicPoint& q, Precision n,
                                        InversionTrace* trace = nullptr);

/// invert_point wrapped as the approximation oracle of the inverse; moduli
/// swap roles.
FuncName inverse_name(const FuncName& f);

/// One bit of the image: 1 certifies d(q, f[S]) <= 1.7 * 2^-n, 0 certifies
/// d(q, f[S]) >= 1.3 * 2^-n (within the stated 2^-n / 2^-n+1 contract).
bool image_membership(const FuncName& f, const DyadicPoint& q, Precision n);

/// Grid name of f[S]; layer n is built from image_membership at precision
/// n+1. Outer radius derived from the Hoelder advice.
RepName image_name(const FuncName& f);

}  // namespace func_ops
}  // namespace csets
