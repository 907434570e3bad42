#ifndef CTIDENT_CT_ENGINE_HPP
#define CTIDENT_CT_ENGINE_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include <ctident/identities.hpp>
#include <ctident/laurent.hpp>

namespace ctident {

struct EngineLimits {
  std::size_t max_terms = kDefaultTermLimit;
};

/// Constant term by direct expansion. The product is homogeneous of
/// degree 0, so it is expanded with x_0 = 1; the constant term is
/// unchanged.
inline Int ct_direct(const IdentityInstance& inst, const EngineLimits& limits = {}) {
  const std::vector<ProductFactor> fs = dehomogenize_factors(product_factors(inst));
  int arity = 0;
  switch (inst.family()) {
    case Family::dyson: arity = inst.dyson().n(); break;
    case Family::morris: arity = inst.morris().n; break;
    case Family::aomoto: arity = inst.aomoto().n; break;
    case Family::forrester: arity = inst.forrester().n(); break;
  }
  return constant_term(expand_product(arity, fs, limits.max_terms));
}

/// Shared memo table for Good's recursion. The key is the sorted multiset
/// of nonzero parameters; the Dyson constant term is symmetric in them.
class GoodCache {
 public:
  bool lookup(const std::vector<long>& key, Int& out) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return false;
    out = it->second;
    return true;
  }

  void store(const std::vector<long>& key, const Int& value) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, value);
  }

 private:
  std::mutex mu_;
  std::map<std::vector<long>, Int> memo_;
};

namespace detail {

inline std::vector<long> good_canonical(std::span<const long> a) {
  std::vector<long> key;
  key.reserve(a.size());
  for (long v : a)
    if (v != 0) key.push_back(v);
  std::sort(key.begin(), key.end());
  return key;
}

inline Int good_eval(const std::vector<long>& key, GoodCache& cache) {
  // Zero parameters are already removed: a variable with a_i = 0
  // contributes no poles, so taking its constant term just deletes it.
  if (key.size() <= 1) return 1;
  Int memo;
  if (cache.lookup(key, memo)) return memo;
  Int sum = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0 && key[i] == key[i - 1]) continue;  // fold equal parameters
    long mult = 0;
    for (long v : key)
      if (v == key[i]) ++mult;
    std::vector<long> child = key;
    child[i] -= 1;
    sum += Int(mult) * good_eval(good_canonical(child), cache);
  }
  cache.store(key, sum);
  return sum;
}

}  // namespace detail

/// Dyson constant term via Good's recursion
///   D(a_0..a_n) = sum_i D(.., a_i - 1, ..),
/// with zero parameters eliminated and the empty case equal to 1.
inline Int ct_good_recursion(const DysonParams& p, GoodCache* cache = nullptr) {
  validate_shape(p);
  for (long v : p.a)
    if (v < 0) throw usage_error("good recursion: parameters must be nonnegative");
  GoodCache local;
  return detail::good_eval(detail::good_canonical(p.a), cache ? *cache : local);
}

// ---------------------------------------------------------------------------
// Coefficients at negative a0 / a
//
// With the free parameter set to -h, each family's product is a formal
// Laurent series. Setting x_0 = 1 rewrites it as
//
//   sign * prod_l x_l^{-q_l} * N(x) * prod_l (1 - x_l)^{w_l}
//
// where N is a polynomial in (x_j - x_i). The requested coefficient is then
// read off from N times truncated (1-x_l)^{w_l} expansions; the truncation
// bound per variable is the target exponent itself, which is sufficient
// because every operand has nonnegative exponents only.

namespace detail {

struct NegAForm {
  int nvars = 0;                        // variables x_1..x_n
  int sign = 1;                         // +1 or -1
  std::vector<std::vector<long>> u;     // u[i][j], i<j, exponent of (x_j - x_i)
  std::vector<long> one_minus_exp;      // w_l on (1 - x_l)
  std::vector<long> mono_shift;         // q_l
};

inline int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

inline NegAForm neg_a_form(const IdentityInstance& inst) {
  NegAForm f;
  switch (inst.family()) {
    case Family::dyson: {
      const DysonParams& p = inst.dyson();
      validate_shape(p);
      const int n = p.n();
      const long h = -p.a[0];
      for (int l = 1; l <= n; ++l)
        if (p.a[static_cast<std::size_t>(l)] < 0)
          throw usage_error("negative-a0 path: a_1..a_n must be nonnegative");
      f.nvars = n;
      f.u.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
      long sign_exp = 0;
      for (int i = 1; i <= n; ++i) {
        const long ai = p.a[static_cast<std::size_t>(i)];
        sign_exp += ai;               // from (1 - x_0/x_l)^{a_l}
        sign_exp += (n - i) * ai;     // from the pairs i < j
        f.one_minus_exp.push_back(ai - h);
        f.mono_shift.push_back(static_cast<long>(n) * ai);
        for (int j = i + 1; j <= n; ++j)
          f.u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
              ai + p.a[static_cast<std::size_t>(j)];
      }
      f.sign = parity_sign(sign_exp);
      return f;
    }
    case Family::morris: {
      const MorrisParams& p = inst.morris();
      validate_shape(p);
      const long h = -p.a;
      f.nvars = p.n;
      f.u.assign(static_cast<std::size_t>(p.n), std::vector<long>(static_cast<std::size_t>(p.n), 0));
      for (int i = 1; i <= p.n; ++i) {
        f.one_minus_exp.push_back(p.b - h);
        f.mono_shift.push_back((p.n - 1) * p.k + p.b);
        for (int j = i + 1; j <= p.n; ++j)
          f.u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = 2 * p.k;
      }
      f.sign = parity_sign(p.n * p.b + p.k * (static_cast<long>(p.n) * (p.n - 1) / 2));
      return f;
    }
    case Family::aomoto: {
      const AomotoParams& p = inst.aomoto();
      validate_shape(p);
      const long h = -p.a;
      f.nvars = p.n;
      f.u.assign(static_cast<std::size_t>(p.n), std::vector<long>(static_cast<std::size_t>(p.n), 0));
      for (int i = 1; i <= p.n; ++i) {
        f.one_minus_exp.push_back(p.b + (i <= p.m ? 1 : 0) - h);
        f.mono_shift.push_back((p.n - 1) * p.k + p.b);
        for (int j = i + 1; j <= p.n; ++j)
          f.u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = 2 * p.k;
      }
      f.sign = parity_sign(p.n * p.b + p.k * (static_cast<long>(p.n) * (p.n - 1) / 2));
      return f;
    }
    case Family::forrester: {
      const ForresterParams& p = inst.forrester();
      validate_shape(p);
      const long h = -p.a;
      const int n = p.n();
      f.nvars = n;
      f.u.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
      for (int i = 1; i <= n; ++i) {
        f.one_minus_exp.push_back(p.b - h);
        f.mono_shift.push_back((n - 1) * p.k + p.b + (i > p.n0 ? p.n1 - 1 : 0));
        for (int j = i + 1; j <= n; ++j)
          f.u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
              2 * (p.k + (i > p.n0 && j > p.n0 ? 1 : 0));
      }
      f.sign = parity_sign(static_cast<long>(n) * p.b +
                           p.k * (static_cast<long>(n) * (n - 1) / 2) +
                           static_cast<long>(p.n1) * (p.n1 - 1) / 2);
      return f;
    }
  }
  throw usage_error("unknown family");
}

inline Int eval_neg_a_coefficient(const NegAForm& f, const ExponentVector& monomial,
                                  const EngineLimits& limits) {
  if (monomial.arity() != f.nvars + 1)
    throw usage_error("coefficient_at_negative_a0: monomial arity must be n+1");
  if (monomial.sum() != 0) return 0;  // product is homogeneous of degree 0

  const int n = f.nvars;
  if (n == 0) return 1;  // empty product; monomial sum is already 0

  std::vector<int> target(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const long m = f.mono_shift[static_cast<std::size_t>(l)] - monomial[l + 1];
    if (m < 0) return 0;  // numerator and series have nonnegative exponents
    if (m > kMaxExponent)
      throw resource_error("coefficient_at_negative_a0: truncation bound too large",
                           kMaxExponent);
    target[static_cast<std::size_t>(l)] = static_cast<int>(m);
  }
  TruncationOrder trunc{std::vector<int>(target)};

  LaurentPolynomial acc = LaurentPolynomial::constant(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const long u = f.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (u == 0) continue;
      if (u > kMaxExponent)
        throw resource_error("coefficient_at_negative_a0: factor degree too large",
                             kMaxExponent);
      // (x_j - x_i)^u
      LaurentPolynomial factor(n);
      for (long t = 0; t <= u; ++t) {
        if (t > target[static_cast<std::size_t>(i)]) break;
        if (u - t > target[static_cast<std::size_t>(j)]) continue;
        Int c = binomial(u, t);
        if (t % 2 == 1) c = -c;
        factor.add_term(
            ExponentVector(n).set(i, static_cast<int>(t)).set(j, static_cast<int>(u - t)), c);
      }
      acc = mul_truncated(acc, factor, trunc, limits.max_terms);
    }
  for (int l = 0; l < n; ++l)
    acc = mul_truncated(acc, series_one_minus_pow(l, f.one_minus_exp[static_cast<std::size_t>(l)], trunc),
                        trunc, limits.max_terms);

  Int c = coefficient(acc, ExponentVector::of(std::span<const int>(target)));
  return f.sign < 0 ? -c : c;
}

}  // namespace detail

/// Constant term of x^monomial times the family product, with the free
/// parameter (a_0 for Dyson, a otherwise) already set to the negative
/// integer stored in the instance. The monomial has one slot per variable
/// x_0..x_n; its exponents must sum to 0 or the coefficient is 0.
/// Also exact for nonnegative values of the free parameter, which gives an
/// independent route to cross-check ct_direct.
inline Int coefficient_at_negative_a0(const IdentityInstance& inst,
                                      const ExponentVector& monomial,
                                      const EngineLimits& limits = {}) {
  return detail::eval_neg_a_coefficient(detail::neg_a_form(inst), monomial, limits);
}

// ---------------------------------------------------------------------------
// Leading coefficients (appendix corollaries)

namespace detail {

inline LaurentPolynomial sum_of_variables(int n) {
  LaurentPolynomial s(n);
  for (int i = 0; i < n; ++i) s.add_term(ExponentVector(n).set(i, 1), 1);
  return s;
}

inline ExponentVector shifted_target(std::span<const long> a, int l, int times) {
  ExponentVector e(static_cast<int>(a.size()));
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    long v = a[static_cast<std::size_t>(i)] - (i == l ? times : 0);
    if (v < -kMaxExponent || v > kMaxExponent)
      throw resource_error("leading_ct: exponent out of range", kMaxExponent);
    e.set(i, static_cast<int>(v));
  }
  return e;
}

}  // namespace detail

/// (1/d!) CT[(x_1+..+x_n)^d prod_l x_l^{-a_l} L]: the leading coefficient
/// in a_0 of the constant term studied in Lemma-style rewrites, with L a
/// fixed Laurent polynomial.
inline Rat leading_ct(long d, std::span<const long> a, const LaurentPolynomial& L,
                      const EngineLimits& limits = {}) {
  if (d < 0) throw usage_error("leading_ct: d must be nonnegative");
  if (static_cast<int>(a.size()) != L.arity())
    throw usage_error("leading_ct: parameter count must match arity");
  const LaurentPolynomial p =
      mul(pow(detail::sum_of_variables(L.arity()), d, limits.max_terms), L, limits.max_terms);
  Rat r(coefficient(p, detail::shifted_target(a, -1, 0)), factorial(d));
  r.canonicalize();
  return r;
}

/// Second leading coefficient: the displayed two-sum CT expression. Terms
/// whose factorial argument would be negative (d < 1, d < 2) contribute 0.
inline Rat second_leading_ct(long d, std::span<const long> a, const LaurentPolynomial& L,
                             const EngineLimits& limits = {}) {
  if (d < 0) throw usage_error("second_leading_ct: d must be nonnegative");
  if (static_cast<int>(a.size()) != L.arity())
    throw usage_error("second_leading_ct: parameter count must match arity");
  const int n = L.arity();
  Rat total(0);
  if (d >= 1) {
    const LaurentPolynomial p =
        mul(pow(detail::sum_of_variables(n), d - 1, limits.max_terms), L, limits.max_terms);
    for (int l = 0; l < n; ++l) {
      // CT[a_l x_l (sum x)^{d-1} prod x^{-a} L] / (d-1)!
      Rat term(Int(a[static_cast<std::size_t>(l)]) *
                   coefficient(p, detail::shifted_target(a, l, 1)),
               factorial(d - 1));
      total += term;
    }
  }
  if (d >= 2) {
    const LaurentPolynomial p =
        mul(pow(detail::sum_of_variables(n), d - 2, limits.max_terms), L, limits.max_terms);
    for (int l = 0; l < n; ++l) {
      Rat term(coefficient(p, detail::shifted_target(a, l, 2)),
               Int(2) * factorial(d - 2));
      total -= term;
    }
  }
  total.canonicalize();
  return total;
}

}  // namespace ctident

#endif  // CTIDENT_CT_ENGINE_HPP
