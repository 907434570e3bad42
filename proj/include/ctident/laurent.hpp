#ifndef CTIDENT_LAURENT_HPP
#define CTIDENT_LAURENT_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <ctident/errors.hpp>
#include <ctident/numeric.hpp>

namespace ctident {

inline constexpr int kMaxArity = 12;
inline constexpr int kMaxExponent = 127;
inline constexpr std::size_t kDefaultTermLimit = 5'000'000;

/// Fixed-length vector of signed exponents, one slot per variable.
/// Total (lexicographic) order makes term order deterministic.
class ExponentVector {
 public:
  ExponentVector() { e_.fill(0); }

  explicit ExponentVector(int arity) : arity_(check_arity(arity)) {
    e_.fill(0);
  }

  ExponentVector(std::initializer_list<int> exps)
      : arity_(check_arity(static_cast<int>(exps.size()))) {
    e_.fill(0);
    int i = 0;
    for (int v : exps) set(i++, v);
  }

  static ExponentVector of(std::span<const int> exps) {
    ExponentVector e(static_cast<int>(exps.size()));
    for (int i = 0; i < e.arity(); ++i) e.set(i, exps[i]);
    return e;
  }

  int arity() const { return arity_; }

  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }

  ExponentVector& set(int i, int v) {
    if (i < 0 || i >= arity_) throw usage_error("ExponentVector: slot out of range");
    if (v < -kMaxExponent || v > kMaxExponent)
      throw resource_error("ExponentVector: exponent out of machine range",
                           kMaxExponent);
    e_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(v);
    return *this;
  }

  int sum() const {
    int s = 0;
    for (int i = 0; i < arity_; ++i) s += e_[static_cast<std::size_t>(i)];
    return s;
  }

  ExponentVector plus(const ExponentVector& o) const {
    if (arity_ != o.arity_) throw usage_error("ExponentVector: arity mismatch");
    ExponentVector r(arity_);
    for (int i = 0; i < arity_; ++i) {
      int v = (*this)[i] + o[i];
      if (v < -kMaxExponent || v > kMaxExponent)
        throw resource_error("ExponentVector: exponent overflow in product",
                             kMaxExponent);
      r.e_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(v);
    }
    return r;
  }

  /// Copy with one slot removed (arity decreases by one).
  ExponentVector without(int slot) const {
    if (slot < 0 || slot >= arity_) throw usage_error("ExponentVector: slot out of range");
    ExponentVector r(arity_ - 1);
    int j = 0;
    for (int i = 0; i < arity_; ++i) {
      if (i == slot) continue;
      r.e_[static_cast<std::size_t>(j++)] = e_[static_cast<std::size_t>(i)];
    }
    return r;
  }

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  static int check_arity(int a) {
    if (a < 0 || a > kMaxArity)
      throw resource_error("ExponentVector: arity out of range", kMaxArity);
    return a;
  }

  std::array<std::int8_t, kMaxArity> e_{};
  std::int8_t arity_ = 0;
};

/// Per-variable degree caps used to keep series products finite.
class TruncationOrder {
 public:
  explicit TruncationOrder(std::vector<int> bounds) : bounds_(std::move(bounds)) {
    for (int b : bounds_)
      if (b < 0) throw usage_error("TruncationOrder: negative bound");
  }

  static TruncationOrder uniform(int arity, int bound) {
    return TruncationOrder(std::vector<int>(static_cast<std::size_t>(arity), bound));
  }

  int arity() const { return static_cast<int>(bounds_.size()); }
  int bound(int i) const { return bounds_[static_cast<std::size_t>(i)]; }

  bool exceeded_by(const ExponentVector& e) const {
    for (int i = 0; i < e.arity(); ++i)
      if (e[i] > bound(i)) return true;
    return false;
  }

 private:
  std::vector<int> bounds_;
};

/// Sparse multivariate Laurent polynomial with exact integer coefficients.
/// Terms live in a sorted map keyed by exponent vector; no stored
/// coefficient is zero. Values are immutable in practice: all operations
/// below are pure functions building fresh polynomials.
class LaurentPolynomial {
 public:
  using Terms = std::map<ExponentVector, Int>;

  explicit LaurentPolynomial(int arity) : arity_(arity) {
    if (arity < 0 || arity > kMaxArity)
      throw resource_error("LaurentPolynomial: arity out of range", kMaxArity);
  }

  static LaurentPolynomial constant(int arity, Int c) {
    LaurentPolynomial p(arity);
    p.add_term(ExponentVector(arity), std::move(c));
    return p;
  }

  static LaurentPolynomial monomial(const ExponentVector& e, Int c) {
    LaurentPolynomial p(e.arity());
    p.add_term(e, std::move(c));
    return p;
  }

  int arity() const { return arity_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  /// Accumulates c into the slot for e; removes the slot if it cancels.
  void add_term(const ExponentVector& e, const Int& c) {
    if (e.arity() != arity_) throw usage_error("LaurentPolynomial: arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool operator==(const LaurentPolynomial&) const = default;

  /// Canonical text form: terms in ascending lexicographic key order,
  /// each as "coeff * x0^e0 x1^e1 ...".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out << " + ";
      first = false;
      out << c.get_str() << " *";
      for (int i = 0; i < arity_; ++i) out << " x" << i << "^" << e[i];
    }
    return out.str();
  }

 private:
  int arity_;
  Terms terms_;
};

inline LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.arity() != q.arity()) throw usage_error("add: arity mismatch");
  LaurentPolynomial out(p.arity());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c);
  for (const auto& [e, c] : q.terms()) out.add_term(e, c);
  return out;
}

inline LaurentPolynomial negate(const LaurentPolynomial& p) {
  LaurentPolynomial out(p.arity());
  for (const auto& [e, c] : p.terms()) out.add_term(e, -c);
  return out;
}

inline LaurentPolynomial sub(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  return add(p, negate(q));
}

namespace detail {

inline LaurentPolynomial mul_impl(const LaurentPolynomial& p,
                                  const LaurentPolynomial& q,
                                  const TruncationOrder* trunc,
                                  std::size_t max_terms) {
  if (p.arity() != q.arity()) throw usage_error("mul: arity mismatch");
  const LaurentPolynomial& outer = p.term_count() <= q.term_count() ? p : q;
  const LaurentPolynomial& inner = p.term_count() <= q.term_count() ? q : p;
  LaurentPolynomial r(p.arity());
  for (const auto& [oe, oc] : outer.terms()) {
    for (const auto& [ie, ic] : inner.terms()) {
      ExponentVector e = oe.plus(ie);
      if (trunc != nullptr && trunc->exceeded_by(e)) continue;
      r.add_term(e, oc * ic);
      if (r.term_count() > max_terms)
        throw resource_error("mul: expanded term count exceeds cap", max_terms);
    }
  }
  return r;
}

}  // namespace detail

inline LaurentPolynomial mul(const LaurentPolynomial& p, const LaurentPolynomial& q,
                             std::size_t max_terms = kDefaultTermLimit) {
  return detail::mul_impl(p, q, nullptr, max_terms);
}

/// Product with terms above the per-variable bounds dropped as they arise.
/// Sound for coefficient extraction when all operand exponents are
/// nonnegative (no dropped term can re-enter the kept range).
inline LaurentPolynomial mul_truncated(const LaurentPolynomial& p,
                                       const LaurentPolynomial& q,
                                       const TruncationOrder& trunc,
                                       std::size_t max_terms = kDefaultTermLimit) {
  return detail::mul_impl(p, q, &trunc, max_terms);
}

inline LaurentPolynomial pow(const LaurentPolynomial& p, long e,
                             std::size_t max_terms = kDefaultTermLimit) {
  if (e < 0)
    throw usage_error("pow: negative exponent (use series_one_minus_pow)");
  LaurentPolynomial acc = LaurentPolynomial::constant(p.arity(), 1);
  LaurentPolynomial base = p;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base, max_terms);
    e >>= 1;
    if (e > 0) base = mul(base, base, max_terms);
  }
  return acc;
}

inline Int coefficient(const LaurentPolynomial& p, const ExponentVector& m) {
  if (m.arity() != p.arity()) throw usage_error("coefficient: arity mismatch");
  auto it = p.terms().find(m);
  return it == p.terms().end() ? Int(0) : it->second;
}

inline Int constant_term(const LaurentPolynomial& p) {
  return coefficient(p, ExponentVector(p.arity()));
}

/// Sets variable `slot` to 1: its exponent is dropped from every term and
/// colliding terms merge. Arity decreases by one.
inline LaurentPolynomial substitute_one(const LaurentPolynomial& p, int slot) {
  if (slot < 0 || slot >= p.arity()) throw usage_error("substitute_one: slot out of range");
  LaurentPolynomial r(p.arity() - 1);
  for (const auto& [e, c] : p.terms()) r.add_term(e.without(slot), c);
  return r;
}

/// (1 - x_i)^e as a polynomial (e >= 0) or a truncated power series
/// (e < 0), always cut at the truncation bound for variable i.
inline LaurentPolynomial series_one_minus_pow(int slot, long e,
                                              const TruncationOrder& trunc) {
  const int arity = trunc.arity();
  if (slot < 0 || slot >= arity) throw usage_error("series_one_minus_pow: slot out of range");
  const int bound = trunc.bound(slot);
  LaurentPolynomial r(arity);
  if (e >= 0) {
    const long jmax = std::min<long>(e, bound);
    for (long j = 0; j <= jmax; ++j) {
      Int c = binomial(e, j);
      if (j % 2 == 1) c = -c;
      r.add_term(ExponentVector(arity).set(slot, static_cast<int>(j)), c);
    }
  } else {
    for (long j = 0; j <= bound; ++j)
      r.add_term(ExponentVector(arity).set(slot, static_cast<int>(j)),
                 binomial(-e - 1 + j, j));
  }
  return r;
}

inline LaurentPolynomial truncate(const LaurentPolynomial& p,
                                  const TruncationOrder& trunc) {
  if (trunc.arity() != p.arity()) throw usage_error("truncate: arity mismatch");
  LaurentPolynomial r(p.arity());
  for (const auto& [e, c] : p.terms())
    if (!trunc.exceeded_by(e)) r.add_term(e, c);
  return r;
}

}  // namespace ctident

#endif  // CTIDENT_LAURENT_HPP
