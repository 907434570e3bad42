#ifndef CTIDENT_POLYFIT_HPP
#define CTIDENT_POLYFIT_HPP

#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <ctident/errors.hpp>
#include <ctident/numeric.hpp>

namespace ctident {

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. The trailing coefficient is nonzero unless the polynomial
/// is zero (degree() == -1).
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;

  explicit UnivariatePolynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& v : c_) v.canonicalize();
    normalize();
  }

  static UnivariatePolynomial constant(Rat v) {
    return UnivariatePolynomial(std::vector<Rat>{std::move(v)});
  }

  /// leading * prod (X - r) over the given roots.
  static UnivariatePolynomial from_roots(const Rat& leading,
                                         std::span<const Rat> roots) {
    UnivariatePolynomial p = constant(leading);
    for (const Rat& r : roots) {
      UnivariatePolynomial lin(std::vector<Rat>{-r, Rat(1)});
      p = p * lin;
    }
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coefficients() const { return c_; }

  Rat coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(i)];
  }

  Rat leading_coefficient() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& a,
                                        const UnivariatePolynomial& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UnivariatePolynomial(std::move(c));
  }

  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a,
                                        const UnivariatePolynomial& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UnivariatePolynomial(std::move(c));
  }

  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a,
                                        const UnivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return UnivariatePolynomial();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UnivariatePolynomial(std::move(c));
  }

  friend UnivariatePolynomial operator*(const Rat& s, const UnivariatePolynomial& p) {
    std::vector<Rat> c = p.c_;
    for (auto& v : c) v *= s;
    return UnivariatePolynomial(std::move(c));
  }

  bool operator==(const UnivariatePolynomial&) const = default;

  /// "c0 + c1*a + c2*a^2" with canonical rationals; "0" when zero.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) out << " + ";
      out << ctident::to_string(c_[i]);
      if (i == 1) out << "*a";
      if (i > 1) out << "*a^" << i;
    }
    return out.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

/// Unique polynomial of degree < #points through the given points,
/// by the Lagrange formula over exact rationals.
inline UnivariatePolynomial lagrange_interpolate(
    std::span<const std::pair<Rat, Rat>> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw usage_error("lagrange_interpolate: duplicate abscissae");
  UnivariatePolynomial acc;
  for (std::size_t i = 0; i < points.size(); ++i) {
    UnivariatePolynomial basis = UnivariatePolynomial::constant(Rat(1));
    Rat denom(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * UnivariatePolynomial(
                          std::vector<Rat>{-points[j].first, Rat(1)});
      denom *= points[i].first - points[j].first;
    }
    acc = acc + (points[i].second / denom) * basis;
  }
  return acc;
}

using Sampler = std::function<Rat(long)>;

/// Interpolates the sampler on 0..bound and checks that `extra_points`
/// further samples lie on the interpolant. A pass certifies the claimed
/// degree bound on the sampled window.
inline bool certify_degree_bound(const Sampler& sampler, int bound,
                                 int extra_points) {
  if (bound < 0 || extra_points < 0)
    throw usage_error("certify_degree_bound: negative argument");
  std::vector<std::pair<Rat, Rat>> pts;
  pts.reserve(static_cast<std::size_t>(bound) + 1);
  for (long x = 0; x <= bound; ++x) pts.emplace_back(Rat(x), sampler(x));
  UnivariatePolynomial p = lagrange_interpolate(pts);
  for (long x = bound + 1; x <= bound + extra_points; ++x)
    if (p(Rat(x)) != sampler(x)) return false;
  return true;
}

/// Degree bounds passed to rational_fit_1d were too small to admit a
/// nonzero solution.
class fit_degree_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fitted denominator vanishes at a sample point; the caller should
/// refit with larger bounds.
class fit_pole_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RationalFunctionFit {
  UnivariatePolynomial numerator;
  UnivariatePolynomial denominator;
  std::vector<long> samples;

  Rat operator()(const Rat& x) const {
    Rat d = denominator(x);
    if (d == 0) throw usage_error("RationalFunctionFit: pole at evaluation point");
    return numerator(x) / d;
  }
};

namespace detail {

/// Fraction-free (Bareiss) forward elimination. Rows are used in order,
/// pivots are the first nonzero entry in each column scan; no column
/// permutation, so results are reproducible. Returns pivot (row, col)
/// pairs; `rows` is left in echelon form.
inline std::vector<std::pair<int, int>> bareiss_echelon(
    std::vector<std::vector<Int>>& rows, int cols) {
  std::vector<std::pair<int, int>> pivots;
  Int prev_pivot = 1;
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(sel)]);
    const Int pivot = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      const Int factor = row[static_cast<std::size_t>(col)];
      for (int c = col; c < cols; ++c) {
        auto& cell = row[static_cast<std::size_t>(c)];
        cell = cell * pivot -
               factor * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        cell /= prev_pivot;  // exact by the Bareiss identity
      }
    }
    pivots.emplace_back(rank, col);
    prev_pivot = pivot;
    ++rank;
  }
  return pivots;
}

}  // namespace detail

/// Solves the exact homogeneous system p(x) - f(x) q(x) = 0 over the given
/// sample abscissae, with deg p <= num_degree and deg q <= den_degree.
/// The kernel vector is normalized so the denominator is a primitive
/// integer polynomial with positive leading coefficient.
inline RationalFunctionFit rational_fit_1d(const Sampler& sampler, int num_degree,
                                           int den_degree,
                                           std::span<const long> samples) {
  if (num_degree < 0 || den_degree < 0)
    throw usage_error("rational_fit_1d: negative degree bound");
  const int cols = num_degree + den_degree + 2;
  if (static_cast<int>(samples.size()) < cols)
    throw usage_error("rational_fit_1d: need at least num+den+2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i] == samples[j])
        throw usage_error("rational_fit_1d: duplicate sample abscissae");

  std::vector<Rat> values;
  values.reserve(samples.size());
  for (long x : samples) values.push_back(sampler(x));

  // Row for sample x: [1, x, .., x^nd, -f, -f x, .., -f x^dd], scaled to
  // integers by den(f).
  std::vector<std::vector<Int>> rows;
  rows.reserve(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Rat f = values[s];
    f.canonicalize();
    const Int fden = f.get_den();
    const Int fnum = f.get_num();
    std::vector<Int> row(static_cast<std::size_t>(cols));
    Int xp = 1;
    for (int i = 0; i <= num_degree; ++i) {
      row[static_cast<std::size_t>(i)] = fden * xp;
      xp *= samples[s];
    }
    xp = 1;
    for (int j = 0; j <= den_degree; ++j) {
      row[static_cast<std::size_t>(num_degree + 1 + j)] = -fnum * xp;
      xp *= samples[s];
    }
    rows.push_back(std::move(row));
  }

  auto pivots = detail::bareiss_echelon(rows, cols);
  if (static_cast<int>(pivots.size()) == cols)
    throw fit_degree_error("rational_fit_1d: degree bounds too small");

  // First free column gets 1, remaining free columns 0; pivot variables
  // are recovered bottom-up.
  std::vector<bool> is_pivot_col(static_cast<std::size_t>(cols), false);
  for (auto [r, c] : pivots) is_pivot_col[static_cast<std::size_t>(c)] = true;
  int free_col = 0;
  while (is_pivot_col[static_cast<std::size_t>(free_col)]) ++free_col;

  std::vector<Rat> x(static_cast<std::size_t>(cols), Rat(0));
  x[static_cast<std::size_t>(free_col)] = 1;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    auto [r, c] = *it;
    Rat acc(0);
    for (int j = c + 1; j < cols; ++j)
      acc += Rat(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) *
             x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(c)] =
        -acc / Rat(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }

  // Clear denominators and divide by the content.
  Int lcm_den = 1;
  for (auto& v : x) {
    v.canonicalize();
    Int d = v.get_den();
    lcm_den = lcm_den / gcd(lcm_den, d) * d;
  }
  std::vector<Int> ints;
  ints.reserve(x.size());
  Int content = 0;
  for (auto& v : x) {
    Int w = v.get_num() * (lcm_den / v.get_den());
    content = gcd(content, w);
    ints.push_back(std::move(w));
  }
  if (content == 0) throw fit_degree_error("rational_fit_1d: null solution");
  for (auto& w : ints) w /= content;

  std::vector<Rat> pc(ints.begin(), ints.begin() + num_degree + 1);
  std::vector<Rat> qc(ints.begin() + num_degree + 1, ints.end());
  UnivariatePolynomial q{std::vector<Rat>(qc)};
  if (q.is_zero()) throw fit_degree_error("rational_fit_1d: zero denominator");
  if (q.leading_coefficient() < 0) {
    for (auto& v : pc) v = -v;
    for (auto& v : qc) v = -v;
    q = UnivariatePolynomial(std::vector<Rat>(qc));
  }
  UnivariatePolynomial p{std::vector<Rat>(pc)};

  RationalFunctionFit fit{p, q, std::vector<long>(samples.begin(), samples.end())};
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (fit.denominator(Rat(samples[s])) == 0)
      throw fit_pole_error("rational_fit_1d: denominator vanishes at a sample");
    if (fit.numerator(Rat(samples[s])) != values[s] * fit.denominator(Rat(samples[s])))
      throw fit_degree_error("rational_fit_1d: fit fails to reproduce samples");
  }
  return fit;
}

}  // namespace ctident

#endif  // CTIDENT_POLYFIT_HPP
