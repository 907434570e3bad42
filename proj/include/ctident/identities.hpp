#ifndef CTIDENT_IDENTITIES_HPP
#define CTIDENT_IDENTITIES_HPP

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <ctident/laurent.hpp>
#include <ctident/numeric.hpp>
#include <ctident/polyfit.hpp>

namespace ctident {

/// Dyson: prod_{0<=i!=j<=n} (1 - x_i/x_j)^{a_j} over n+1 variables.
struct DysonParams {
  std::vector<long> a;  // a_0..a_n
  int n() const { return static_cast<int>(a.size()) - 1; }
};

/// Morris: H(x_0..x_n; a, b, k), one distinguished variable x_0.
struct MorrisParams {
  int n = 1;
  long a = 0, b = 0, k = 0;
};

/// Aomoto: prod_{l<=m} (1 - x_l/x_0) * H(x_0..x_n; a, b, k).
struct AomotoParams {
  int n = 1;
  int m = 0;
  long a = 0, b = 0, k = 0;
};

/// Forrester: prod_{n0 < i != j <= n} (1 - x_i/x_j) * H(x_0..x_n; a, b, k).
struct ForresterParams {
  int n0 = 0, n1 = 1;
  long a = 0, b = 0, k = 0;
  int n() const { return n0 + n1; }
};

enum class Family { dyson, morris, aomoto, forrester };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::dyson: return "dyson";
    case Family::morris: return "morris";
    case Family::aomoto: return "aomoto";
    case Family::forrester: return "forrester";
  }
  return "?";
}

/// One verifiable instance: a family tag plus its parameter record.
struct IdentityInstance {
  std::variant<DysonParams, MorrisParams, AomotoParams, ForresterParams> params;

  Family family() const { return static_cast<Family>(params.index()); }
  const DysonParams& dyson() const { return std::get<DysonParams>(params); }
  const MorrisParams& morris() const { return std::get<MorrisParams>(params); }
  const AomotoParams& aomoto() const { return std::get<AomotoParams>(params); }
  const ForresterParams& forrester() const { return std::get<ForresterParams>(params); }
};

// ---------------------------------------------------------------------------
// Structural validation

inline void validate_shape(const MorrisParams& p) {
  if (p.n < 1) throw usage_error("morris: n must be >= 1");
  if (p.b < 0 || p.k < 0) throw usage_error("morris: b and k must be nonnegative");
}

inline void validate_shape(const AomotoParams& p) {
  if (p.n < 1) throw usage_error("aomoto: n must be >= 1");
  if (p.b < 0 || p.k < 0) throw usage_error("aomoto: b and k must be nonnegative");
  if (p.m < 0 || p.m > p.n) throw usage_error("aomoto: m out of range 0..n");
}

inline void validate_shape(const ForresterParams& p) {
  if (p.n0 < 0 || p.n1 < 0) throw usage_error("forrester: n0, n1 must be nonnegative");
  if (p.n() < 1) throw usage_error("forrester: n0 + n1 must be >= 1");
  if (p.b < 0 || p.k < 0) throw usage_error("forrester: b and k must be nonnegative");
}

inline void validate_shape(const DysonParams& p) {
  if (p.a.empty()) throw usage_error("dyson: need at least one parameter a_0");
}

// ---------------------------------------------------------------------------
// Product factor lists
//
// Every family's left side is a product of binomial factors
// (1 - x_num/x_den)^exp, homogeneous of degree 0. Builders materialize the
// full (n+1)-variable product; setting x_0 = 1 is left to the constant-term
// engine.

/// (1 - x_num/x_den)^exp with num < 0 meaning numerator 1 and den < 0
/// meaning denominator 1.
struct ProductFactor {
  int num_var = -1;
  int den_var = -1;
  long exp = 0;
};

inline std::vector<ProductFactor> dyson_factors(const DysonParams& p) {
  validate_shape(p);
  std::vector<ProductFactor> fs;
  const int n = p.n();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      if (p.a[static_cast<std::size_t>(j)] < 0)
        throw usage_error("dyson: parameters must be nonnegative to build the product");
      if (p.a[static_cast<std::size_t>(j)] > 0)
        fs.push_back({i, j, p.a[static_cast<std::size_t>(j)]});
    }
  return fs;
}

inline std::vector<ProductFactor> morris_factors(const MorrisParams& p) {
  validate_shape(p);
  if (p.a < 0)
    throw usage_error(
        "morris: negative a has no Laurent-polynomial product; "
        "use the constant-term engine series path");
  std::vector<ProductFactor> fs;
  for (int l = 1; l <= p.n; ++l) {
    if (p.a > 0) fs.push_back({l, 0, p.a});
    if (p.b > 0) fs.push_back({0, l, p.b});
  }
  if (p.k > 0)
    for (int i = 1; i <= p.n; ++i)
      for (int j = 1; j <= p.n; ++j)
        if (i != j) fs.push_back({i, j, p.k});
  return fs;
}

inline std::vector<ProductFactor> aomoto_factors(const AomotoParams& p) {
  validate_shape(p);
  std::vector<ProductFactor> fs =
      morris_factors(MorrisParams{p.n, p.a, p.b, p.k});
  for (int l = 1; l <= p.m; ++l) fs.push_back({l, 0, 1});
  return fs;
}

inline std::vector<ProductFactor> forrester_factors(const ForresterParams& p) {
  validate_shape(p);
  std::vector<ProductFactor> fs =
      morris_factors(MorrisParams{p.n(), p.a, p.b, p.k});
  for (int i = p.n0 + 1; i <= p.n(); ++i)
    for (int j = p.n0 + 1; j <= p.n(); ++j)
      if (i != j) fs.push_back({i, j, 1});
  return fs;
}

inline std::vector<ProductFactor> product_factors(const IdentityInstance& inst) {
  switch (inst.family()) {
    case Family::dyson: return dyson_factors(inst.dyson());
    case Family::morris: return morris_factors(inst.morris());
    case Family::aomoto: return aomoto_factors(inst.aomoto());
    case Family::forrester: return forrester_factors(inst.forrester());
  }
  throw usage_error("unknown family");
}

/// Rewrites a factor list with x_0 set to 1 and variables 1..n renumbered
/// to 0..n-1.
inline std::vector<ProductFactor> dehomogenize_factors(
    std::span<const ProductFactor> fs) {
  std::vector<ProductFactor> out;
  out.reserve(fs.size());
  for (const ProductFactor& f : fs) {
    ProductFactor g = f;
    g.num_var = f.num_var == 0 ? -1 : f.num_var - 1;
    g.den_var = f.den_var == 0 ? -1 : f.den_var - 1;
    out.push_back(g);
  }
  return out;
}

namespace detail {

inline void check_expansion_degrees(int arity, std::span<const ProductFactor> fs) {
  if (arity > kMaxArity)
    throw resource_error("product: too many variables", kMaxArity);
  std::vector<long> load(static_cast<std::size_t>(arity), 0);
  for (const ProductFactor& f : fs) {
    if (f.num_var >= 0) load[static_cast<std::size_t>(f.num_var)] += f.exp;
    if (f.den_var >= 0) load[static_cast<std::size_t>(f.den_var)] += f.exp;
  }
  for (long v : load)
    if (v > kMaxExponent)
      throw resource_error("product: degree exceeds machine exponent range",
                           kMaxExponent);
}

}  // namespace detail

/// Expands a factor list to the exact Laurent polynomial.
inline LaurentPolynomial expand_product(int arity, std::span<const ProductFactor> fs,
                                        std::size_t max_terms = kDefaultTermLimit) {
  detail::check_expansion_degrees(arity, fs);
  LaurentPolynomial acc = LaurentPolynomial::constant(arity, 1);
  for (const ProductFactor& f : fs) {
    if (f.exp < 0) throw usage_error("expand_product: negative factor exponent");
    if (f.exp == 0) continue;
    LaurentPolynomial factor(arity);
    for (long t = 0; t <= f.exp; ++t) {
      ExponentVector e(arity);
      if (f.num_var >= 0) e.set(f.num_var, static_cast<int>(t));
      if (f.den_var >= 0) e.set(f.den_var, static_cast<int>(-t));
      Int c = binomial(f.exp, t);
      if (t % 2 == 1) c = -c;
      factor.add_term(e, c);
    }
    acc = mul(acc, factor, max_terms);
  }
  return acc;
}

inline LaurentPolynomial build_dyson(const DysonParams& p,
                                     std::size_t max_terms = kDefaultTermLimit) {
  return expand_product(p.n() + 1, dyson_factors(p), max_terms);
}

inline LaurentPolynomial build_morris(const MorrisParams& p,
                                      std::size_t max_terms = kDefaultTermLimit) {
  return expand_product(p.n + 1, morris_factors(p), max_terms);
}

inline LaurentPolynomial build_aomoto(const AomotoParams& p,
                                      std::size_t max_terms = kDefaultTermLimit) {
  return expand_product(p.n + 1, aomoto_factors(p), max_terms);
}

inline LaurentPolynomial build_forrester(const ForresterParams& p,
                                         std::size_t max_terms = kDefaultTermLimit) {
  return expand_product(p.n() + 1, forrester_factors(p), max_terms);
}

// ---------------------------------------------------------------------------
// Closed-form right-hand sides
//
// Evaluators use the falling-factorial rewrites, so they are polynomials in
// the free parameter a and remain valid at negative integers. Factorial
// forms are recovered automatically when all arguments are nonnegative.

inline Int dyson_rhs(const DysonParams& p) {
  validate_shape(p);
  return multinomial(p.a);
}

/// M_n(a,b,k) = prod_{l=0}^{n-1} (a+kl+1)..(a+kl+b) * (k(l+1))! / ((b+kl)! k!)
inline Rat morris_rhs(const MorrisParams& p) {
  validate_shape(p);
  Rat r(1);
  for (long l = 0; l < p.n; ++l) {
    Int poly = 1;
    for (long j = 1; j <= p.b; ++j) poly *= p.a + p.k * l + j;
    r *= Rat(poly * factorial(p.k * (l + 1)),
             factorial(p.b + p.k * l) * factorial(p.k));
  }
  r.canonicalize();
  return r;
}

/// Aomoto right side: as Morris but with a shifted by chi(l >= n-m) in
/// row l of the product.
inline Rat aomoto_rhs(const AomotoParams& p) {
  validate_shape(p);
  Rat r(1);
  for (long l = 0; l < p.n; ++l) {
    const long chi = l >= p.n - p.m ? 1 : 0;
    Int poly = 1;
    for (long j = 1; j <= p.b; ++j) poly *= p.a + p.k * l + chi + j;
    r *= Rat(poly * factorial(p.k * (l + 1)),
             factorial(p.b + p.k * l) * factorial(p.k));
  }
  r.canonicalize();
  return r;
}

/// Forrester right side: M_{n0}(a,b,k) times the n1-fold product, with the
/// a-dependent factorial quotient rewritten as (a+(k+1)j+k n0+1)..(+b).
inline Rat forrester_rhs(const ForresterParams& p) {
  validate_shape(p);
  Rat r = p.n0 > 0 ? morris_rhs(MorrisParams{p.n0, p.a, p.b, p.k}) : Rat(1);
  for (long j = 0; j < p.n1; ++j) {
    Int poly = 1;
    for (long s = 1; s <= p.b; ++s) poly *= p.a + (p.k + 1) * j + p.k * p.n0 + s;
    r *= Rat(Int(j + 1) * poly * factorial(p.k * j + p.k + j + p.k * p.n0),
             factorial(p.k) * factorial((p.k + 1) * j + p.b + p.k * p.n0));
  }
  r.canonicalize();
  return r;
}

inline Rat identity_rhs(const IdentityInstance& inst) {
  switch (inst.family()) {
    case Family::dyson: return Rat(dyson_rhs(inst.dyson()));
    case Family::morris: return morris_rhs(inst.morris());
    case Family::aomoto: return aomoto_rhs(inst.aomoto());
    case Family::forrester: return forrester_rhs(inst.forrester());
  }
  throw usage_error("unknown family");
}

// ---------------------------------------------------------------------------
// Right sides as polynomials in the free parameter

/// (a0+1)(a0+2)..(a0+d) / (a_1! .. a_n!) where d = a_1 + .. + a_n.
inline UnivariatePolynomial dyson_rhs_polynomial(std::span<const long> a_rest) {
  long d = 0;
  Int denom = 1;
  for (long v : a_rest) {
    if (v < 0) throw usage_error("dyson_rhs_polynomial: negative parameter");
    d += v;
    denom *= factorial(v);
  }
  std::vector<Rat> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (long h = 1; h <= d; ++h) roots.emplace_back(-h);
  return UnivariatePolynomial::from_roots(Rat(Int(1), denom), roots);
}

inline UnivariatePolynomial morris_rhs_polynomial(int n, long b, long k) {
  validate_shape(MorrisParams{n, 0, b, k});
  Rat lead(1);
  std::vector<Rat> roots;
  for (long l = 0; l < n; ++l) {
    lead *= Rat(factorial(k * (l + 1)), factorial(b + k * l) * factorial(k));
    for (long j = 1; j <= b; ++j) roots.emplace_back(-(k * l + j));
  }
  return UnivariatePolynomial::from_roots(lead, roots);
}

inline UnivariatePolynomial aomoto_rhs_polynomial(int n, int m, long b, long k) {
  validate_shape(AomotoParams{n, m, 0, b, k});
  Rat lead(1);
  std::vector<Rat> roots;
  for (long l = 0; l < n; ++l) {
    const long chi = l >= n - m ? 1 : 0;
    lead *= Rat(factorial(k * (l + 1)), factorial(b + k * l) * factorial(k));
    for (long j = 1; j <= b; ++j) roots.emplace_back(-(k * l + chi + j));
  }
  return UnivariatePolynomial::from_roots(lead, roots);
}

inline UnivariatePolynomial forrester_rhs_polynomial(int n0, int n1, long b, long k) {
  validate_shape(ForresterParams{n0, n1, 0, b, k});
  Rat lead(1);
  std::vector<Rat> roots;
  for (long l = 0; l < n0; ++l) {
    lead *= Rat(factorial(k * (l + 1)), factorial(b + k * l) * factorial(k));
    for (long j = 1; j <= b; ++j) roots.emplace_back(-(k * l + j));
  }
  for (long j = 0; j < n1; ++j) {
    lead *= Rat(Int(j + 1) * factorial(k * j + k + j + k * n0),
                factorial(k) * factorial((k + 1) * j + b + k * n0));
    for (long s = 1; s <= b; ++s) roots.emplace_back(-((k + 1) * j + k * n0 + s));
  }
  return UnivariatePolynomial::from_roots(lead, roots);
}

}  // namespace ctident

#endif  // CTIDENT_IDENTITIES_HPP
