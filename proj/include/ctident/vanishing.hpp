#ifndef CTIDENT_VANISHING_HPP
#define CTIDENT_VANISHING_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <ctident/errors.hpp>
#include <ctident/numeric.hpp>

namespace ctident {

enum class RootStatus { guaranteed, missing };

inline std::string to_string(RootStatus s) {
  return s == RootStatus::guaranteed ? "guaranteed" : "missing";
}

struct RootEntry {
  long value = 0;  // the (negative) root in a
  int row = 0;
  int col = 0;
  RootStatus status = RootStatus::guaranteed;
};

/// Predicted integer roots of a family's constant term as a polynomial in
/// the free parameter, with per-entry provenance.
struct RootTable {
  std::vector<RootEntry> roots;
  bool distinct = true;

  std::size_t missing_count() const {
    std::size_t c = 0;
    for (const RootEntry& r : roots)
      if (r.status == RootStatus::missing) ++c;
    return c;
  }

  std::vector<long> values() const {
    std::vector<long> v;
    v.reserve(roots.size());
    for (const RootEntry& r : roots) v.push_back(r.value);
    return v;
  }

  /// CSV with fixed header value,row,col,status.
  std::string to_csv() const {
    std::ostringstream out;
    out << "value,row,col,status\n";
    for (const RootEntry& r : roots)
      out << r.value << "," << r.row << "," << r.col << ","
          << to_string(r.status) << "\n";
    return out.str();
  }
};

namespace detail {

inline bool all_distinct(const std::vector<RootEntry>& roots) {
  std::set<long> seen;
  for (const RootEntry& r : roots)
    if (!seen.insert(r.value).second) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The exceptional set J

/// J = union over proper subsets T of [n] of {sigma(T)+1, .., sigma(T)+k},
/// where sigma(T) sums a_i over T and k is the sum of the positive entries
/// among k_1..k_n of the monomial. Outside [d] \ J nothing is claimed; for
/// h in [d] \ J the Dyson coefficient vanishes.
inline std::set<long> compute_J(std::span<const long> a,
                                std::span<const long> k_monomial) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(k_monomial.size()) != n + 1)
    throw usage_error("compute_J: monomial must have n+1 entries k_0..k_n");
  for (long v : a)
    if (v < 0) throw usage_error("compute_J: parameters must be nonnegative");
  if (n > 20) throw resource_error("compute_J: subset enumeration too large", 20);
  long k = 0;
  for (int i = 1; i <= n; ++i)
    if (k_monomial[static_cast<std::size_t>(i)] > 0)
      k += k_monomial[static_cast<std::size_t>(i)];
  std::set<long> J;
  if (k == 0) return J;
  for (unsigned long mask = 0; mask + 1 < (1ul << n); ++mask) {  // proper subsets
    long sigma = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1ul << i)) sigma += a[static_cast<std::size_t>(i)];
    for (long j = 1; j <= k; ++j) J.insert(sigma + j);
  }
  return J;
}

// ---------------------------------------------------------------------------
// Subset witnesses (Lemma 2.2 data)

/// A subset T of [n] satisfying both inequalities for the (u, v, m) data,
/// together with the two inequality slacks (rhs - lhs, both >= 0).
struct SubsetWitness {
  std::vector<int> T;  // 1-based members, ascending
  long slack_first = 0;
  long slack_second = 0;
};

/// Brute force over all 2^n subsets in order of increasing cardinality,
/// then lexicographic; returns the first subset T with
///   sum_{i<j in T} u_ij <= sum_{i in T} v_i - |T|   and
///   sum_{i<j} u_ij >= sum_{i<j in T} u_ij + sum_{i not in T} (m_i + v_i),
/// or nothing if no subset qualifies (which certifies the coefficient is 0).
inline std::optional<SubsetWitness> lemma22_witness(
    const std::vector<std::vector<long>>& u, std::span<const long> v,
    std::span<const long> m) {
  const int n = static_cast<int>(v.size());
  if (static_cast<int>(m.size()) != n || static_cast<int>(u.size()) != n)
    throw usage_error("lemma22_witness: dimension mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(u[static_cast<std::size_t>(i)].size()) != n)
      throw usage_error("lemma22_witness: u must be n x n");
    for (int j = 0; j < n; ++j) {
      const long uij = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (i != j && uij < 0) throw usage_error("lemma22_witness: u must be nonnegative");
      if (uij != u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw usage_error("lemma22_witness: u must be symmetric");
    }
  }
  if (n > 20) throw resource_error("lemma22_witness: subset enumeration too large", 20);

  long u_total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      u_total += u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  // Masks sorted by popcount then by lexicographic member list; for
  // ascending member lists the smaller bitmask is also lexicographically
  // first, so a stable sort by popcount suffices.
  std::vector<unsigned long> masks(1ul << n);
  for (unsigned long s = 0; s < masks.size(); ++s) masks[s] = s;
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned long x, unsigned long y) {
                     return __builtin_popcountl(x) < __builtin_popcountl(y);
                   });

  for (unsigned long mask : masks) {
    long u_in = 0, v_in = 0, rest = 0;
    int size = 0;
    for (int i = 0; i < n; ++i) {
      const bool in_i = mask & (1ul << i);
      if (in_i) {
        ++size;
        v_in += v[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
          if (mask & (1ul << j))
            u_in += u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      } else {
        rest += m[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
      }
    }
    const long slack1 = (v_in - size) - u_in;
    const long slack2 = u_total - (u_in + rest);
    if (slack1 >= 0 && slack2 >= 0) {
      SubsetWitness w;
      w.slack_first = slack1;
      w.slack_second = slack2;
      for (int i = 0; i < n; ++i)
        if (mask & (1ul << i)) w.T.push_back(i + 1);
      return w;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Root tables

/// Rows l = 0..n-1 with entries -(lk+1) .. -(lk+b).
inline RootTable morris_root_table(int n, long b, long k) {
  if (n < 1 || b < 0 || k < 0) throw usage_error("morris_root_table: bad parameters");
  RootTable t;
  for (int l = 0; l < n; ++l)
    for (long j = 1; j <= b; ++j)
      t.roots.push_back({-(k * l + j), l, static_cast<int>(j - 1),
                         k >= b ? RootStatus::guaranteed : RootStatus::missing});
  t.distinct = detail::all_distinct(t.roots);
  return t;
}

/// Rows l = 0..n-m-1 as Morris; rows l = n-m..n-1 shifted by one.
inline RootTable aomoto_root_table(int n, int m, long b, long k) {
  if (n < 1 || b < 0 || k < 0) throw usage_error("aomoto_root_table: bad parameters");
  if (m < 1 || m > n - 1)
    throw usage_error("aomoto_root_table: m out of proper range 1..n-1 (Morris otherwise)");
  RootTable t;
  for (int l = 0; l < n; ++l) {
    const long chi = l >= n - m ? 1 : 0;
    for (long j = 1; j <= b; ++j)
      t.roots.push_back({-(k * l + chi + j), l, static_cast<int>(j - 1),
                         k >= b ? RootStatus::guaranteed : RootStatus::missing});
  }
  t.distinct = detail::all_distinct(t.roots);
  return t;
}

/// First block rows t = 0..n0-1 as Morris; second block rows t = n0..n-1
/// with entries -(tk + (t-n0) + 1) .. -(tk + (t-n0) + b).
inline RootTable forrester_root_table(int n0, int n1, long b, long k) {
  if (n0 < 0 || n1 < 0 || n0 + n1 < 1 || b < 0 || k < 0)
    throw usage_error("forrester_root_table: bad parameters");
  RootTable t;
  const int n = n0 + n1;
  for (int row = 0; row < n; ++row) {
    const long off = row >= n0 ? row - n0 : 0;
    for (long j = 1; j <= b; ++j)
      t.roots.push_back({-(k * row + off + j), row, static_cast<int>(j - 1)});
  }
  t.distinct = detail::all_distinct(t.roots);
  return t;
}

// ---------------------------------------------------------------------------
// Forrester interval analysis

struct RationalInterval {
  Rat lo, hi;
  bool is_empty() const { return lo > hi; }
  bool contains(long h) const { return Rat(h) >= lo && Rat(h) <= hi; }
};

/// I(t, t1) from the vanishing lemma's proof:
///   [(t-1)k + b + 1 + t1(t1-1)/t,  tk + t1(n1-t1)/(n-t)]
/// with t1(t1-1)/t := -1 at t = 0 and t1(n1-t1)/(n-t) := n1 at t = n.
inline RationalInterval interval_I(int t, int t1, int n0, int n1, long b, long k) {
  const int n = n0 + n1;
  if (t < 0 || t > n) throw usage_error("interval_I: t out of range 0..n");
  if (t1 < std::max(0, t - n0) || t1 > std::min(n1, t))
    throw usage_error("interval_I: t1 out of range");
  RationalInterval iv;
  const Rat lo_frac = t == 0 ? Rat(-1) : Rat(static_cast<long>(t1) * (t1 - 1), t);
  const Rat hi_frac =
      t == n ? Rat(n1) : Rat(static_cast<long>(t1) * (n1 - t1), n - t);
  iv.lo = Rat(static_cast<long>(t - 1) * k + b + 1) + lo_frac;
  iv.hi = Rat(static_cast<long>(t) * k) + hi_frac;
  iv.lo.canonicalize();
  iv.hi.canonicalize();
  return iv;
}

/// C constants of the vanishing lemma's simplified ranges. Returns the
/// lower offset (C1 for t <= n0, C2 for t >= n0+1) and the upper extra
/// (0 for t <= n0, C3 otherwise). Integer division arguments are all
/// nonnegative, so / and the ceiling idiom match floor and ceiling.
struct ForresterCConstants {
  long lower = 0;
  long upper_extra = 0;
};

inline ForresterCConstants forrester_C_constants(int t, int n0, int n1) {
  const int n = n0 + n1;
  if (t < 0 || t > n - 1) throw usage_error("forrester_C_constants: t out of range 0..n-1");
  const long M = std::min<long>(n1, t);
  ForresterCConstants c;
  if (t <= n0) {
    if (n1 <= 2 * M)
      c.lower = static_cast<long>(n1) * n1 / (4 * (n - t));
    else
      c.lower = M * (n1 - M) / (n - t);
    c.upper_extra = 0;
  } else {
    const long tn0 = t - n0;
    if (n1 >= 2 * M)
      c.lower = M * (n1 - M) / (n - t);
    else if (n1 > 2 * tn0)
      c.lower = static_cast<long>(n1) * n1 / (4 * (n - t));
    else
      c.lower = tn0;
    c.upper_extra = ((tn0 + 1) * tn0 + t) / (t + 1);  // ceiling
  }
  return c;
}

/// The lemma's gap argument needs the endpoints of the I(t, .) cluster to
/// sit left of the endpoints of the I(t+1, .) cluster, for every pair of
/// admissible inner indices.
inline bool forrester_interval_ordering_holds(int n0, int n1, long b, long k) {
  const int n = n0 + n1;
  for (int t = 0; t < n; ++t)
    for (int r1 = std::max(0, t - n0); r1 <= std::min(n1, t); ++r1)
      for (int r2 = std::max(0, t + 1 - n0); r2 <= std::min(n1, t + 1); ++r2) {
        const RationalInterval a = interval_I(t, r1, n0, n1, b, k);
        const RationalInterval c = interval_I(t + 1, r2, n0, n1, b, k);
        if (a.lo > c.lo || a.hi > c.hi) return false;
      }
  return true;
}

/// Forrester root table with each entry marked guaranteed when the
/// vanishing lemma's ranges certify it: -a = h must fall in some range
/// [tk+C1+1, tk+b] (t <= n0) or [tk+C2+1, tk+b+C3] (t >= n0+1), and the
/// interval ordering the proof relies on must hold. Anything else is
/// conservatively marked missing.
inline RootTable forrester_guaranteed_roots(int n0, int n1, long b, long k) {
  RootTable t = forrester_root_table(n0, n1, b, k);
  const int n = n0 + n1;
  const bool ordered = forrester_interval_ordering_holds(n0, n1, b, k);
  for (RootEntry& r : t.roots) {
    const long h = -r.value;
    bool in_range = false;
    if (ordered) {
      for (int tt = 0; tt <= n - 1 && !in_range; ++tt) {
        const ForresterCConstants c = forrester_C_constants(tt, n0, n1);
        const long lo = k * tt + c.lower + 1;
        const long hi = k * tt + b + c.upper_extra;
        if (h >= lo && h <= hi) in_range = true;
      }
    }
    r.status = in_range ? RootStatus::guaranteed : RootStatus::missing;
  }
  return t;
}

/// Upper bound on the number of missing roots per the paper's table,
/// by column n1 (with the n-relative columns n-1, n-2, n-3 taking
/// precedence via max). No stated bound: nullopt.
inline std::optional<long> forrester_missing_bound(int n, int n1) {
  std::vector<long> candidates;
  if (n1 == n - 1) candidates.push_back(0);
  if (n1 == n - 2) candidates.push_back(n1 + n1 / 2 - 6);
  if (n1 == n - 3) candidates.push_back(2 * n1 + 2 * (n1 / 2) - 5);
  if (n1 == 2) candidates.push_back(0);
  if (n1 == 3) candidates.push_back(1);
  if (n1 == 4) candidates.push_back(4);
  if (n1 == 5) candidates.push_back(8);
  if (candidates.empty()) return std::nullopt;
  long best = candidates[0];
  for (long c : candidates) best = std::max(best, c);
  return std::max(best, 0L);
}

}  // namespace ctident

#endif  // CTIDENT_VANISHING_HPP
