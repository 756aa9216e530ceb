#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "acft/arith.hpp"
#include "acft/certificate.hpp"

namespace acft {

/// Finite abelian group in invariant-factor form n_1 | n_2 | ... | n_t, every
/// n_i >= 2. The empty list is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  /// Any list of cyclic orders (primary decomposition, unsorted factors, ones)
  /// is accepted and normalized.
  explicit FiniteAbelianGroup(const std::vector<u64>& cyclic_orders) {
    std::map<u64, std::vector<unsigned>> by_prime;
    for (u64 n : cyclic_orders) {
      if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic factor of order 0");
      for (const auto& [p, e] : factorize(n).factors) by_prime[p].push_back(e);
    }
    std::size_t len = 0;
    for (auto& [p, exps] : by_prime) {
      std::sort(exps.begin(), exps.end(), std::greater<>());
      len = std::max(len, exps.size());
    }
    // invariant factor i (from the top) collects the i-th largest prime power
    std::vector<u64> top(len, 1);
    for (const auto& [p, exps] : by_prime)
      for (std::size_t i = 0; i < exps.size(); ++i) top[i] *= ipow(p, exps[i]);
    factors_.assign(top.rbegin(), top.rend());
  }

  static FiniteAbelianGroup cyclic(u64 n) { return FiniteAbelianGroup({n}); }

  static FiniteAbelianGroup elementary(u64 q, unsigned rank) {
    return FiniteAbelianGroup(std::vector<u64>(rank, q));
  }

  const std::vector<u64>& invariant_factors() const { return factors_; }
  bool trivial() const { return factors_.empty(); }
  std::size_t rank() const { return factors_.size(); }

  u64 order() const {
    u64 o = 1;
    for (u64 n : factors_) o *= n;
    return o;
  }

  /// Maximal element order.
  u64 exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  /// Every element order occurring in the group, ascending (the divisors of
  /// the exponent).
  std::vector<u64> element_orders() const { return divisors(exponent()); }

  /// Partition of exponents (descending) of the p-primary component.
  std::vector<unsigned> primary_partition(u64 p) const {
    std::vector<unsigned> out;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      unsigned e = valuation(*it, p);
      if (e) out.push_back(e);
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(factors_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<u64> factors_;
};

inline u64 exponent(const FiniteAbelianGroup& g) { return g.exponent(); }

namespace detail {

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::InvalidArgument, "automorphism group order exceeds 64 bits");
  return r;
}

// Order of Aut of the abelian p-group with exponent partition `e`
// (Hillar and Rhea):
//   prod_k (p^{d_k} - p^{k-1}) * prod_j (p^{e_j})^{n-d_j} * prod_i (p^{e_i-1})^{n-c_i+1}
// with e ascending, d_k = max{l : e_l = e_k}, c_k = min{l : e_l = e_k}.
inline u64 aut_order_p_group(u64 p, std::vector<unsigned> e) {
  std::sort(e.begin(), e.end());
  const std::size_t n = e.size();
  std::vector<std::size_t> d(n), c(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t hi = k, lo = k;
    while (hi + 1 < n && e[hi + 1] == e[k]) ++hi;
    while (lo > 0 && e[lo - 1] == e[k]) --lo;
    d[k] = hi + 1;  // 1-based
    c[k] = lo + 1;
  }
  auto pw = [p](u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) r = checked_mul(r, p);
    return r;
  };
  u64 result = 1;
  for (std::size_t k = 0; k < n; ++k) result = checked_mul(result, pw(d[k]) - pw(k));
  for (std::size_t j = 0; j < n; ++j) result = checked_mul(result, pw(u64{e[j]} * (n - d[j])));
  for (std::size_t i = 0; i < n; ++i)
    result = checked_mul(result, pw(u64{e[i] - 1} * (n - c[i] + 1)));
  return result;
}

// Integer partitions of n, each descending, emitted largest-first.
inline void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur,
                       std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline u64 aut_order(const FiniteAbelianGroup& g) {
  u64 result = 1;
  for (const auto& [p, e] : factorize(g.order()).factors) {
    (void)e;
    result = detail::checked_mul(result, detail::aut_order_p_group(p, g.primary_partition(p)));
  }
  return result;
}

inline std::vector<std::vector<unsigned>> integer_partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  detail::partitions(n, n, cur, out);
  return out;
}

/// All abelian groups of order m up to isomorphism, cyclic group first.
inline std::vector<FiniteAbelianGroup> abelian_groups_of_order(u64 m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "group order must be positive");
  std::vector<std::vector<u64>> acc{{}};
  for (const auto& [p, e] : factorize(m).factors) {
    std::vector<std::vector<u64>> next;
    for (const auto& prefix : acc) {
      for (const auto& part : integer_partitions(e)) {
        auto v = prefix;
        for (unsigned k : part) v.push_back(ipow(p, k));
        next.push_back(std::move(v));
      }
    }
    acc = std::move(next);
  }
  std::vector<FiniteAbelianGroup> out;
  out.reserve(acc.size());
  for (const auto& v : acc) out.emplace_back(v);
  return out;
}

/// Order of (g1, g2) in a semidirect product where g2 acts trivially.
inline u64 semidirect_order(u64 n1, u64 n2) {
  if (n1 == 0 || n2 == 0) throw Error(ErrorKind::InvalidArgument, "element orders must be positive");
  return lcm_u(n1, n2);
}

/// For a cyclic field of degree n: excludes h_K = m when m has a prime factor
/// not dividing n and n is coprime to |Aut(G)| for every abelian G of order m.
inline Certificate cor37_check(u64 n, u64 m) {
  if (n <= 1 || m <= 1) throw Error(ErrorKind::InvalidArgument, "need n > 1 and m > 1");
  Certificate cert(Verdict::inconclusive, criterion::kAutCoprime);
  cert.witness("n", n).witness("m", m);

  u64 free_prime = 0;
  for (u64 p : factorize(m).primes()) {
    if (n % p != 0) {
      free_prime = p;
      break;
    }
  }
  if (free_prime == 0) {
    cert.witness("failed_condition", "every prime factor of m divides n");
    return cert;
  }
  cert.witness("prime_not_dividing_n", free_prime);

  nlohmann::json checked = nlohmann::json::array();
  bool all_coprime = true;
  for (const auto& g : abelian_groups_of_order(m)) {
    u64 a = aut_order(g);
    checked.push_back({{"group", g.invariant_factors()}, {"aut_order", a}});
    if (std::gcd(n, a) != 1) all_coprime = false;
  }
  cert.witness("groups", checked);
  if (!all_coprime) {
    cert.witness("failed_condition", "gcd(n, |Aut(G)|) > 1 for some G");
    return cert;
  }
  cert.verdict = Verdict::excluded;
  cert.assume("K/Q cyclic of degree n");
  return cert;
}

}  // namespace acft
