#pragma once

// Exact 64-bit integer arithmetic: factorization, totient, Kronecker symbol,
// valuations and friends. Everything in this header is pure and allocation
// light; nothing here uses floating point.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace acft {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Discriminants of large abelian fields overflow 64 bits; values that can
// grow without bound are carried as arbitrary precision integers.
using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization, primes ascending.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  bool empty() const { return factors.empty(); }

  std::vector<u64> primes() const {
    std::vector<u64> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
  }

  unsigned exponent_of(u64 p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }

  u64 expand() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline constexpr u64 kTrialBound = 1'000'000;

// Primes below kTrialBound, built once on first use.
inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<u64> out;
    out.reserve(80'000);
    for (u64 i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Strong probable-prime test to base a; n odd and > 2.
inline bool sprp(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline u64 gcd_u(u64 a, u64 b) { return std::gcd(a, b); }

// Brent's variant of Pollard rho. n is odd, composite and not a prime power
// of a small prime.
inline u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void merge_into(std::vector<PrimePower>& out, u64 p, unsigned e) {
  for (auto& f : out) {
    if (f.prime == p) {
      f.exponent += e;
      return;
    }
  }
  out.push_back({p, e});
}

}  // namespace detail

/// Deterministic for all 64-bit inputs (Miller-Rabin with the first twelve
/// prime bases).
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  for (u64 a : kBases)
    if (!detail::sprp(n, a)) return false;
  return true;
}

inline Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  result.value = n;
  u64 rest = n;
  for (u64 p : detail::small_primes()) {
    if (p * p > rest) break;
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest == 1) return result;
  const u64 bound = detail::kTrialBound;
  if (rest <= bound * bound || is_prime(rest)) {
    result.factors.push_back({rest, 1});
    return result;
  }
  // rest has no prime factor below the trial bound and is composite.
  std::vector<u64> stack{rest};
  std::vector<PrimePower> large;
  while (!stack.empty()) {
    u64 v = stack.back();
    stack.pop_back();
    if (is_prime(v)) {
      detail::merge_into(large, v, 1);
      continue;
    }
    u64 d = detail::pollard_rho(v);
    stack.push_back(d);
    stack.push_back(v / d);
  }
  std::sort(large.begin(), large.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  result.factors.insert(result.factors.end(), large.begin(), large.end());
  return result;
}

inline u64 Factorization::expand() const {
  u64 v = 1;
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.exponent; ++i) v *= f.prime;
  return v;
}

inline u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  while (exp--) r *= base;
  return r;
}

/// Largest e with p^e | n; n must be nonzero.
inline unsigned valuation(u64 n, u64 p) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& [p, e] : f.factors) phi *= ipow(p, e - 1) * (p - 1);
  return phi;
}

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

inline u64 lcm_u(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

inline bool is_squarefree(u64 n) {
  for (const auto& f : factorize(n).factors)
    if (f.exponent > 1) return false;
  return true;
}

/// floor(sqrt(n)), exact.
inline u64 isqrt(u64 n) {
  if (n < 2) return n;
  // Newton from above: start at a power of two >= sqrt(n).
  u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
  while (true) {
    u64 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

inline bool is_square(u64 n) {
  u64 r = isqrt(n);
  return r * r == n;
}

/// Kronecker symbol (a/n) for arbitrary signed arguments.
inline int kronecker_symbol(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // n is now positive; strip factors of two with (a/2).
  u64 nn = static_cast<u64>(n);
  int twos = std::countr_zero(nn);
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    nn >>= twos;
    i64 a8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/nn) with nn odd and positive.
  u64 aa = static_cast<u64>(((a % static_cast<i64>(nn)) + static_cast<i64>(nn)) %
                            static_cast<i64>(nn));
  while (aa != 0) {
    int tz = std::countr_zero(aa);
    aa >>= tz;
    if ((tz & 1) && (nn % 8 == 3 || nn % 8 == 5)) result = -result;
    std::swap(aa, nn);
    if (aa % 4 == 3 && nn % 4 == 3) result = -result;
    aa %= nn;
  }
  return nn == 1 ? result : 0;
}

/// Solve x = r_i mod m_i for pairwise coprime moduli; returns x mod prod m_i.
inline u64 crt(const std::vector<std::pair<u64, u64>>& residues) {
  u64 x = 0, mod = 1;
  for (const auto& [r, m] : residues) {
    // x + mod * k = r (mod m)
    u64 inv = 0;
    {
      i64 g0 = static_cast<i64>(m), g1 = static_cast<i64>(mod % m);
      i64 s0 = 0, s1 = 1;
      while (g1 != 0) {
        i64 q = g0 / g1;
        std::tie(g0, g1) = std::pair{g1, g0 - q * g1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
      }
      if (g0 != 1) throw std::invalid_argument("crt: moduli not coprime");
      inv = static_cast<u64>(((s0 % static_cast<i64>(m)) + static_cast<i64>(m)) %
                             static_cast<i64>(m));
    }
    u64 diff = (r % m + m - x % m) % m;
    u64 k = detail::mulmod(diff, inv, m);
    x += mod * k;
    mod *= m;
  }
  return x % mod;
}

inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t n = out.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

inline BigInt big_pow(u64 base, u64 exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

}  // namespace acft
