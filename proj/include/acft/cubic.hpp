#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "acft/abgroup.hpp"
#include "acft/arith.hpp"
#include "acft/certificate.hpp"

namespace acft {

/// Monic cubic x^3 + a x^2 + b x + c.
struct CubicSpec {
  i64 a = 0, b = 0, c = 0;

  /// The family x^3 + c x + c.
  static CubicSpec family(i64 c) { return {0, c, c}; }

  BigInt eval(const BigInt& x) const { return ((x + a) * x + b) * x + c; }
};

inline BigInt cubic_discriminant(const CubicSpec& f) {
  const BigInt a = f.a, b = f.b, c = f.c;
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

inline bool is_square(const BigInt& n) {
  if (n < 0) return false;
  if (n <= std::numeric_limits<u64>::max()) return is_square(static_cast<u64>(n));
  const BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

/// True iff f has no root in Z/2.
inline bool irreducible_mod2(const CubicSpec& f) {
  const auto odd = [](i64 v) { return (v & 1) != 0; };
  // f(0) = c, f(1) = 1 + a + b + c
  return odd(f.c) && odd(1 + (f.a & 1) + (f.b & 1) + (f.c & 1));
}

/// An integer root of f if one exists (monic, so rational roots are integers
/// dividing c).
inline std::optional<i64> integer_root(const CubicSpec& f) {
  if (f.c == 0) return 0;
  const u64 abs_c = f.c < 0 ? static_cast<u64>(-(f.c + 1)) + 1 : static_cast<u64>(f.c);
  for (u64 d : divisors(abs_c)) {
    for (int sign : {1, -1}) {
      const BigInt x = BigInt(d) * sign;
      if (f.eval(x) == 0) return static_cast<i64>(x);
    }
  }
  return std::nullopt;
}

/// Galois group of a monic integer cubic: S3, A3, or reducible.
inline Certificate cubic_galois_check(const CubicSpec& f) {
  const BigInt D = cubic_discriminant(f);
  Certificate cert(Verdict::not_s3, criterion::kS3Family);
  cert.witness("a", f.a).witness("b", f.b).witness("c", f.c).witness("D_f", D.str());
  const bool mod2 = irreducible_mod2(f);
  cert.witness("irreducible_mod_2", mod2);
  if (!mod2) {
    if (auto root = integer_root(f)) {
      cert.witness("rational_root", *root);
      return cert;
    }
    cert.witness("rational_root", nullptr);
  }
  const bool sq = is_square(D);
  cert.witness("D_f_is_square", sq);
  cert.witness("galois_group", sq ? "A3" : "S3");
  if (!sq) cert.verdict = Verdict::s3;
  return cert;
}

inline Certificate s3_family_check(i64 c) {
  Certificate cert = cubic_galois_check(CubicSpec::family(c));
  const bool in_family = (c & 1) != 0 && ((c % 3) + 3) % 3 == 1;
  cert.witness("c_odd_and_1_mod_3", in_family);
  if (in_family && cert.verdict != Verdict::s3)
    throw Error(ErrorKind::InternalMismatch, "family member c=" + std::to_string(c) + " not S3");
  return cert;
}

/// S3 field with Cl(K) cyclic of order u: applies when u is squarefree with
/// every prime factor 2 mod 3.
inline Certificate pht2_check(u64 u) {
  if (u == 0) throw Error(ErrorKind::InvalidArgument, "u must be positive");
  Certificate cert(Verdict::applies, criterion::kResidueDegreeS3);
  cert.witness("u", u);
  cert.assume("assumed h=" + std::to_string(u));
  cert.assume("K/Q has Galois group S3 and Cl(K) cyclic");
  if (u == 1) return cert;
  for (const auto& [p, e] : factorize(u).factors) {
    if (e > 1) {
      cert.verdict = Verdict::does_not_apply;
      cert.witness("failed_condition", "u not squarefree").witness("prime", p);
      return cert;
    }
    if (p % 3 != 2) {
      cert.verdict = Verdict::does_not_apply;
      cert.witness("failed_condition", "prime divisor not 2 mod 3").witness("prime", p);
      return cert;
    }
  }
  return cert;
}

inline Certificate pht1_check(u64 n, u64 u, u64 f, u64 galois_max_order,
                              const FiniteAbelianGroup& cl) {
  if (n == 0 || u == 0 || f == 0 || galois_max_order == 0)
    throw Error(ErrorKind::InvalidArgument, "inputs must be positive");
  if (cl.order() != u)
    throw Error(ErrorKind::InvalidArgument,
                "class group order " + std::to_string(cl.order()) + " differs from u");
  Certificate cert(Verdict::applies, criterion::kResidueDegreeSplit);
  cert.witness("n", n).witness("u", u).witness("f", f);
  cert.witness("galois_max_order", galois_max_order).witness("class_group", cl.invariant_factors());
  cert.assume("assumed h=" + std::to_string(u));

  auto fail = [&](const char* why) {
    cert.verdict = Verdict::does_not_apply;
    cert.witness("failed_condition", why);
    return cert;
  };
  if (n % f != 0) return fail("f does not divide n");
  if (std::gcd(f, u) != 1) return fail("gcd(f, u) != 1");
  if (galois_max_order > f) return fail("Galois group has an element of order greater than f");
  const u64 aut = aut_order(cl);
  cert.witness("aut_order", aut);
  if (std::gcd(f, aut) != 1) return fail("gcd(f, |Aut(Cl)|) != 1");
  if (std::gcd(n, u) == 1) cert.assume("extension of G_K by Cl(K) splits since gcd(n, u) = 1");
  cert.assume("splitting acts trivially on the order-f element");
  return cert;
}

}  // namespace acft
