#pragma once

// Quadratic fields through binary quadratic forms: class numbers from reduced
// forms (definite) and cycles of reduced forms (indefinite), fundamental-unit
// norms from the continued fraction of sqrt(d), Polya group orders, and the
// decision of whether the Hilbert class field is abelian over Q.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acft/arith.hpp"
#include "acft/certificate.hpp"
#include "acft/cyclo.hpp"

namespace acft {

enum class UnitNorm { minus_one, plus_one, not_applicable };

inline constexpr std::string_view to_string(UnitNorm n) {
  switch (n) {
    case UnitNorm::minus_one: return "-1";
    case UnitNorm::plus_one: return "+1";
    case UnitNorm::not_applicable: return "n/a";
  }
  return "?";
}

struct BinaryQuadraticForm {
  i64 a = 0, b = 0, c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }

  friend auto operator<=>(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

namespace detail {

inline void require_fundamental(i64 D, bool negative) {
  if (negative ? D >= 0 : D <= 0)
    throw Error(ErrorKind::NotFundamental,
                std::to_string(D) + (negative ? " is not negative" : " is not positive"));
  if (!is_fundamental_discriminant(D))
    throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
}

inline unsigned distinct_prime_count(i64 D) {
  return static_cast<unsigned>(factorize(static_cast<u64>(D < 0 ? -D : D)).factors.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Definite forms.

/// Reduced forms of negative discriminant D: |b| <= a <= c, b >= 0 whenever
/// |b| = a or a = c.
inline std::vector<BinaryQuadraticForm> reduced_forms_imaginary(i64 D) {
  std::vector<BinaryQuadraticForm> out;
  const i64 N = -D;
  for (i64 a = 1; 3 * a * a <= N; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;
      const i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

inline u64 class_number_imaginary(i64 D) {
  detail::require_fundamental(D, true);
  return reduced_forms_imaginary(D).size();
}

namespace detail {

inline const std::vector<u32>& smallest_prime_factors() {
  static const std::vector<u32> table = [] {
    constexpr u32 kLimit = 1u << 20;
    std::vector<u32> spf(kLimit, 0);
    for (u32 i = 2; i < kLimit; ++i) {
      if (spf[i]) continue;
      for (u64 j = i; j < kLimit; j += i)
        if (!spf[j]) spf[j] = i;
    }
    return spf;
  }();
  return table;
}

}  // namespace detail

/// Independent route: h = (1 / (2 - chi(2))) * sum_{0 < a < |D|/2} chi(a),
/// chi the Kronecker character of D. Valid for D < -4.
inline u64 class_number_dirichlet(i64 D) {
  detail::require_fundamental(D, true);
  if (D >= -4) throw Error(ErrorKind::InvalidArgument, "the character sum needs D < -4");
  const i64 N = -D;
  const i64 half = (N - 1) / 2;
  i64 sum = 0;
  const auto& spf = detail::smallest_prime_factors();
  if (half < static_cast<i64>(spf.size())) {
    // chi is completely multiplicative: evaluate at primes, propagate by spf.
    std::vector<signed char> chi(static_cast<std::size_t>(half) + 1, 0);
    if (half >= 1) chi[1] = 1;
    for (i64 a = 2; a <= half; ++a) {
      const u64 p = spf[static_cast<std::size_t>(a)];
      chi[a] = static_cast<u64>(a) == p ? static_cast<signed char>(kronecker_symbol(D, a))
                                        : static_cast<signed char>(chi[p] * chi[a / p]);
    }
    for (i64 a = 1; a <= half; ++a) sum += chi[a];
  } else {
    for (i64 a = 1; a <= half; ++a) sum += kronecker_symbol(D, a);
  }
  const i64 denom = 2 - kronecker_symbol(D, 2);
  if (sum % denom != 0 || sum <= 0)
    throw Error(ErrorKind::InternalMismatch, "character sum not a positive multiple");
  return static_cast<u64>(sum / denom);
}

// ---------------------------------------------------------------------------
// Indefinite forms.

struct PellData {
  UnitNorm unit_norm = UnitNorm::plus_one;
  u64 period = 0;
};

/// Norm of the fundamental unit of Q(sqrt d) from the period of the continued
/// fraction of sqrt d: odd period <=> norm -1.
inline PellData pell_unit(u64 d) {
  if (d < 2 || is_square(d)) throw Error(ErrorKind::InvalidArgument, "d must be a non-square > 1");
  const u64 a0 = isqrt(d);
  u64 m = 0, q = 1, a = a0, period = 0;
  do {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    ++period;
  } while (a != 2 * a0);
  return {period % 2 == 1 ? UnitNorm::minus_one : UnitNorm::plus_one, period};
}

/// Reduced indefinite forms: |sqrt D - 2|a|| < b < sqrt D.
inline std::vector<BinaryQuadraticForm> reduced_forms_real(i64 D) {
  std::vector<BinaryQuadraticForm> out;
  const i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
  for (i64 b = 1; b <= s; ++b) {
    if (((b - D) & 1) != 0) continue;
    const i64 N = (D - b * b) / 4;  // = -ac > 0
    for (u64 a : divisors(static_cast<u64>(N))) {
      const i64 ai = static_cast<i64>(a);
      if (2 * ai + b <= s) continue;   // need sqrt D < 2|a| + b
      if (2 * ai - b > s) continue;    // need 2|a| - b < sqrt D
      const i64 c = N / ai;
      out.push_back({ai, b, -c});
      out.push_back({-ai, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// One reduction step (a, b, c) -> (c, b', c') with b' = -b mod 2|c| and
// sqrt D - 2|c| < b' < sqrt D.
inline BinaryQuadraticForm rho(const BinaryQuadraticForm& f, i64 D, i64 s) {
  const i64 two_c = 2 * (f.c < 0 ? -f.c : f.c);
  const i64 r = ((s + f.b) % two_c + two_c) % two_c;
  const i64 b = s - r;
  return {f.c, b, (b * b - D) / (4 * f.c)};
}

}  // namespace detail

struct FormCycles {
  u64 cycles = 0;            // proper equivalence: narrow class number
  u64 negation_orbits = 0;   // cycles up to (a,b,c) ~ (-a,b,-c): wide class number
  bool principal_negative_same_cycle = false;  // (1,..) ~ (-1,..): unit norm -1
};

inline FormCycles form_cycles(i64 D) {
  const auto forms = reduced_forms_real(D);
  const i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
  std::map<BinaryQuadraticForm, std::size_t> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(forms[i], i);
  std::vector<i64> cycle_of(forms.size(), -1);
  FormCycles out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (cycle_of[i] >= 0) continue;
    const i64 id = static_cast<i64>(out.cycles++);
    BinaryQuadraticForm f = forms[i];
    std::size_t j = i;
    do {
      cycle_of[j] = id;
      f = detail::rho(f, D, s);
      auto it = index.find(f);
      if (it == index.end())
        throw Error(ErrorKind::InternalMismatch, "reduction step left the reduced set");
      j = it->second;
    } while (j != i);
  }
  std::vector<std::pair<i64, i64>> orbit_keys;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& f = forms[i];
    const i64 other = cycle_of[index.at({-f.a, f.b, -f.c})];
    orbit_keys.emplace_back(std::min(cycle_of[i], other), std::max(cycle_of[i], other));
    if (f.a == 1) {
      out.principal_negative_same_cycle = (other == cycle_of[i]);
    }
  }
  std::sort(orbit_keys.begin(), orbit_keys.end());
  orbit_keys.erase(std::unique(orbit_keys.begin(), orbit_keys.end()), orbit_keys.end());
  out.negation_orbits = orbit_keys.size();
  return out;
}

inline u64 narrow_class_number_real(i64 D) {
  detail::require_fundamental(D, false);
  return form_cycles(D).cycles;
}

// ---------------------------------------------------------------------------
// Field data.

struct QuadraticFieldData {
  i64 d = 0;
  i64 D = 0;
  unsigned r = 0;
  u64 h = 0;
  u64 h_narrow = 0;
  UnitNorm unit_norm = UnitNorm::not_applicable;
  u64 cf_period = 0;

  bool imaginary() const { return d < 0; }
  u64 conductor() const { return static_cast<u64>(D < 0 ? -D : D); }
};

inline QuadraticFieldData analyze_quadratic(i64 d) {
  QuadraticFieldData q;
  q.d = d;
  q.D = fundamental_discriminant(d);
  q.r = detail::distinct_prime_count(q.D);
  if (d < 0) {
    q.h = q.h_narrow = class_number_imaginary(q.D);
    return q;
  }
  const PellData pell = pell_unit(static_cast<u64>(d));
  q.unit_norm = pell.unit_norm;
  q.cf_period = pell.period;
  q.h_narrow = narrow_class_number_real(q.D);
  if (q.unit_norm == UnitNorm::plus_one) {
    if (q.h_narrow % 2 != 0)
      throw Error(ErrorKind::InternalMismatch,
                  "odd narrow class number with unit norm +1 at d=" + std::to_string(d));
    q.h = q.h_narrow / 2;
  } else {
    q.h = q.h_narrow;
  }
  return q;
}

/// Radicand of the field with fundamental discriminant D.
inline i64 radicand_of(i64 D) { return ((D % 4) + 4) % 4 == 0 ? D / 4 : D; }

inline bool has_prime_3_mod_4(i64 d) {
  for (u64 p : factorize(static_cast<u64>(d < 0 ? -d : d)).primes())
    if (p % 4 == 3) return true;
  return false;
}

/// |Po(K)|: 2^{r-1}, or 2^{r-2} for real K with unit norm +1. The r = 1 case
/// of the latter is clamped to 1 (see polya_order_clamped).
inline u64 polya_order_quadratic(const QuadraticFieldData& q) {
  if (q.r == 0) throw Error(ErrorKind::InvalidArgument, "quadratic field data not populated");
  if (!q.imaginary() && q.unit_norm == UnitNorm::plus_one)
    return q.r >= 2 ? u64{1} << (q.r - 2) : 1;
  return u64{1} << (q.r - 1);
}

inline bool polya_order_clamped(const QuadraticFieldData& q) {
  return !q.imaginary() && q.unit_norm == UnitNorm::plus_one && q.r < 2;
}

inline u64 odd_part(u64 n) { return n >> std::countr_zero(n); }

inline u64 smallest_odd_prime_factor(u64 n) {
  for (u64 p : factorize(n).primes())
    if (p != 2) return p;
  return 0;
}

/// Is H(K)/Q abelian for quadratic K? Imaginary: iff Po = Cl. Real with a
/// prime 3 mod 4 dividing d: iff Po = Cl. Real otherwise: iff Cl = Po when the
/// unit norm is -1, iff [Cl : Po] = 2 when it is +1.
inline Certificate hcf_abelian_quadratic(const QuadraticFieldData& q) {
  if (q.h == 0) throw Error(ErrorKind::InvalidArgument, "class number not populated");
  const u64 po = polya_order_quadratic(q);
  Certificate cert;
  u64 target = po;
  if (q.imaginary()) {
    cert.criterion = criterion::kPolyaImagQuadratic;
  } else if (has_prime_3_mod_4(q.d)) {
    if (q.unit_norm != UnitNorm::plus_one)
      throw Error(ErrorKind::InternalMismatch,
                  "unit norm -1 with a prime 3 mod 4 dividing d=" + std::to_string(q.d));
    cert.criterion = criterion::kRealQuad3Mod4;
  } else if (q.unit_norm == UnitNorm::minus_one) {
    cert.criterion = criterion::kRealQuadNormMinus;
  } else {
    cert.criterion = criterion::kRealQuadNormPlus;
    target = 2 * po;
  }
  cert.witness("d", q.d).witness("D", q.D).witness("r", q.r).witness("h", q.h);
  cert.witness("polya_order", po).witness("required_h", target);
  if (!q.imaginary()) cert.witness("unit_norm", std::string(to_string(q.unit_norm)));
  if (polya_order_clamped(q)) cert.assume("polya order 2^(r-2) < 1 clamped to 1");
  cert.verdict = q.h == target ? Verdict::abelian : Verdict::non_abelian;
  if (cert.verdict == Verdict::non_abelian) {
    if (u64 ell = smallest_odd_prime_factor(q.h)) cert.witness("odd_prime_divisor_of_h", ell);
  }
  return cert;
}

/// For abelian H(K): h must be 2^s with s <= d - 1, 2^d || phi(m).
inline Certificate c2_bound_check(const QuadraticFieldData& q, u64 m) {
  const Certificate hcf = hcf_abelian_quadratic(q);
  const unsigned two_adic = valuation(euler_phi(m), 2);
  Certificate cert(Verdict::inconclusive, criterion::kTwoPowerBound);
  cert.witness("h", q.h).witness("conductor", m).witness("two_adic_phi", two_adic);
  if (hcf.verdict != Verdict::abelian) {
    cert.witness("reason", "H(K) not abelian; bound not applicable");
    return cert;
  }
  const bool power_of_two = std::has_single_bit(q.h);
  const unsigned s = static_cast<unsigned>(std::countr_zero(q.h));
  if (!power_of_two || s + 1 > two_adic)
    throw Error(ErrorKind::ViolationFound,
                "h=" + std::to_string(q.h) + " breaks the 2-power bound for conductor " +
                    std::to_string(m));
  cert.verdict = Verdict::bound_holds;
  cert.witness("s", s);
  return cert;
}

// ---------------------------------------------------------------------------
// Real quadratic and cyclic quartic fields from primes p = b^2 + c^2.

/// (b, c) with b^2 + c^2 = p, b <= c, for a prime p = 1 mod 4 (Cornacchia).
inline std::pair<u64, u64> two_squares(u64 p) {
  if (p == 2) return {1, 1};
  if (p % 4 != 1 || !is_prime(p))
    throw Error(ErrorKind::BadP, std::to_string(p) + " is not a prime 1 mod 4");
  u64 x = 0;
  for (u64 z = 2;; ++z) {
    if (kronecker_symbol(static_cast<i64>(z), static_cast<i64>(p)) == -1) {
      x = detail::powmod(z, (p - 1) / 4, p);
      break;
    }
  }
  u64 a = p, b = x;
  const u64 root = isqrt(p);
  while (b > root) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  const u64 c2 = p - b * b;
  const u64 c = isqrt(c2);
  if (c * c != c2) throw Error(ErrorKind::InternalMismatch, "Cornacchia descent failed");
  return {std::min(b, c), std::max(b, c)};
}

struct QuarticFamilyCertificates {
  Certificate real_quadratic;  // Q(sqrt p)
  Certificate quartic;         // Q(sqrt(a(p + b sqrt p)))
};

/// For p = b^2 + c^2 prime with h(Q(sqrt p)) > 1 neither Q(sqrt p) nor the
/// cyclic quartic K_{a,p} has an abelian Hilbert class field.
inline QuarticFamilyCertificates ext2_certify(u64 p, i64 a) {
  if (!is_prime(p) || p % 4 != 1)
    throw Error(ErrorKind::BadP, std::to_string(p) + " is not a prime 1 mod 4");
  const u64 abs_a = static_cast<u64>(a < 0 ? -a : a);
  if (abs_a <= 1 || abs_a % 2 == 0 || !is_squarefree(abs_a) || std::gcd(abs_a, p) != 1)
    throw Error(ErrorKind::InvalidArgument,
                "a must be odd, squarefree, |a| > 1 and prime to p");
  const auto [b, c] = two_squares(p);
  const QuadraticFieldData q = analyze_quadratic(static_cast<i64>(p));
  QuarticFamilyCertificates out;
  for (Certificate* cert : {&out.real_quadratic, &out.quartic}) {
    cert->criterion = criterion::kQuarticFamily;
    cert->witness("p", p).witness("b", b).witness("c", c).witness("a", a).witness("h_Q_sqrt_p", q.h);
  }
  if (q.h <= 1) {
    out.real_quadratic.verdict = out.quartic.verdict = Verdict::hypotheses_not_met;
    return out;
  }
  const u64 ell = smallest_odd_prime_factor(q.h);
  if (ell == 0)
    throw Error(ErrorKind::InternalMismatch, "even class number for prime discriminant");
  out.real_quadratic.verdict = Verdict::non_abelian;
  out.real_quadratic.criterion = criterion::kOddPrimeDivisor;
  out.real_quadratic.witness("ell", ell).witness("degree", 2);
  out.quartic.verdict = Verdict::non_abelian;
  out.quartic.witness("ell", ell).witness("degree", 4);
  out.quartic.assume("ell | h(Q(sqrt p)) divides h(K_{a,p}) since K_{a,p}/Q(sqrt p) is quadratic");
  return out;
}

}  // namespace acft
