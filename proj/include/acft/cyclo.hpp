#pragma once

// Abelian number fields as fixed fields K = Q(zeta_m)^H, H a subgroup of
// (Z/mZ)^*. Galois-theoretic data (degree, ramification, residue degrees,
// conductor, discriminant) is read off from H by counting residues.

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "acft/arith.hpp"
#include "acft/certificate.hpp"

namespace acft {

using Rational = boost::rational<i64>;

class AbelianFieldSpec {
 public:
  AbelianFieldSpec(u64 m, std::vector<u64> generators) : m_(m), gens_(std::move(generators)) {
    if (m_ == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    if (m_ % 4 == 2)
      throw Error(ErrorKind::InvalidArgument,
                  "modulus " + std::to_string(m_) + " is 2 mod 4; use m/2 instead");
    fact_ = factorize(m_);
    phi_ = euler_phi(fact_);
    for (u64& g : gens_) {
      g %= m_;
      if (std::gcd(g, m_) != 1 && m_ > 1)
        throw Error(ErrorKind::InvalidSubgroup,
                    std::to_string(g) + " is not a unit mod " + std::to_string(m_));
    }
    close();
  }

  /// From an explicit element list that is already known to be a subgroup.
  static AbelianFieldSpec from_subgroup(u64 m, const std::vector<u64>& elements) {
    return AbelianFieldSpec(m, elements);
  }

  u64 modulus() const { return m_; }
  const Factorization& modulus_factorization() const { return fact_; }
  const std::vector<u64>& generators() const { return gens_; }
  /// Sorted elements of H.
  const std::vector<u64>& subgroup() const { return elements_; }
  u64 subgroup_order() const { return elements_.size(); }
  u64 unit_group_order() const { return phi_; }

  bool contains(u64 a) const { return member_[a % m_]; }

  u64 degree() const { return phi_ / elements_.size(); }

  /// K is real exactly when complex conjugation (-1) fixes it.
  bool is_real() const { return m_ <= 2 || contains(m_ - 1); }

  /// Order of a in (Z/mZ)^* / H.
  u64 coset_order(u64 a) const {
    a %= m_;
    u64 x = a, k = 1;
    while (!contains(x)) {
      x = detail::mulmod(x, a, m_);
      ++k;
    }
    return k;
  }

  bool is_cyclic() const {
    const u64 n = degree();
    if (n == 1) return true;
    for (u64 a = 1; a < m_; ++a)
      if (std::gcd(a, m_) == 1 && coset_order(a) == n) return true;
    return false;
  }

  friend bool operator==(const AbelianFieldSpec& a, const AbelianFieldSpec& b) {
    return a.m_ == b.m_ && a.elements_ == b.elements_;
  }

 private:
  void close() {
    member_.assign(m_, false);
    const u64 one = 1 % m_;
    std::vector<u64> frontier{one};
    member_[one] = true;
    while (!frontier.empty()) {
      u64 x = frontier.back();
      frontier.pop_back();
      for (u64 g : gens_) {
        u64 y = detail::mulmod(x, g, m_);
        if (!member_[y]) {
          member_[y] = true;
          frontier.push_back(y);
        }
      }
    }
    elements_.clear();
    for (u64 a = 0; a < m_; ++a)
      if (member_[a]) elements_.push_back(a);
    if (phi_ % elements_.size() != 0)
      throw Error(ErrorKind::InternalMismatch, "subgroup order does not divide phi(m)");
  }

  u64 m_;
  std::vector<u64> gens_;
  Factorization fact_;
  u64 phi_ = 1;
  std::vector<u64> elements_;
  std::vector<bool> member_;
};

// ---------------------------------------------------------------------------
// Constructors for the usual families.

inline AbelianFieldSpec cyclotomic_field(u64 m) { return AbelianFieldSpec(m, {}); }

inline AbelianFieldSpec real_cyclotomic_field(u64 m) {
  return AbelianFieldSpec(m, {m > 1 ? m - 1 : 0});
}

inline i64 fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) throw Error(ErrorKind::InvalidArgument, "d must not be 0 or 1");
  u64 ad = static_cast<u64>(d < 0 ? -d : d);
  if (!is_squarefree(ad))
    throw Error(ErrorKind::NotSquarefree, std::to_string(d) + " is not squarefree");
  i64 r = ((d % 4) + 4) % 4;
  return r == 1 ? d : 4 * d;
}

inline bool is_fundamental_discriminant(i64 D) {
  if (D == 0 || D == 1) return false;
  i64 r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(static_cast<u64>(D < 0 ? -D : D));
  if (r != 0) return false;
  i64 q = D / 4;
  i64 rq = ((q % 4) + 4) % 4;
  return (rq == 2 || rq == 3) && is_squarefree(static_cast<u64>(q < 0 ? -q : q));
}

/// Q(sqrt d) as the kernel of the Kronecker character of its discriminant.
inline AbelianFieldSpec quadratic_field(i64 d) {
  const i64 D = fundamental_discriminant(d);
  const u64 m = static_cast<u64>(D < 0 ? -D : D);
  std::vector<u64> kernel;
  for (u64 a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1 && kronecker_symbol(D, static_cast<i64>(a)) == 1) kernel.push_back(a);
  return AbelianFieldSpec(m, kernel);
}

// ---------------------------------------------------------------------------
// Ramification.

namespace detail {

inline u64 prime_part(const Factorization& f, u64 p) { return ipow(p, f.exponent_of(p)); }

// |{h in H : h = 1 mod f}|
inline u64 count_kernel_in_subgroup(const AbelianFieldSpec& K, u64 f) {
  u64 c = 0;
  for (u64 h : K.subgroup())
    if (h % f == 1 % f) ++c;
  return c;
}

inline void require_divides(const AbelianFieldSpec& K, u64 p) {
  if (p < 2 || K.modulus() % p != 0)
    throw Error(ErrorKind::NotDividing,
                std::to_string(p) + " does not divide " + std::to_string(K.modulus()));
}

}  // namespace detail

/// e(p) = [I_p : I_p n H], I_p the units that are 1 modulo the prime-to-p part.
inline u64 ramification_index(const AbelianFieldSpec& K, u64 p) {
  detail::require_divides(K, p);
  const u64 pv = detail::prime_part(K.modulus_factorization(), p);
  const u64 rest = K.modulus() / pv;
  return euler_phi(pv) / detail::count_kernel_in_subgroup(K, rest);
}

/// Order of Frobenius at p in Gal(K/Q)/I_p; also valid for ramified p.
inline u64 residue_degree(const AbelianFieldSpec& K, u64 p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  const u64 pv = K.modulus() % p == 0 ? detail::prime_part(K.modulus_factorization(), p) : 1;
  const u64 rest = K.modulus() / pv;
  if (rest == 1) return 1;
  // Frobenius is p modulo the prime-to-p part, up to the image of H there.
  std::vector<bool> image(rest, false);
  for (u64 h : K.subgroup()) image[h % rest] = true;
  u64 x = p % rest, k = 1;
  while (!image[x]) {
    x = detail::mulmod(x, p, rest);
    ++k;
  }
  return k;
}

/// Ramification index of 2 in K(sqrt(-1)); requires 4 | m.
inline u64 ramification_index_2_adjoin_i(const AbelianFieldSpec& K) {
  const u64 m = K.modulus();
  if (m % 4 != 0) throw Error(ErrorKind::NotDividing, "4 does not divide the modulus");
  const u64 pv = detail::prime_part(K.modulus_factorization(), 2);
  const u64 rest = m / pv;
  u64 c = 0;
  for (u64 h : K.subgroup())
    if (h % 4 == 1 && h % rest == 1 % rest) ++c;
  return euler_phi(pv) / c;
}

struct PrimeRamification {
  u64 prime = 0;
  u64 e = 1;
  u64 f = 1;
  unsigned conductor_exponent = 0;
};

// ---------------------------------------------------------------------------
// Conductor.

/// Smallest f | m with ker((Z/m)^* -> (Z/f)^*) inside H.
inline u64 conductor_by_search(const AbelianFieldSpec& K) {
  const u64 m = K.modulus();
  for (u64 f : divisors(K.modulus_factorization())) {
    if (K.unit_group_order() / euler_phi(f) == detail::count_kernel_in_subgroup(K, f)) return f;
  }
  return m;
}

/// p-exponent of the conductor from ramification data alone: odd p carries
/// 1 + v_p(e(p)); for p = 2 it is v_2(e(2)) + 1 when adjoining sqrt(-1)
/// leaves e(2) unchanged and v_2(e(2)) + 2 otherwise.
inline unsigned conductor_exponent_from_ramification(const AbelianFieldSpec& K, u64 p) {
  const u64 e = ramification_index(K, p);
  if (e == 1) return 0;
  if (p != 2) return 1 + valuation(e, p);
  const u64 e_i = ramification_index_2_adjoin_i(K);
  return valuation(e, 2) + (e_i == e ? 1 : 2);
}

inline u64 conductor_by_ramification(const AbelianFieldSpec& K) {
  u64 f = 1;
  for (const auto& [p, v] : K.modulus_factorization().factors) {
    (void)v;
    f *= ipow(p, conductor_exponent_from_ramification(K, p));
  }
  return f;
}

inline u64 conductor(const AbelianFieldSpec& K) {
  const u64 a = conductor_by_search(K);
  const u64 b = conductor_by_ramification(K);
  if (a != b)
    throw Error(ErrorKind::InternalMismatch, "conductor: search gives " + std::to_string(a) +
                                                 ", ramification formula gives " +
                                                 std::to_string(b));
  return a;
}

/// The same field presented at modulus f | m (f must contain the conductor).
inline AbelianFieldSpec restrict_modulus(const AbelianFieldSpec& K, u64 f) {
  if (K.modulus() % f != 0) throw Error(ErrorKind::NotDividing, "restriction modulus must divide m");
  std::set<u64> image;
  for (u64 h : K.subgroup()) image.insert(h % f);
  AbelianFieldSpec out(f, std::vector<u64>(image.begin(), image.end()));
  if (out.degree() != K.degree())
    throw Error(ErrorKind::InvalidArgument,
                "modulus " + std::to_string(f) + " does not contain the conductor");
  return out;
}

inline AbelianFieldSpec at_conductor(const AbelianFieldSpec& K) {
  return restrict_modulus(K, conductor(K));
}

inline std::vector<PrimeRamification> ramification_profile(const AbelianFieldSpec& K) {
  std::vector<PrimeRamification> out;
  for (const auto& [p, v] : K.modulus_factorization().factors) {
    (void)v;
    out.push_back({p, ramification_index(K, p), residue_degree(K, p),
                   conductor_exponent_from_ramification(K, p)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discriminant.

/// |D_K| carried in factored form; value() expands it.
struct Discriminant {
  std::vector<PrimePower> factors;

  BigInt value() const {
    BigInt v = 1;
    for (const auto& [p, e] : factors) v *= big_pow(p, e);
    return v;
  }

  unsigned exponent_of(u64 p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }

  friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

/// lambda for the prime p | conductor with exponent v and ramification e:
///   (p^{v-g} - 1 + (p-1)/u) / (p^{v-g} (p-1)),  u = e / p^{v-1},  g = gcd(p, 2).
inline Rational discriminant_lambda(u64 p, unsigned v, u64 e) {
  const i64 g = p == 2 ? 2 : 1;
  const Rational u(static_cast<i64>(e), static_cast<i64>(ipow(p, v - 1)));
  const i64 a = static_cast<i64>(ipow(p, v - static_cast<unsigned>(g)));
  const i64 pm1 = static_cast<i64>(p) - 1;
  return (Rational(a - 1) + Rational(pm1) / u) / Rational(a * pm1);
}

inline Discriminant discriminant(const AbelianFieldSpec& field) {
  const AbelianFieldSpec K = at_conductor(field);
  const i64 n = static_cast<i64>(K.degree());
  Discriminant d;
  for (const auto& [p, v] : K.modulus_factorization().factors) {
    const Rational lambda = discriminant_lambda(p, v, ramification_index(K, p));
    const Rational exp = (Rational(v) - lambda) * Rational(n);
    if (exp.denominator() != 1 || exp.numerator() < 0)
      throw Error(ErrorKind::NonIntegralExponent,
                  "exponent of " + std::to_string(p) + " in D_K is " +
                      std::to_string(exp.numerator()) + "/" + std::to_string(exp.denominator()));
    if (exp.numerator() > 0) d.factors.push_back({p, static_cast<unsigned>(exp.numerator())});
  }
  return d;
}

// ---------------------------------------------------------------------------
// Genus degree.

inline u64 ramification_product(const AbelianFieldSpec& K) {
  u64 prod = 1;
  for (const auto& [p, v] : K.modulus_factorization().factors) {
    (void)v;
    prod *= ramification_index(K, p);
  }
  return prod;
}

/// [K* : K] for cyclic K, K* the narrow genus field.
inline u64 genus_degree_cyclic(const AbelianFieldSpec& K) {
  if (!K.is_cyclic()) throw Error(ErrorKind::NotCyclic, "Galois group is not cyclic");
  const u64 prod = ramification_product(K);
  if (prod % K.degree() != 0)
    throw Error(ErrorKind::NonIntegral, "product of ramification indices " + std::to_string(prod) +
                                            " not divisible by degree " +
                                            std::to_string(K.degree()));
  return prod / K.degree();
}

inline std::vector<u64> ramified_primes(const AbelianFieldSpec& K) {
  std::vector<u64> out;
  for (const auto& [p, v] : K.modulus_factorization().factors) {
    (void)v;
    if (ramification_index(K, p) > 1) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup lattice of (Z/mZ)^*.

/// Every subgroup of (Z/mZ)^*, each as its sorted element list. Intended for
/// small m (the count grows quickly with the 2-rank).
inline std::vector<std::vector<u64>> enumerate_subgroups(u64 m) {
  std::vector<u64> units;
  for (u64 a = 0; a < m; ++a)
    if (std::gcd(a, m) == 1 || m == 1) units.push_back(a % m);
  auto close = [m](std::vector<u64> gens) {
    std::vector<bool> in(m, false);
    std::vector<u64> frontier{1 % m};
    in[1 % m] = true;
    while (!frontier.empty()) {
      u64 x = frontier.back();
      frontier.pop_back();
      for (u64 g : gens) {
        u64 y = detail::mulmod(x, g, m);
        if (!in[y]) {
          in[y] = true;
          frontier.push_back(y);
        }
      }
    }
    std::vector<u64> out;
    for (u64 a = 0; a < m; ++a)
      if (in[a]) out.push_back(a);
    return out;
  };
  std::set<std::vector<u64>> seen;
  std::vector<std::vector<u64>> queue{close({})};
  seen.insert(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto h = queue[i];
    for (u64 g : units) {
      if (std::binary_search(h.begin(), h.end(), g)) continue;
      auto gens = h;
      gens.push_back(g);
      auto next = close(gens);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Text form shared with the CLI:
//   m=<int>;gens=<int>,<int>,...   quad:d=<int>   cyclotomic:m=<int>
//   real-cyclotomic:m=<int>

enum class FieldShape { generic, quadratic, cyclotomic, real_cyclotomic };

struct ParsedField {
  AbelianFieldSpec field;
  FieldShape shape = FieldShape::generic;
  std::optional<i64> quadratic_d;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline i64 parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::ParseError, "bad integer for " + std::string(what) + ": '" +
                                           std::string(s) + "'");
  return v;
}

inline u64 parse_positive(std::string_view s, std::string_view what) {
  i64 v = parse_int(s, what);
  if (v <= 0) throw Error(ErrorKind::ParseError, std::string(what) + " must be positive");
  return static_cast<u64>(v);
}

inline std::string_view expect_key(std::string_view s, std::string_view key) {
  s = trim(s);
  if (s.substr(0, key.size()) != key || s.size() <= key.size() || s[key.size()] != '=')
    throw Error(ErrorKind::ParseError, "expected '" + std::string(key) + "=' in '" +
                                           std::string(s) + "'");
  return s.substr(key.size() + 1);
}

}  // namespace detail

inline ParsedField parse_field(std::string_view text) {
  using namespace detail;
  text = trim(text);
  if (text.starts_with("quad:")) {
    i64 d = parse_int(expect_key(text.substr(5), "d"), "d");
    return {quadratic_field(d), FieldShape::quadratic, d};
  }
  if (text.starts_with("cyclotomic:")) {
    u64 m = parse_positive(expect_key(text.substr(11), "m"), "m");
    return {cyclotomic_field(m), FieldShape::cyclotomic, std::nullopt};
  }
  if (text.starts_with("real-cyclotomic:")) {
    u64 m = parse_positive(expect_key(text.substr(16), "m"), "m");
    return {real_cyclotomic_field(m), FieldShape::real_cyclotomic, std::nullopt};
  }
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "expected 'm=<int>;gens=<list>' got '" +
                                           std::string(text) + "'");
  u64 m = parse_positive(expect_key(text.substr(0, semi), "m"), "m");
  std::string_view list = expect_key(text.substr(semi + 1), "gens");
  std::vector<u64> gens;
  while (!trim(list).empty()) {
    auto comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    i64 g = parse_int(item, "generator");
    gens.push_back(static_cast<u64>(((g % static_cast<i64>(m)) + static_cast<i64>(m)) %
                                    static_cast<i64>(m)));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return {AbelianFieldSpec(m, gens), FieldShape::generic, std::nullopt};
}

}  // namespace acft
