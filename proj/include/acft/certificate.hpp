#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace acft {

enum class ErrorKind {
  // input errors
  InvalidArgument,
  ParseError,
  InvalidSubgroup,
  NotDividing,
  NotCyclic,
  NotFundamental,
  NotSquarefree,
  ShapeNotRecognized,
  HypothesisFail,
  DegreeMismatch,
  TowerInconsistent,
  BadP,
  IoError,
  // bug traps: reaching one of these means an internal inconsistency
  InternalMismatch,
  NonIntegral,
  NonIntegralExponent,
  ViolationFound,
};

inline constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorKind::NotDividing: return "NotDividing";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::ShapeNotRecognized: return "ShapeNotRecognized";
    case ErrorKind::HypothesisFail: return "HypothesisFail";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::TowerInconsistent: return "TowerInconsistent";
    case ErrorKind::BadP: return "BadP";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorKind::ViolationFound: return "ViolationFound";
  }
  return "Unknown";
}

inline constexpr bool is_bug_trap(ErrorKind k) {
  return k == ErrorKind::InternalMismatch || k == ErrorKind::NonIntegral ||
         k == ErrorKind::NonIntegralExponent || k == ErrorKind::ViolationFound;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Verdict {
  abelian,
  non_abelian,
  bound_holds,
  bound_fails,
  excluded,
  applies,
  does_not_apply,
  s3,
  not_s3,
  hypotheses_not_met,
  inconclusive,
};

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::abelian: return "abelian";
    case Verdict::non_abelian: return "non_abelian";
    case Verdict::bound_holds: return "bound_holds";
    case Verdict::bound_fails: return "bound_fails";
    case Verdict::excluded: return "excluded";
    case Verdict::applies: return "applies";
    case Verdict::does_not_apply: return "does_not_apply";
    case Verdict::s3: return "s3";
    case Verdict::not_s3: return "not_s3";
    case Verdict::hypotheses_not_met: return "hypotheses_not_met";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

// Stable identifiers for the criterion a certificate relies on. These strings
// are part of the JSON/CSV output format; never rename one in place.
namespace criterion {
inline constexpr std::string_view kTBound = "t-bound";
inline constexpr std::string_view kTBoundEll = "t-bound-ell";
inline constexpr std::string_view kMainBound = "class-number-root-disc-bound";
inline constexpr std::string_view kElementOrder = "element-order-vs-degree";
inline constexpr std::string_view kOddPrimeDivisor = "prime-divisor-not-dividing-degree";
inline constexpr std::string_view kTrivialClassGroupCyclotomic = "cyclotomic-family-h1";
inline constexpr std::string_view kTrivialClassGroupCoprimeIndex = "coprime-index-h1";
inline constexpr std::string_view kTrivialClassGroupOddDegree = "odd-degree-2power-t-h1";
inline constexpr std::string_view kAutCoprime = "aut-coprime-excludes-h";
inline constexpr std::string_view kPolyaCyclic = "polya-equals-class-group-cyclic";
inline constexpr std::string_view kPolyaImagQuadratic = "polya-equals-class-group-imag-quadratic";
inline constexpr std::string_view kRealQuadNormMinus = "real-quadratic-no-3mod4-norm-minus";
inline constexpr std::string_view kRealQuadNormPlus = "real-quadratic-no-3mod4-norm-plus";
inline constexpr std::string_view kRealQuad3Mod4 = "real-quadratic-3mod4-prime";
inline constexpr std::string_view kTwoPowerBound = "quadratic-2power-class-number";
inline constexpr std::string_view kPrimeDegreeShape = "prime-degree-class-group-shape";
inline constexpr std::string_view kQuarticFamily = "real-quartic-family";
inline constexpr std::string_view kS3Family = "s3-cubic-family";
inline constexpr std::string_view kResidueDegreeSplit = "residue-degree-f-generates";
inline constexpr std::string_view kResidueDegreeS3 = "residue-degree-3-s3";
inline constexpr std::string_view kHilbertTowerBound = "hilbert-class-number-bound";
}  // namespace criterion

/// A machine-checkable verdict: what was concluded, from which criterion, and
/// the numbers that were compared to get there.
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::string criterion;
  std::vector<std::pair<std::string, nlohmann::json>> witnesses;
  std::vector<std::string> assumptions;

  Certificate() = default;
  Certificate(Verdict v, std::string_view crit) : verdict(v), criterion(crit) {}

  Certificate& witness(std::string name, nlohmann::json value) {
    witnesses.emplace_back(std::move(name), std::move(value));
    return *this;
  }

  Certificate& assume(std::string tag) {
    assumptions.push_back(std::move(tag));
    return *this;
  }

  const nlohmann::json* find(std::string_view name) const {
    for (const auto& [k, v] : witnesses)
      if (k == name) return &v;
    return nullptr;
  }

  bool well_formed() const {
    return verdict == Verdict::inconclusive || !witnesses.empty();
  }
};

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [k, v] : c.witnesses) w[k] = v;
  return {{"verdict", std::string(to_string(c.verdict))},
          {"criterion", c.criterion},
          {"witnesses", std::move(w)},
          {"assumptions", c.assumptions}};
}

}  // namespace acft
