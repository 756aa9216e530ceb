// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "acft/cubic.hpp"
#include "acft/cyclo.hpp"
#include "acft/survey.hpp"
#include "acft/theorems.hpp"
#include "oracles.hpp"

using namespace acft;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok;
  std::string detail;
};

std::string survey_csv(unsigned workers) {
  SurveyConfig cfg;
  cfg.d_min = 3;
  cfg.d_max = 6000;
  cfg.workers = workers;
  std::ostringstream os;
  write_rows(os, run_survey(cfg), cfg.format);
  return os.str();
}

Outcome genus_survey() {
  const auto t0 = Clock::now();
  SurveyConfig cfg;
  cfg.d_max = 6000;
  const auto counts = verdict_counts(run_survey(cfg));
  const double s = seconds_since(t0);
  const u64 n = counts.count("abelian") ? counts.at("abelian") : 0;
  return {n == 65 && s < 60, std::to_string(n) + " abelian, " + std::to_string(s) + " s"};
}

Outcome q221() {
  const auto q = analyze_quadratic(221);
  const auto cert = hcf_abelian_quadratic(q);
  const auto bound = verify_main_bound(q.h, BigInt(q.D), 2);
  const bool ok = q.h == 2 && q.unit_norm == UnitNorm::plus_one && polya_order_quadratic(q) == 1 &&
                  cert.verdict == Verdict::abelian && cert.criterion == criterion::kRealQuadNormPlus &&
                  bound.verdict == Verdict::bound_holds;
  return {ok, "h=" + std::to_string(q.h) + " norm=" + std::string(to_string(q.unit_norm)) +
                  " verdict=" + std::string(to_string(cert.verdict)) + " via " + cert.criterion};
}

Outcome dirichlet_vs_forms() {
  const auto t0 = Clock::now();
  u64 checked = 0, bad = 0;
  for (i64 D = -100000; D < -4; ++D) {
    if (!is_fundamental_discriminant(D)) continue;
    ++checked;
    if (class_number_imaginary(D) != class_number_dirichlet(D)) ++bad;
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 300, std::to_string(checked) + " discriminants, " + std::to_string(bad) +
                                   " mismatches, " + std::to_string(s) + " s"};
}

Outcome conductor_discriminant() {
  u64 fields = 0, bad = 0;
  for (u64 m = 1; m <= 200; ++m) {
    if (m % 4 == 2) continue;
    const oracle::CharacterGroup chars(m);
    for (const auto& h : enumerate_subgroups(m)) {
      const auto K = AbelianFieldSpec::from_subgroup(m, h);
      const auto ref = oracle::field_from_characters(chars, K.subgroup());
      ++fields;
      const u64 f = conductor_by_search(K);
      std::map<u64, unsigned> got;
      for (const auto& [p, e] : discriminant(K).factors) got[p] = e;
      if (f != conductor_by_ramification(K) || f != ref.conductor || got != ref.discriminant) ++bad;
    }
  }
  return {bad == 0, std::to_string(fields) + " subfields, " + std::to_string(bad) + " mismatches"};
}

Outcome t_soundness() {
  u64 abelian = 0, bad = 0;
  for (auto mode : {SurveyMode::imaginary_quadratic, SurveyMode::real_quadratic}) {
    SurveyConfig cfg;
    cfg.mode = mode;
    cfg.d_max = 10000;
    cfg.workers = 4;
    for (const auto& row : run_survey(cfg)) {
      if (row.verdict != Verdict::abelian) continue;
      ++abelian;
      const u64 absD = static_cast<u64>(row.D < 0 ? -row.D : row.D);
      if (row.t % row.h != 0 || row.h * row.h >= absD) ++bad;
    }
  }
  return {bad == 0, std::to_string(abelian) + " abelian fields, " + std::to_string(bad) + " violations"};
}

Outcome cubic_table() {
  std::string why;
  for (i64 c : {-59, -29, 11, 23, 25, 59, 71, 83, 121})
    if (s3_family_check(c).verdict != Verdict::s3) why += " c=" + std::to_string(c);
  if (pht2_check(5).verdict != Verdict::applies) why += " pht2(5)";
  if (pht2_check(2).verdict != Verdict::applies) why += " pht2(2)";
  if (pht1_check(6, 5, 3, 3, FiniteAbelianGroup::cyclic(5)).verdict != Verdict::applies) why += " pht1";
  const auto c14 = pht2_check(14);
  const auto* w = c14.find("prime");
  const bool ok14 = c14.verdict == Verdict::does_not_apply && w && w->get<u64>() == 7;
  if (!ok14) why += " pht2(14)";
  return {why.empty(), why.empty() ? "h=14 rejected at prime 7" : "failed:" + why};
}

Outcome aut_orders() {
  u64 groups = 0, bad = 0;
  for (u64 m = 1; m <= 64; ++m)
    for (const auto& g : abelian_groups_of_order(m)) {
      ++groups;
      if (aut_order(g) != oracle::AutCounter(g.invariant_factors()).count()) ++bad;
    }
  const bool cor = cor37_check(9, 2).verdict == Verdict::excluded;
  return {bad == 0 && cor, std::to_string(groups) + " groups, " + std::to_string(bad) +
                               " mismatches, cor37(9,2)=" + (cor ? "excluded" : "not excluded")};
}

Outcome torsion() {
  const auto c = t_bound_ell(21, 3);
  const bool trivial = c.find("trivial_torsion")->get<bool>();
  u64 bad = 0;
  for (u64 h = 1; h <= 40; ++h)
    for (u64 n = 1; n <= 6; ++n) {
      const BigInt hn = big_pow(h, n);
      for (int delta = -3; delta <= 3; ++delta) {
        const BigInt D = hn + delta;
        if (D <= 0) continue;
        if ((verify_main_bound(h, D, n).verdict == Verdict::bound_holds) != (delta > 0)) ++bad;
      }
    }
  return {trivial && bad == 0, std::string("3-torsion ") + (trivial ? "trivial" : "not trivial") + ", " +
                                   std::to_string(bad) + " bad triples"};
}

Outcome determinism() {
  const std::string a = survey_csv(1), b = survey_csv(8);
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"one class per genus survey", genus_survey},
      {"Q(sqrt 221) regression", q221},
      {"class number oracle equivalence", dirichlet_vs_forms},
      {"conductor and discriminant cross-checks", conductor_discriminant},
      {"t-bound soundness sweep", t_soundness},
      {"cubic table", cubic_table},
      {"automorphism orders", aut_orders},
      {"l-torsion bound", torsion},
      {"survey determinism", determinism},
  };
  int failed = 0, i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::printf("[%s] %d. %s: %s\n", o.ok ? "PASS" : "FAIL", i, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
