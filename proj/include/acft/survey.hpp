#pragma once

// Range sweeps over quadratic fields. Work is split into contiguous blocks of
// kBlockSize keys; workers claim blocks from an atomic counter and the writer
// emits blocks in index order, so output never depends on the worker count.

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "acft/certificate.hpp"
#include "acft/quadratic.hpp"
#include "acft/theorems.hpp"

namespace acft {

enum class SurveyMode { imaginary_quadratic, real_quadratic };
enum class SurveyFormat { csv, jsonl };
/// What d_min..d_max bound: |D| (default) or the squarefree radicand |d|.
enum class RangeKind { discriminant, radicand };

struct SurveyConfig {
  SurveyMode mode = SurveyMode::imaginary_quadratic;
  RangeKind range = RangeKind::discriminant;
  u64 d_min = 3;
  u64 d_max = 6000;
  unsigned workers = 1;
  std::string output_path;
  SurveyFormat format = SurveyFormat::csv;

  void validate() const {
    if (d_min > d_max) throw Error(ErrorKind::InvalidArgument, "d_min > d_max");
    if (workers == 0) throw Error(ErrorKind::InvalidArgument, "workers must be positive");
    if (d_max > (u64{1} << 40)) throw Error(ErrorKind::InvalidArgument, "d_max too large");
  }
};

struct SurveyRow {
  i64 d = 0;
  i64 D = 0;
  unsigned r = 0;
  u64 h = 0;
  u64 h_narrow = 0;
  UnitNorm unit_norm = UnitNorm::not_applicable;
  u64 polya_order = 0;
  Verdict verdict = Verdict::inconclusive;
  std::string theorem_used;
  u64 t = 0;
  bool main_bound_ok = false;
};

inline constexpr u64 kBlockSize = 1024;
inline constexpr const char* kCsvVersionLine = "#abelian-cft v1";
inline constexpr const char* kCsvHeader =
    "d,D,r,h,h_narrow,unit_norm,polya_order,verdict,theorem_used,t,main_bound_ok";

/// Field for key k under the config, or 0 when k does not name a field.
inline i64 survey_radicand(const SurveyConfig& cfg, u64 k) {
  const bool neg = cfg.mode == SurveyMode::imaginary_quadratic;
  const i64 sk = static_cast<i64>(k);
  if (cfg.range == RangeKind::discriminant) {
    const i64 D = neg ? -sk : sk;
    if (k < 3 || !is_fundamental_discriminant(D)) return 0;
    return radicand_of(D);
  }
  if (k < 1 || (!neg && k == 1) || !is_squarefree(k)) return 0;
  return neg ? -sk : sk;
}

inline SurveyRow survey_row(i64 d) {
  const QuadraticFieldData q = analyze_quadratic(d);
  SurveyRow row;
  row.d = q.d;
  row.D = q.D;
  row.r = q.r;
  row.h = q.h;
  row.h_narrow = q.h_narrow;
  row.unit_norm = q.unit_norm;
  row.polya_order = polya_order_quadratic(q);
  const Certificate cert = hcf_abelian_quadratic(q);
  row.verdict = cert.verdict;
  row.theorem_used = cert.criterion;
  row.t = t_bound(q.conductor()).t;
  row.main_bound_ok = verify_main_bound(q.h, BigInt(q.conductor()), 2).verdict == Verdict::bound_holds;

  if (row.verdict == Verdict::abelian) {
    if (!row.main_bound_ok)
      throw Error(ErrorKind::ViolationFound, "h^2 >= |D| for abelian d=" + std::to_string(d));
    if (row.t % row.h != 0)
      throw Error(ErrorKind::ViolationFound, "h does not divide t for abelian d=" + std::to_string(d));
    if (odd_part(row.h) != 1)
      throw Error(ErrorKind::ViolationFound, "odd prime divides h for abelian d=" + std::to_string(d));
  }
  return row;
}

inline std::vector<SurveyRow> survey_block(const SurveyConfig& cfg, u64 block) {
  std::vector<SurveyRow> rows;
  const u64 lo = std::max(cfg.d_min, block * kBlockSize);
  const u64 hi = std::min(cfg.d_max, (block + 1) * kBlockSize - 1);
  for (u64 k = lo; k <= hi; ++k)
    if (i64 d = survey_radicand(cfg, k)) rows.push_back(survey_row(d));
  return rows;
}

inline std::vector<SurveyRow> run_survey(const SurveyConfig& cfg) {
  cfg.validate();
  const u64 first = cfg.d_min / kBlockSize;
  const u64 count = cfg.d_max / kBlockSize - first + 1;
  std::vector<std::vector<SurveyRow>> blocks(count);
  std::atomic<u64> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (u64 i = next++; i < count; i = next++) {
      try {
        blocks[i] = survey_block(cfg, first + i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<u64>(cfg.workers, count));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SurveyRow> out;
  for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline nlohmann::json to_json(const SurveyRow& r) {
  return {{"d", r.d},
          {"D", r.D},
          {"r", r.r},
          {"h", r.h},
          {"h_narrow", r.h_narrow},
          {"unit_norm", std::string(to_string(r.unit_norm))},
          {"polya_order", r.polya_order},
          {"verdict", std::string(to_string(r.verdict))},
          {"theorem_used", r.theorem_used},
          {"t", r.t},
          {"main_bound_ok", r.main_bound_ok}};
}

inline void write_rows(std::ostream& os, const std::vector<SurveyRow>& rows, SurveyFormat fmt) {
  if (fmt == SurveyFormat::jsonl) {
    for (const auto& r : rows) os << to_json(r).dump() << '\n';
    return;
  }
  os << kCsvVersionLine << '\n' << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.d << ',' << r.D << ',' << r.r << ',' << r.h << ',' << r.h_narrow << ','
       << to_string(r.unit_norm) << ',' << r.polya_order << ',' << to_string(r.verdict) << ','
       << r.theorem_used << ',' << r.t << ',' << (r.main_bound_ok ? "true" : "false") << '\n';
  }
}

inline std::map<std::string, u64> verdict_counts(const std::vector<SurveyRow>& rows) {
  std::map<std::string, u64> counts;
  for (const auto& r : rows) ++counts[std::string(to_string(r.verdict))];
  return counts;
}

}  // namespace acft
