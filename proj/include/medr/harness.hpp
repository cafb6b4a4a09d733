#pragma once

#include <cstdint>
#include <vector>

#include "medr/core.hpp"

namespace medr {

// One grid point of an approximation-ratio sweep over the eleven event
// hours. Costs come from the exact and approximate solvers on identical
// instances, so ratio() >= 1 exactly.
struct RatioRecord {
  int hour = 0;
  Rational alpha;
  Rational gamma;
  Rational epsilon;
  Rational cost_fptas;
  Rational cost_dopt;

  Rational ratio() const;  // 1 by convention when both costs are 0
};

// Sweep grids. Alpha varies 140..320 step 20 (gamma 1.6, epsilon 0.5);
// gamma varies 1.1..2.0 step 0.1 (alpha 180, epsilon 0.5); epsilon varies
// 0.1..1.0 step 0.1 (alpha 180, gamma 1.6). Each yields 110 records ordered
// by (hour, swept parameter).
std::vector<RatioRecord> sweep_alpha();
std::vector<RatioRecord> sweep_gamma();
std::vector<RatioRecord> sweep_epsilon();

std::string ratio_records_csv(std::span<const RatioRecord> records);

// Per-winner payment/cost/utility of a truthful run of the approximate
// mechanism on each hour. Losers are omitted.
struct UtilityRow {
  int hour = 0;
  std::string tenant_id;
  Rational payment_usd;
  std::int64_t cost_usd = 0;
  Rational utility_usd;
};
std::vector<UtilityRow> utility_report(const Rational& alpha = Rational{180},
                                       const Rational& gamma = Rational{8, 5},
                                       const Rational& epsilon = Rational{1, 2});
std::string utility_csv(std::span<const UtilityRow> rows);

// Approximate-mechanism cost next to the storage-only cost alpha*W, over the
// alpha grid and the gamma grid.
struct BesRow {
  std::string axis;  // "alpha" or "gamma"
  Rational param;
  int hour = 0;
  Rational cost_fptas;
  Rational cost_bes;
  Rational ratio;  // 1 by convention when both costs are 0
};
std::vector<BesRow> bes_comparison();
std::string bes_csv(std::span<const BesRow> rows);

}  // namespace medr
