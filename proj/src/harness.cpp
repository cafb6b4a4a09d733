#include "medr/harness.hpp"

#include <exception>

#include "medr/dataset.hpp"
#include "medr/dopt.hpp"
#include "medr/fptas.hpp"
#include "medr/mechanism.hpp"

namespace medr {

namespace {

const Rational kDefaultAlpha{180};
const Rational kDefaultGamma{8, 5};
const Rational kDefaultEpsilon{1, 2};

std::vector<Rational> alpha_grid() {
  std::vector<Rational> grid;
  for (int a = 140; a <= 320; a += 20) grid.emplace_back(a);
  return grid;
}

std::vector<Rational> gamma_grid() {
  std::vector<Rational> grid;
  for (int g = 11; g <= 20; ++g) grid.emplace_back(g, 10);
  return grid;
}

std::vector<Rational> epsilon_grid() {
  std::vector<Rational> grid;
  for (int e = 1; e <= 10; ++e) grid.emplace_back(e, 10);
  return grid;
}

enum class Axis { kAlpha, kGamma, kEpsilon };

// All grid points are independent solves; fan out and collect by index so
// the output order never depends on scheduling.
std::vector<RatioRecord> run_sweep(Axis axis, const std::vector<Rational>& grid) {
  const auto calendar = edr_calendar();
  std::vector<RatioRecord> records(calendar.size() * grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) collapse(2)
  for (std::size_t h = 0; h < calendar.size(); ++h) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      try {
        Rational alpha = axis == Axis::kAlpha ? grid[g] : kDefaultAlpha;
        Rational gamma = axis == Axis::kGamma ? grid[g] : kDefaultGamma;
        Rational epsilon = axis == Axis::kEpsilon ? grid[g] : kDefaultEpsilon;
        Instance instance = paper_instance(calendar[h].hour, alpha, gamma, epsilon);
        RatioRecord record;
        record.hour = calendar[h].hour;
        record.alpha = alpha;
        record.gamma = gamma;
        record.epsilon = epsilon;
        record.cost_fptas = fptas_solve(instance).social_cost_usd;
        record.cost_dopt = dopt_solve(instance).social_cost_usd;
        records[h * grid.size() + g] = record;
      } catch (...) {
#pragma omp critical(medr_harness_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace

Rational RatioRecord::ratio() const {
  if (cost_dopt.is_zero()) return Rational{1};
  return cost_fptas / cost_dopt;
}

std::vector<RatioRecord> sweep_alpha() { return run_sweep(Axis::kAlpha, alpha_grid()); }
std::vector<RatioRecord> sweep_gamma() { return run_sweep(Axis::kGamma, gamma_grid()); }
std::vector<RatioRecord> sweep_epsilon() { return run_sweep(Axis::kEpsilon, epsilon_grid()); }

std::string ratio_records_csv(std::span<const RatioRecord> records) {
  std::string out = "hour,alpha,gamma,epsilon,cost_fptas,cost_dopt,ratio\n";
  for (const RatioRecord& r : records) {
    out += std::to_string(r.hour) + "," + r.alpha.str() + "," + r.gamma.str() + "," + r.epsilon.str() + "," +
           r.cost_fptas.str() + "," + r.cost_dopt.str() + "," + r.ratio().str() + "\n";
  }
  return out;
}

std::vector<UtilityRow> utility_report(const Rational& alpha, const Rational& gamma, const Rational& epsilon) {
  const auto calendar = edr_calendar();
  std::vector<std::vector<UtilityRow>> per_hour(calendar.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t h = 0; h < calendar.size(); ++h) {
    try {
      Instance instance = paper_instance(calendar[h].hour, alpha, gamma, epsilon);
      MechanismOutcome outcome = run_mechanism(instance, Algorithm::kFptas);
      for (const Bid& bid : instance.bids) {
        auto it = outcome.payments.payments.find(bid.tenant_id);
        bool won = false;
        for (const std::string& w : outcome.allocation.winners) won = won || w == bid.tenant_id;
        if (!won) continue;
        UtilityRow row;
        row.hour = calendar[h].hour;
        row.tenant_id = bid.tenant_id;
        row.payment_usd = it->second;
        row.cost_usd = bid.cost_usd;
        row.utility_usd = it->second - Rational{bid.cost_usd};
        per_hour[h].push_back(row);
      }
    } catch (...) {
#pragma omp critical(medr_harness_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<UtilityRow> rows;
  for (auto& hour_rows : per_hour) rows.insert(rows.end(), hour_rows.begin(), hour_rows.end());
  return rows;
}

std::string utility_csv(std::span<const UtilityRow> rows) {
  std::string out = "hour,tenant_id,payment_usd,cost_usd,utility_usd\n";
  for (const UtilityRow& r : rows) {
    out += std::to_string(r.hour) + "," + r.tenant_id + "," + r.payment_usd.str() + "," +
           std::to_string(r.cost_usd) + "," + r.utility_usd.str() + "\n";
  }
  return out;
}

std::vector<BesRow> bes_comparison() {
  struct Point {
    Axis axis;
    Rational param;
  };
  std::vector<Point> points;
  for (const Rational& a : alpha_grid()) points.push_back({Axis::kAlpha, a});
  for (const Rational& g : gamma_grid()) points.push_back({Axis::kGamma, g});

  const auto calendar = edr_calendar();
  std::vector<BesRow> rows(points.size() * calendar.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) collapse(2)
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t h = 0; h < calendar.size(); ++h) {
      try {
        Rational alpha = points[p].axis == Axis::kAlpha ? points[p].param : kDefaultAlpha;
        Rational gamma = points[p].axis == Axis::kGamma ? points[p].param : kDefaultGamma;
        Instance instance = paper_instance(calendar[h].hour, alpha, gamma, kDefaultEpsilon);
        BesRow row;
        row.axis = points[p].axis == Axis::kAlpha ? "alpha" : "gamma";
        row.param = points[p].param;
        row.hour = calendar[h].hour;
        row.cost_fptas = fptas_solve(instance).social_cost_usd;
        row.cost_bes = alpha * Rational{instance.config.target_mw};
        row.ratio = row.cost_bes.is_zero() ? Rational{1} : row.cost_fptas / row.cost_bes;
        rows[p * calendar.size() + h] = row;
      } catch (...) {
#pragma omp critical(medr_harness_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  // (hour, axis, parameter) order within each axis block.
  std::vector<BesRow> sorted;
  sorted.reserve(rows.size());
  for (const char* axis : {"alpha", "gamma"}) {
    for (const CalendarRow& cal : calendar) {
      for (const BesRow& row : rows) {
        if (row.axis == axis && row.hour == cal.hour) sorted.push_back(row);
      }
    }
  }
  return sorted;
}

std::string bes_csv(std::span<const BesRow> rows) {
  std::string out = "axis,param,hour,cost_fptas,cost_bes,ratio\n";
  for (const BesRow& r : rows) {
    out += r.axis + "," + r.param.str() + "," + std::to_string(r.hour) + "," + r.cost_fptas.str() + "," +
           r.cost_bes.str() + "," + r.ratio.str() + "\n";
  }
  return out;
}

}  // namespace medr
