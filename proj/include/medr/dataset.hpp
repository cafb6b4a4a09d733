#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>

#include "medr/core.hpp"

namespace medr {

// One EDR event hour: the grid-wide reduction call, the facility's share
// (15% of it, rounded up), and the normalized workload level of each trace
// group during that hour.
struct CalendarRow {
  int hour = 0;
  std::int64_t edr_mw = 0;
  std::int64_t target_mw = 0;
  Rational hotmail;
  Rational msr;
  Rational wikipedia;
};

// The eleven event hours (5..11 and 16..19).
std::span<const CalendarRow> edr_calendar();
const CalendarRow& calendar_row(int hour);  // throws ValidationError on unknown hour

// Knobs of the synthetic bid generator. Tenants 1-3 follow the Hotmail
// trace, 4-6 MSR, 7-9 Wikipedia. A tenant's size is
//   floor(workload * servers_per_tenant * ratio * idle_power_w * size_scale / 1e6) MW
// and its cost is size * r with r drawn uniformly from
// [price_floor, price_ceil] $/MWh. size_scale = 1 is the formula as written;
// the default 100 reproduces the magnitudes of the checked-in bid tables.
struct GenerationParams {
  std::int64_t servers_per_tenant = 100'000;
  std::int64_t idle_power_w = 100;
  std::array<Rational, 9> tenant_ratios = kReferenceRatios;
  std::int64_t price_floor = 67;
  std::int64_t price_ceil = 133;
  std::int64_t size_scale = 100;
  std::uint64_t seed = 0;

  static const std::array<Rational, 9> kReferenceRatios;
};

// The fixed per-hour instances used by the experiment harness; bids are
// embedded constants mirrored byte-for-byte by the data/ fixtures.
Instance paper_instance(int hour, const Rational& alpha, const Rational& gamma, const Rational& epsilon);
std::vector<Instance> paper_instances(const Rational& alpha, const Rational& gamma, const Rational& epsilon);

// Fresh random instance for a calendar row; deterministic given the seed.
Instance generate_instance(const CalendarRow& row, const GenerationParams& params, const Rational& alpha,
                           const Rational& gamma, const Rational& epsilon);

// Canonical bid CSV: header "tenant_id,size_mw,cost_usd", integer fields.
// Loading attaches a default-constructed config; callers set it afterwards.
Instance load_bids(const std::filesystem::path& path);
Instance parse_bids(std::istream& in, const std::string& origin);
void save_bids(const Instance& instance, const std::filesystem::path& path);
std::string bids_csv(const Instance& instance);

// data/tableI.csv: "hour,edr_mw,target_mw,hotmail,msr,wikipedia".
std::string calendar_csv();

}  // namespace medr
