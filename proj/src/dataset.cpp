#include "medr/dataset.hpp"

#include <fstream>
#include <sstream>

#include "medr/errors.hpp"
#include "medr/rng.hpp"

namespace medr {

namespace {

struct BidPair {
  std::int64_t size;
  std::int64_t cost;
};

struct HourData {
  CalendarRow row;
  std::array<BidPair, 9> bids;
};

// clang-format off
const std::array<HourData, 11> kHours = {{
    {{5,   450,  68, {21, 100}, {52, 100}, {29, 100}},
     {{{23, 2737}, {12, 1284}, {4, 352}, {67, 4623}, {26, 2704}, {5, 555}, {43, 3569}, {46, 5888}, {5, 570}}}},
    {{6,   800, 120, {30, 100}, {52, 100}, {20, 100}},
     {{{33, 3531}, {18, 1782}, {6, 648}, {67, 8710}, {26, 2392}, {5, 470}, {57, 4617}, {60, 5100}, {7, 588}}}},
    {{7,  1350, 203, {33, 100}, {52, 100}, {20, 100}},
     {{{36, 3960}, {19, 1653}, {6, 462}, {67, 6700}, {26, 1976}, {5, 605}, {30, 3960}, {32, 3136}, {4, 364}}}},
    {{8,  1750, 263, {42, 100}, {51, 100}, {25, 100}},
     {{{46, 5336}, {25, 1950}, {8, 784}, {66, 6864}, {25, 2350}, {5, 585}, {37, 4440}, {40, 4240}, {5, 565}}}},
    {{9,  2100, 315, {44, 100}, {49, 100}, {21, 100}},
     {{{48, 3600}, {26, 2262}, {8, 960}, {63, 8064}, {24, 1656}, {4, 476}, {31, 3162}, {33, 3564}, {4, 516}}}},
    {{10, 2080, 312, {45, 100}, {45, 100}, {22, 100}},
     {{{49, 4018}, {27, 3159}, {9, 792}, {58, 5510}, {22, 2112}, {4, 332}, {33, 3267}, {35, 2590}, {4, 456}}}},
    {{11, 1850, 278, {46, 100}, {41, 100}, {22, 100}},
     {{{50, 6000}, {27, 3078}, {9, 693}, {53, 5353}, {20, 2440}, {4, 340}, {33, 3102}, {35, 3115}, {4, 384}}}},
    {{16, 1250, 188, {50, 100}, {30, 100}, {50, 100}},
     {{{55, 3960}, {30, 2160}, {10, 1150}, {39, 3159}, {15, 1995}, {3, 399}, {75, 7950}, {80, 8320}, {10, 1290}}}},
    {{17, 1800, 270, {48, 100}, {28, 100}, {40, 100}},
     {{{52, 4420}, {28, 2016}, {9, 1170}, {36, 4068}, {14, 1484}, {2, 178}, {60, 7620}, {64, 4352}, {8, 952}}}},
    {{18, 2350, 353, {52, 100}, {29, 100}, {40, 100}},
     {{{57, 7581}, {31, 3100}, {10, 1030}, {37, 4144}, {14, 1358}, {2, 212}, {60, 6540}, {64, 7360}, {8, 712}}}},
    {{19, 2250, 338, {43, 100}, {30, 100}, {50, 100}},
     {{{47, 4136}, {25, 3275}, {8, 744}, {39, 5031}, {15, 1380}, {3, 270}, {75, 7725}, {80, 5760}, {10, 930}}}},
}};
// clang-format on

std::array<CalendarRow, 11> build_calendar() {
  std::array<CalendarRow, 11> rows;
  for (std::size_t i = 0; i < kHours.size(); ++i) rows[i] = kHours[i].row;
  return rows;
}

const std::array<CalendarRow, 11> kCalendar = build_calendar();

std::int64_t parse_int_field(const std::string& field, const std::string& name, const std::string& origin,
                             std::size_t line) {
  if (field.empty()) throw ParseError(origin + ":" + std::to_string(line) + ": empty " + name + " field");
  std::size_t pos = field[0] == '-' ? 1 : 0;
  if (pos == field.size()) throw ParseError(origin + ":" + std::to_string(line) + ": bad " + name + " field");
  for (; pos < field.size(); ++pos) {
    if (field[pos] < '0' || field[pos] > '9') {
      throw ParseError(origin + ":" + std::to_string(line) + ": " + name + " field '" + field +
                       "' is not an integer");
    }
  }
  try {
    return std::stoll(field);
  } catch (const std::exception&) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + name + " field '" + field + "' out of range");
  }
}

}  // namespace

const std::array<Rational, 9> GenerationParams::kReferenceRatios = {
    Rational{11, 100}, Rational{6, 100}, Rational{2, 100}, Rational{13, 100}, Rational{5, 100},
    Rational{1, 100},  Rational{15, 100}, Rational{16, 100}, Rational{2, 100}};

std::span<const CalendarRow> edr_calendar() { return kCalendar; }

const CalendarRow& calendar_row(int hour) {
  for (const CalendarRow& row : kCalendar) {
    if (row.hour == hour) return row;
  }
  throw ValidationError("no EDR event at hour " + std::to_string(hour));
}

Instance paper_instance(int hour, const Rational& alpha, const Rational& gamma, const Rational& epsilon) {
  for (const HourData& data : kHours) {
    if (data.row.hour != hour) continue;
    Instance instance;
    instance.config = {data.row.target_mw, alpha, gamma, epsilon};
    instance.bids.reserve(9);
    for (std::size_t i = 0; i < data.bids.size(); ++i) {
      instance.bids.push_back({"tenant" + std::to_string(i + 1), data.bids[i].size, data.bids[i].cost});
    }
    return instance;
  }
  throw ValidationError("no EDR event at hour " + std::to_string(hour));
}

std::vector<Instance> paper_instances(const Rational& alpha, const Rational& gamma, const Rational& epsilon) {
  std::vector<Instance> out;
  out.reserve(kHours.size());
  for (const HourData& data : kHours) out.push_back(paper_instance(data.row.hour, alpha, gamma, epsilon));
  return out;
}

Instance generate_instance(const CalendarRow& row, const GenerationParams& params, const Rational& alpha,
                           const Rational& gamma, const Rational& epsilon) {
  Instance instance;
  instance.config = {row.target_mw, alpha, gamma, epsilon};

  Rng rng(params.seed);
  const Rational mw_factor{params.servers_per_tenant * params.idle_power_w * params.size_scale, 1'000'000};
  for (std::size_t i = 0; i < params.tenant_ratios.size(); ++i) {
    const Rational& workload = i < 3 ? row.hotmail : (i < 6 ? row.msr : row.wikipedia);
    std::int64_t size = (workload * params.tenant_ratios[i] * mw_factor).floor();
    std::int64_t rate = rng.range(params.price_floor, params.price_ceil);
    std::int64_t cost = size * rate;
    instance.bids.push_back({"tenant" + std::to_string(i + 1), size, cost});
  }
  return instance;
}

Instance parse_bids(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError(origin + ": empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tenant_id,size_mw,cost_usd") {
    throw ParseError(origin + ":1: expected header 'tenant_id,size_mw,cost_usd'");
  }

  Instance instance;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::size_t first = line.find(',');
    std::size_t second = first == std::string::npos ? std::string::npos : line.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos || line.find(',', second + 1) != std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 3 comma-separated fields");
    }
    Bid bid;
    bid.tenant_id = line.substr(0, first);
    bid.size_mw = parse_int_field(line.substr(first + 1, second - first - 1), "size_mw", origin, line_no);
    bid.cost_usd = parse_int_field(line.substr(second + 1), "cost_usd", origin, line_no);
    if (bid.tenant_id.empty()) throw ParseError(origin + ":" + std::to_string(line_no) + ": empty tenant_id");
    instance.bids.push_back(std::move(bid));
  }

  for (const Violation& v : validate_instance(instance)) {
    if (v.code == "duplicate_tenant_id") throw ValidationError(origin + ": duplicate tenant_id '" + v.detail + "'");
  }
  return instance;
}

Instance load_bids(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_bids(in, path.filename().string());
}

std::string bids_csv(const Instance& instance) {
  std::string out = "tenant_id,size_mw,cost_usd\n";
  for (const Bid& bid : instance.bids) {
    out += bid.tenant_id;
    out += ',';
    out += std::to_string(bid.size_mw);
    out += ',';
    out += std::to_string(bid.cost_usd);
    out += '\n';
  }
  return out;
}

void save_bids(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << bids_csv(instance);
}

std::string calendar_csv() {
  std::string out = "hour,edr_mw,target_mw,hotmail,msr,wikipedia\n";
  for (const CalendarRow& row : kCalendar) {
    out += std::to_string(row.hour) + "," + std::to_string(row.edr_mw) + "," + std::to_string(row.target_mw) + "," +
           row.hotmail.str() + "," + row.msr.str() + "," + row.wikipedia.str() + "\n";
  }
  return out;
}

}  // namespace medr
