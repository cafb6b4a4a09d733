#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "medr/dataset.hpp"
#include "medr/errors.hpp"

using namespace medr;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::filesystem::path kDataDir{MEDR_DATA_DIR};

}  // namespace

TEST_CASE("the calendar lists the eleven event hours with ceil(15%) targets") {
  auto calendar = edr_calendar();
  REQUIRE(calendar.size() == 11);
  std::vector<int> hours;
  for (const CalendarRow& row : calendar) {
    hours.push_back(row.hour);
    // target = ceil(0.15 * edr)
    CHECK(Rational{row.target_mw} == Rational{(Rational{3, 20} * Rational{row.edr_mw}).ceil()});
    CHECK(row.hotmail >= Rational{0});
    CHECK(row.hotmail <= Rational{1});
    CHECK(row.msr <= Rational{1});
    CHECK(row.wikipedia <= Rational{1});
  }
  CHECK(hours == std::vector<int>{5, 6, 7, 8, 9, 10, 11, 16, 17, 18, 19});
  CHECK(calendar_row(18).target_mw == 353);
  CHECK_THROWS_AS(calendar_row(12), ValidationError);
}

TEST_CASE("embedded bid tables expose the expected spot values") {
  Instance h5 = paper_instance(5, Rational{180}, Rational{8, 5}, Rational{1, 2});
  CHECK(h5.config.target_mw == 68);
  REQUIRE(h5.bids.size() == 9);
  CHECK(h5.bids[0].tenant_id == "tenant1");
  CHECK(h5.bids[0].size_mw == 23);
  CHECK(h5.bids[0].cost_usd == 2737);
  CHECK(h5.bids[8].size_mw == 5);
  CHECK(h5.bids[8].cost_usd == 570);

  Instance h18 = paper_instance(18, Rational{180}, Rational{8, 5}, Rational{1, 2});
  CHECK(h18.config.target_mw == 353);
  CHECK(h18.bids[0].size_mw == 57);
  CHECK(h18.bids[0].cost_usd == 7581);

  CHECK(paper_instances(Rational{180}, Rational{8, 5}, Rational{1, 2}).size() == 11);
  CHECK_THROWS_AS(paper_instance(3, Rational{180}, Rational{8, 5}, Rational{1, 2}), ValidationError);
}

TEST_CASE("embedded tables and checked-in fixtures agree byte for byte") {
  CHECK(calendar_csv() == slurp(kDataDir / "tableI.csv"));
  for (const CalendarRow& row : edr_calendar()) {
    Instance instance = paper_instance(row.hour, Rational{180}, Rational{8, 5}, Rational{1, 2});
    CHECK(bids_csv(instance) == slurp(kDataDir / ("tableII_hour" + std::to_string(row.hour) + ".csv")));
  }
}

TEST_CASE("the generator reproduces published sizes at the default scale") {
  // floor(workload * ratio * M * d0 * 100 / 1e6) matches the fixed tables on
  // hour 5 and most others; costs differ because the per-MWh rates are drawn.
  for (int hour : {5, 9, 17, 18}) {
    GenerationParams params;
    params.seed = 1;
    Instance generated = generate_instance(calendar_row(hour), params, Rational{180}, Rational{8, 5}, Rational{1, 2});
    Instance fixed = paper_instance(hour, Rational{180}, Rational{8, 5}, Rational{1, 2});
    REQUIRE(generated.bids.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(generated.bids[i].size_mw == fixed.bids[i].size_mw);
    }
  }
}

TEST_CASE("generated rates stay in the quoted band and scale linearly") {
  GenerationParams params;
  params.seed = 77;
  for (const CalendarRow& row : edr_calendar()) {
    Instance instance = generate_instance(row, params, Rational{180}, Rational{8, 5}, Rational{1, 2});
    for (const Bid& bid : instance.bids) {
      if (bid.size_mw == 0) {
        CHECK(bid.cost_usd == 0);
        continue;
      }
      CHECK(bid.cost_usd % bid.size_mw == 0);
      std::int64_t rate = bid.cost_usd / bid.size_mw;
      CHECK(rate >= 67);
      CHECK(rate <= 133);
    }
  }

  // Doubling the ratio doubles the pre-floor size; with exact tenths the
  // floored value exactly doubles.
  GenerationParams doubled = params;
  for (Rational& r : doubled.tenant_ratios) r *= Rational{2};
  Instance base = generate_instance(calendar_row(16), params, Rational{180}, Rational{8, 5}, Rational{1, 2});
  Instance twice = generate_instance(calendar_row(16), doubled, Rational{180}, Rational{8, 5}, Rational{1, 2});
  for (std::size_t i = 0; i < 9; ++i) CHECK(twice.bids[i].size_mw >= 2 * base.bids[i].size_mw);
}

TEST_CASE("a zero workload produces non-participating bids") {
  CalendarRow row = calendar_row(5);
  row.hotmail = Rational{0};
  GenerationParams params;
  Instance instance = generate_instance(row, params, Rational{180}, Rational{8, 5}, Rational{1, 2});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(instance.bids[i].size_mw == 0);
    CHECK(instance.bids[i].cost_usd == 0);
    CHECK_FALSE(instance.bids[i].participating());
  }
}

TEST_CASE("the formula as written yields tiny sizes at scale 1") {
  GenerationParams params;
  params.size_scale = 1;
  Instance instance = generate_instance(calendar_row(5), params, Rational{180}, Rational{8, 5}, Rational{1, 2});
  CHECK(instance.bids[0].size_mw == 0);  // floor(0.231)
}

TEST_CASE("the same seed regenerates the same instance") {
  GenerationParams params;
  params.seed = 123456;
  Instance a = generate_instance(calendar_row(7), params, Rational{180}, Rational{8, 5}, Rational{1, 2});
  Instance b = generate_instance(calendar_row(7), params, Rational{180}, Rational{8, 5}, Rational{1, 2});
  REQUIRE(a.bids.size() == b.bids.size());
  for (std::size_t i = 0; i < a.bids.size(); ++i) {
    CHECK(a.bids[i].size_mw == b.bids[i].size_mw);
    CHECK(a.bids[i].cost_usd == b.bids[i].cost_usd);
  }
}

TEST_CASE("bid files round-trip losslessly") {
  Instance instance = paper_instance(5, Rational{180}, Rational{8, 5}, Rational{1, 2});
  auto path = std::filesystem::temp_directory_path() / "medr_roundtrip.csv";
  save_bids(instance, path);
  Instance loaded = load_bids(path);
  REQUIRE(loaded.bids.size() == instance.bids.size());
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    CHECK(loaded.bids[i].tenant_id == instance.bids[i].tenant_id);
    CHECK(loaded.bids[i].size_mw == instance.bids[i].size_mw);
    CHECK(loaded.bids[i].cost_usd == instance.bids[i].cost_usd);
  }
  CHECK(bids_csv(loaded) == bids_csv(instance));
  std::filesystem::remove(path);
}

TEST_CASE("malformed bid files fail with located parse errors") {
  SUBCASE("missing header") {
    std::istringstream in("tenant1,23,2737\n");
    CHECK_THROWS_AS(parse_bids(in, "t"), ParseError);
  }
  SUBCASE("non-integer size names the field and line") {
    std::istringstream in("tenant_id,size_mw,cost_usd\ntenant1,twelve,5\n");
    try {
      parse_bids(in, "bids.csv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      std::string message = e.what();
      CHECK(message.find("bids.csv:2") != std::string::npos);
      CHECK(message.find("size_mw") != std::string::npos);
    }
  }
  SUBCASE("wrong field count") {
    std::istringstream in("tenant_id,size_mw,cost_usd\ntenant1,1\n");
    CHECK_THROWS_AS(parse_bids(in, "t"), ParseError);
  }
  SUBCASE("duplicate tenants are a validation error") {
    std::istringstream in("tenant_id,size_mw,cost_usd\na,1,2\na,3,4\n");
    CHECK_THROWS_AS(parse_bids(in, "t"), ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_bids("/nonexistent/medr.csv"), ParseError);
  }
}
