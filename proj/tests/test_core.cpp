#include <doctest.h>

#include "helpers.hpp"
#include "medr/dataset.hpp"
#include "medr/errors.hpp"

using namespace medr;

namespace {
Instance hour5() { return paper_instance(5, Rational{180}, Rational{8, 5}, Rational{1, 2}); }
}  // namespace

TEST_CASE("a well-formed instance validates cleanly") {
  CHECK(validate_instance(hour5()).empty());
}

TEST_CASE("each invariant breach yields one violation") {
  Instance instance = hour5();

  SUBCASE("duplicate tenant id") {
    instance.bids[3].tenant_id = "tenant2";
    auto violations = validate_instance(instance);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].code == "duplicate_tenant_id");
  }
  SUBCASE("negative cost") {
    instance.bids[0].cost_usd = -1;
    auto violations = validate_instance(instance);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].code == "negative_cost");
  }
  SUBCASE("negative size") {
    instance.bids[0].size_mw = -4;
    CHECK(validate_instance(instance)[0].code == "negative_size");
  }
  SUBCASE("pue below one") {
    instance.config.pue = Rational{1, 2};
    CHECK(validate_instance(instance)[0].code == "pue_below_one");
  }
  SUBCASE("pue of two or more is legal") {
    instance.config.pue = Rational{5, 2};
    CHECK(validate_instance(instance).empty());
  }
  SUBCASE("nonpositive epsilon") {
    instance.config.epsilon = Rational{0};
    CHECK(validate_instance(instance)[0].code == "nonpositive_epsilon");
  }
  SUBCASE("require_valid throws with the codes") {
    instance.bids[0].cost_usd = -1;
    CHECK_THROWS_AS(require_valid(instance), ValidationError);
  }
}

TEST_CASE("social cost fills the shortfall from storage at the minimum") {
  Instance instance = hour5();

  SUBCASE("empty selection is pure storage") {
    CostBreakdown b = social_cost({}, instance);
    CHECK(b.bes_usage_mwh == Rational{68});
    CHECK(b.social_cost_usd == Rational{12240});
  }
  SUBCASE("tenant7 covers the target alone") {
    std::vector<std::string> sel{"tenant7"};
    CostBreakdown b = social_cost(sel, instance);
    CHECK(b.bes_usage_mwh == Rational{0});
    CHECK(b.social_cost_usd == Rational{3569});
  }
  SUBCASE("three-tenant selection leaves a fractional shortfall") {
    std::vector<std::string> sel{"tenant2", "tenant3", "tenant5"};
    CostBreakdown b = social_cost(sel, instance);
    CHECK(b.bes_usage_mwh == Rational{4, 5});
    CHECK(b.social_cost_usd == Rational{4484});
  }
  SUBCASE("unknown tenant is rejected") {
    std::vector<std::string> sel{"nobody"};
    CHECK_THROWS_AS(social_cost(sel, instance), std::invalid_argument);
  }
  SUBCASE("repeated tenant is rejected") {
    std::vector<std::string> sel{"tenant7", "tenant7"};
    CHECK_THROWS_AS(social_cost(sel, instance), std::invalid_argument);
  }
}

TEST_CASE("utility is payment minus true cost for winners, zero for losers") {
  CHECK(utility(Rational{4484}, {43, 3569}, true) == Rational{915});
  CHECK(utility(Rational{0}, {10, 500}, false) == Rational{0});
  CHECK(utility(Rational{500}, {10, 500}, true) == Rational{0});
}

TEST_CASE("social cost is monotone in pue and target") {
  medr::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Instance instance = medr::testing::random_instance(rng, 8, 40, 500);
    std::vector<std::string> selection;
    for (const Bid& bid : instance.bids) {
      if (rng.below(2) == 0) selection.push_back(bid.tenant_id);
    }

    Instance higher_pue = instance;
    higher_pue.config.pue += Rational{1, 10};
    CHECK(social_cost(selection, higher_pue).social_cost_usd <= social_cost(selection, instance).social_cost_usd);

    Instance higher_target = instance;
    higher_target.config.target_mw += 5;
    CHECK(social_cost(selection, higher_target).social_cost_usd >= social_cost(selection, instance).social_cost_usd);
  }
}

TEST_CASE("participation excludes zero-size bids") {
  Instance instance;
  instance.config = {10, Rational{100}, Rational{1}, Rational{1, 2}};
  instance.bids = {{"a", 0, 0}, {"b", 3, 5}, {"c", 0, 9}};
  auto active = participating_indices(instance);
  REQUIRE(active.size() == 1);
  CHECK(instance.bids[active[0]].tenant_id == "b");
}
