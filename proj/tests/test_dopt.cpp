#include <doctest.h>

#include "helpers.hpp"
#include "medr/dataset.hpp"
#include "medr/dopt.hpp"
#include "medr/errors.hpp"

using namespace medr;
using medr::testing::random_instance;

namespace {
Instance hour5() { return paper_instance(5, Rational{180}, Rational{8, 5}, Rational{1, 2}); }
}  // namespace

TEST_CASE("the hour-5 optimum is tenant7 alone") {
  AllocationResult result = dopt_solve(hour5());
  CHECK(result.winners == std::vector<std::string>{"tenant7"});
  CHECK(result.bes_usage_mwh == Rational{0});
  CHECK(result.social_cost_usd == Rational{3569});

  AllocationResult oracle = brute_force_solve(hour5());
  CHECK(oracle.social_cost_usd == result.social_cost_usd);
  CHECK(oracle.winners == result.winners);
}

TEST_CASE("a zero target needs nothing") {
  Instance instance = hour5();
  instance.config.target_mw = 0;
  AllocationResult result = dopt_solve(instance);
  CHECK(result.winners.empty());
  CHECK(result.bes_usage_mwh == Rational{0});
  CHECK(result.social_cost_usd == Rational{0});
  CHECK(brute_force_solve(instance).winners.empty());
}

TEST_CASE("with no bids the target comes from storage") {
  Instance instance;
  instance.config = {100, Rational{2}, Rational{1}, Rational{1, 2}};
  AllocationResult result = dopt_solve(instance);
  CHECK(result.winners.empty());
  CHECK(result.bes_usage_mwh == Rational{100});
  CHECK(result.social_cost_usd == Rational{200});
}

TEST_CASE("storage beats an absurd bid") {
  Instance instance;
  instance.config = {1, Rational{1}, Rational{1}, Rational{1, 2}};
  instance.bids = {{"tenant1", 1, 1'000'000}};
  AllocationResult result = brute_force_solve(instance);
  CHECK(result.winners.empty());
  CHECK(result.bes_usage_mwh == Rational{1});
  CHECK(result.social_cost_usd == Rational{1});
  CHECK(dopt_solve(instance).social_cost_usd == Rational{1});
}

TEST_CASE("the table solver equals the oracle on all eleven event hours") {
  for (const Instance& instance : paper_instances(Rational{180}, Rational{8, 5}, Rational{1, 2})) {
    AllocationResult fast = dopt_solve(instance);
    AllocationResult slow = brute_force_solve(instance);
    CHECK(fast.social_cost_usd == slow.social_cost_usd);
    CHECK(fast.winners == slow.winners);
    // Feasibility of the returned allocation.
    CHECK(fast.bes_usage_mwh >= Rational{0});
    CostBreakdown recomputed = social_cost(fast.winners, instance);
    CHECK(recomputed.social_cost_usd == fast.social_cost_usd);
  }
}

TEST_CASE("the table solver equals the oracle on random instances") {
  Rng rng(987654321);
  for (int trial = 0; trial < 300; ++trial) {
    Instance instance = random_instance(rng, 10, 60, 800);
    AllocationResult fast = dopt_solve(instance);
    AllocationResult slow = brute_force_solve(instance);
    CHECK(fast.social_cost_usd == slow.social_cost_usd);
    CHECK(fast.winners == slow.winners);
  }
}

TEST_CASE("cheaper or bigger declarations never raise the optimum") {
  Rng rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = random_instance(rng, 8, 40, 400);
    Rational base = dopt_solve(instance).social_cost_usd;
    if (instance.bids.empty()) continue;
    std::size_t pick = rng.below(instance.bids.size());

    Instance cheaper = instance;
    cheaper.bids[pick].cost_usd /= 2;
    CHECK(dopt_solve(cheaper).social_cost_usd <= base);

    Instance bigger = instance;
    bigger.bids[pick].size_mw += 10;
    CHECK(dopt_solve(bigger).social_cost_usd <= base);
  }
}

TEST_CASE("the oracle refuses oversized instances") {
  Instance instance;
  instance.config = {10, Rational{1}, Rational{1}, Rational{1, 2}};
  for (int i = 0; i < 26; ++i) instance.bids.push_back({"tenant" + std::to_string(i + 1), 1, 1});
  CHECK_THROWS_AS(brute_force_solve(instance), ValidationError);
  CHECK_NOTHROW(dopt_solve(instance));
}

TEST_CASE("zero-cost coverage wins over paid coverage") {
  Instance instance;
  instance.config = {4, Rational{50}, Rational{1}, Rational{1, 2}};
  instance.bids = {{"free1", 3, 0}, {"paid", 4, 9}, {"free2", 2, 0}};
  AllocationResult result = dopt_solve(instance);
  CHECK(result.winners == std::vector<std::string>{"free1", "free2"});
  CHECK(result.social_cost_usd == Rational{0});
  CHECK(result.bes_usage_mwh == Rational{0});
  CHECK(brute_force_solve(instance).winners == result.winners);
}
