#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"
#include "upmine/miner.hpp"
#include "upmine/oracle.hpp"
#include "upmine/verifier.hpp"

using namespace upmine;
using namespace upmine::testing;

namespace {

std::set<Itemset> itemsets_of(const std::vector<Phui>& phuis) {
  std::set<Itemset> out;
  for (const auto& p : phuis) out.insert(p.items);
  return out;
}

const std::array<MinerConfig, 4> kToggleCombos = {{
    {Variant::iupg, true, true},
    {Variant::iupg, true, false},
    {Variant::iupg, false, true},
    {Variant::iupg, false, false},
}};

}  // namespace

TEST_CASE("DB-1 candidates at absolute 15, emission order included") {
  const auto result = mine(db1(), ThresholdPolicy::absolute(15),
                           MinerConfig{Variant::upg, true, true});
  const std::vector<Phui> expected{
      {{1}, 17},     // {B}
      {{2}, 18},     // {C}
      {{0, 2}, 18},  // {A,C}
      {{0}, 15},     // {A}
  };
  CHECK(result.phuis == expected);
  CHECK(result.stats.phui_count == 4);
  CHECK(result.stats.resolved_min_util == 15);
  CHECK(result.stats.global_tree_nodes == 4);
}

TEST_CASE("threshold above the MTWU yields no candidates") {
  const auto result = mine(db1(), ThresholdPolicy::absolute(21));
  CHECK(result.phuis.empty());
  CHECK(result.stats.phui_count == 0);
  CHECK(result.stats.global_tree_nodes == 0);
}

TEST_CASE("threshold zero emits every supported itemset") {
  const auto result = mine(db1(), ThresholdPolicy::absolute(0));
  const auto oracle = brute_force_huis(db1(), 0);
  std::set<Itemset> expected;
  for (const auto& h : oracle) expected.insert(h.items);
  CHECK(itemsets_of(result.phuis) == expected);
  CHECK(result.phuis.size() == 9);
}

TEST_CASE("local tree of the {B} conditional base is emptied at 15") {
  const auto db = db1();
  const auto twu = compute_twu(db);
  const auto miu = compute_miu(db);
  const auto tree = build_global_tree(reorganize(db, twu, 15), twu, 15);

  for (const auto& config : kToggleCombos) {
    const auto local = build_local_tree(extract_cpb(tree, 1), miu, 15, config);
    CHECK(local.empty());  // local weights of A and C are 13 < 15
  }
}

TEST_CASE("local tree of the {C} conditional base keeps A") {
  const auto db = db1();
  const auto twu = compute_twu(db);
  const auto miu = compute_miu(db);
  const auto tree = build_global_tree(reorganize(db, twu, 15), twu, 15);

  const auto local = build_local_tree(extract_cpb(tree, 2), miu, 15);
  REQUIRE(local.header().size() == 1);
  CHECK(local.header()[0].item == 0);
  CHECK(local.header()[0].weight == 18);
  CHECK(local.header()[0].node_utility == 18);
  REQUIRE(local.node_count() == 1);
  const UpNode& a = *local.root().children.begin()->second;
  CHECK(a.count == 2);
  CHECK(a.node_utility == 18);
}

TEST_CASE("empty conditional base yields a bare tree") {
  CHECK(build_local_tree({}, MiuTable{}, 5).empty());
}

TEST_CASE("local discounts shrink increments but respect exact utilities") {
  // Two paths sharing item 0: path [0,1] utility 20 count 2, path [0] utility 7.
  const std::vector<PathEntry> cpb{
      {{0, 1}, 20, 2},
      {{0}, 7, 1},
  };
  const MiuTable miu{3, 4};

  const auto plain = build_local_tree(cpb, miu, 0, {Variant::iupg, true, false});
  const auto discounted = build_local_tree(cpb, miu, 0, {Variant::iupg, true, true});
  // Without the node discount both nodes of item 0 carry the full path
  // utilities; with it, the node above item 1 sheds miu(1) * count = 8.
  CHECK(plain.find_header(0)->node_utility == 27);
  CHECK(discounted.find_header(0)->node_utility == 19);
  CHECK(discounted.find_header(1)->node_utility == plain.find_header(1)->node_utility);
}

TEST_CASE("disabling the path discount only enlarges estimates") {
  // Item 1 is locally unpromising at 30 (weight 20); item 0 survives.
  const std::vector<PathEntry> cpb{
      {{0, 1}, 20, 2},
      {{0}, 25, 1},
  };
  const MiuTable miu{3, 4};
  const auto with_dlu = build_local_tree(cpb, miu, 30, {Variant::iupg, true, true});
  const auto without_dlu = build_local_tree(cpb, miu, 30, {Variant::iupg, false, true});
  REQUIRE(with_dlu.find_header(0) != nullptr);
  REQUIRE(without_dlu.find_header(0) != nullptr);
  CHECK(with_dlu.find_header(0)->node_utility == 37);     // 20 - 4*2 + 25
  CHECK(without_dlu.find_header(0)->node_utility == 45);  // discounts skipped
}

TEST_CASE("strategies never drop candidates at threshold zero") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    const auto db = random_database(rng, 10, 25);
    std::optional<std::set<Itemset>> reference;
    for (const auto& config : kToggleCombos) {
      const auto sets = itemsets_of(mine(db, ThresholdPolicy::absolute(0), config).phuis);
      if (!reference)
        reference = sets;
      else
        CHECK(sets == *reference);
    }
  }
}

TEST_CASE("discount strategies only shrink the candidate set") {
  std::mt19937_64 rng(53);
  int strict = 0;
  for (int i = 0; i < 60; ++i) {
    const auto db = random_database(rng, 12, 50);
    const Utility total = total_utility(db);
    for (const auto frac : {4, 2}) {
      const Utility min_util = total / frac;
      const auto on = mine(db, ThresholdPolicy::absolute(min_util),
                           {Variant::iupg, true, true});
      const auto off = mine(db, ThresholdPolicy::absolute(min_util),
                            {Variant::iupg, false, false});
      CHECK(on.phuis.size() <= off.phuis.size());
      if (on.phuis.size() < off.phuis.size()) ++strict;
      // Discounted candidates are a subset of the undiscounted ones.
      const auto off_sets = itemsets_of(off.phuis);
      for (const auto& p : on.phuis) CHECK(off_sets.contains(p.items));
    }
  }
  CHECK(strict > 0);
}

TEST_CASE("variants agree at an equal absolute threshold") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const auto db = random_database(rng);
    const Utility min_util = total_utility(db) / 3;
    const auto upg = mine(db, ThresholdPolicy::absolute(min_util), {Variant::upg, true, true});
    const auto iupg = mine(db, ThresholdPolicy::absolute(min_util), {Variant::iupg, true, true});
    CHECK(upg.phuis == iupg.phuis);
  }
}

TEST_CASE("variant default threshold bases") {
  const auto db = db1();
  // Improved variant reads a bare fraction against the MTWU: 0.8 * 20 = 16.
  const auto iupg = mine(db, default_policy_for(Variant::iupg, {8, 10}));
  CHECK(iupg.stats.resolved_min_util == 16);
  // Classic variant reads it against the total utility: ceil(0.8 * 26) = 21.
  const auto upg = mine(db, default_policy_for(Variant::upg, {8, 10}));
  CHECK(upg.stats.resolved_min_util == 21);
}

TEST_CASE("mining is deterministic") {
  std::mt19937_64 rng(61);
  const auto db = random_database(rng);
  const Utility min_util = total_utility(db) / 4;
  const auto a = mine(db, ThresholdPolicy::absolute(min_util));
  const auto b = mine(db, ThresholdPolicy::absolute(min_util));
  CHECK(a.phuis == b.phuis);
}

TEST_CASE("empty database") {
  const TransactionDatabase empty;
  CHECK(mine(empty, ThresholdPolicy::absolute(5)).phuis.empty());
  CHECK_THROWS_AS(mine(empty, ThresholdPolicy::fraction_of_mtwu({1, 2})),
                  std::invalid_argument);
}

TEST_CASE("phase-I candidates cover the oracle itemsets with sound estimates") {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 60; ++i) {
    const auto db = random_database(rng);
    const BruteForceIndex index(db);
    const Utility total = total_utility(db);
    for (const auto frac : {0, 4, 2}) {
      const Utility min_util = frac == 0 ? 0 : total / frac;
      for (const auto& config : kToggleCombos) {
        const auto result = mine(db, ThresholdPolicy::absolute(min_util), config);
        const auto candidates = itemsets_of(result.phuis);
        for (const auto& h : index.all_huis(min_util)) {
          CHECK(candidates.contains(h.items));
        }
        for (const auto& p : result.phuis) {
          CHECK(p.estimated_utility >= index.utility_of(p.items));
          CHECK(p.estimated_utility >= min_util);
        }
      }
    }
  }
}
