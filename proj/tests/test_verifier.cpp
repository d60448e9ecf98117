#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "upmine/miner.hpp"
#include "upmine/oracle.hpp"
#include "upmine/verifier.hpp"

using namespace upmine;
using namespace upmine::testing;

TEST_CASE("DB-1 verification at 15 keeps the two true itemsets") {
  const auto db = db1();
  const auto mined = mine(db, ThresholdPolicy::absolute(15));
  const auto huis = verify(mined.phuis, db, 15);
  REQUIRE(huis.size() == 2);
  CHECK(huis[0] == Hui{{0, 2}, 18});
  CHECK(huis[1] == Hui{{0}, 15});  // {B}:6 and {C}:3 rejected
}

TEST_CASE("empty candidate list verifies to nothing") {
  CHECK(verify({}, db1(), 15).empty());
}

TEST_CASE("threshold zero keeps every supported candidate") {
  const auto db = db1();
  const auto mined = mine(db, ThresholdPolicy::absolute(0));
  const auto huis = verify(mined.phuis, db, 0);
  CHECK(huis == brute_force_huis(db, 0));
}

TEST_CASE("unsupported candidates are dropped even at threshold zero") {
  const std::vector<Phui> phuis{{{0, 3}, 99}};  // {A,D} never co-occurs
  CHECK(verify(phuis, db1(), 0).empty());
}

TEST_CASE("verification is idempotent") {
  const auto db = db1();
  const auto mined = mine(db, ThresholdPolicy::absolute(15));
  const auto huis = verify(mined.phuis, db, 15);
  std::vector<Phui> again;
  for (const auto& h : huis) again.push_back({h.items, h.utility});
  CHECK(verify(again, db, 15) == huis);
}

TEST_CASE("duplicate candidates collapse to one output") {
  const std::vector<Phui> phuis{{{0}, 15}, {{0}, 20}};
  const auto huis = verify(phuis, db1(), 10);
  REQUIRE(huis.size() == 1);
  CHECK(huis[0] == Hui{{0}, 15});
}

TEST_CASE("output format matches the fixture") {
  const auto db = db1();
  const auto huis = verify(mine(db, ThresholdPolicy::absolute(15)).phuis, db, 15);
  CHECK(format_huis(huis, db) == "0 2 #UTIL: 18\n0 #UTIL: 15\n");
}

TEST_CASE("containment work stays within the candidate-transaction bound") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 30; ++i) {
    const auto db = random_database(rng);
    const auto mined = mine(db, ThresholdPolicy::absolute(total_utility(db) / 4));
    VerifyStats stats;
    verify(mined.phuis, db, mined.stats.resolved_min_util, &stats);
    CHECK(stats.containment_tests <= mined.phuis.size() * db.num_transactions());
  }
}

TEST_CASE("pipeline output equals the oracle on random databases") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 80; ++i) {
    const auto db = random_database(rng);
    const Utility total = total_utility(db);
    for (const auto frac : {0, 4, 2}) {
      const Utility min_util = frac == 0 ? 0 : total / frac;
      const auto mined = mine(db, ThresholdPolicy::absolute(min_util));
      const auto huis = verify(mined.phuis, db, min_util);
      CHECK(huis == brute_force_huis(db, min_util));
    }
  }
}

TEST_CASE("ordering ties break on the external-id sequence") {
  // Two disjoint singletons with equal utility 10.
  TransactionDatabase db;
  db.add_item(5, 10);
  db.add_item(2, 10);
  db.add_transaction({{0, 1}});
  db.add_transaction({{1, 1}});
  const std::vector<Phui> phuis{{{0}, 10}, {{1}, 10}};
  const auto huis = verify(phuis, db, 1);
  REQUIRE(huis.size() == 2);
  CHECK(huis[0].items == Itemset{1});  // external id 2 sorts before 5
  CHECK(huis[1].items == Itemset{0});
}
