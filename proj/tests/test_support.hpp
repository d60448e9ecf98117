#pragma once

#include <random>
#include <string_view>

#include "upmine/database.hpp"

namespace upmine::testing {

// Shared hand-checkable fixture: utilities A=5, B=2, C=1, D=2 under the id
// mapping A=0, B=1, C=2, D=3; T1={A:1,C:2}, T2={A:2,B:1,C:1}, T3={B:2,D:1}.
// TU = 7, 13, 6; TWU = {A:20, B:19, C:20, D:6}.
inline constexpr std::string_view kDb1Transactions =
    "0:1 2:2\n"
    "0:2 1:1 2:1\n"
    "1:2 3:1\n";
inline constexpr std::string_view kDb1Utilities =
    "0 5\n"
    "1 2\n"
    "2 1\n"
    "3 2\n";

inline TransactionDatabase db1() { return parse_database(kDb1Transactions, kDb1Utilities); }

// Small random database for property tests: up to max_items registered items
// (not all need occur), transaction lengths 1..min(8, items), quantities
// 1..5, external utilities 1..10.
inline TransactionDatabase random_database(std::mt19937_64& rng, std::size_t max_items = 12,
                                           std::size_t max_transactions = 60) {
  const std::size_t n_items = 1 + rng() % max_items;
  const std::size_t n_txns = 1 + rng() % max_transactions;
  TransactionDatabase db;
  for (std::size_t i = 0; i < n_items; ++i) db.add_item(i, 1 + rng() % 10);

  std::vector<ItemId> pool(n_items);
  for (std::size_t i = 0; i < n_items; ++i) pool[i] = static_cast<ItemId>(i);
  const std::size_t max_len = std::min<std::size_t>(8, n_items);
  for (std::size_t t = 0; t < n_txns; ++t) {
    const std::size_t len = 1 + rng() % max_len;
    for (std::size_t k = 0; k < len; ++k)
      std::swap(pool[k], pool[k + rng() % (n_items - k)]);
    std::vector<ItemQuantity> entries;
    for (std::size_t k = 0; k < len; ++k)
      entries.push_back({pool[k], static_cast<std::uint32_t>(1 + rng() % 5)});
    db.add_transaction(std::move(entries));
  }
  return db;
}

}  // namespace upmine::testing
