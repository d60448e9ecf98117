#pragma once

#include <cstdint>
#include <vector>

#include "upmine/database.hpp"
#include "upmine/utility.hpp"
#include "upmine/verifier.hpp"

namespace upmine {

/// Exhaustive reference miner. Deliberately shares no computation with the
/// tree pipeline: utilities are re-derived from raw quantities here.
/// Enumeration is over bitmasks of the items that occur, so the number of
/// occurring items is capped.
class BruteForceIndex {
 public:
  // Throws std::invalid_argument if more than max_items distinct items occur.
  explicit BruteForceIndex(const TransactionDatabase& db, std::size_t max_items = 20);

  // Exact utility of any itemset (0 for itemsets touching absent items).
  Utility utility_of(const Itemset& x) const;

  // All itemsets with utility >= min_util and at least one supporting
  // transaction, ordered as the verifier orders its output.
  std::vector<Hui> all_huis(Utility min_util) const;

  std::size_t num_present_items() const { return bit_items_.size(); }

 private:
  const TransactionDatabase& db_;
  std::vector<ItemId> bit_items_;             // bit position -> dense id
  std::vector<std::uint32_t> item_bits_;      // dense id -> bit position (or npos)
  std::vector<Utility> utility_by_mask_;      // 2^k utilities
  static constexpr std::uint32_t kAbsent = ~0u;
};

// Convenience wrappers around BruteForceIndex.
std::vector<Hui> brute_force_huis(const TransactionDatabase& db, Utility min_util,
                                  std::size_t max_items = 20);

// TWU via per-item transaction filtering; independent of the single-pass
// implementation it cross-checks.
TwuTable brute_force_twu(const TransactionDatabase& db);

}  // namespace upmine
