#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upmine/database.hpp"
#include "upmine/miner.hpp"

namespace upmine {

struct Hui {
  Itemset items;
  Utility utility{};
  bool operator==(const Hui&) const = default;
};

struct VerifyStats {
  std::uint64_t containment_tests{0};
  double seconds{0.0};
};

// Phase II: exact utilities of the candidates against the database. Keeps
// candidates with utility >= min_util and at least one supporting
// transaction, ordered by descending utility, ties by ascending external-id
// sequence. Candidates are grouped by their rarest item so each one is only
// tested against transactions containing that item.
std::vector<Hui> verify(const std::vector<Phui>& phuis, const TransactionDatabase& db,
                        Utility min_util, VerifyStats* stats = nullptr);

// One line per itemset: `item1 item2 ... #UTIL: u`, external ids ascending.
std::string format_huis(const std::vector<Hui>& huis, const TransactionDatabase& db);

}  // namespace upmine
