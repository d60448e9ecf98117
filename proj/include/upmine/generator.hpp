#pragma once

#include <cstdint>

#include "upmine/database.hpp"

namespace upmine {

/// Quest-style synthetic dataset shape: transactions of mean length T are
/// assembled from a pool of potential patterns of mean length I over N
/// items; quantities and external utilities are drawn uniformly (utilities
/// optionally log-normally). Identical spec and seed give identical output,
/// and the first D transactions do not depend on D.
struct DatasetSpec {
  double avg_transaction_size{10.0};   // T
  double avg_pattern_size{6.0};        // I
  std::uint64_t num_transactions{0};   // D
  std::uint32_t num_items{1};          // N
  std::uint32_t max_quantity{5};
  Utility max_external_utility{10};
  bool log_normal_utilities{false};
  std::uint64_t seed{0};
};

// Throws std::invalid_argument when T <= 0, I <= 0, I > T, T > N, N == 0,
// or a bound is zero.
TransactionDatabase generate_synthetic(const DatasetSpec& spec);

}  // namespace upmine
