#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace upmine {

// Dense item id, assigned in utility-table order (0..num_items-1).
using ItemId = std::uint32_t;

// Item identifier as it appears in data files.
using ExternalId = std::uint64_t;

// Profit units. All utility arithmetic is exact 64-bit integer math;
// accumulation points check for overflow and throw std::overflow_error.
using Utility = std::uint64_t;

// Canonical itemset: distinct dense ids in ascending order.
using Itemset = std::vector<ItemId>;

struct ItemQuantity {
  ItemId item{};
  std::uint32_t quantity{};  // >= 1
  bool operator==(const ItemQuantity&) const = default;
};

struct Transaction {
  std::vector<ItemQuantity> entries;  // distinct items, kept in input order
  bool operator==(const Transaction&) const = default;
};

/// Transactions plus the per-item external utility table. Immutable once
/// built; mining runs share it read-only.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;

  // Registers an item. Items get dense ids in registration order.
  // Throws std::invalid_argument on duplicate external id or zero utility.
  ItemId add_item(ExternalId external_id, Utility external_utility);

  // Appends a transaction; entries keep their order. Throws
  // std::invalid_argument if empty, an item is unregistered, a quantity is
  // zero, or an item repeats.
  void add_transaction(std::vector<ItemQuantity> entries);

  std::size_t num_items() const { return utilities_.size(); }
  std::size_t num_transactions() const { return transactions_.size(); }
  const std::vector<Transaction>& transactions() const { return transactions_; }
  const Transaction& transaction(std::size_t i) const { return transactions_[i]; }

  Utility external_utility(ItemId item) const { return utilities_.at(item); }
  std::span<const Utility> external_utilities() const { return utilities_; }
  ExternalId external_id(ItemId item) const { return external_ids_.at(item); }
  std::optional<ItemId> find_item(ExternalId external_id) const;

  bool operator==(const TransactionDatabase& other) const {
    return transactions_ == other.transactions_ && utilities_ == other.utilities_ &&
           external_ids_ == other.external_ids_;
  }

 private:
  std::vector<Transaction> transactions_;
  std::vector<Utility> utilities_;      // indexed by dense id
  std::vector<ExternalId> external_ids_;
  std::unordered_map<ExternalId, ItemId> id_index_;
};

/// Error in a data file, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string_view file_label, std::size_t line, std::string_view message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text formats:
//   transactions: one transaction per line, whitespace-separated
//                 `item:quantity` pairs, items are unsigned decimals;
//   utilities:    one `item external_utility` line per item.
// Lines starting with '#' are ignored in both files.
TransactionDatabase parse_database(std::string_view transactions_text,
                                   std::string_view utilities_text);

// Inverse of parse_database: {transactions_text, utilities_text}. Emits
// canonical single-space separators, one trailing newline per line.
std::pair<std::string, std::string> write_database(const TransactionDatabase& db);

TransactionDatabase load_database(const std::filesystem::path& transactions_path,
                                  const std::filesystem::path& utilities_path);
void save_database(const TransactionDatabase& db,
                   const std::filesystem::path& transactions_path,
                   const std::filesystem::path& utilities_path);

}  // namespace upmine
