#include "upmine/database.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace upmine {

namespace {

// Strict unsigned decimal: all characters consumed, no sign, no leading ws.
std::optional<std::uint64_t> parse_uint(std::string_view token) {
  if (token.empty()) return std::nullopt;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Invokes fn(line_number, line) for every non-blank, non-comment line.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!is_blank(line) && line.front() != '#') fn(line_no, line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

ParseError::ParseError(std::string_view file_label, std::size_t line, std::string_view message)
    : std::runtime_error(std::string(file_label) + ":" + std::to_string(line) + ": " +
                         std::string(message)),
      line_(line) {}

ItemId TransactionDatabase::add_item(ExternalId external_id, Utility external_utility) {
  if (external_utility == 0) throw std::invalid_argument("external utility must be positive");
  if (id_index_.contains(external_id))
    throw std::invalid_argument("duplicate item in utility table");
  const auto id = static_cast<ItemId>(utilities_.size());
  utilities_.push_back(external_utility);
  external_ids_.push_back(external_id);
  id_index_.emplace(external_id, id);
  return id;
}

void TransactionDatabase::add_transaction(std::vector<ItemQuantity> entries) {
  if (entries.empty()) throw std::invalid_argument("transaction has no entries");
  std::unordered_set<ItemId> seen;
  for (const auto& e : entries) {
    if (e.item >= utilities_.size()) throw std::invalid_argument("unknown item in transaction");
    if (e.quantity == 0) throw std::invalid_argument("quantity must be positive");
    if (!seen.insert(e.item).second)
      throw std::invalid_argument("duplicate item in transaction");
  }
  transactions_.push_back(Transaction{std::move(entries)});
}

std::optional<ItemId> TransactionDatabase::find_item(ExternalId external_id) const {
  const auto it = id_index_.find(external_id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

TransactionDatabase parse_database(std::string_view transactions_text,
                                   std::string_view utilities_text) {
  TransactionDatabase db;

  for_each_data_line(utilities_text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = split_ws(line);
    if (tokens.size() != 2)
      throw ParseError("utilities", line_no, "expected `item external_utility`");
    const auto item = parse_uint(tokens[0]);
    const auto util = parse_uint(tokens[1]);
    if (!item || !util) throw ParseError("utilities", line_no, "malformed number");
    if (*util == 0) throw ParseError("utilities", line_no, "non-positive utility");
    if (db.find_item(*item))
      throw ParseError("utilities", line_no, "duplicate item in utility table");
    db.add_item(*item, *util);
  });

  for_each_data_line(transactions_text, [&](std::size_t line_no, std::string_view line) {
    std::vector<ItemQuantity> entries;
    std::unordered_set<ItemId> seen;
    for (const auto token : split_ws(line)) {
      const std::size_t colon = token.find(':');
      if (colon == std::string_view::npos || token.find(':', colon + 1) != std::string_view::npos)
        throw ParseError("transactions", line_no, "expected `item:quantity` pair");
      const auto ext = parse_uint(token.substr(0, colon));
      const auto qty = parse_uint(token.substr(colon + 1));
      if (!ext || !qty) throw ParseError("transactions", line_no, "malformed number");
      if (*qty == 0) throw ParseError("transactions", line_no, "non-positive quantity");
      const auto item = db.find_item(*ext);
      if (!item)
        throw ParseError("transactions", line_no,
                         "unknown item " + std::to_string(*ext) + " (not in utility table)");
      if (*qty > std::numeric_limits<std::uint32_t>::max())
        throw ParseError("transactions", line_no, "quantity out of range");
      if (!seen.insert(*item).second)
        throw ParseError("transactions", line_no, "duplicate item in transaction");
      entries.push_back({*item, static_cast<std::uint32_t>(*qty)});
    }
    if (entries.empty()) throw ParseError("transactions", line_no, "empty transaction");
    db.add_transaction(std::move(entries));
  });

  return db;
}

std::pair<std::string, std::string> write_database(const TransactionDatabase& db) {
  std::string transactions;
  for (const auto& t : db.transactions()) {
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      if (i) transactions += ' ';
      transactions += std::to_string(db.external_id(t.entries[i].item));
      transactions += ':';
      transactions += std::to_string(t.entries[i].quantity);
    }
    transactions += '\n';
  }
  std::string utilities;
  for (ItemId i = 0; i < db.num_items(); ++i) {
    utilities += std::to_string(db.external_id(i));
    utilities += ' ';
    utilities += std::to_string(db.external_utility(i));
    utilities += '\n';
  }
  return {std::move(transactions), std::move(utilities)};
}

TransactionDatabase load_database(const std::filesystem::path& transactions_path,
                                  const std::filesystem::path& utilities_path) {
  return parse_database(read_file(transactions_path), read_file(utilities_path));
}

void save_database(const TransactionDatabase& db,
                   const std::filesystem::path& transactions_path,
                   const std::filesystem::path& utilities_path) {
  const auto [transactions, utilities] = write_database(db);
  std::ofstream t(transactions_path, std::ios::binary);
  if (!t) throw std::runtime_error("cannot write file: " + transactions_path.string());
  t << transactions;
  std::ofstream u(utilities_path, std::ios::binary);
  if (!u) throw std::runtime_error("cannot write file: " + utilities_path.string());
  u << utilities;
}

}  // namespace upmine
