#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "upmine/bench.hpp"
#include "upmine/database.hpp"
#include "upmine/generator.hpp"
#include "upmine/miner.hpp"
#include "upmine/oracle.hpp"
#include "upmine/utility.hpp"
#include "upmine/verifier.hpp"

namespace {

using namespace upmine;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitMismatch = 3;

struct PolicyFlags {
  std::optional<std::uint64_t> min_util;
  std::optional<std::string> threshold;
  std::optional<std::string> base;

  void attach(CLI::App* cmd) {
    auto* mu = cmd->add_option("--min-util", min_util, "Absolute minimum utility");
    auto* th = cmd->add_option("--threshold", threshold,
                               "Fractional threshold in [0,1], e.g. 0.8");
    cmd->add_option("--base", base, "Threshold base: total or mtwu")
        ->check(CLI::IsMember({"total", "mtwu"}))
        ->needs(th);
    mu->excludes(th);
    th->excludes(mu);
  }

  ThresholdPolicy resolve(Variant variant) const {
    if (min_util) return ThresholdPolicy::absolute(*min_util);
    if (!threshold)
      throw CLI::RequiredError("one of --min-util or --threshold");
    const Rational f = parse_decimal_fraction(*threshold);
    if (!base) return default_policy_for(variant, f);
    return *base == "mtwu" ? ThresholdPolicy::fraction_of_mtwu(f)
                           : ThresholdPolicy::fraction_of_total(f);
  }
};

Variant parse_variant(const std::string& name) {
  return name == "upg" ? Variant::upg : Variant::iupg;
}

// FIMI-style file: whitespace-separated item ids per line, unit quantities.
// Without a utility table, per-item utilities are synthesized uniformly in
// [1,10] from the given seed.
TransactionDatabase load_fimi(const std::filesystem::path& transactions_path,
                              const std::optional<std::string>& utilities_path,
                              std::uint64_t seed) {
  std::ifstream in(transactions_path);
  if (!in) throw std::runtime_error("cannot open file: " + transactions_path.string());
  std::vector<std::vector<ExternalId>> lines;
  std::set<ExternalId> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<ExternalId> ids;
    std::set<ExternalId> seen;
    ExternalId id;
    while (ss >> id) {
      if (!seen.insert(id).second)
        throw ParseError(transactions_path.string(), line_no, "duplicate item");
      ids.push_back(id);
    }
    if (!ss.eof()) throw ParseError(transactions_path.string(), line_no, "malformed item id");
    if (ids.empty()) continue;
    items.insert(ids.begin(), ids.end());
    lines.push_back(std::move(ids));
  }

  TransactionDatabase db;
  if (utilities_path) {
    std::ifstream uf(*utilities_path);
    if (!uf) throw std::runtime_error("cannot open file: " + *utilities_path);
    std::ostringstream buf;
    buf << uf.rdbuf();
    // Reuse the standard utility-table format for the synthesized side.
    db = parse_database("", buf.str());
  } else {
    std::mt19937_64 rng(seed);
    for (const ExternalId id : items) db.add_item(id, rng() % 10 + 1);
  }
  for (const auto& ids : lines) {
    std::vector<ItemQuantity> entries;
    for (const ExternalId id : ids) {
      const auto item = db.find_item(id);
      if (!item)
        throw std::runtime_error("item " + std::to_string(id) + " missing from utility table");
      entries.push_back({*item, 1});
    }
    db.add_transaction(std::move(entries));
  }
  return db;
}

struct LoadFlags {
  std::string db_path;
  std::string utils_path;
  bool fimi{false};
  std::uint64_t seed{1};

  void attach(CLI::App* cmd) {
    cmd->add_option("--db", db_path, "Transactions file")->required();
    cmd->add_option("--utils", utils_path, "Utility table file (required unless --fimi)");
    cmd->add_flag("--fimi", fimi,
                  "Treat --db as a FIMI item-list file (unit quantities; utilities "
                  "synthesized when --utils is omitted)");
    cmd->add_option("--seed", seed, "Seed for synthesized utilities (with --fimi)");
  }

  TransactionDatabase load() const {
    if (fimi) {
      return load_fimi(db_path,
                       utils_path.empty() ? std::nullopt : std::optional{utils_path}, seed);
    }
    if (utils_path.empty()) throw CLI::RequiredError("--utils");
    return load_database(db_path, utils_path);
  }

  std::string dataset_label() const {
    std::string label = std::filesystem::path(db_path).filename().string();
    if (fimi && utils_path.empty())
      label += "[fimi synth-utils seed=" + std::to_string(seed) + "]";
    else if (fimi)
      label += "[fimi]";
    return label;
  }
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

int cmd_mine(const LoadFlags& load_flags, const PolicyFlags& policy_flags,
             const std::string& variant_name_str, const MinerConfig& toggles,
             const std::string& out_path) {
  const TransactionDatabase db = load_flags.load();
  MinerConfig config = toggles;
  config.variant = parse_variant(variant_name_str);
  const ThresholdPolicy policy = policy_flags.resolve(config.variant);

  const MineResult mined = mine(db, policy, config);
  VerifyStats vstats;
  const auto huis = verify(mined.phuis, db, mined.stats.resolved_min_util, &vstats);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  out << format_huis(huis, db);

  std::printf("min_util=%llu phuis=%llu huis=%zu tree_nodes=%llu phase1_s=%.6f phase2_ms=%.3f\n",
              static_cast<unsigned long long>(mined.stats.resolved_min_util),
              static_cast<unsigned long long>(mined.stats.phui_count), huis.size(),
              static_cast<unsigned long long>(mined.stats.global_tree_nodes),
              mined.stats.phase1_seconds(), vstats.seconds * 1000.0);
  return kExitOk;
}

int cmd_generate(const DatasetSpec& spec, const std::string& db_path,
                 const std::string& utils_path) {
  const TransactionDatabase db = generate_synthetic(spec);
  save_database(db, db_path, utils_path);
  std::size_t total_len = 0;
  for (const auto& t : db.transactions()) total_len += t.entries.size();
  const double mean = db.num_transactions()
                          ? static_cast<double>(total_len) / db.num_transactions()
                          : 0.0;
  std::printf("transactions=%zu items=%zu mean_length=%.3f\n", db.num_transactions(),
              db.num_items(), mean);
  return kExitOk;
}

int cmd_bench(const LoadFlags& load_flags, const std::string& thresholds_csv,
              const std::string& min_utils_csv, const std::optional<std::string>& base,
              const std::string& variants_csv, int repeats, const MinerConfig& toggles,
              const std::string& csv_path) {
  const TransactionDatabase db = load_flags.load();

  std::vector<BenchCell> cells;
  for (const auto& vname : split_list(variants_csv)) {
    if (vname != "upg" && vname != "iupg")
      throw CLI::ValidationError("--variants", "unknown variant " + vname);
    const Variant variant = parse_variant(vname);
    for (const auto& mstr : split_list(min_utils_csv)) {
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(mstr, &pos);
      if (pos != mstr.size()) throw CLI::ValidationError("--min-utils", "malformed " + mstr);
      cells.push_back(BenchCell{variant, ThresholdPolicy::absolute(v)});
    }
    for (const auto& tstr : split_list(thresholds_csv)) {
      const Rational f = parse_decimal_fraction(tstr);
      ThresholdPolicy policy = base ? (*base == "mtwu" ? ThresholdPolicy::fraction_of_mtwu(f)
                                                       : ThresholdPolicy::fraction_of_total(f))
                                    : default_policy_for(variant, f);
      cells.push_back(BenchCell{variant, policy});
    }
  }
  if (cells.empty()) throw CLI::ValidationError("--thresholds", "empty sweep");

  const auto results = run_bench(db, load_flags.dataset_label(), cells, repeats, toggles);
  const std::string csv = bench_csv(results);
  if (csv_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + csv_path);
    out << csv;
    std::printf("wrote %zu rows to %s\n", results.size(), csv_path.c_str());
  }
  return kExitOk;
}

int cmd_compare(const LoadFlags& load_flags, const PolicyFlags& policy_flags,
                const std::string& variant_name_str, const MinerConfig& toggles,
                bool corrupt_candidates) {
  const TransactionDatabase db = load_flags.load();
  MinerConfig config = toggles;
  config.variant = parse_variant(variant_name_str);
  const ThresholdPolicy policy = policy_flags.resolve(config.variant);

  MineResult mined = mine(db, policy, config);
  const Utility min_util = mined.stats.resolved_min_util;
  if (corrupt_candidates) {
    // Negative-control hook: drop every candidate that would verify, so the
    // comparison fails whenever any high-utility itemset exists.
    const auto verified = verify(mined.phuis, db, min_util);
    std::erase_if(mined.phuis, [&](const Phui& p) {
      return std::any_of(verified.begin(), verified.end(),
                         [&](const Hui& h) { return h.items == p.items; });
    });
  }
  const auto pipeline = verify(mined.phuis, db, min_util);

  const auto expected = brute_force_huis(db, min_util);
  if (pipeline == expected) {
    std::printf("PASS: %zu itemsets match (min_util=%llu)\n", expected.size(),
                static_cast<unsigned long long>(min_util));
    return kExitOk;
  }

  std::printf("FAIL: pipeline and oracle disagree (min_util=%llu)\n",
              static_cast<unsigned long long>(min_util));
  auto contains = [](const std::vector<Hui>& haystack, const Hui& needle) {
    return std::find(haystack.begin(), haystack.end(), needle) != haystack.end();
  };
  for (const auto& h : expected) {
    if (!contains(pipeline, h))
      std::printf("missing (oracle only): %s", format_huis({h}, db).c_str());
  }
  for (const auto& h : pipeline) {
    if (!contains(expected, h))
      std::printf("unexpected (pipeline only): %s", format_huis({h}, db).c_str());
  }
  return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-utility itemset mining: two-phase utility-pattern tree miner"};
  app.require_subcommand(1);

  // mine
  auto* mine_cmd = app.add_subcommand("mine", "Mine high-utility itemsets from a database");
  LoadFlags mine_load;
  PolicyFlags mine_policy;
  std::string mine_variant = "iupg";
  std::string mine_out;
  MinerConfig mine_toggles;
  bool mine_no_dlu = false, mine_no_dln = false;
  mine_load.attach(mine_cmd);
  mine_policy.attach(mine_cmd);
  mine_cmd->add_option("--variant", mine_variant, "upg or iupg")
      ->check(CLI::IsMember({"upg", "iupg"}));
  mine_cmd->add_flag("--no-dlu", mine_no_dlu, "Disable local path-utility discounts");
  mine_cmd->add_flag("--no-dln", mine_no_dln, "Disable local node-utility discounts");
  mine_cmd->add_option("--out", mine_out, "Output file for high-utility itemsets")->required();

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset");
  DatasetSpec spec;
  std::string gen_db, gen_utils;
  gen_cmd->add_option("--T", spec.avg_transaction_size, "Average transaction size");
  gen_cmd->add_option("--I", spec.avg_pattern_size, "Average potential pattern size");
  gen_cmd->add_option("--D", spec.num_transactions, "Number of transactions")->required();
  gen_cmd->add_option("--N", spec.num_items, "Number of distinct items")->required();
  gen_cmd->add_option("--max-qty", spec.max_quantity, "Maximum per-item quantity");
  gen_cmd->add_option("--max-util", spec.max_external_utility, "Maximum external utility");
  gen_cmd->add_flag("--log-normal-utils", spec.log_normal_utilities,
                    "Draw external utilities log-normally instead of uniformly");
  gen_cmd->add_option("--seed", spec.seed, "Generator seed");
  gen_cmd->add_option("--db", gen_db, "Output transactions file")->required();
  gen_cmd->add_option("--utils", gen_utils, "Output utility table file")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Sweep thresholds and emit timing CSV");
  LoadFlags bench_load;
  std::string bench_thresholds = "0.6,0.65,0.7,0.75,0.8,0.85,0.9";
  std::string bench_min_utils;
  std::optional<std::string> bench_base;
  std::string bench_variants = "upg,iupg";
  int bench_repeats = 3;
  std::string bench_csv_path;
  bool bench_no_dlu = false, bench_no_dln = false;
  bench_load.attach(bench_cmd);
  auto* bench_th = bench_cmd->add_option("--thresholds", bench_thresholds,
                                         "Comma-separated fraction sweep");
  bench_cmd->add_option("--min-utils", bench_min_utils,
                        "Comma-separated absolute threshold sweep (replaces --thresholds)")
      ->excludes(bench_th);
  bench_cmd->add_option("--base", bench_base,
                        "Threshold base for every cell: total or mtwu (default: per-variant)")
      ->check(CLI::IsMember({"total", "mtwu"}));
  bench_cmd->add_option("--variants", bench_variants, "Comma-separated variants to run");
  bench_cmd->add_option("--repeat", bench_repeats, "Repetitions per cell (minimum reported)");
  bench_cmd->add_flag("--no-dlu", bench_no_dlu, "Disable local path-utility discounts");
  bench_cmd->add_flag("--no-dln", bench_no_dln, "Disable local node-utility discounts");
  bench_cmd->add_option("--csv", bench_csv_path, "CSV output path (default: stdout)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Cross-check the pipeline against brute force");
  LoadFlags cmp_load;
  PolicyFlags cmp_policy;
  std::string cmp_variant = "iupg";
  bool cmp_no_dlu = false, cmp_no_dln = false, cmp_corrupt = false;
  cmp_load.attach(cmp_cmd);
  cmp_policy.attach(cmp_cmd);
  cmp_cmd->add_option("--variant", cmp_variant, "upg or iupg")
      ->check(CLI::IsMember({"upg", "iupg"}));
  cmp_cmd->add_flag("--no-dlu", cmp_no_dlu, "Disable local path-utility discounts");
  cmp_cmd->add_flag("--no-dln", cmp_no_dln, "Disable local node-utility discounts");
  cmp_cmd->add_flag("--corrupt-candidates", cmp_corrupt,
                    "Testing hook: damage the candidate list to force a mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (mine_cmd->parsed()) {
      MinerConfig toggles{Variant::iupg, !mine_no_dlu, !mine_no_dln};
      return cmd_mine(mine_load, mine_policy, mine_variant, toggles, mine_out);
    }
    if (gen_cmd->parsed()) return cmd_generate(spec, gen_db, gen_utils);
    if (bench_cmd->parsed()) {
      MinerConfig toggles{Variant::iupg, !bench_no_dlu, !bench_no_dln};
      // An absolute sweep replaces the default fraction sweep.
      const std::string thresholds = bench_min_utils.empty() ? bench_thresholds : "";
      return cmd_bench(bench_load, thresholds, bench_min_utils, bench_base, bench_variants,
                       bench_repeats, toggles, bench_csv_path);
    }
    if (cmp_cmd->parsed()) {
      MinerConfig toggles{Variant::iupg, !cmp_no_dlu, !cmp_no_dln};
      return cmd_compare(cmp_load, cmp_policy, cmp_variant, toggles, cmp_corrupt);
    }
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
