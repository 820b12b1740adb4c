#pragma once

// Subcommand bodies for the qiris CLI. Each returns the process exit status:
// 0 success, 1 not found / disagreement, 2 usage or format error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qiris/errors.hpp"
#include "qiris/hashing.hpp"
#include "qiris/rainbow_table.hpp"
#include "qiris/search.hpp"

namespace qiris::cli {

enum ExitCode : int { kSuccess = 0, kNotFound = 1, kUsageError = 2 };

struct CliConfig {
  std::filesystem::path table_path;
  std::uint64_t perm_seed = PearsonPermutation::kDefaultSeed;
  std::uint64_t rng_seed = 7;
  std::uint32_t shots = quantum::kDefaultShots;
  std::size_t classical_threshold = 2;
  bool quantum = true;

  SearchConfig search_config() const {
    SearchConfig cfg;
    cfg.shots = shots;
    cfg.classical_threshold = classical_threshold;
    cfg.rng_seed = rng_seed;
    cfg.quantum_enabled = quantum;
    return cfg;
  }
};

inline constexpr std::string_view kCompareHeader =
    "hash,found_q,found_c,agree,grover_invocations,grover_iterations_total,classical_scan_length";

namespace detail {

inline bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\v\f") == std::string::npos;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot read '" + path.string() + "'");
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    lines.push_back(std::move(line));
  }
  return lines;
}

// One plaintext per line; blank lines are skipped, anything else must be
// printable ASCII without whitespace.
inline std::vector<std::string> read_wordlist(const std::filesystem::path& path) {
  std::vector<std::string> words;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) {
      continue;
    }
    if (!qiris::detail::is_valid_plaintext(lines[i])) {
      throw FormatError("wordlist line " + std::to_string(i + 1) +
                        ": entries must be ASCII without whitespace");
    }
    words.push_back(lines[i]);
  }
  if (words.empty()) {
    throw FormatError("wordlist '" + path.string() + "' has no entries");
  }
  return words;
}

inline std::vector<HexDigest> read_hashes(const std::filesystem::path& path) {
  std::vector<HexDigest> hashes;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) {
      continue;
    }
    try {
      hashes.push_back(HexDigest::parse(lines[i]));
    } catch (const FormatError& e) {
      throw FormatError("hashes line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return hashes;
}

}  // namespace detail

inline int cmd_generate(const std::filesystem::path& wordlist_path,
                        const std::filesystem::path& table_path, std::uint64_t perm_seed,
                        std::ostream& out, std::ostream& err) {
  try {
    const auto words = detail::read_wordlist(wordlist_path);
    const PearsonPermutation perm(perm_seed);
    const auto table = generate_table(words, perm);
    save_table(table, table_path);
    out << "chains=" << table.size() << '\n'
        << "buckets=" << build_buckets(table).buckets.size() << '\n';
    return kSuccess;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

inline int cmd_crack(const CliConfig& config, const std::string& hash_text, bool report,
                     std::ostream& out, std::ostream& err) {
  SearchReport result;
  try {
    const auto hash = HexDigest::parse(hash_text);
    const auto table = load_table(config.table_path);
    const PearsonPermutation perm(table.perm_seed);
    result = crack(hash, table, build_buckets(table), perm, config.search_config());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  if (result.result) {
    out << *result.result << '\n';
  } else {
    err << "not found\n";
  }
  if (report) {
    out << "chains_examined=" << result.chains_examined << '\n'
        << "grover_invocations=" << result.grover_invocations << '\n'
        << "grover_iterations_total=" << result.grover_iterations_total << '\n'
        << "classical_fallbacks=" << result.classical_fallbacks << '\n'
        << "bucket_misses=" << result.bucket_misses << '\n';
  }
  return result.result ? kSuccess : kNotFound;
}

inline int cmd_compare(const CliConfig& config, const std::filesystem::path& hashes_path,
                       std::ostream& out, std::ostream& err) {
  std::vector<HexDigest> hashes;
  RainbowTable table;
  try {
    config.search_config().validate();
    table = load_table(config.table_path);
    hashes = detail::read_hashes(hashes_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const PearsonPermutation perm(table.perm_seed);
  const auto buckets = build_buckets(table);
  const auto specs = canonical_reduction_specs();
  const auto cfg = config.search_config();

  bool all_agree = true;
  out << kCompareHeader << '\n';
  for (const auto& hash : hashes) {
    const auto quantum = crack(hash, table, buckets, perm, specs, cfg);
    const auto classical = crack_classical_counted(hash, table, specs);
    const bool agree = quantum.result == classical.result;
    all_agree = all_agree && agree;
    out << hash.str() << ',' << (quantum.result ? "true" : "false") << ','
        << (classical.result ? "true" : "false") << ',' << (agree ? "true" : "false") << ','
        << quantum.grover_invocations << ',' << quantum.grover_iterations_total << ','
        << classical.scan_length << '\n';
  }
  return all_agree ? kSuccess : kNotFound;
}

}  // namespace qiris::cli
