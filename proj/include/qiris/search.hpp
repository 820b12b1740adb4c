#pragma once

// Hash recovery: walk the query hash forward through each chain suffix, test
// whether the reduced text is a chain end (bucket + Grover, or a plain scan
// for the baseline), then rebuild the candidate chain and verify by MD5.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qiris/errors.hpp"
#include "qiris/hashing.hpp"
#include "qiris/quantum_sim.hpp"
#include "qiris/rainbow_table.hpp"

namespace qiris {

struct SearchConfig {
  std::uint32_t shots = quantum::kDefaultShots;
  // Buckets with at most this many distinct residues are checked classically.
  // At m = 2 one Grover iteration gives exactly P = 0.5, so the majority
  // rule would be a coin flip.
  std::size_t classical_threshold = 2;
  std::uint64_t rng_seed = 7;
  bool quantum_enabled = true;

  void validate() const {
    if (shots == 0) {
      throw ConfigError("shots must be at least 1");
    }
    if (classical_threshold > BucketIndex::kBucketWidth) {
      throw ConfigError("classical threshold must not exceed 16");
    }
  }
};

struct SearchReport {
  std::optional<std::string> result;
  std::size_t chains_examined = 0;
  std::size_t grover_invocations = 0;
  std::size_t grover_iterations_total = 0;
  std::size_t classical_fallbacks = 0;
  std::size_t bucket_misses = 0;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

inline bool membership_classical(std::span<const std::uint8_t> bucket, std::uint8_t residue) {
  for (const auto r : bucket) {
    if (r == residue) {
      return true;
    }
  }
  return false;
}

// Replays a chain from `start` through `remaining_specs`, returning the last
// plaintext and its MD5.
inline std::pair<std::string, HexDigest> rebuild_chain(const std::string& start,
                                                       std::span<const ReductionSpec> remaining_specs) {
  std::string text = start;
  HexDigest hash = md5_hex(text);
  for (const auto& spec : remaining_specs) {
    text = reduce(hash, spec);
    hash = md5_hex(text);
  }
  return {std::move(text), std::move(hash)};
}

namespace detail {

// Reduces `hash` through `suffix`, hashing between reductions but not after
// the final one.
inline std::string reduce_suffix(const HexDigest& hash, std::span<const ReductionSpec> suffix) {
  HexDigest current = hash;
  std::string text;
  for (std::size_t j = 0; j < suffix.size(); ++j) {
    text = reduce(current, suffix[j]);
    if (j + 1 != suffix.size()) {
      current = md5_hex(text);
    }
  }
  return text;
}

// Tries every row whose end equals `text`, rebuilding through `prefix`.
template <typename Rows>
std::optional<std::string> verify_rows(const RainbowTable& table, const Rows& rows,
                                       const std::string& text, const HexDigest& hash,
                                       std::span<const ReductionSpec> prefix) {
  for (const std::size_t row : rows) {
    if (table.chains[row].end != text) {
      continue;
    }
    auto [plain, digest] = rebuild_chain(table.chains[row].start, prefix);
    if (digest == hash) {
      return std::move(plain);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Hybrid search. Probe i (1-based) feeds its Grover measurement from
// SplitMix64(cfg.rng_seed + i - 1).
inline SearchReport crack(const HexDigest& hash, const RainbowTable& table,
                          const BucketIndex& buckets, const PearsonPermutation& perm,
                          std::span<const ReductionSpec> specs, const SearchConfig& cfg) {
  cfg.validate();
  if (table.perm_seed != perm.seed()) {
    throw ConfigError("table was built with permutation seed " + std::to_string(table.perm_seed) +
                      " but the search uses seed " + std::to_string(perm.seed()));
  }

  SearchReport report;
  for (std::size_t i = 1; i <= specs.size(); ++i) {
    ++report.chains_examined;
    const auto suffix = specs.last(i);
    const auto prefix = specs.first(specs.size() - i);
    const std::string text = detail::reduce_suffix(hash, suffix);
    const std::uint16_t h = pearson16(text, perm);
    const auto key = static_cast<std::uint16_t>(h / BucketIndex::kBucketWidth);
    const auto residue = static_cast<std::uint8_t>(h % BucketIndex::kBucketWidth);

    const auto* bucket = buckets.find(key);
    if (bucket == nullptr) {
      ++report.bucket_misses;
      continue;
    }

    const std::set<std::size_t> marked(bucket->begin(), bucket->end());
    bool present = false;
    if (!cfg.quantum_enabled || marked.size() <= cfg.classical_threshold) {
      ++report.classical_fallbacks;
      present = membership_classical(*bucket, residue);
    } else {
      const auto outcome = quantum::grover_search(marked, residue, quantum::kDefaultDimension,
                                                  cfg.shots, cfg.rng_seed + (i - 1));
      ++report.grover_invocations;
      report.grover_iterations_total += outcome.iterations;
      present = outcome.decision;
    }
    if (!present) {
      continue;
    }

    if (auto found = detail::verify_rows(table, end_hash_indices(table, h), text, hash, prefix)) {
      report.result = std::move(found);
      return report;
    }
  }
  return report;
}

inline SearchReport crack(const HexDigest& hash, const RainbowTable& table,
                          const BucketIndex& buckets, const PearsonPermutation& perm,
                          const SearchConfig& cfg = {}) {
  const auto specs = canonical_reduction_specs();
  return crack(hash, table, buckets, perm, specs, cfg);
}

struct ClassicalReport {
  std::optional<std::string> result;
  // Number of chain-end string comparisons performed.
  std::size_t scan_length = 0;
};

// Baseline without buckets or Pearson hashing: every probe scans all chain
// ends linearly.
inline ClassicalReport crack_classical_counted(const HexDigest& hash, const RainbowTable& table,
                                               std::span<const ReductionSpec> specs) {
  ClassicalReport report;
  for (std::size_t i = 1; i <= specs.size(); ++i) {
    const auto prefix = specs.first(specs.size() - i);
    const std::string text = detail::reduce_suffix(hash, specs.last(i));
    std::vector<std::size_t> rows;
    for (std::size_t row = 0; row < table.chains.size(); ++row) {
      ++report.scan_length;
      if (table.chains[row].end == text) {
        rows.push_back(row);
      }
    }
    if (auto found = detail::verify_rows(table, rows, text, hash, prefix)) {
      report.result = std::move(found);
      return report;
    }
  }
  return report;
}

inline std::optional<std::string> crack_classical(const HexDigest& hash, const RainbowTable& table,
                                                  std::span<const ReductionSpec> specs) {
  return crack_classical_counted(hash, table, specs).result;
}

inline std::optional<std::string> crack_classical(const HexDigest& hash,
                                                  const RainbowTable& table) {
  const auto specs = canonical_reduction_specs();
  return crack_classical(hash, table, specs);
}

}  // namespace qiris
