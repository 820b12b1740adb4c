#pragma once

// Chain generation, the text table format and the bucket index that narrows
// each membership query down to at most 16 candidate residues.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qiris/errors.hpp"
#include "qiris/hashing.hpp"

namespace qiris {

struct Chain {
  std::string start;
  std::string end;

  friend bool operator==(const Chain&, const Chain&) = default;
};

struct RainbowTable {
  std::vector<Chain> chains;
  // end_hashed[i] == pearson16(chains[i].end)
  std::vector<std::uint16_t> end_hashed;
  std::uint64_t perm_seed = PearsonPermutation::kDefaultSeed;

  std::size_t size() const noexcept { return chains.size(); }
  bool empty() const noexcept { return chains.empty(); }

  friend bool operator==(const RainbowTable&, const RainbowTable&) = default;
};

// Bucket key = h / 16 (12 bits), residue = h % 16 (4 bits). Buckets exist
// only once something has been inserted; duplicate residues are kept.
struct BucketIndex {
  static constexpr std::uint16_t kBucketWidth = 16;

  std::map<std::uint16_t, std::vector<std::uint8_t>> buckets;

  const std::vector<std::uint8_t>* find(std::uint16_t key) const {
    const auto it = buckets.find(key);
    return it == buckets.end() ? nullptr : &it->second;
  }

  friend bool operator==(const BucketIndex&, const BucketIndex&) = default;
};

namespace detail {

inline bool is_valid_plaintext(std::string_view text) noexcept {
  if (text.empty()) {
    return false;
  }
  return std::all_of(text.begin(), text.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7F;
  });
}

inline std::string chain_end(const std::string& start, std::span<const ReductionSpec> specs) {
  std::string text = start;
  for (const auto& spec : specs) {
    text = reduce(md5_hex(text), spec);
  }
  return text;
}

}  // namespace detail

inline RainbowTable generate_table(std::span<const std::string> wordlist,
                                   std::span<const ReductionSpec> specs,
                                   const PearsonPermutation& perm) {
  if (wordlist.empty()) {
    throw FormatError("wordlist is empty");
  }
  if (specs.empty()) {
    throw std::invalid_argument("at least one reduction spec is required");
  }
  RainbowTable table;
  table.perm_seed = perm.seed();
  table.chains.reserve(wordlist.size());
  table.end_hashed.reserve(wordlist.size());
  for (std::size_t i = 0; i < wordlist.size(); ++i) {
    const auto& word = wordlist[i];
    if (!detail::is_valid_plaintext(word)) {
      throw FormatError("wordlist entry " + std::to_string(i + 1) +
                        " is empty or contains whitespace/non-ASCII bytes");
    }
    std::string end = detail::chain_end(word, specs);
    table.end_hashed.push_back(pearson16(end, perm));
    table.chains.push_back({word, std::move(end)});
  }
  return table;
}

inline RainbowTable generate_table(std::span<const std::string> wordlist,
                                   const PearsonPermutation& perm) {
  const auto specs = canonical_reduction_specs();
  return generate_table(wordlist, specs, perm);
}

inline BucketIndex build_buckets(const RainbowTable& table) {
  BucketIndex index;
  for (const std::uint16_t h : table.end_hashed) {
    index.buckets[static_cast<std::uint16_t>(h / BucketIndex::kBucketWidth)].push_back(
        static_cast<std::uint8_t>(h % BucketIndex::kBucketWidth));
  }
  return index;
}

inline std::vector<std::size_t> end_hash_indices(const RainbowTable& table, std::uint16_t h) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < table.end_hashed.size(); ++i) {
    if (table.end_hashed[i] == h) {
      rows.push_back(i);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Table file (v1)
//
//   QIRIS v1 seed=<decimal> chain=R1,R2,R3,R4\n
//   <start>\t<end>\n
//   ...
//
// ASCII only. end_hashed is not stored; it is recomputed from the seed.

inline constexpr std::string_view kTableMagic = "QIRIS";
inline constexpr std::string_view kTableChain = "chain=R1,R2,R3,R4";

inline void write_table(std::ostream& out, const RainbowTable& table) {
  out << kTableMagic << " v1 seed=" << table.perm_seed << ' ' << kTableChain << '\n';
  for (const auto& chain : table.chains) {
    out << chain.start << '\t' << chain.end << '\n';
  }
}

namespace detail {

inline std::uint64_t parse_header(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream split(line);
  for (std::string f; std::getline(split, f, ' ');) {
    fields.push_back(f);
  }
  if (fields.empty() || fields[0] != kTableMagic) {
    throw FormatError("table file has no QIRIS header");
  }
  if (fields.size() < 2 || fields[1] != "v1") {
    throw FormatError("unsupported table version '" + (fields.size() < 2 ? "" : fields[1]) + "'");
  }
  if (fields.size() != 4 || fields[3] != kTableChain) {
    throw FormatError("malformed table header: '" + line + "'");
  }
  constexpr std::string_view kSeedKey = "seed=";
  const std::string& seed = fields[2];
  const std::string_view digits = std::string_view(seed).substr(std::min(seed.size(), kSeedKey.size()));
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (seed.rfind(kSeedKey, 0) != 0 || ec != std::errc{} || ptr != digits.data() + digits.size() ||
      std::to_string(value) != digits) {
    throw FormatError("malformed seed field in table header: '" + seed + "'");
  }
  return value;
}

}  // namespace detail

inline RainbowTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("table file is empty");
  }
  const std::uint64_t seed = detail::parse_header(line);
  const PearsonPermutation perm(seed);

  RainbowTable table;
  table.perm_seed = seed;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto where = " (line " + std::to_string(line_no) + ")";
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("expected exactly one tab separator" + where);
    }
    std::string start = line.substr(0, tab);
    std::string end = line.substr(tab + 1);
    if (!detail::is_valid_plaintext(start)) {
      throw FormatError("invalid start plaintext" + where);
    }
    if (end.size() != 3 || !std::all_of(end.begin(), end.end(), is_base62)) {
      throw FormatError("end plaintext must be 3 base62 characters" + where);
    }
    table.end_hashed.push_back(pearson16(end, perm));
    table.chains.push_back({std::move(start), std::move(end)});
  }
  if (table.empty()) {
    throw FormatError("table file has no chains");
  }
  return table;
}

inline void save_table(const RainbowTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  write_table(out, table);
  if (!out.flush()) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

inline RainbowTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  return read_table(in);
}

}  // namespace qiris
