#pragma once

// Hash and reduction primitives: MD5 hex digests, the seeded 16-bit Pearson
// hash and the base62 reduction functions that link a chain together.

#include <openssl/evp.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qiris/errors.hpp"
#include "qiris/splitmix64.hpp"

namespace qiris {

inline constexpr std::string_view kBase62Alphabet =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

inline constexpr bool is_base62(char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// 128-bit MD5 digest held as 32 lowercase hex characters.
class HexDigest {
 public:
  static constexpr std::size_t kLength = 32;

  // Accepts upper- or lowercase hex; stores lowercase.
  static HexDigest parse(std::string_view text) {
    if (text.size() != kLength) {
      throw FormatError("digest must be 32 hex characters, got " +
                        std::to_string(text.size()));
    }
    std::string hex(text);
    for (char& c : hex) {
      if (c >= 'A' && c <= 'F') {
        c = static_cast<char>(c - 'A' + 'a');
      } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
        throw FormatError("digest contains a non-hex character: '" + std::string(text) + "'");
      }
    }
    return HexDigest(std::move(hex));
  }

  static HexDigest from_bytes(std::span<const unsigned char, 16> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string hex(kLength, '0');
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      hex[2 * i] = kDigits[bytes[i] >> 4];
      hex[2 * i + 1] = kDigits[bytes[i] & 0x0F];
    }
    return HexDigest(std::move(hex));
  }

  const std::string& str() const noexcept { return hex_; }

  // Integer value of the leading 8 hex characters (the reduction input).
  std::uint32_t prefix32() const noexcept {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      const char c = hex_[i];
      v = (v << 4) | static_cast<std::uint32_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    return v;
  }

  friend bool operator==(const HexDigest&, const HexDigest&) = default;

 private:
  explicit HexDigest(std::string hex) : hex_(std::move(hex)) {}
  std::string hex_;
};

inline HexDigest md5_hex(std::span<const std::byte> data) {
  std::array<unsigned char, 16> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_md5(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("MD5 digest computation failed");
  }
  return HexDigest::from_bytes(out);
}

inline HexDigest md5_hex(std::string_view text) {
  return md5_hex(std::as_bytes(std::span(text.data(), text.size())));
}

// One reduction function R_i: adds `nonce` to the digest prefix and emits
// `length` base62 digits, least significant first.
struct ReductionSpec {
  std::uint32_t nonce = 0;
  std::size_t length = 1;
  int index = 1;

  friend bool operator==(const ReductionSpec&, const ReductionSpec&) = default;
};

inline std::vector<ReductionSpec> canonical_reduction_specs() {
  return {{2, 6, 1}, {3, 4, 2}, {4, 5, 3}, {1, 3, 4}};
}

inline std::string reduce(const HexDigest& hash, const ReductionSpec& spec) {
  if (spec.length == 0) {
    throw std::invalid_argument("reduction length must be at least 1");
  }
  std::uint64_t v = std::uint64_t{hash.prefix32()} + spec.nonce;
  std::string out;
  out.reserve(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) {
    out.push_back(kBase62Alphabet[v % 62]);
    v /= 62;
  }
  return out;
}

// Seeded permutation of [0, 65534] driving the 16-bit Pearson hash.
//
// The table deliberately has 65535 entries (not 65536) and the recurrence
// works modulo 65535, so pearson16 never yields 65535.
class PearsonPermutation {
 public:
  static constexpr std::size_t kSize = 65535;
  static constexpr std::uint64_t kDefaultSeed = 44;

  // Fisher-Yates from the top index down, j = splitmix64() mod (i + 1).
  explicit PearsonPermutation(std::uint64_t seed = kDefaultSeed) : seed_(seed), table_(kSize) {
    for (std::size_t i = 0; i < kSize; ++i) {
      table_[i] = static_cast<std::uint16_t>(i);
    }
    SplitMix64 rng(seed);
    for (std::size_t i = kSize - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
      std::swap(table_[i], table_[j]);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::span<const std::uint16_t> table() const noexcept { return table_; }
  std::uint16_t operator[](std::size_t i) const noexcept { return table_[i]; }

  friend bool operator==(const PearsonPermutation&, const PearsonPermutation&) = default;

 private:
  std::uint64_t seed_;
  std::vector<std::uint16_t> table_;
};

inline PearsonPermutation build_permutation(std::uint64_t seed = PearsonPermutation::kDefaultSeed) {
  return PearsonPermutation(seed);
}

inline std::uint16_t pearson16(std::string_view text, const PearsonPermutation& perm) {
  if (text.empty()) {
    throw std::invalid_argument("pearson16 requires non-empty text");
  }
  std::uint32_t h = static_cast<std::uint32_t>(text.size() % PearsonPermutation::kSize);
  for (const char c : text) {
    const auto code = static_cast<unsigned char>(c);
    if (code > 0x7F) {
      throw FormatError("pearson16 input must be ASCII");
    }
    h = perm[(h + code) % PearsonPermutation::kSize];
  }
  return static_cast<std::uint16_t>(h);
}

}  // namespace qiris
