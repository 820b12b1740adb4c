#pragma once

#include <stdexcept>
#include <string>

namespace qiris {

// Malformed input text: digests, table files, wordlist entries.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs that are individually valid but do not belong together,
// e.g. a table built with one permutation seed searched with another.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qiris
