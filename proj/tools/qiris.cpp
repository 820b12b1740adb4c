// qiris: build rainbow tables and recover MD5 hashes with a simulated
// Grover membership test.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qiris/commands.hpp"

namespace {

void add_search_flags(CLI::App& cmd, qiris::cli::CliConfig& config) {
  cmd.add_option("--table", config.table_path, "Table file written by `generate`")->required();
  cmd.add_option("--shots", config.shots, "Measurement shots per Grover run")
      ->check(CLI::Range(1U, 1U << 30));
  cmd.add_option("--rng-seed", config.rng_seed, "Seed for shot sampling");
  cmd.add_option("--classical-threshold", config.classical_threshold,
                 "Buckets with at most this many residues are checked classically")
      ->check(CLI::Range(0, 16));
  cmd.add_flag("--no-quantum{false}", config.quantum, "Decide every bucket classically");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QIris hybrid quantum-classical rainbow table"};
  app.require_subcommand(1);

  std::string wordlist;
  std::string out_path;
  std::uint64_t perm_seed = qiris::PearsonPermutation::kDefaultSeed;
  auto* generate = app.add_subcommand("generate", "Build a table from a wordlist");
  generate->add_option("--wordlist", wordlist, "One plaintext per line")->required();
  generate->add_option("--out", out_path, "Table file to write")->required();
  generate->add_option("--perm-seed", perm_seed, "Pearson permutation seed");

  qiris::cli::CliConfig crack_config;
  std::string hash;
  bool report = false;
  auto* crack = app.add_subcommand("crack", "Recover the plaintext of one MD5 hash");
  add_search_flags(*crack, crack_config);
  crack->add_flag("--report", report, "Print search counters as key=value lines");
  crack->add_option("hash", hash, "MD5 digest (32 hex characters)")->required();

  qiris::cli::CliConfig compare_config;
  std::string hashes_path;
  auto* compare = app.add_subcommand("compare", "Run hybrid and classical search side by side");
  add_search_flags(*compare, compare_config);
  compare->add_option("--hashes", hashes_path, "One MD5 digest per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qiris::cli::kSuccess : qiris::cli::kUsageError;
  }

  if (*generate) {
    return qiris::cli::cmd_generate(wordlist, out_path, perm_seed, std::cout, std::cerr);
  }
  if (*crack) {
    return qiris::cli::cmd_crack(crack_config, hash, report, std::cout, std::cerr);
  }
  return qiris::cli::cmd_compare(compare_config, hashes_path, std::cout, std::cerr);
}
