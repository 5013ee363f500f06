#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tatirp/database.hpp"
#include "tatirp/miner.hpp"

namespace tatirp::cli {

struct CliConfig {
  std::string inputPath;
  std::vector<std::string> qes;
  std::optional<double> minSup;
  Constraints constraints{0, 0, 30, 0, 2000};
  std::optional<std::size_t> maxLength;
  MiningMode mode = MiningMode::Targeted;
  Strategies strategies;
  std::string outputPath;  // empty: stdout
  std::string statsPath;   // empty: not written
  unsigned threads = 1;
  std::vector<std::string> variants{"fasttirp", "fasttirp-post", "tatirp1", "tatirp2", "tatirp12"};
  GeneratorParams gen;
};

/// Named algorithm variants compared by `bench`.
struct Variant {
  std::string name;
  MiningMode mode;
  Strategies strategies;
};

/// Throws std::invalid_argument for unknown names.
Variant variantByName(const std::string& name);

/// `<events joined by space>\t<vsup>\t<sids joined by comma>` per pattern.
void writeResults(std::ostream& out, const Database& db, const std::vector<STirpResult>& patterns);

/// key=value lines: sequences_filtered, join_operations, pruned_uqpp,
/// pruned_uepp, patterns, elapsed_ms.
void writeStats(std::ostream& out, const MiningStats& stats);

int runMine(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int runBench(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int runGen(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tatirp::cli
