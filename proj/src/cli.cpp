#include "tatirp/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace tatirp::cli {

namespace {

std::vector<std::string> splitList(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty item in list '" + text + "'");
    items.push_back(item);
  }
  return items;
}

Time parseBound(const std::string& flag, const std::string& text) {
  if (text == "inf" || text == "none") return kUnbounded;
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument(flag + " expects an integer or 'inf', got '" + text + "'");
  }
  return static_cast<Time>(v);
}

MiningConfig miningConfig(const CliConfig& cfg) {
  if (!cfg.minSup) throw std::invalid_argument("--min-sup is required");
  MiningConfig m;
  m.minSup = *cfg.minSup;
  m.constraints = cfg.constraints;
  m.maxPatternLength = cfg.maxLength;
  m.strategies = cfg.strategies;
  m.mode = cfg.mode;
  m.threads = cfg.threads;
  m.validate();
  return m;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

double milliseconds(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

void logPeakRss(std::ostream& err) {
#if defined(__unix__) || defined(__APPLE__)
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) == 0) err << "peak_rss_kb=" << usage.ru_maxrss << '\n';
#else
  (void)err;
#endif
}

QueryEventSequence queryFor(const Database& db, const CliConfig& cfg) {
  if (cfg.qes.empty()) return {};
  return QueryEventSequence::resolve(db, cfg.qes);
}

}  // namespace

Variant variantByName(const std::string& name) {
  if (name == "fasttirp") return {name, MiningMode::Full, {false, false, true}};
  if (name == "fasttirp-post") return {name, MiningMode::FullFilter, {false, false, true}};
  if (name == "tatirp1") return {name, MiningMode::Targeted, {true, false, true}};
  if (name == "tatirp2") return {name, MiningMode::Targeted, {false, true, true}};
  if (name == "tatirp12") return {name, MiningMode::Targeted, {true, true, true}};
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void writeResults(std::ostream& out, const Database& db, const std::vector<STirpResult>& patterns) {
  for (const auto& p : patterns) {
    for (std::size_t i = 0; i < p.events.size(); ++i) out << (i ? " " : "") << db.name(p.events[i]);
    out << '\t' << p.vsup << '\t';
    for (std::size_t i = 0; i < p.supportingSids.size(); ++i) out << (i ? "," : "") << p.supportingSids[i];
    out << '\n';
  }
}

void writeStats(std::ostream& out, const MiningStats& stats) {
  out << "sequences_filtered=" << stats.sequencesFiltered << '\n'
      << "join_operations=" << stats.joinOperations << '\n'
      << "pruned_uqpp=" << stats.prunedByUqpp << '\n'
      << "pruned_uepp=" << stats.prunedByUepp << '\n'
      << "patterns=" << stats.patternsOutput << '\n'
      << "elapsed_ms=" << std::fixed << std::setprecision(3) << milliseconds(stats.elapsed) << '\n';
  out.unsetf(std::ios::floatfield);
}

int runMine(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto mining = miningConfig(cfg);
    if (cfg.mode != MiningMode::Full && cfg.qes.empty()) throw std::invalid_argument("--qes is required");
    const auto db = loadDatabase(cfg.inputPath, cfg.constraints.epsilon);
    const auto result = mine(db, queryFor(db, cfg), mining);

    Output results(cfg.outputPath, out);
    writeResults(results.get(), db, result.patterns);
    if (!cfg.statsPath.empty()) {
      Output stats(cfg.statsPath, out);
      writeStats(stats.get(), result.stats);
    }
    logPeakRss(err);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int runBench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    auto base = miningConfig(cfg);
    if (cfg.qes.empty()) throw std::invalid_argument("--qes is required");
    if (cfg.variants.empty()) throw std::invalid_argument("--variants must name at least one variant");
    std::vector<Variant> variants;
    for (const auto& name : cfg.variants) variants.push_back(variantByName(name));

    const auto db = loadDatabase(cfg.inputPath, cfg.constraints.epsilon);
    const auto qes = queryFor(db, cfg);

    Output table(cfg.outputPath, out);
    table.get() << "variant\tpatterns\tjoin_operations\telapsed_ms\n";
    std::optional<std::vector<STirpResult>> reference;
    std::string referenceName;
    bool mismatch = false;
    for (const auto& v : variants) {
      auto m = base;
      m.mode = v.mode;
      m.strategies = v.strategies;
      const auto result = mine(db, qes, m);
      table.get() << v.name << '\t' << result.patterns.size() << '\t' << result.stats.joinOperations << '\t'
                  << std::fixed << std::setprecision(3) << milliseconds(result.stats.elapsed) << '\n';
      table.get().unsetf(std::ios::floatfield);
      if (v.mode == MiningMode::Full) continue;
      if (!reference) {
        reference = result.patterns;
        referenceName = v.name;
      } else if (*reference != result.patterns) {
        err << "error: output of " << v.name << " differs from " << referenceName << '\n';
        mismatch = true;
      }
    }
    logPeakRss(err);
    return mismatch ? 1 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int runGen(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto db = generateSynthetic(cfg.gen);
    Output file(cfg.outputPath, out);
    writeDatabase(file.get(), db);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Targeted mining of time-interval related patterns"};
  app.require_subcommand(1);
  CliConfig cfg;

  std::string qes;
  std::string mode = "targeted";
  std::string variants;
  std::string maxGap = "30";
  std::string maxDura = "2000";
  bool noUsfp = false, noUqpp = false, noUepp = false;

  auto addMiningFlags = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.inputPath, "Database file")->required();
    sub->add_option("--qes", qes, "Query events, comma separated");
    sub->add_option("--min-sup", cfg.minSup, "Minimum support as a fraction of the database")->required();
    sub->add_option("--epsilon", cfg.constraints.epsilon, "Noise margin")->capture_default_str();
    sub->add_option("--min-gap", cfg.constraints.minGap, "Minimum gap of a before relation")->capture_default_str();
    sub->add_option("--max-gap", maxGap, "Maximum gap of a before relation, or inf")->capture_default_str();
    sub->add_option("--min-dura", cfg.constraints.minDura, "Minimum pattern duration")->capture_default_str();
    sub->add_option("--max-dura", maxDura, "Maximum pattern duration, or inf")->capture_default_str();
    sub->add_option("--max-length", cfg.maxLength, "Maximum number of events per pattern");
    sub->add_option("--output", cfg.outputPath, "Output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  };

  auto* mineCmd = app.add_subcommand("mine", "Mine target S-TIRPs");
  addMiningFlags(mineCmd);
  mineCmd->add_option("--mode", mode, "targeted, full or full-post")
      ->check(CLI::IsMember({"targeted", "full", "full-post"}))
      ->capture_default_str();
  mineCmd->add_flag("--no-usfp", noUsfp, "Disable sequence filtering");
  mineCmd->add_flag("--no-uqpp", noUqpp, "Disable query-pair pruning");
  mineCmd->add_flag("--no-uepp", noUepp, "Disable extension-pair pruning");
  mineCmd->add_option("--stats", cfg.statsPath, "Statistics file");

  auto* benchCmd = app.add_subcommand("bench", "Compare algorithm variants on one input");
  addMiningFlags(benchCmd);
  benchCmd->add_option("--variants", variants,
                       "Comma separated subset of fasttirp,fasttirp-post,tatirp1,tatirp2,tatirp12");

  auto* genCmd = app.add_subcommand("gen", "Generate a synthetic database");
  genCmd->add_option("--sequences", cfg.gen.numSequences, "Number of sequences")->capture_default_str();
  genCmd->add_option("--intervals", cfg.gen.intervalsPerSequence, "Intervals per sequence")->capture_default_str();
  genCmd->add_option("--alphabet", cfg.gen.alphabetSize, "Number of event types")->capture_default_str();
  genCmd->add_option("--max-time", cfg.gen.maxTime, "Start times are drawn from [0, max-time)")->capture_default_str();
  genCmd->add_option("--max-duration", cfg.gen.maxDuration, "Durations are drawn from [1, max-duration]")
      ->capture_default_str();
  genCmd->add_option("--seed", cfg.gen.seed, "Random seed")->capture_default_str();
  genCmd->add_option("--output", cfg.outputPath, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!qes.empty()) cfg.qes = splitList(qes);
    if (!variants.empty()) cfg.variants = splitList(variants);
    cfg.constraints.maxGap = parseBound("--max-gap", maxGap);
    cfg.constraints.maxDura = parseBound("--max-dura", maxDura);
    cfg.mode = mode == "full" ? MiningMode::Full : mode == "full-post" ? MiningMode::FullFilter : MiningMode::Targeted;
    cfg.strategies = {!noUsfp, !noUqpp, !noUepp};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (mineCmd->parsed()) return runMine(cfg, out, err);
  if (benchCmd->parsed()) return runBench(cfg, out, err);
  return runGen(cfg, out, err);
}

}  // namespace tatirp::cli
