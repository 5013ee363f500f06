#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tatirp/database.hpp"
#include "tatirp/vertical.hpp"

namespace tatirp {

/// Ordered events that every target pattern must contain as a subsequence.
class QueryEventSequence {
 public:
  QueryEventSequence() = default;
  /// Throws std::invalid_argument when empty.
  explicit QueryEventSequence(std::vector<EventId> events);

  /// Resolves names against the database alphabet. Unknown names map to
  /// kUnknownEvent, which no sequence contains.
  static QueryEventSequence resolve(const Database& db, std::span<const std::string> names);

  std::span<const EventId> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  EventId operator[](std::size_t i) const { return events_[i]; }

 private:
  std::vector<EventId> events_;
};

enum class MiningMode {
  Targeted,    // query-driven search
  Full,        // every frequent S-TIRP, query ignored
  FullFilter,  // full search, then keep results containing the query
};

struct Strategies {
  bool usfp = true;
  bool uqpp = true;
  bool uepp = true;
};

struct MiningConfig {
  double minSup = 0.0;  // fraction of the original database size, in (0, 1]
  Constraints constraints;
  std::optional<std::size_t> maxPatternLength;
  Strategies strategies;
  MiningMode mode = MiningMode::Targeted;
  unsigned threads = 1;
  bool collectInstances = false;

  void validate() const;
};

/// Distinct relation strings seen in one supporting sequence.
struct InstanceList {
  SequenceId sid = 0;
  std::vector<std::string> relations;

  friend bool operator==(const InstanceList&, const InstanceList&) = default;
};

struct STirpResult {
  std::vector<EventId> events;
  std::size_t vsup = 0;
  std::vector<SequenceId> supportingSids;  // sorted
  std::vector<InstanceList> instances;     // filled when collectInstances is set

  friend bool operator==(const STirpResult& a, const STirpResult& b) {
    return a.events == b.events && a.vsup == b.vsup && a.supportingSids == b.supportingSids;
  }
};

struct MiningStats {
  std::size_t sequencesFiltered = 0;
  std::size_t joinOperations = 0;
  std::size_t prunedByUqpp = 0;
  std::size_t prunedByUepp = 0;
  std::size_t patternsOutput = 0;
  std::size_t duplicatesDropped = 0;
  std::chrono::nanoseconds elapsed{0};

  MiningStats& operator+=(const MiningStats& o);
};

struct MiningOutput {
  std::vector<STirpResult> patterns;  // sorted by event sequence
  MiningStats stats;
};

/// Smallest support count k with k >= minSup * databaseSize.
std::size_t supportThreshold(double minSup, std::size_t databaseSize);

/// Greedy left-to-right subsequence test.
bool containsSubsequence(std::span<const EventId> sequenceEvents, std::span<const EventId> query) noexcept;

/// Sequences whose event order contains the query; order and sids preserved.
Database usfpFilter(const Database& db, const QueryEventSequence& qes);

/// Mines target S-TIRPs (or all frequent ones in Full mode). The query may
/// be empty only in Full mode.
MiningOutput mine(const Database& db, const QueryEventSequence& qes, const MiningConfig& cfg);

/// Keeps results whose events contain the query.
std::vector<STirpResult> postFilter(std::vector<STirpResult> results, const QueryEventSequence& qes);

}  // namespace tatirp
