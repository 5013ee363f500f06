#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tatirp/interval.hpp"

namespace tatirp {

using SequenceId = std::uint32_t;

struct TimeIntervalSequence {
  SequenceId sid = 0;
  std::vector<SymbolicInterval> intervals;  // sorted by intervalPrecedes

  friend bool operator==(const TimeIntervalSequence&, const TimeIntervalSequence&) = default;
};

/// Thrown by the parser; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A horizontal database. Event names are interned into ids ordered the same
/// way as the names, so the alphabet is always sorted.
class Database {
 public:
  Database() = default;

  /// Takes sequences whose intervals use ids into `alphabet`. Sorts each
  /// sequence with the given epsilon and validates. Throws
  /// std::invalid_argument on duplicate sids, duplicate intervals, inverted
  /// bounds, unknown event ids or an unsorted/duplicated alphabet.
  Database(std::vector<std::string> alphabet, std::vector<TimeIntervalSequence> sequences,
           Time epsilon = 0);

  std::span<const TimeIntervalSequence> sequences() const noexcept { return sequences_; }
  std::span<const std::string> alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }

  /// Epsilon the sequences were sorted with.
  Time epsilon() const noexcept { return epsilon_; }

  /// Copy with every sequence re-sorted under another epsilon.
  Database resorted(Time epsilon) const;

  const std::string& name(EventId e) const { return alphabet_.at(index(e)); }

  /// Id for a name, or kUnknownEvent.
  EventId find(std::string_view name) const noexcept;

  /// Same alphabet, subset of the sequences (order preserved).
  Database withSequences(std::vector<TimeIntervalSequence> sequences) const;

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<TimeIntervalSequence> sequences_;
  Time epsilon_ = 0;
};

/// Orders intervals by intervalPrecedes. The input is first put in exact
/// (start, end, event) order and then insertion-sorted with the epsilon
/// comparator, which keeps the result deterministic when epsilon > 0 makes
/// the comparator non-transitive. For any i < j of the output,
/// out[i].start <= out[j].start + epsilon.
std::vector<SymbolicInterval> sortSequence(std::vector<SymbolicInterval> intervals, Time epsilon);

/// One sequence per line: `SID|EVENT,START,END EVENT,START,END ...`.
/// Blank lines and lines starting with '#' are skipped.
Database parseDatabase(std::istream& in, Time epsilon = 0);
Database parseDatabase(std::string_view text, Time epsilon = 0);
Database loadDatabase(const std::string& path, Time epsilon = 0);

void writeDatabase(std::ostream& out, const Database& db);
std::string serializeDatabase(const Database& db);

struct GeneratorParams {
  std::size_t numSequences = 1000;
  std::size_t intervalsPerSequence = 20;
  std::size_t alphabetSize = 100;
  Time maxTime = 1000;
  Time maxDuration = 100;
  std::uint64_t seed = 42;

  void validate() const;
};

/// Uniform synthetic database. Events are named "1".."alphabetSize"; sids
/// run from 1. Deterministic for a fixed seed.
Database generateSynthetic(const GeneratorParams& p);

}  // namespace tatirp
