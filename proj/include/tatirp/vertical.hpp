#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tatirp/database.hpp"
#include "tatirp/interval.hpp"

namespace tatirp {

/// One embedding of a pattern in one sequence. Positions (eid, sources) are
/// 1-based indices into the sorted sequence.
struct PatternOccurrence {
  SequenceId sid = 0;
  std::uint32_t eid = 0;
  Time startT = 0;
  Time endT = 0;
  std::vector<Relation> relations;  // one per extension step
  std::vector<std::uint32_t> sources;

  friend bool operator==(const PatternOccurrence&, const PatternOccurrence&) = default;
};

/// All occurrences of one S-TIRP. Rows are grouped by sequence in database
/// order; per-row sources and relations live in flat arrays of fixed stride.
class VerticalDatabase {
 public:
  struct Row {
    std::uint32_t ordinal;  // position of the sequence in the database
    SequenceId sid;
    std::uint32_t eid;
    Time startT;
    Time endT;
  };

  VerticalDatabase() = default;
  explicit VerticalDatabase(std::vector<EventId> events);

  std::span<const EventId> events() const noexcept { return events_; }
  EventId lastEvent() const { return events_.back(); }
  std::size_t length() const noexcept { return events_.size(); }

  std::span<const Row> rows() const noexcept { return rows_; }
  std::size_t rowCount() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  std::span<const std::uint32_t> sources(std::size_t row) const noexcept {
    return {sources_.data() + row * length(), length()};
  }
  std::span<const Relation> relations(std::size_t row) const noexcept {
    return {relations_.data() + row * (length() - 1), length() - 1};
  }
  PatternOccurrence occurrence(std::size_t row) const;

  /// Rows must arrive with non-decreasing ordinal.
  void append(const Row& row, std::span<const std::uint32_t> sources, std::span<const Relation> relations);

  /// Number of distinct sequences among rows.
  std::size_t verticalSupport() const noexcept { return support_; }
  std::size_t horizontalSupport(SequenceId sid) const noexcept;
  std::vector<SequenceId> supportingSids() const;

  /// First row of the given sequence ordinal, or rowCount().
  std::size_t lowerBound(std::uint32_t ordinal) const noexcept;

 private:
  std::vector<EventId> events_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> sources_;
  std::vector<Relation> relations_;
  std::size_t support_ = 0;
};

inline std::size_t verticalSupport(const VerticalDatabase& vdb) noexcept { return vdb.verticalSupport(); }

/// Vertical support of ordered event pairs, ignoring gap bounds.
class PairSupportMatrix {
 public:
  PairSupportMatrix() = default;
  explicit PairSupportMatrix(std::size_t alphabetSize);

  /// Zero for pairs never seen and for ids outside the alphabet.
  std::uint32_t operator()(EventId first, EventId second) const noexcept {
    const auto a = index(first), b = index(second);
    if (a >= n_ || b >= n_) return 0;
    return counts_[static_cast<std::size_t>(a) * n_ + b];
  }
  std::size_t alphabetSize() const noexcept { return n_; }

 private:
  friend PairSupportMatrix buildPSM(const Database& db, const Constraints& c);
  std::size_t n_ = 0;
  std::vector<std::uint32_t> counts_;
};

/// One vertical database per event id (index = id), keeping only intervals
/// whose duration lies in [minDura, maxDura].
std::vector<VerticalDatabase> buildSingletonVDBs(const Database& db, const Constraints& c);

/// PSM(e1, e2) = number of sequences holding intervals I before J (sequence
/// order) with I.event = e1, J.event = e2 and merged duration <= maxDura.
PairSupportMatrix buildPSM(const Database& db, const Constraints& c);

/// S-expansion join: appends `candidate` to every prefix occurrence that can
/// be extended by a later occurrence in `singleton` under the constraints.
VerticalDatabase extendVDB(const VerticalDatabase& prefix, EventId candidate,
                           const VerticalDatabase& singleton, const Constraints& c);

}  // namespace tatirp
