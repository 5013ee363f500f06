#pragma once

#include <map>
#include <vector>

#include "tatirp/database.hpp"
#include "tatirp/interval.hpp"

namespace tatirp::oracle {

struct Support {
  std::size_t vsup = 0;
  std::vector<SequenceId> sids;  // sorted

  friend bool operator==(const Support&, const Support&) = default;
};

using OracleResult = std::map<std::vector<EventId>, Support>;

/// Limits that keep exhaustive enumeration tractable.
inline constexpr std::size_t kMaxSequenceLength = 16;
inline constexpr std::size_t kMaxTotalIntervals = 512;

/// Brute force: every index-increasing tuple of up to maxLen intervals of
/// each sequence, checked step by step against the running envelope. Keeps
/// event sequences supported by at least `threshold` sequences. Throws
/// std::invalid_argument when the database exceeds the limits above.
OracleResult enumerateAll(const Database& db, const Constraints& c, std::size_t maxLen, std::size_t threshold);

/// Entries whose event sequence contains qes as a subsequence.
OracleResult targetFilter(const OracleResult& r, const std::vector<EventId>& qes);

}  // namespace tatirp::oracle
