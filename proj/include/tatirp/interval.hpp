#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace tatirp {

using Time = std::int64_t;

/// Sentinel for an open upper bound on gaps and durations.
inline constexpr Time kUnbounded = std::numeric_limits<Time>::max();

/// Interned event type. Ids are assigned in byte-wise lexicographic order of
/// the event names, so comparing ids compares names.
enum class EventId : std::uint32_t {};

/// Query events that do not occur in a database resolve to this id. It never
/// equals an interned id.
inline constexpr EventId kUnknownEvent{std::numeric_limits<std::uint32_t>::max()};

constexpr std::uint32_t index(EventId e) noexcept { return static_cast<std::uint32_t>(e); }

struct SymbolicInterval {
  Time start = 0;
  Time end = 0;
  EventId event{};

  Time duration() const noexcept { return end - start; }

  friend bool operator==(const SymbolicInterval&, const SymbolicInterval&) = default;
};

/// Envelope of a pattern occurrence: min start and max end over its intervals.
struct Envelope {
  Time start = 0;
  Time end = 0;

  Time duration() const noexcept { return end - start; }
};

constexpr Envelope envelopeOf(const SymbolicInterval& iv) noexcept { return {iv.start, iv.end}; }

enum class Relation : std::uint8_t {
  Before,       // b
  Meet,         // m
  Overlap,      // o
  Contain,      // c
  FinishedBy,   // f
  Equal,        // e
  Start,        // s
  LeftContain,  // l
};

inline constexpr int kRelationCount = 8;

char relationCode(Relation r) noexcept;
std::optional<Relation> relationFromCode(char c) noexcept;

struct Constraints {
  Time epsilon = 0;
  Time minGap = 0;
  Time maxGap = kUnbounded;
  Time minDura = 0;
  Time maxDura = kUnbounded;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  bool durationAllowed(Time d) const noexcept { return d >= minDura && d <= maxDura; }
};

enum class EpsOrdering : std::uint8_t { PrecedesEps, QuasiEqual, FollowsEps };

/// Places t1 relative to t2 with noise margin epsilon.
constexpr EpsOrdering compareEps(Time t1, Time t2, Time epsilon) noexcept {
  if (t2 - t1 > epsilon) return EpsOrdering::PrecedesEps;
  if (t1 - t2 > epsilon) return EpsOrdering::FollowsEps;
  return EpsOrdering::QuasiEqual;
}

/// The sequence order: by start, then end, then event name, each time
/// comparison tolerant to epsilon. Not transitive when epsilon > 0.
bool intervalPrecedes(const SymbolicInterval& a, const SymbolicInterval& b, Time epsilon) noexcept;

/// Relation of b to a, where a does not start after b by more than epsilon.
/// Throws std::logic_error when that precondition is violated.
///
///   b.start - a.end > eps                 -> b
///   |b.start - a.end| <= eps              -> m
///   starts quasi-equal, compare ends      -> s (b later) / e / l (b earlier)
///   a starts first, compare ends          -> o (b later) / f / c (b earlier)
Relation classifyRelation(const Envelope& a, const Envelope& b, Time epsilon);

inline Relation classifyRelation(const SymbolicInterval& a, const SymbolicInterval& b, Time epsilon) {
  return classifyRelation(envelopeOf(a), envelopeOf(b), epsilon);
}

/// Relation when appending b to an occurrence with envelope a, or nullopt if
/// the gap (before only) or the merged duration violates the constraints.
std::optional<Relation> checkExtensionValidity(const Envelope& a, const SymbolicInterval& b,
                                               const Constraints& c);

}  // namespace tatirp
