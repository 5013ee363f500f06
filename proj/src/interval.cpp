#include "tatirp/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tatirp {

namespace {
constexpr std::string_view kCodes = "bmocfesl";
}

char relationCode(Relation r) noexcept { return kCodes[static_cast<std::size_t>(r)]; }

std::optional<Relation> relationFromCode(char c) noexcept {
  auto pos = kCodes.find(c);
  if (pos == std::string_view::npos) return std::nullopt;
  return static_cast<Relation>(pos);
}

void Constraints::validate() const {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  if (minGap < 0) throw std::invalid_argument("min-gap must be >= 0");
  if (minDura < 0) throw std::invalid_argument("min-dura must be >= 0");
  if (maxGap < minGap) throw std::invalid_argument("max-gap must be >= min-gap");
  if (maxDura < minDura) throw std::invalid_argument("max-dura must be >= min-dura");
}

bool intervalPrecedes(const SymbolicInterval& a, const SymbolicInterval& b, Time epsilon) noexcept {
  switch (compareEps(a.start, b.start, epsilon)) {
    case EpsOrdering::PrecedesEps: return true;
    case EpsOrdering::FollowsEps: return false;
    case EpsOrdering::QuasiEqual: break;
  }
  switch (compareEps(a.end, b.end, epsilon)) {
    case EpsOrdering::PrecedesEps: return true;
    case EpsOrdering::FollowsEps: return false;
    case EpsOrdering::QuasiEqual: break;
  }
  return a.event < b.event;
}

Relation classifyRelation(const Envelope& a, const Envelope& b, Time epsilon) {
  const auto startOrder = compareEps(a.start, b.start, epsilon);
  if (startOrder == EpsOrdering::FollowsEps) {
    throw std::logic_error("classifyRelation: first interval starts after the second (start " +
                           std::to_string(a.start) + " vs " + std::to_string(b.start) + ")");
  }

  switch (compareEps(a.end, b.start, epsilon)) {
    case EpsOrdering::PrecedesEps: return Relation::Before;
    case EpsOrdering::QuasiEqual: return Relation::Meet;
    case EpsOrdering::FollowsEps: break;
  }

  const auto endOrder = compareEps(a.end, b.end, epsilon);
  if (startOrder == EpsOrdering::QuasiEqual) {
    switch (endOrder) {
      case EpsOrdering::PrecedesEps: return Relation::Start;
      case EpsOrdering::QuasiEqual: return Relation::Equal;
      case EpsOrdering::FollowsEps: return Relation::LeftContain;
    }
  }
  switch (endOrder) {
    case EpsOrdering::PrecedesEps: return Relation::Overlap;
    case EpsOrdering::QuasiEqual: return Relation::FinishedBy;
    case EpsOrdering::FollowsEps: break;
  }
  return Relation::Contain;
}

std::optional<Relation> checkExtensionValidity(const Envelope& a, const SymbolicInterval& b,
                                               const Constraints& c) {
  const Relation rel = classifyRelation(a, envelopeOf(b), c.epsilon);
  if (rel == Relation::Before) {
    const Time gap = b.start - a.end;
    if (gap < c.minGap || gap > c.maxGap) return std::nullopt;
  }
  const Time merged = std::max(a.end, b.end) - std::min(a.start, b.start);
  if (!c.durationAllowed(merged)) return std::nullopt;
  return rel;
}

}  // namespace tatirp
