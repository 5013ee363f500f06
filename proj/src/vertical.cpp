#include "tatirp/vertical.hpp"

#include <algorithm>

namespace tatirp {

VerticalDatabase::VerticalDatabase(std::vector<EventId> events) : events_(std::move(events)) {}

PatternOccurrence VerticalDatabase::occurrence(std::size_t row) const {
  const auto& r = rows_.at(row);
  const auto src = sources(row);
  const auto rel = relations(row);
  return {r.sid, r.eid, r.startT, r.endT, {rel.begin(), rel.end()}, {src.begin(), src.end()}};
}

void VerticalDatabase::append(const Row& row, std::span<const std::uint32_t> sources,
                              std::span<const Relation> relations) {
  if (rows_.empty() || rows_.back().ordinal != row.ordinal) ++support_;
  rows_.push_back(row);
  sources_.insert(sources_.end(), sources.begin(), sources.end());
  relations_.insert(relations_.end(), relations.begin(), relations.end());
}

std::size_t VerticalDatabase::horizontalSupport(SequenceId sid) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [sid](const Row& r) { return r.sid == sid; }));
}

std::vector<SequenceId> VerticalDatabase::supportingSids() const {
  std::vector<SequenceId> sids;
  sids.reserve(support_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i == 0 || rows_[i].ordinal != rows_[i - 1].ordinal) sids.push_back(rows_[i].sid);
  }
  std::sort(sids.begin(), sids.end());
  return sids;
}

std::size_t VerticalDatabase::lowerBound(std::uint32_t ordinal) const noexcept {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), ordinal,
                             [](const Row& r, std::uint32_t o) { return r.ordinal < o; });
  return static_cast<std::size_t>(it - rows_.begin());
}

PairSupportMatrix::PairSupportMatrix(std::size_t alphabetSize)
    : n_(alphabetSize), counts_(alphabetSize * alphabetSize, 0) {}

std::vector<VerticalDatabase> buildSingletonVDBs(const Database& db, const Constraints& c) {
  std::vector<VerticalDatabase> out;
  out.reserve(db.alphabet().size());
  for (std::uint32_t e = 0; e < db.alphabet().size(); ++e) out.emplace_back(std::vector{EventId(e)});

  const auto sequences = db.sequences();
  for (std::uint32_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    for (std::uint32_t i = 0; i < seq.intervals.size(); ++i) {
      const auto& iv = seq.intervals[i];
      if (!c.durationAllowed(iv.duration())) continue;
      const std::uint32_t pos = i + 1;
      out[index(iv.event)].append({s, seq.sid, pos, iv.start, iv.end}, {&pos, 1}, {});
    }
  }
  return out;
}

PairSupportMatrix buildPSM(const Database& db, const Constraints& c) {
  const std::size_t n = db.alphabet().size();
  PairSupportMatrix psm(n);
  // Last sequence (1-based ordinal) that contributed to each cell.
  std::vector<std::uint32_t> stamp(n * n, 0);
  const bool bounded = c.maxDura != kUnbounded;

  const auto sequences = db.sequences();
  for (std::uint32_t s = 0; s < sequences.size(); ++s) {
    const auto& ivs = sequences[s].intervals;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      const auto& first = ivs[i];
      for (std::size_t j = i + 1; j < ivs.size(); ++j) {
        const auto& second = ivs[j];
        // Later intervals start no earlier than second.start - epsilon, so
        // every pair beyond this point exceeds maxDura.
        if (bounded && second.start - first.start - c.epsilon > c.maxDura) break;
        const Time merged = std::max(first.end, second.end) - std::min(first.start, second.start);
        if (merged > c.maxDura) continue;
        const std::size_t cell = static_cast<std::size_t>(index(first.event)) * n + index(second.event);
        if (stamp[cell] != s + 1) {
          stamp[cell] = s + 1;
          ++psm.counts_[cell];
        }
      }
    }
  }
  return psm;
}

VerticalDatabase extendVDB(const VerticalDatabase& prefix, EventId candidate,
                           const VerticalDatabase& singleton, const Constraints& c) {
  std::vector<EventId> events(prefix.events().begin(), prefix.events().end());
  events.push_back(candidate);
  VerticalDatabase out(std::move(events));
  if (prefix.empty() || singleton.empty()) return out;

  const bool bounded = c.maxDura != kUnbounded;
  const auto cand = singleton.rows();
  std::vector<std::uint32_t> sources(out.length());
  std::vector<Relation> relations(out.length() - 1);

  std::size_t groupBegin = 0;
  std::size_t groupEnd = 0;
  std::uint32_t groupOrdinal = 0;
  bool haveGroup = false;

  const auto rows = prefix.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!haveGroup || groupOrdinal != row.ordinal) {
      groupBegin = groupEnd;
      while (groupBegin < cand.size() && cand[groupBegin].ordinal < row.ordinal) ++groupBegin;
      groupEnd = groupBegin;
      while (groupEnd < cand.size() && cand[groupEnd].ordinal == row.ordinal) ++groupEnd;
      groupOrdinal = row.ordinal;
      haveGroup = true;
    }
    if (groupBegin == groupEnd) continue;

    auto first = std::upper_bound(cand.begin() + static_cast<std::ptrdiff_t>(groupBegin),
                                  cand.begin() + static_cast<std::ptrdiff_t>(groupEnd), row.eid,
                                  [](std::uint32_t eid, const auto& q) { return eid < q.eid; });
    const Envelope env{row.startT, row.endT};
    const auto prefixSources = prefix.sources(r);
    const auto prefixRelations = prefix.relations(r);

    for (auto it = first; it != cand.begin() + static_cast<std::ptrdiff_t>(groupEnd); ++it) {
      const auto& q = *it;
      if (bounded && q.startT - row.startT - c.epsilon > c.maxDura) break;
      const SymbolicInterval next{q.startT, q.endT, candidate};
      const auto rel = checkExtensionValidity(env, next, c);
      if (!rel) continue;
      std::copy(prefixSources.begin(), prefixSources.end(), sources.begin());
      sources.back() = q.eid;
      std::copy(prefixRelations.begin(), prefixRelations.end(), relations.begin());
      relations.back() = *rel;
      out.append({row.ordinal, row.sid, q.eid, std::min(row.startT, q.startT), std::max(row.endT, q.endT)},
                 sources, relations);
    }
  }
  return out;
}

}  // namespace tatirp
