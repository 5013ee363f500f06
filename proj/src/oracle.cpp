#include "tatirp/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tatirp::oracle {

namespace {

// Recursively extends a tuple of interval positions. Deliberately recomputes
// the envelope from the chosen intervals instead of carrying it along.
void extend(const std::vector<SymbolicInterval>& ivs, const Constraints& c, std::size_t maxLen,
            std::vector<std::size_t>& chosen, std::set<std::vector<EventId>>& found) {
  std::vector<EventId> events;
  for (auto i : chosen) events.push_back(ivs[i].event);
  found.insert(events);
  if (chosen.size() == maxLen) return;

  Envelope env{ivs[chosen.front()].start, ivs[chosen.front()].end};
  for (auto i : chosen) {
    env.start = std::min(env.start, ivs[i].start);
    env.end = std::max(env.end, ivs[i].end);
  }
  for (std::size_t next = chosen.back() + 1; next < ivs.size(); ++next) {
    const auto& iv = ivs[next];
    if (iv.duration() < c.minDura || iv.duration() > c.maxDura) continue;
    if (!checkExtensionValidity(env, iv, c)) continue;
    chosen.push_back(next);
    extend(ivs, c, maxLen, chosen, found);
    chosen.pop_back();
  }
}

}  // namespace

OracleResult enumerateAll(const Database& input, const Constraints& c, std::size_t maxLen, std::size_t threshold) {
  std::size_t total = 0;
  for (const auto& seq : input.sequences()) {
    if (seq.intervals.size() > kMaxSequenceLength) {
      throw std::invalid_argument("oracle: sequence " + std::to_string(seq.sid) + " too long");
    }
    total += seq.intervals.size();
  }
  if (total > kMaxTotalIntervals) throw std::invalid_argument("oracle: database too large");

  const Database db = input.epsilon() == c.epsilon ? input : input.resorted(c.epsilon);
  std::map<std::vector<EventId>, std::vector<SequenceId>> bySequence;
  for (const auto& seq : db.sequences()) {
    std::set<std::vector<EventId>> found;
    std::vector<std::size_t> chosen;
    for (std::size_t first = 0; first < seq.intervals.size() && maxLen > 0; ++first) {
      const auto& iv = seq.intervals[first];
      if (iv.duration() < c.minDura || iv.duration() > c.maxDura) continue;
      chosen.assign(1, first);
      extend(seq.intervals, c, maxLen, chosen, found);
    }
    for (const auto& events : found) bySequence[events].push_back(seq.sid);
  }

  OracleResult out;
  for (auto& [events, sids] : bySequence) {
    if (sids.size() < threshold) continue;
    std::sort(sids.begin(), sids.end());
    out.emplace(events, Support{sids.size(), sids});
  }
  return out;
}

OracleResult targetFilter(const OracleResult& r, const std::vector<EventId>& qes) {
  OracleResult out;
  for (const auto& [events, support] : r) {
    auto pos = events.begin();
    bool ok = true;
    for (auto q : qes) {
      pos = std::find(pos, events.end(), q);
      if (pos == events.end()) {
        ok = false;
        break;
      }
      ++pos;
    }
    if (ok) out.emplace(events, support);
  }
  return out;
}

}  // namespace tatirp::oracle
