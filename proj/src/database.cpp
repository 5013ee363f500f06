#include "tatirp/database.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace tatirp {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Database::Database(std::vector<std::string> alphabet, std::vector<TimeIntervalSequence> sequences,
                   Time epsilon)
    : alphabet_(std::move(alphabet)), sequences_(std::move(sequences)), epsilon_(epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  for (std::size_t i = 1; i < alphabet_.size(); ++i) {
    if (!(alphabet_[i - 1] < alphabet_[i])) {
      throw std::invalid_argument("alphabet must be strictly increasing, got '" + alphabet_[i - 1] +
                                  "' before '" + alphabet_[i] + "'");
    }
  }
  std::unordered_set<SequenceId> sids;
  for (auto& seq : sequences_) {
    if (!sids.insert(seq.sid).second) {
      throw std::invalid_argument("duplicate sequence id " + std::to_string(seq.sid));
    }
    for (const auto& iv : seq.intervals) {
      if (iv.end < iv.start) {
        throw std::invalid_argument("sequence " + std::to_string(seq.sid) + ": end " +
                                    std::to_string(iv.end) + " < start " + std::to_string(iv.start));
      }
      if (iv.start < 0) {
        throw std::invalid_argument("sequence " + std::to_string(seq.sid) + ": negative time");
      }
      if (index(iv.event) >= alphabet_.size()) {
        throw std::invalid_argument("sequence " + std::to_string(seq.sid) + ": unknown event id");
      }
    }
    seq.intervals = sortSequence(std::move(seq.intervals), epsilon);
    auto exact = seq.intervals;
    std::sort(exact.begin(), exact.end(), [](const auto& a, const auto& b) {
      return std::tie(a.start, a.end, a.event) < std::tie(b.start, b.end, b.event);
    });
    if (auto dup = std::adjacent_find(exact.begin(), exact.end()); dup != exact.end()) {
      throw std::invalid_argument("sequence " + std::to_string(seq.sid) + ": duplicate interval " +
                                  alphabet_[index(dup->event)] + "," + std::to_string(dup->start) +
                                  "," + std::to_string(dup->end));
    }
  }
}

EventId Database::find(std::string_view name) const noexcept {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end() || *it != name) return kUnknownEvent;
  return EventId(static_cast<std::uint32_t>(it - alphabet_.begin()));
}

Database Database::withSequences(std::vector<TimeIntervalSequence> sequences) const {
  Database out;
  out.alphabet_ = alphabet_;
  out.sequences_ = std::move(sequences);
  out.epsilon_ = epsilon_;
  return out;
}

Database Database::resorted(Time epsilon) const {
  Database out = *this;
  out.epsilon_ = epsilon;
  for (auto& seq : out.sequences_) seq.intervals = sortSequence(std::move(seq.intervals), epsilon);
  return out;
}

std::vector<SymbolicInterval> sortSequence(std::vector<SymbolicInterval> intervals, Time epsilon) {
  std::sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) {
    return std::tie(a.start, a.end, a.event) < std::tie(b.start, b.end, b.event);
  });
  if (epsilon == 0) return intervals;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    auto moving = intervals[i];
    std::size_t j = i;
    while (j > 0 && intervalPrecedes(moving, intervals[j - 1], epsilon)) {
      intervals[j] = intervals[j - 1];
      --j;
    }
    intervals[j] = moving;
  }
  return intervals;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parseInteger(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct RawInterval {
  std::string event;
  Time start;
  Time end;
};

struct RawSequence {
  SequenceId sid;
  std::size_t line;
  std::vector<RawInterval> intervals;
};

RawSequence parseLine(std::string_view line, std::size_t lineNo) {
  const auto bar = line.find('|');
  if (bar == std::string_view::npos) throw ParseError(lineNo, "missing '|' after sequence id");
  RawSequence seq{0, lineNo, {}};
  const auto sidText = trim(line.substr(0, bar));
  if (!parseInteger(sidText, seq.sid) || seq.sid == 0) {
    throw ParseError(lineNo, "sequence id must be a positive integer, got '" + std::string(sidText) + "'");
  }
  std::istringstream tokens{std::string(line.substr(bar + 1))};
  std::string tok;
  while (tokens >> tok) {
    const auto c1 = tok.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : tok.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || tok.find(',', c2 + 1) != std::string::npos) {
      throw ParseError(lineNo, "expected EVENT,START,END but got '" + tok + "'");
    }
    RawInterval iv{tok.substr(0, c1), 0, 0};
    if (iv.event.empty()) throw ParseError(lineNo, "empty event name in '" + tok + "'");
    const std::string_view view(tok);
    if (!parseInteger(view.substr(c1 + 1, c2 - c1 - 1), iv.start) ||
        !parseInteger(view.substr(c2 + 1), iv.end)) {
      throw ParseError(lineNo, "timestamps must be integers in '" + tok + "'");
    }
    if (iv.start < 0) throw ParseError(lineNo, "negative start in '" + tok + "'");
    if (iv.end < iv.start) throw ParseError(lineNo, "end < start in '" + tok + "'");
    seq.intervals.push_back(std::move(iv));
  }
  return seq;
}

}  // namespace

Database parseDatabase(std::istream& in, Time epsilon) {
  std::vector<RawSequence> raw;
  std::set<std::string, std::less<>> names;
  std::map<SequenceId, std::size_t> seen;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto seq = parseLine(body, lineNo);
    if (auto [it, fresh] = seen.emplace(seq.sid, lineNo); !fresh) {
      throw ParseError(lineNo, "sequence id " + std::to_string(seq.sid) + " already used on line " +
                                   std::to_string(it->second));
    }
    for (const auto& iv : seq.intervals) names.insert(iv.event);
    raw.push_back(std::move(seq));
  }

  std::vector<std::string> alphabet(names.begin(), names.end());
  auto idOf = [&](const std::string& name) {
    return EventId(static_cast<std::uint32_t>(
        std::lower_bound(alphabet.begin(), alphabet.end(), name) - alphabet.begin()));
  };

  std::vector<TimeIntervalSequence> sequences;
  sequences.reserve(raw.size());
  for (const auto& r : raw) {
    TimeIntervalSequence seq{r.sid, {}};
    seq.intervals.reserve(r.intervals.size());
    for (const auto& iv : r.intervals) seq.intervals.push_back({iv.start, iv.end, idOf(iv.event)});
    sequences.push_back(std::move(seq));
  }

  // Re-run validation per sequence to attach the line number to duplicates.
  try {
    return Database(std::move(alphabet), std::move(sequences), epsilon);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    for (const auto& r : raw) {
      if (msg.rfind("sequence " + std::to_string(r.sid) + ":", 0) == 0) throw ParseError(r.line, msg);
    }
    throw ParseError(lineNo, msg);
  }
}

Database parseDatabase(std::string_view text, Time epsilon) {
  std::istringstream in{std::string(text)};
  return parseDatabase(in, epsilon);
}

Database loadDatabase(const std::string& path, Time epsilon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parseDatabase(in, epsilon);
}

void writeDatabase(std::ostream& out, const Database& db) {
  for (const auto& seq : db.sequences()) {
    out << seq.sid << '|';
    bool first = true;
    for (const auto& iv : seq.intervals) {
      if (!first) out << ' ';
      first = false;
      out << db.name(iv.event) << ',' << iv.start << ',' << iv.end;
    }
    out << '\n';
  }
}

std::string serializeDatabase(const Database& db) {
  std::ostringstream out;
  writeDatabase(out, db);
  return out.str();
}

void GeneratorParams::validate() const {
  if (numSequences == 0) throw std::invalid_argument("--sequences must be positive");
  if (intervalsPerSequence == 0) throw std::invalid_argument("--intervals must be positive");
  if (alphabetSize == 0) throw std::invalid_argument("--alphabet must be positive");
  if (maxTime <= 0) throw std::invalid_argument("--max-time must be positive");
  if (maxDuration <= 0) throw std::invalid_argument("--max-duration must be positive");
  const double distinct = static_cast<double>(alphabetSize) * static_cast<double>(maxTime) *
                          static_cast<double>(maxDuration);
  if (distinct < static_cast<double>(intervalsPerSequence)) {
    throw std::invalid_argument("generator parameters admit fewer distinct intervals than --intervals");
  }
}

Database generateSynthetic(const GeneratorParams& p) {
  p.validate();
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<std::size_t> pickEvent(1, p.alphabetSize);
  std::uniform_int_distribution<Time> pickStart(0, p.maxTime - 1);
  std::uniform_int_distribution<Time> pickDuration(1, p.maxDuration);

  // Draw by event number; names are interned afterwards.
  struct Draw {
    Time start, end;
    std::size_t event;
    bool operator<(const Draw& o) const { return std::tie(start, end, event) < std::tie(o.start, o.end, o.event); }
  };
  std::vector<std::vector<Draw>> draws(p.numSequences);
  std::vector<bool> used(p.alphabetSize + 1, false);
  for (auto& seq : draws) {
    std::set<Draw> unique;
    while (unique.size() < p.intervalsPerSequence) {
      const auto event = pickEvent(rng);
      const auto start = pickStart(rng);
      const auto end = start + pickDuration(rng);
      unique.insert({start, end, event});
    }
    seq.assign(unique.begin(), unique.end());
    for (const auto& d : seq) used[d.event] = true;
  }

  std::vector<std::string> alphabet;
  for (std::size_t e = 1; e <= p.alphabetSize; ++e) {
    if (used[e]) alphabet.push_back(std::to_string(e));
  }
  std::sort(alphabet.begin(), alphabet.end());
  std::vector<std::uint32_t> idOf(p.alphabetSize + 1, 0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    idOf[std::stoul(alphabet[i])] = static_cast<std::uint32_t>(i);
  }

  std::vector<TimeIntervalSequence> sequences;
  sequences.reserve(p.numSequences);
  for (std::size_t s = 0; s < draws.size(); ++s) {
    TimeIntervalSequence seq{static_cast<SequenceId>(s + 1), {}};
    seq.intervals.reserve(draws[s].size());
    for (const auto& d : draws[s]) seq.intervals.push_back({d.start, d.end, EventId(idOf[d.event])});
    sequences.push_back(std::move(seq));
  }
  return Database(std::move(alphabet), std::move(sequences));
}

}  // namespace tatirp
