#include "tatirp/miner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tatirp {

QueryEventSequence::QueryEventSequence(std::vector<EventId> events) : events_(std::move(events)) {
  if (events_.empty()) throw std::invalid_argument("query event sequence must not be empty");
}

QueryEventSequence QueryEventSequence::resolve(const Database& db, std::span<const std::string> names) {
  std::vector<EventId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(db.find(n));
  return QueryEventSequence(std::move(ids));
}

void MiningConfig::validate() const {
  if (!(minSup > 0.0 && minSup <= 1.0)) {
    throw std::invalid_argument("min-sup must be in (0, 1], got " + std::to_string(minSup));
  }
  constraints.validate();
  if (maxPatternLength && *maxPatternLength == 0) throw std::invalid_argument("max-length must be positive");
  if (threads == 0) throw std::invalid_argument("threads must be positive");
}

MiningStats& MiningStats::operator+=(const MiningStats& o) {
  sequencesFiltered += o.sequencesFiltered;
  joinOperations += o.joinOperations;
  prunedByUqpp += o.prunedByUqpp;
  prunedByUepp += o.prunedByUepp;
  patternsOutput += o.patternsOutput;
  duplicatesDropped += o.duplicatesDropped;
  elapsed += o.elapsed;
  return *this;
}

std::size_t supportThreshold(double minSup, std::size_t databaseSize) {
  const double product = minSup * static_cast<double>(databaseSize);
  // Absorb representation error such as 0.1 * 30 = 3.0000000000000004.
  const double count = std::ceil(product - 1e-9 * std::max(1.0, product));
  return count <= 0.0 ? 0 : static_cast<std::size_t>(count);
}

bool containsSubsequence(std::span<const EventId> sequenceEvents, std::span<const EventId> query) noexcept {
  std::size_t matched = 0;
  for (auto e : sequenceEvents) {
    if (matched == query.size()) break;
    if (e == query[matched]) ++matched;
  }
  return matched == query.size();
}

Database usfpFilter(const Database& db, const QueryEventSequence& qes) {
  std::vector<TimeIntervalSequence> kept;
  std::vector<EventId> events;
  for (const auto& seq : db.sequences()) {
    events.clear();
    for (const auto& iv : seq.intervals) events.push_back(iv.event);
    if (containsSubsequence(events, qes.events())) kept.push_back(seq);
  }
  return db.withSequences(std::move(kept));
}

std::vector<STirpResult> postFilter(std::vector<STirpResult> results, const QueryEventSequence& qes) {
  if (qes.empty()) throw std::invalid_argument("query event sequence must not be empty");
  std::erase_if(results, [&](const STirpResult& r) { return !containsSubsequence(r.events, qes.events()); });
  return results;
}

namespace {

struct SearchContext {
  const std::vector<VerticalDatabase>& singletons;
  const std::vector<EventId>& seeds;
  const PairSupportMatrix& psm;
  std::span<const EventId> query;  // empty when untargeted
  bool targeted;
  std::size_t threshold;
  const MiningConfig& cfg;
};

class Search {
 public:
  explicit Search(const SearchContext& ctx) : ctx_(ctx) {}

  void run(EventId seed) { dfs(ctx_.singletons[index(seed)], 0); }

  std::vector<STirpResult>& results() { return results_; }
  MiningStats& stats() { return stats_; }

 private:
  void dfs(const VerticalDatabase& prefix, std::size_t match) {
    const auto& cfg = ctx_.cfg;
    const EventId last = prefix.lastEvent();
    const auto q = ctx_.query;

    if (ctx_.targeted && match < q.size() && last == q[match]) ++match;
    if (!ctx_.targeted || match == q.size()) emit(prefix);

    if (ctx_.targeted && cfg.strategies.uqpp && match < q.size() &&
        ctx_.psm(last, q[match]) < ctx_.threshold) {
      ++stats_.prunedByUqpp;
      return;
    }
    if (cfg.maxPatternLength && prefix.length() >= *cfg.maxPatternLength) return;

    for (EventId f : ctx_.seeds) {
      if (cfg.strategies.uepp && ctx_.psm(last, f) < ctx_.threshold) {
        ++stats_.prunedByUepp;
        continue;
      }
      auto extended = extendVDB(prefix, f, ctx_.singletons[index(f)], cfg.constraints);
      ++stats_.joinOperations;
      if (extended.verticalSupport() >= ctx_.threshold) dfs(extended, match);
    }
  }

  void emit(const VerticalDatabase& vdb) {
    STirpResult r;
    r.events.assign(vdb.events().begin(), vdb.events().end());
    r.vsup = vdb.verticalSupport();
    r.supportingSids = vdb.supportingSids();
    if (ctx_.cfg.collectInstances) r.instances = collectInstances(vdb);
    results_.push_back(std::move(r));
  }

  static std::vector<InstanceList> collectInstances(const VerticalDatabase& vdb) {
    std::vector<InstanceList> out;
    const auto rows = vdb.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (out.empty() || out.back().sid != rows[i].sid) out.push_back({rows[i].sid, {}});
      std::string code;
      for (auto rel : vdb.relations(i)) code.push_back(relationCode(rel));
      out.back().relations.push_back(std::move(code));
    }
    for (auto& inst : out) {
      std::sort(inst.relations.begin(), inst.relations.end());
      inst.relations.erase(std::unique(inst.relations.begin(), inst.relations.end()), inst.relations.end());
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.sid < b.sid; });
    return out;
  }

  const SearchContext& ctx_;
  std::vector<STirpResult> results_;
  MiningStats stats_;
};

}  // namespace

MiningOutput mine(const Database& input, const QueryEventSequence& qes, const MiningConfig& cfg) {
  cfg.validate();
  if (cfg.mode != MiningMode::Full && qes.empty()) {
    throw std::invalid_argument("query event sequence must not be empty");
  }
  const auto began = std::chrono::steady_clock::now();
  MiningOutput out;
  if (input.empty()) return out;

  const auto& c = cfg.constraints;
  std::optional<Database> resorted;
  if (input.epsilon() != c.epsilon) resorted = input.resorted(c.epsilon);
  const Database& db = resorted ? *resorted : input;

  // Frequency is always judged against the original database size.
  const std::size_t threshold = supportThreshold(cfg.minSup, db.size());
  const bool targeted = cfg.mode == MiningMode::Targeted;

  std::optional<Database> filtered;
  if (targeted && cfg.strategies.usfp) {
    filtered = usfpFilter(db, qes);
    out.stats.sequencesFiltered = db.size() - filtered->size();
    if (filtered->size() < threshold) {
      out.stats.elapsed = std::chrono::steady_clock::now() - began;
      return out;
    }
  }
  const Database& work = filtered ? *filtered : db;

  const auto singletons = buildSingletonVDBs(work, c);
  std::vector<EventId> seeds;
  for (const auto& vdb : singletons) {
    if (vdb.verticalSupport() >= threshold) seeds.push_back(vdb.lastEvent());
  }
  std::stable_sort(seeds.begin(), seeds.end(), [&](EventId a, EventId b) {
    return singletons[index(a)].verticalSupport() > singletons[index(b)].verticalSupport();
  });

  const bool needPsm = cfg.strategies.uepp || (targeted && cfg.strategies.uqpp);
  const PairSupportMatrix psm = needPsm ? buildPSM(work, c) : PairSupportMatrix{};

  const SearchContext ctx{singletons, seeds, psm, targeted ? qes.events() : std::span<const EventId>{},
                          targeted, threshold, cfg};

  const unsigned workers = std::min<unsigned>(cfg.threads, static_cast<unsigned>(std::max<std::size_t>(seeds.size(), 1)));
  std::vector<Search> searches;
  searches.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) searches.emplace_back(ctx);

  if (workers == 1) {
    for (auto seed : seeds) searches.front().run(seed);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < seeds.size(); i = next++) searches[w].run(seeds[i]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (auto& s : searches) {
    out.stats += s.stats();
    auto& r = s.results();
    out.patterns.insert(out.patterns.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }

  std::sort(out.patterns.begin(), out.patterns.end(),
            [](const STirpResult& a, const STirpResult& b) { return a.events < b.events; });
  const auto before = out.patterns.size();
  out.patterns.erase(std::unique(out.patterns.begin(), out.patterns.end(),
                                 [](const auto& a, const auto& b) { return a.events == b.events; }),
                     out.patterns.end());
  out.stats.duplicatesDropped = before - out.patterns.size();

  if (cfg.mode == MiningMode::FullFilter) out.patterns = postFilter(std::move(out.patterns), qes);
  out.stats.patternsOutput = out.patterns.size();
  out.stats.elapsed = std::chrono::steady_clock::now() - began;
  return out;
}

}  // namespace tatirp
