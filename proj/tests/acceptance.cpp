// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/resource.h>

#include "random_db.hpp"
#include "running_example.hpp"
#include "tatirp/miner.hpp"
#include "tatirp/oracle.hpp"
#include "tatirp/vertical.hpp"

using namespace tatirp;
using namespace tatirp::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

std::vector<std::string> patternNames(const Database& db, const std::vector<STirpResult>& results) {
  std::vector<std::string> out;
  for (const auto& r : results) out.push_back(joined(db, r.events));
  return out;
}

constexpr std::array<Strategies, 8> kAllCombos{{
    {false, false, false}, {true, false, false}, {false, true, false}, {false, false, true},
    {true, true, false},   {true, false, true},  {false, true, true},  {true, true, true},
}};

// Paper experiment defaults: eps 0, minGap 0, maxGap 30, minDura 0, maxDura 2000.
constexpr Constraints kExperimentConstraints{0, 0, 30, 0, 2000};

constexpr std::size_t kOracleTrials = 200;

Outcome runningExampleExactness() {
  Outcome o;
  const auto db = runningExample();
  const auto begin = Clock::now();
  const auto out = mine(db, QueryEventSequence(ids(db, {"A", "C"})), runningExampleConfig());
  const double elapsed = seconds(Clock::now() - begin);
  const auto got = patternNames(db, out.patterns);
  o.require(got == expectedTargets(), "pattern set");
  o.require(elapsed < 1.0, "runtime < 1 s");
  o.detail << " patterns=" << got.size() << " elapsed_s=" << elapsed;
  return o;
}

Outcome workedValues() {
  Outcome o;
  const auto db = runningExample();
  const auto c = runningExampleConstraints();

  const auto filtered = usfpFilter(db, QueryEventSequence(ids(db, {"A", "C"})));
  std::vector<SequenceId> kept;
  for (const auto& s : filtered.sequences()) kept.push_back(s.sid);
  o.require(kept == std::vector<SequenceId>{1, 3, 4, 5}, "USFP removes exactly S2");

  const auto psmAB = buildPSM(filtered, c)(db.find("A"), db.find("B"));
  o.require(psmAB == 3, "PSM(A,B) = 3");

  const auto singles = buildSingletonVDBs(db, c);
  const auto b = db.find("B"), a = db.find("A"), cc = db.find("C");
  const auto ba = extendVDB(singles[index(b)], a, singles[index(a)], c);
  o.require(ba.verticalSupport() == 2, "VSup(BA) = 2");
  o.require(ba.horizontalSupport(1) == 3, "HSup(BA, S1) = 3");

  const auto cb = extendVDB(singles[index(cc)], b, singles[index(b)], c);
  bool rowOk = false;
  for (std::size_t r = 0; r < cb.rowCount(); ++r) {
    const auto occ = cb.occurrence(r);
    if (occ.sid == 1 && occ.eid == 5 && occ.startT == 12 && occ.endT == 20 &&
        occ.relations == std::vector{Relation::Start}) {
      rowOk = true;
    }
  }
  o.require(rowOk, "CB row in S1: eid=5 startT=12 endT=20 relation s");

  std::ostringstream sids;
  for (auto s : ba.supportingSids()) sids << s << ' ';
  o.detail << " psm_ab=" << psmAB << " vsup_ba=" << ba.verticalSupport() << " (sids " << sids.str()
           << ") hsup_ba_s1=" << ba.horizontalSupport(1);
  return o;
}

MiningConfig configFor(const RandomCase& rc) {
  MiningConfig cfg;
  cfg.minSup = rc.minSup;
  cfg.constraints = rc.constraints;
  return cfg;
}

Outcome oracleEquivalence() {
  Outcome o;
  const auto begin = Clock::now();
  std::size_t mismatches = 0, nonEmpty = 0;
  for (std::uint64_t seed = 0; seed < kOracleTrials; ++seed) {
    const auto rc = randomCase(1000 + seed);
    const auto cfg = configFor(rc);
    const auto threshold = supportThreshold(cfg.minSup, rc.db.size());
    const auto expected =
        oracle::targetFilter(oracle::enumerateAll(rc.db, rc.constraints, oracle::kMaxSequenceLength, threshold), rc.qes);
    const auto got = mine(rc.db, QueryEventSequence(rc.qes), cfg).patterns;

    bool same = got.size() == expected.size();
    auto it = expected.begin();
    for (std::size_t i = 0; same && i < got.size(); ++i, ++it) {
      same = got[i].events == it->first && got[i].vsup == it->second.vsup &&
             got[i].supportingSids == it->second.sids;
    }
    if (!same) ++mismatches;
    if (!expected.empty()) ++nonEmpty;
  }
  const double elapsed = seconds(Clock::now() - begin);
  o.require(mismatches == 0, "exact equality in every trial");
  o.require(elapsed < 60.0, "runtime < 60 s");
  o.detail << " trials=" << kOracleTrials << " non_empty=" << nonEmpty << " mismatches=" << mismatches
           << " elapsed_s=" << elapsed;
  return o;
}

Outcome variantEquivalence() {
  Outcome o;
  std::size_t inputs = 0, divergent = 0;
  auto check = [&](const Database& db, const QueryEventSequence& qes, MiningConfig cfg) {
    ++inputs;
    const auto reference = mine(db, qes, cfg).patterns;
    bool ok = true;
    for (const auto& s : kAllCombos) {
      cfg.strategies = s;
      cfg.mode = MiningMode::Targeted;
      ok = ok && mine(db, qes, cfg).patterns == reference;
      cfg.mode = MiningMode::FullFilter;
      ok = ok && mine(db, qes, cfg).patterns == reference;
    }
    if (!ok) ++divergent;
  };
  const auto db = runningExample();
  check(db, QueryEventSequence(ids(db, {"A", "C"})), runningExampleConfig());
  for (std::uint64_t seed = 0; seed < kOracleTrials; ++seed) {
    const auto rc = randomCase(1000 + seed);
    check(rc.db, QueryEventSequence(rc.qes), configFor(rc));
  }
  o.require(divergent == 0, "identical output for every flag combination and full+post-filter");
  o.detail << " inputs=" << inputs << " divergent=" << divergent;
  return o;
}

MiningConfig variant(double minSup, MiningMode mode, Strategies s) {
  MiningConfig cfg;
  cfg.minSup = minSup;
  cfg.constraints = kExperimentConstraints;
  cfg.mode = mode;
  cfg.strategies = s;
  return cfg;
}

Outcome pruningMonotonicity() {
  Outcome o;
  const auto db = generateSynthetic({1000, 20, 100, 1000, 100, 42});
  const std::vector<std::string> names{"93", "75"};
  const auto qes = QueryEventSequence::resolve(db, names);

  for (double minSup : {0.05, 0.1, 0.2}) {
    auto joins = [&](MiningMode mode, Strategies s) { return mine(db, qes, variant(minSup, mode, s)).stats.joinOperations; };
    const auto fasttirp = joins(MiningMode::Full, {false, false, true});
    const auto t1 = joins(MiningMode::Targeted, {true, false, true});
    const auto t2 = joins(MiningMode::Targeted, {false, true, true});
    const auto t12 = joins(MiningMode::Targeted, {true, true, true});
    std::ostringstream tag;
    tag << "minSup=" << minSup;
    o.require(t12 <= t1 && t1 <= fasttirp, tag.str() + " tatirp12 <= tatirp1 <= fasttirp");
    o.require(t12 <= t2 && t2 <= fasttirp, tag.str() + " tatirp12 <= tatirp2 <= fasttirp");
    o.detail << " [" << tag.str() << " joins fasttirp=" << fasttirp << " tatirp1=" << t1 << " tatirp2=" << t2
             << " tatirp12=" << t12 << "]";
  }

  // The DS1 shape has no frequent pair at these thresholds, so every variant
  // performs zero joins there. A denser companion (10 event types, starts in
  // [0, 200), patterns capped at 4 events) exercises the same ordering.
  const auto dense = generateSynthetic({1000, 20, 10, 200, 100, 42});
  const std::vector<std::string> denseNames{"9", "7"};
  const auto denseQes = QueryEventSequence::resolve(dense, denseNames);
  for (double minSup : {0.05, 0.1, 0.2}) {
    auto joins = [&](MiningMode mode, Strategies s) {
      auto cfg = variant(minSup, mode, s);
      cfg.maxPatternLength = 4;
      return mine(dense, denseQes, cfg).stats.joinOperations;
    };
    const auto fasttirp = joins(MiningMode::Full, {false, false, true});
    const auto t1 = joins(MiningMode::Targeted, {true, false, true});
    const auto t2 = joins(MiningMode::Targeted, {false, true, true});
    const auto t12 = joins(MiningMode::Targeted, {true, true, true});
    std::ostringstream tag;
    tag << "dense minSup=" << minSup;
    o.require(t12 <= t1 && t1 <= fasttirp, tag.str() + " tatirp12 <= tatirp1 <= fasttirp");
    o.require(t12 <= t2 && t2 <= fasttirp, tag.str() + " tatirp12 <= tatirp2 <= fasttirp");
    o.detail << " [" << tag.str() << " joins fasttirp=" << fasttirp << " tatirp1=" << t1 << " tatirp2=" << t2
             << " tatirp12=" << t12 << "]";
  }

  // Wall time: best of five runs each at the lowest threshold.
  auto best = [&](MiningMode mode, Strategies s) {
    double fastest = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto begin = Clock::now();
      mine(db, qes, variant(0.05, mode, s));
      fastest = std::min(fastest, seconds(Clock::now() - begin));
    }
    return fastest;
  };
  const double post = best(MiningMode::FullFilter, {false, false, true});
  const double targeted = best(MiningMode::Targeted, {true, true, true});
  o.require(targeted <= post, "tatirp12 wall time <= fasttirp-post");
  o.detail << " wall_s tatirp12=" << targeted << " fasttirp-post=" << post;
  return o;
}

Outcome relationTotality() {
  Outcome o;
  std::size_t pairs = 0, violations = 0;
  auto qe = [](Time x, Time y, Time eps) { return x - y <= eps && y - x <= eps; };
  for (Time eps = 0; eps <= 2; ++eps)
    for (Time as = 0; as <= 12; ++as)
      for (Time ae = as; ae <= 12; ++ae)
        for (Time bs = 0; bs <= 12; ++bs)
          for (Time be = bs; be <= 12; ++be) {
            if (as - bs > eps) continue;  // not an ordered pair
            ++pairs;
            const Envelope a{as, ae}, b{bs, be};
            const bool inside = ae - bs > eps;
            const bool same = qe(as, bs, eps);
            const bool later = bs - as > eps;
            std::array<bool, kRelationCount> p{};
            p[static_cast<int>(Relation::Before)] = bs - ae > eps;
            p[static_cast<int>(Relation::Meet)] = qe(bs, ae, eps);
            p[static_cast<int>(Relation::Equal)] = inside && same && qe(ae, be, eps);
            p[static_cast<int>(Relation::Start)] = inside && same && be - ae > eps;
            p[static_cast<int>(Relation::LeftContain)] = inside && same && ae - be > eps;
            p[static_cast<int>(Relation::Overlap)] = inside && later && be - ae > eps;
            p[static_cast<int>(Relation::FinishedBy)] = inside && later && qe(ae, be, eps);
            p[static_cast<int>(Relation::Contain)] = inside && later && ae - be > eps;
            const auto holding = std::count(p.begin(), p.end(), true);
            const auto r = classifyRelation(a, b, eps);
            bool ok = holding == 1 && p[static_cast<int>(r)];
            if (inside && same) {
              const auto expected = qe(ae, be, eps) ? Relation::Equal : be > ae ? Relation::Start : Relation::LeftContain;
              ok = ok && r == expected;
            }
            if (!ok) ++violations;
          }
  o.require(violations == 0, "exactly one relation per pair");
  o.detail << " pairs=" << pairs << " violations=" << violations;
  return o;
}

long peakRssKb() {
  rusage usage{};
  return getrusage(RUSAGE_SELF, &usage) == 0 ? usage.ru_maxrss : -1;
}

Outcome scaleSmoke() {
  Outcome o;
  constexpr long kMemoryCeilingKb = 2L * 1024 * 1024;
  const auto db = generateSynthetic({100000, 10, 100, 1000, 100, 7});
  const std::vector<std::string> names{"39"};
  const auto qes = QueryEventSequence::resolve(db, names);
  auto cfg = variant(0.0005, MiningMode::Targeted, {true, true, true});

  const auto begin = Clock::now();
  const auto serial = mine(db, qes, cfg);
  const double serialS = seconds(Clock::now() - begin);
  cfg.threads = std::max(4u, std::thread::hardware_concurrency());
  const auto parallel = mine(db, qes, cfg);

  const long rss = peakRssKb();
  o.require(serial.patterns == parallel.patterns, "identical output at 1 and N threads");
  o.require(serial.stats.joinOperations == parallel.stats.joinOperations, "identical join count");
  o.require(rss > 0 && rss < kMemoryCeilingKb, "peak RSS below 2 GiB");
  o.detail << " sequences=" << db.size() << " patterns=" << serial.patterns.size()
           << " joins=" << serial.stats.joinOperations << " threads=" << cfg.threads << " serial_s=" << serialS
           << " peak_rss_kb=" << rss;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 running-example exactness", runningExampleExactness},
      {"2 worked-value checks", workedValues},
      {"3 oracle equivalence", oracleEquivalence},
      {"4 variant equivalence", variantEquivalence},
      {"5 pruning monotonicity", pruningMonotonicity},
      {"6 relation classifier totality", relationTotality},
      {"7 scale smoke test", scaleSmoke},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ':' << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
