#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tatirp/database.hpp"
#include "tatirp/miner.hpp"

namespace tatirp::testing {

/// The five-sequence horizontal database used throughout the tests.
extern const std::string_view kRunningExample;

Database runningExample();

/// qes=[A,C], minSup=0.4, eps=0, minGap=0, maxGap=5, minDura=0, maxDura=20.
MiningConfig runningExampleConfig();
Constraints runningExampleConstraints();

std::vector<EventId> ids(const Database& db, std::initializer_list<std::string_view> names);
std::vector<std::string> names(const Database& db, const std::vector<EventId>& events);
std::string joined(const Database& db, const std::vector<EventId>& events);

/// The eight expected target patterns, each written as concatenated events.
const std::vector<std::string>& expectedTargets();

}  // namespace tatirp::testing
