#ifndef CCNGRAM_CORE_ORACLE_HPP
#define CCNGRAM_CORE_ORACLE_HPP

#include <string>
#include <vector>

#include "core/report.hpp"
#include "core/scenario.hpp"

namespace ccngram {

// Pinned desk-scale scenarios whose behavior is hand-derivable; their traces
// are committed as golden files and re-checked by the oracle CLI verb and
// the test suite.
//
//   chain2        two routers, producer at 0, one consumer at 1
//   chain5_split  five-router chain, producer at 0 serving two groups with
//                 one consumer each at nodes 2 and 4 (independent trees, so
//                 per-round delays are exactly the path round trips)
//   chain5_shared same chain, one group with consumers at 2 and 4 (exercises
//                 tree merging, nacks and counter catch-up)
struct OracleCase {
  std::string name;
  ScenarioConfig config;
  Scenario scenario;
  std::string golden_file; // file name under the golden directory
};

std::vector<std::string> oracle_names();
OracleCase make_oracle(const std::string& name);
RunReport run_oracle(const std::string& name);

} // namespace ccngram

#endif // CCNGRAM_CORE_ORACLE_HPP
