#ifndef CCNGRAM_CORE_ENGINE_HPP
#define CCNGRAM_CORE_ENGINE_HPP

#include "core/report.hpp"
#include "core/scenario.hpp"

namespace ccngram::sim {

// Executes one scenario to quiescence: timers and new requests stop at the
// configured duration, in-flight messages drain, then end-of-run invariants
// are checked. Deterministic for a fixed config.
RunReport run_scenario(const ScenarioConfig& cfg);

// Same, but over a caller-built world (pinned topologies, oracle scenarios).
RunReport run_with_scenario(const ScenarioConfig& cfg, const Scenario& scn);

} // namespace ccngram::sim

#endif // CCNGRAM_CORE_ENGINE_HPP
