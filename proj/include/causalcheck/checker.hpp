#pragma once

#include <vector>

#include "causalcheck/encoder.hpp"
#include "causalcheck/history.hpp"
#include "causalcheck/verdict.hpp"

namespace causalcheck {

enum class Engine { Native, Datalog, CrossCheck };

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

// Reports the first bad pattern of the model in the fixed order ThinAirRead,
// CyclicCO, WriteCOInitRead, WriteCORead, then CyclicCF (CCv) or
// WriteHBInitRead, CyclicHB (CM). A WriteHBInitRead at any anchor takes
// precedence over a CyclicHB at an earlier one.
//
// Throws Error{NotExecuted} for unvalued reads and, in CrossCheck mode,
// Error{EngineDisagreement} when the engines differ in outcome or pattern.
Verdict check(const History& history, Model model, Engine engine = Engine::Native);

// Datalog path with explicit encoder options.
Verdict check_datalog(const History& history, Model model, const EncodeOptions& options);

// Every pattern instance of the model: one per offending read for the
// read-based patterns, one cycle per relation, and per anchor for CM.
std::vector<Witness> detect_bad_patterns(const History& history, Model model);

// True when the history contains an instance of the pattern, regardless of
// other patterns. CM patterns quantify over all anchors.
bool exhibits(const History& history, Pattern pattern);

}  // namespace causalcheck
