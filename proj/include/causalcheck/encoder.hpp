#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "causalcheck/datalog.hpp"
#include "causalcheck/history.hpp"
#include "causalcheck/verdict.hpp"

namespace causalcheck {

// Listing reproduces the reference rule text verbatim. Sound differs in two
// places: the hb write-ordering rule without po(Z,O) is restricted to reads
// at the anchor itself (plus the matching init-read constraint), and cfco is
// closed transitively. The checker uses Sound.
enum class Fidelity { Sound, Listing };

struct EncodeOptions {
  Fidelity fidelity = Fidelity::Sound;
  // Answer sv from the history instead of emitting O(n^2) sv facts.
  bool builtin_sv = true;
};

struct ConstraintTag {
  Pattern pattern = Pattern::CyclicCO;
  std::optional<std::size_t> anchor;  // CM constraints only
};

struct Encoding {
  datalog::Program program;
  std::vector<ConstraintTag> constraints;  // parallel to the program's constraints
  std::vector<std::string> constant_of;    // operation index -> constant text
  std::unordered_map<std::string, std::size_t> operation_of;
};

// kind(var,value,id), e.g. w(x,1,id0).
std::string operation_constant(const Operation& op);

// CM anchors: every operation for CM1 (writes first, then reads), the
// po-maximal operations for CM2, none otherwise.
std::vector<std::size_t> cm_anchors(const History& history, Model model);

// Throws Error{NotExecuted} when some read has no value.
Encoding encode(const History& history, Model model, const EncodeOptions& options = {});

}  // namespace causalcheck
