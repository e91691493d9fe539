#pragma once

#include <cstddef>
#include <span>

#include "causalcheck/history.hpp"
#include "causalcheck/verdict.hpp"

namespace causalcheck {

inline constexpr std::size_t kOracleMaxOperations = 6;

// Membership in the sequential read/write specification: each read returns
// the last value written to its variable, or 0 if there is none. A read
// without a value is unconstrained.
bool srw_member(std::span<const Operation> sequence);

// Decides the model straight from its axioms by enumerating causal orders
// (and arbitration orders for CCv). CM1 and CM2 denote the same model here.
// Violation verdicts carry no witness. Throws Error{TooLarge} above
// kOracleMaxOperations and Error{NotExecuted} for unvalued reads.
Verdict oracle_check(const History& history, Model model);

}  // namespace causalcheck
