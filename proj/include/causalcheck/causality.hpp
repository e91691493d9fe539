#pragma once

#include <cstddef>
#include <string_view>

#include "causalcheck/history.hpp"
#include "causalcheck/relation.hpp"

namespace causalcheck {

// co = (po ∪ wr)+.
Relation compute_co(const History& history);

// Transitive closure of {(w1, w2) : w1 != w2 on the same variable, w2 wr r,
// (w1, r) ∈ co}.
Relation compute_cf(const History& history, const Relation& co);

// hb[o] for one anchor o.
struct HbFamily {
  std::size_t anchor = 0;
  Relation relation;
};

// co restricted to the causal past of the anchor: pairs (o1, o2) ∈ co with
// (o1, o) ∈ co and (o2, o) ∈ co*.
Relation compute_hb_base(const History& history, const Relation& co, std::size_t anchor);

// Least transitive relation containing the base and closed under the write
// ordering rule: (w, r) ∈ hb, w' wr r, (r, o) ∈ po*, w != w' => (w, w') ∈ hb.
HbFamily compute_hb(const History& history, const Relation& co, std::size_t anchor);
HbFamily compute_hb(const History& history, const Relation& co, std::string_view anchor_id);

}  // namespace causalcheck
