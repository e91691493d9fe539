#include "causalcheck/causality.hpp"

#include <vector>

#include "causalcheck/error.hpp"

namespace causalcheck {

namespace {

// Kahn order of the direct graph po-successor ∪ wr; empty if it has a cycle.
std::vector<std::size_t> topological_order(const History& h) {
  const std::size_t n = h.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto pred = h.po_predecessor(i)) {
      succ[*pred].push_back(i);
      ++indegree[i];
    }
    if (auto src = h.wr_source(i)) {
      succ[*src].push_back(i);
      ++indegree[i];
    }
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t s : succ[order[head]]) {
      if (--indegree[s] == 0) order.push_back(s);
    }
  }
  if (order.size() != n) order.clear();
  return order;
}

}  // namespace

Relation compute_co(const History& h) {
  const std::size_t n = h.size();
  Relation co(n);
  if (n == 0) return co;
  const auto order = topological_order(h);
  if (order.empty()) return transitive_closure(h.po() | h.wr());

  // Acyclic: reach(u) = ∪ over direct successors v of {v} ∪ reach(v).
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto pred = h.po_predecessor(i)) succ[*pred].push_back(i);
    if (auto src = h.wr_source(i)) succ[*src].push_back(i);
  }
  const std::size_t words = co.words_per_row();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t u = *it;
    auto dst = co.row(u);
    for (std::size_t v : succ[u]) {
      co.add(u, v);
      const auto src = co.row(v);
      for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
    }
  }
  return co;
}

Relation compute_cf(const History& h, const Relation& co) {
  Relation cf(h.size());
  for (std::size_t v = 0; v < h.variable_count(); ++v) {
    for (std::size_t r : h.reads_on(v)) {
      const auto source = h.wr_source(r);
      if (!source) continue;
      for (std::size_t w : h.writes_on(v)) {
        if (w != *source && co.contains(w, r)) cf.add(w, *source);
      }
    }
  }
  return transitive_closure(std::move(cf));
}

Relation compute_hb_base(const History& h, const Relation& co, std::size_t anchor) {
  std::vector<Relation::Word> keep(co.words_per_row(), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i == anchor || co.contains(i, anchor)) {
      keep[i / Relation::kWordBits] |= Relation::Word{1} << (i % Relation::kWordBits);
    }
  }
  // Both endpoints in past(o) ∪ {o}; a pair (o, x) survives only when co
  // is cyclic through o, matching the (o1, o) ∈ co requirement.
  return co.restricted_to(keep);
}

HbFamily compute_hb(const History& h, const Relation& co, std::size_t anchor) {
  HbFamily family{anchor, compute_hb_base(h, co, anchor)};
  Relation& hb = family.relation;

  // Reads po-before-or-equal to the anchor that take their value from a write.
  std::vector<std::pair<std::size_t, std::size_t>> reads;  // (read, source)
  const auto& proc = h.processes()[h.process_of(anchor)];
  for (std::size_t pos = 0; pos <= h.position_in_process(anchor); ++pos) {
    const std::size_t r = proc[pos];
    if (!h.op(r).is_read()) continue;
    if (auto src = h.wr_source(r)) reads.emplace_back(r, *src);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [r, source] : reads) {
      for (std::size_t w : h.writes_on(h.variable_of(r))) {
        if (w == source || !hb.contains(w, r)) continue;
        changed |= add_and_close(hb, w, source);
      }
    }
  }
  return family;
}

HbFamily compute_hb(const History& h, const Relation& co, std::string_view anchor_id) {
  const auto anchor = h.find(anchor_id);
  if (!anchor) {
    throw Error(ErrorCode::InvalidArgument, "unknown anchor " + std::string(anchor_id));
  }
  return compute_hb(h, co, *anchor);
}

}  // namespace causalcheck
