#include "causalcheck/relation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace causalcheck {

Relation::Relation(std::size_t size)
    : size_(size), words_((size + kWordBits - 1) / kWordBits), bits_(size * words_, 0) {}

std::size_t Relation::pair_count() const noexcept {
  std::size_t count = 0;
  for (Word w : bits_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b : successors(a)) out.emplace_back(a, b);
  }
  return out;
}

std::vector<std::size_t> Relation::successors(std::size_t from) const {
  std::vector<std::size_t> out;
  const auto r = row(from);
  for (std::size_t w = 0; w < words_; ++w) {
    Word bits = r[w];
    while (bits != 0) {
      const int bit = std::countr_zero(bits);
      out.push_back(w * kWordBits + static_cast<std::size_t>(bit));
      bits &= bits - 1;
    }
  }
  return out;
}

bool Relation::has_reflexive_pair() const noexcept {
  for (std::size_t a = 0; a < size_; ++a) {
    if (contains(a, a)) return true;
  }
  return false;
}

bool Relation::is_subset_of(const Relation& other) const noexcept {
  if (size_ != other.size_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if ((bits_[i] & ~other.bits_[i]) != 0) return false;
  }
  return true;
}

Relation& Relation::operator|=(const Relation& other) {
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

Relation operator|(Relation lhs, const Relation& rhs) {
  lhs |= rhs;
  return lhs;
}

Relation Relation::inverse() const {
  Relation out(size_);
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b : successors(a)) out.add(b, a);
  }
  return out;
}

Relation Relation::restricted_to(std::span<const Word> keep) const {
  Relation out(size_);
  for (std::size_t a = 0; a < size_; ++a) {
    if (((keep[a / kWordBits] >> (a % kWordBits)) & 1U) == 0) continue;
    auto dst = out.row(a);
    const auto src = row(a);
    for (std::size_t w = 0; w < words_; ++w) dst[w] = src[w] & keep[w];
  }
  return out;
}

Relation transitive_closure(Relation relation) {
  // Warshall over bitset rows.
  const std::size_t n = relation.size();
  const std::size_t words = relation.words_per_row();
  for (std::size_t k = 0; k < n; ++k) {
    const auto via = relation.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (!relation.contains(i, k)) continue;
      auto dst = relation.row(i);
      for (std::size_t w = 0; w < words; ++w) dst[w] |= via[w];
    }
  }
  return relation;
}

bool add_and_close(Relation& closed, std::size_t from, std::size_t to) {
  if (closed.contains(from, to)) return false;
  const std::size_t n = closed.size();
  const std::size_t words = closed.words_per_row();
  // Everything reachable from `to`, including `to` itself.
  std::vector<Relation::Word> reach(closed.row(to).begin(), closed.row(to).end());
  reach[to / Relation::kWordBits] |= Relation::Word{1} << (to % Relation::kWordBits);
  for (std::size_t x = 0; x < n; ++x) {
    if (x != from && !closed.contains(x, from)) continue;
    auto dst = closed.row(x);
    for (std::size_t w = 0; w < words; ++w) dst[w] |= reach[w];
  }
  return true;
}

std::optional<std::vector<std::size_t>> find_cycle(const Relation& relation,
                                                   std::span<const std::size_t> visit_order) {
  const std::size_t n = relation.size();
  std::vector<std::size_t> order;
  if (visit_order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else {
    order.assign(visit_order.begin(), visit_order.end());
  }
  // rank[i] = position of node i in the visiting order.
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  enum class Color : std::uint8_t { White, Grey, Black };
  std::vector<Color> color(n, Color::White);

  struct Frame {
    std::size_t node;
    std::vector<std::size_t> next;  // successors sorted by rank
    std::size_t cursor = 0;
  };
  auto sorted_successors = [&](std::size_t node) {
    auto succ = relation.successors(node);
    std::sort(succ.begin(), succ.end(),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    return succ;
  };

  for (std::size_t start : order) {
    if (color[start] != Color::White) continue;
    std::vector<Frame> stack;
    color[start] = Color::Grey;
    stack.push_back({start, sorted_successors(start)});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.cursor == top.next.size()) {
        color[top.node] = Color::Black;
        stack.pop_back();
        continue;
      }
      const std::size_t succ = top.next[top.cursor++];
      if (color[succ] == Color::Grey) {
        // Back edge top.node -> succ closes a cycle along the grey path.
        std::vector<std::size_t> cycle;
        std::size_t pos = 0;
        while (stack[pos].node != succ) ++pos;
        for (; pos < stack.size(); ++pos) cycle.push_back(stack[pos].node);
        cycle.push_back(succ);
        return cycle;
      }
      if (color[succ] == Color::White) {
        color[succ] = Color::Grey;
        stack.push_back({succ, sorted_successors(succ)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace causalcheck
