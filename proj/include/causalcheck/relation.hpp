#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace causalcheck {

// Binary relation over the dense index set {0, ..., size-1}, stored as one
// bitset row per element: row(a) holds every b with (a, b) in the relation.
// Reflexive pairs are allowed.
class Relation {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Relation() = default;
  explicit Relation(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool contains(std::size_t from, std::size_t to) const noexcept {
    return (bits_[from * words_ + to / kWordBits] >> (to % kWordBits)) & 1U;
  }
  // Returns true when the pair was not present before.
  bool add(std::size_t from, std::size_t to) noexcept {
    Word& word = bits_[from * words_ + to / kWordBits];
    const Word mask = Word{1} << (to % kWordBits);
    const bool fresh = (word & mask) == 0;
    word |= mask;
    return fresh;
  }
  void remove(std::size_t from, std::size_t to) noexcept {
    bits_[from * words_ + to / kWordBits] &= ~(Word{1} << (to % kWordBits));
  }

  std::span<Word> row(std::size_t from) noexcept { return {bits_.data() + from * words_, words_}; }
  std::span<const Word> row(std::size_t from) const noexcept {
    return {bits_.data() + from * words_, words_};
  }

  std::size_t pair_count() const noexcept;
  bool empty() const noexcept { return pair_count() == 0; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::vector<std::size_t> successors(std::size_t from) const;

  bool has_reflexive_pair() const noexcept;
  bool is_subset_of(const Relation& other) const noexcept;

  Relation& operator|=(const Relation& other);
  Relation inverse() const;
  // Keeps only pairs whose endpoints both lie in `keep`.
  Relation restricted_to(std::span<const Word> keep) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t size_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

Relation operator|(Relation lhs, const Relation& rhs);

// Smallest transitive superset of `relation`.
Relation transitive_closure(Relation relation);

// Adds (from, to) to an already transitively closed relation and restores
// closure. Returns false if the pair was already present.
bool add_and_close(Relation& closed, std::size_t from, std::size_t to);

// Depth-first search visiting start nodes and successors in `visit_order`
// (all nodes in index order when empty). Returns the first cycle closed by a
// back edge as [o1, ..., ok, o1], or nullopt when the relation is acyclic.
std::optional<std::vector<std::size_t>> find_cycle(
    const Relation& relation, std::span<const std::size_t> visit_order = {});

}  // namespace causalcheck
