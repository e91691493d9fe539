#include "causalcheck/oracle.hpp"

#include <chrono>
#include <map>
#include <vector>

#include "causalcheck/error.hpp"

namespace causalcheck {

namespace {

// Running state of a sequence being checked against S_RW.
class SrwState {
 public:
  // Applies one operation; false if the sequence leaves the specification.
  bool apply(const std::string& variable, OpKind kind, const std::optional<std::int64_t>& value) {
    auto it = store_.find(variable);
    const std::int64_t current = it == store_.end() ? kInitialValue : it->second;
    if (kind == OpKind::Write) {
      store_[variable] = value.value_or(kInitialValue);
      return true;
    }
    return !value || *value == current;
  }

 private:
  std::map<std::string, std::int64_t> store_;
};

using Mask = std::uint32_t;

bool has(Mask m, std::size_t i) { return (m >> i) & 1U; }

class Oracle {
 public:
  Oracle(const History& h, Model model) : h_(h), model_(model), n_(h.size()) {
    po_below_.assign(n_, 0);
    po_star_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      po_star_[i] = Mask{1} << i;
      for (std::size_t j = 0; j < n_; ++j) {
        if (h.po().contains(j, i)) {
          po_below_[i] |= Mask{1} << j;
          po_star_[i] |= Mask{1} << j;
        }
      }
    }
    store_.assign(h.variable_count(), kInitialValue);
  }

  bool conforming() {
    std::vector<Mask> below(n_, 0);
    return insert(0, below);
  }

 private:
  // Builds every strict partial order containing po by inserting element k
  // below the set D and above the set U of already placed elements.
  bool insert(std::size_t k, std::vector<Mask>& below) {
    if (k == n_) return satisfies(below);
    const Mask universe = (Mask{1} << k) - 1;
    for (Mask down = 0; down <= universe; ++down) {
      if ((down & po_below_[k]) != po_below_[k]) continue;
      bool closed = true;
      for (std::size_t d = 0; d < k && closed; ++d) {
        if (has(down, d) && (below[d] & ~down) != 0) closed = false;
      }
      if (!closed) continue;
      const Mask rest = universe & ~down;
      // Enumerate subsets `up` of `rest`.
      for (Mask up = rest;; up = (up - 1) & rest) {
        if (valid_up(k, below, down, up)) {
          below[k] = down;
          for (std::size_t u = 0; u < k; ++u) {
            if (has(up, u)) below[u] |= Mask{1} << k;
          }
          const bool found = insert(k + 1, below);
          for (std::size_t u = 0; u < k; ++u) {
            if (has(up, u)) below[u] &= ~(Mask{1} << k);
          }
          below[k] = 0;
          if (found) return true;
        }
        if (up == 0) break;
      }
    }
    return false;
  }

  bool valid_up(std::size_t k, const std::vector<Mask>& below, Mask down, Mask up) const {
    for (std::size_t u = 0; u < k; ++u) {
      if (!has(up, u)) continue;
      if ((below[u] & down) != down) return false;  // d < k < u needs d < u
      for (std::size_t j = 0; j < k; ++j) {
        if (has(below[j], u) && !has(up, j)) return false;  // up-closed
      }
    }
    return true;
  }

  bool satisfies(const std::vector<Mask>& below) {
    if (model_ == Model::CCv) {
      std::vector<std::size_t> arb;
      return extend_arbitration(below, 0, arb);
    }
    for (std::size_t o = 0; o < n_; ++o) {
      const Mask past = below[o] | (Mask{1} << o);
      // CC keeps only o's return value; CM keeps those of POPast(o).
      const Mask keep = model_ == Model::CC ? (Mask{1} << o) : po_star_[o];
      if (!linearize(below, past, keep, 0)) return false;
    }
    return true;
  }

  // Is there a linear extension of the causal order on `past` in S_RW when
  // only reads in `keep` are constrained?
  bool linearize(const std::vector<Mask>& below, Mask past, Mask keep, Mask placed) {
    if (placed == past) return true;
    for (std::size_t e = 0; e < n_; ++e) {
      if (!has(past, e) || has(placed, e) || (below[e] & ~placed) != 0) continue;
      const auto& op = h_.op(e);
      const std::size_t var = h_.variable_of(e);
      if (op.is_write()) {
        const std::int64_t saved = store_[var];
        store_[var] = *op.value;
        const bool ok = linearize(below, past, keep, placed | (Mask{1} << e));
        store_[var] = saved;
        if (ok) return true;
      } else {
        if (has(keep, e) && store_[var] != *op.value) continue;
        if (linearize(below, past, keep, placed | (Mask{1} << e))) return true;
      }
    }
    return false;
  }

  // Total orders extending the causal order; o's causal past, taken in
  // arbitration order with only o's value kept, must be in S_RW.
  bool extend_arbitration(const std::vector<Mask>& below, Mask placed,
                          std::vector<std::size_t>& arb) {
    if (arb.size() == n_) return true;
    for (std::size_t e = 0; e < n_; ++e) {
      if (has(placed, e) || (below[e] & ~placed) != 0) continue;
      arb.push_back(e);
      std::vector<Operation> sigma;
      for (std::size_t x : arb) {
        if (!has(below[e], x) && x != e) continue;
        Operation op = h_.op(x);
        if (x != e && op.is_read()) op.value.reset();
        sigma.push_back(std::move(op));
      }
      if (srw_member(sigma) && extend_arbitration(below, placed | (Mask{1} << e), arb)) {
        return true;
      }
      arb.pop_back();
    }
    return false;
  }

  const History& h_;
  Model model_;
  std::size_t n_;
  std::vector<Mask> po_below_;
  std::vector<Mask> po_star_;
  std::vector<std::int64_t> store_;
};

}  // namespace

bool srw_member(std::span<const Operation> sequence) {
  SrwState state;
  for (const auto& op : sequence) {
    if (!state.apply(op.variable, op.kind, op.value)) return false;
  }
  return true;
}

Verdict oracle_check(const History& h, Model model) {
  if (h.size() > kOracleMaxOperations) {
    throw Error(ErrorCode::TooLarge, "oracle handles at most " +
                                         std::to_string(kOracleMaxOperations) + " operations, got " +
                                         std::to_string(h.size()));
  }
  if (!h.is_executed()) throw Error(ErrorCode::NotExecuted, "oracle needs read values");
  const auto start = std::chrono::steady_clock::now();
  Verdict v{model};
  v.outcome = Oracle(h, model).conforming() ? Outcome::Conforming : Outcome::Violation;
  v.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

}  // namespace causalcheck
