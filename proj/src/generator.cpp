#include "causalcheck/generator.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "causalcheck/checker.hpp"
#include "causalcheck/error.hpp"

namespace causalcheck {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <typename T>
void shuffle(std::vector<T>& items, Prng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.uniform(i)]);
  }
}

}  // namespace

Prng::Prng(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x2545F4914F6CDD1DULL;  // xorshift must not start at 0
}

std::uint64_t Prng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

History generate(const GenConfig& config) {
  if (config.events != 1) {
    throw Error(ErrorCode::InvalidArgument, "only one event per transaction is supported");
  }
  if (config.variables == 0 && config.clients > 0 && config.transactions > 0) {
    throw Error(ErrorCode::InvalidArgument, "at least one variable is required");
  }
  Prng rng(config.seed);
  std::map<std::size_t, std::int64_t> last_write;
  std::vector<Operation> ops;
  std::size_t next_id = 0;
  for (std::size_t c = 0; c < config.clients; ++c) {
    for (std::size_t t = 0; t < config.transactions; ++t) {
      Operation op;
      op.id = "id" + std::to_string(next_id++);
      op.process = "p" + std::to_string(c + 1);
      op.index = static_cast<std::int64_t>(t);
      op.kind = rng.uniform(2) == 0 ? OpKind::Read : OpKind::Write;
      const std::size_t var = 1 + rng.uniform(config.variables);
      op.variable = "x" + std::to_string(var);
      if (op.is_write()) op.value = ++last_write[var];
      ops.push_back(std::move(op));
    }
  }
  return History::from_operations(std::move(ops));
}

History execute_simulated(const History& h, std::uint64_t seed) {
  Prng rng(seed);
  const auto& procs = h.processes();
  std::vector<std::size_t> cursor(procs.size(), 0);
  std::vector<std::size_t> live;
  for (std::size_t p = 0; p < procs.size(); ++p) live.push_back(p);

  std::map<std::string, std::int64_t> store;
  std::vector<std::optional<std::int64_t>> values(h.size());
  while (!live.empty()) {
    const std::size_t slot = rng.uniform(live.size());
    const std::size_t p = live[slot];
    const std::size_t i = procs[p][cursor[p]++];
    const auto& op = h.op(i);
    if (op.is_write()) {
      store[op.variable] = *op.value;
    } else {
      auto it = store.find(op.variable);
      values[i] = it == store.end() ? kInitialValue : it->second;
    }
    if (cursor[p] == procs[p].size()) live.erase(live.begin() + static_cast<std::ptrdiff_t>(slot));
  }
  return with_read_values(h, values);
}

namespace {

using Values = std::vector<std::optional<std::int64_t>>;

struct Rewrite {
  std::size_t read = 0;
  std::int64_t value = 0;
  std::optional<std::size_t> other;  // second read for swaps
};

Values read_values(const History& h) {
  Values v(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.op(i).is_read()) v[i] = h.op(i).value;
  }
  return v;
}

std::int64_t unwritten_value(const History& h, std::size_t var) {
  std::int64_t top = kInitialValue;
  for (std::size_t w : h.writes_on(var)) top = std::max(top, *h.op(w).value);
  return top + 1;
}

std::vector<Rewrite> single_rewrites(const History& h, Pattern pattern) {
  std::vector<Rewrite> out;
  for (std::size_t r = 0; r < h.size(); ++r) {
    if (!h.op(r).is_read()) continue;
    const std::size_t var = h.variable_of(r);
    if (pattern == Pattern::ThinAirRead) {
      out.push_back({r, unwritten_value(h, var)});
      continue;
    }
    if (h.op(r).value != kInitialValue) out.push_back({r, kInitialValue});
    for (std::size_t w : h.writes_on(var)) {
      if (h.op(w).value != h.op(r).value) out.push_back({r, *h.op(w).value});
    }
  }
  return out;
}

std::vector<Rewrite> swaps(const History& h) {
  std::vector<Rewrite> out;
  for (std::size_t v = 0; v < h.variable_count(); ++v) {
    const auto reads = h.reads_on(v);
    for (std::size_t a = 0; a < reads.size(); ++a) {
      for (std::size_t b = a + 1; b < reads.size(); ++b) {
        if (h.op(reads[a]).value != h.op(reads[b]).value) {
          out.push_back({reads[a], *h.op(reads[b]).value, reads[b]});
        }
      }
    }
  }
  return out;
}

History apply(const History& h, const Rewrite& rw) {
  Values values = read_values(h);
  if (rw.other) values[*rw.other] = values[rw.read];
  values[rw.read] = rw.value;
  return with_read_values(h, values);
}

bool reported_first(const History& h, Pattern pattern) {
  return check(h, weakest_model_with(pattern), Engine::Native).pattern() == pattern;
}

// Candidates examined for a preferred hit after the first plain hit.
constexpr std::size_t kPreferenceWindow = 512;

}  // namespace

History mutate_violation(const History& h, Pattern pattern, std::uint64_t seed) {
  if (!h.is_executed()) throw Error(ErrorCode::NotExecuted, "mutation needs an executed history");
  Prng rng(seed);
  std::vector<Rewrite> stage1 = single_rewrites(h, pattern);
  std::vector<Rewrite> stage2 = pattern == Pattern::ThinAirRead ? std::vector<Rewrite>{} : swaps(h);
  shuffle(stage1, rng);
  shuffle(stage2, rng);

  // A candidate on which the checker reports the injected pattern first is
  // preferred; otherwise the first candidate that exhibits it is returned.
  std::optional<History> fallback;
  std::size_t since_fallback = 0;
  for (const auto* stage : {&stage1, &stage2}) {
    for (const auto& rw : *stage) {
      if (fallback && ++since_fallback > kPreferenceWindow) return *fallback;
      History candidate = apply(h, rw);
      if (!exhibits(candidate, pattern)) continue;
      if (reported_first(candidate, pattern)) return candidate;
      if (!fallback) fallback = std::move(candidate);
    }
  }
  if (fallback) return *fallback;
  throw Error(ErrorCode::CannotInject,
              "no read rewrite of this history exhibits " + std::string(to_string(pattern)));
}

}  // namespace causalcheck
