#pragma once

// Shared fixtures for the test binaries: the sample histories, a brute-force
// Datalog evaluator and a chaotic-iteration hb reference.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalcheck/datalog.hpp"
#include "causalcheck/generator.hpp"
#include "causalcheck/history.hpp"
#include "causalcheck/verdict.hpp"

namespace causalcheck::testing {

// One process per entry; each operation is "w(x,1)" or "r(x,0)". Ids are
// id0, id1, ... in the order given, process names p1, p2, ...
inline History make_history(const std::vector<std::vector<std::string>>& processes) {
  std::vector<Operation> ops;
  std::size_t next = 0;
  for (std::size_t p = 0; p < processes.size(); ++p) {
    for (std::size_t i = 0; i < processes[p].size(); ++i) {
      const std::string& s = processes[p][i];
      const auto comma = s.find(',');
      Operation op;
      op.id = "id" + std::to_string(next++);
      op.process = "p" + std::to_string(p + 1);
      op.index = static_cast<std::int64_t>(i);
      op.kind = s[0] == 'w' ? OpKind::Write : OpKind::Read;
      op.variable = s.substr(2, comma - 2);
      op.value = std::stoll(s.substr(comma + 1, s.size() - comma - 2));
      ops.push_back(std::move(op));
    }
  }
  return History::from_operations(std::move(ops));
}

struct Sample {
  std::string name;
  History history;
  bool cc;
  bool ccv;
  bool cm;
};

inline std::vector<Sample> samples() {
  return {
      {"a",
       make_history({{"w(z,1)", "w(x,1)", "w(y,1)"}, {"w(x,2)", "r(z,0)", "r(y,1)", "r(x,2)"}}),
       true, true, false},
      {"b", make_history({{"w(x,1)", "r(x,2)"}, {"w(x,2)", "r(x,1)"}}), true, false, true},
      {"c",
       make_history({{"w(x,1)", "r(y,0)", "w(y,1)", "r(x,1)"},
                     {"w(x,2)", "r(y,0)", "w(y,2)", "r(x,2)"}}),
       true, true, true},
      {"d", make_history({{"w(x,1)"}, {"w(x,2)", "r(x,1)", "r(x,2)"}}), true, false, false},
      {"e", make_history({{"w(x,1)", "w(y,1)"}, {"r(y,1)", "w(x,2)"}, {"r(x,2)", "r(x,1)"}}),
       false, false, false},
  };
}

inline bool expected(const Sample& f, Model m) {
  switch (m) {
    case Model::CC: return f.cc;
    case Model::CCv: return f.ccv;
    default: return f.cm;
  }
}

// Generated, executed and (for odd seeds) mutated history.
inline History sample_history(std::uint64_t seed, std::size_t processes, std::size_t ops,
                              std::size_t variables) {
  GenConfig config;
  config.clients = processes;
  config.transactions = std::max<std::size_t>(1, ops / processes);
  config.variables = variables;
  config.seed = seed;
  History h = execute_simulated(generate(config), seed ^ 0x5bd1e995ULL);
  if (seed % 2 == 1) {
    const Pattern p = kAllPatterns[(seed / 2) % std::size(kAllPatterns)];
    try {
      h = mutate_violation(h, p, seed);
    } catch (const std::exception&) {
    }
  }
  return h;
}

// Brute-force bottom-up evaluation: every rule is matched left to right
// against the whole fact set until nothing new appears. No indexes, no
// semi-naive deltas.
class NaiveDatalog {
 public:
  using Tuple = std::vector<std::string>;

  explicit NaiveDatalog(const datalog::Program& program) : program_(program) {
    for (const auto& f : program.facts) facts_[f.predicate].insert(texts(f));
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& rule : program.rules) {
        if (rule.is_constraint()) continue;
        std::vector<Tuple> derived;
        match(rule, 0, {}, [&](const Binding& b) { derived.push_back(ground(*rule.head, b)); });
        for (auto& t : derived) changed |= facts_[rule.head->predicate].insert(std::move(t)).second;
      }
    }
  }

  const std::set<Tuple>& facts(const std::string& predicate) { return facts_[predicate]; }

  // True when no constraint body is satisfiable.
  bool satisfiable() const {
    for (const auto& rule : program_.rules) {
      if (!rule.is_constraint()) continue;
      bool hit = false;
      match(rule, 0, {}, [&](const Binding&) { hit = true; });
      if (hit) return false;
    }
    return true;
  }

 private:
  using Binding = std::map<std::string, std::string>;

  static Tuple texts(const datalog::Atom& a) {
    Tuple t;
    for (const auto& arg : a.args) t.push_back(arg.text);
    return t;
  }

  static Tuple ground(const datalog::Atom& a, const Binding& b) {
    Tuple t;
    for (const auto& arg : a.args) t.push_back(arg.is_variable() ? b.at(arg.text) : arg.text);
    return t;
  }

  template <typename F>
  void match(const datalog::Rule& rule, std::size_t k, const Binding& b, F&& emit) const {
    if (k == rule.body.size()) {
      emit(b);
      return;
    }
    const auto& atom = rule.body[k];
    auto it = facts_.find(atom.predicate);
    if (it == facts_.end()) return;
    for (const auto& tuple : it->second) {
      if (tuple.size() != atom.args.size()) continue;
      Binding next = b;
      bool ok = true;
      for (std::size_t i = 0; i < tuple.size() && ok; ++i) {
        const auto& arg = atom.args[i];
        if (!arg.is_variable()) {
          ok = arg.text == tuple[i];
        } else if (arg.text == "_") {
          continue;
        } else if (auto bound = next.find(arg.text); bound != next.end()) {
          ok = bound->second == tuple[i];
        } else {
          next.emplace(arg.text, tuple[i]);
        }
      }
      if (ok) match(rule, k + 1, next, emit);
    }
  }

  const datalog::Program& program_;
  std::map<std::string, std::set<Tuple>> facts_;
};

// hb[o] straight from the definition, on plain boolean matrices.
class HbReference {
 public:
  using Matrix = std::vector<std::vector<bool>>;

  explicit HbReference(const History& h) : h_(h), n_(h.size()) {
    co_.assign(n_, std::vector<bool>(n_, false));
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (h.po().contains(a, b) || h.wr().contains(a, b)) co_[a][b] = true;
      }
    }
    close(co_);
  }

  const Matrix& co() const { return co_; }

  Matrix hb(std::size_t o) const {
    Matrix r(n_, std::vector<bool>(n_, false));
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (co_[a][b] && co_[a][o] && (b == o || co_[b][o])) r[a][b] = true;
      }
    }
    // Chaotic iteration of the write-ordering rule and transitivity.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t rd = 0; rd < n_; ++rd) {
        const auto src = h_.wr_source(rd);
        if (!src) continue;
        const bool po_star = rd == o || h_.po().contains(rd, o);
        if (!po_star) continue;
        for (std::size_t w = 0; w < n_; ++w) {
          if (w != *src && h_.op(w).is_write() && h_.variable_of(w) == h_.variable_of(rd) &&
              r[w][rd] && !r[w][*src]) {
            r[w][*src] = true;
            changed = true;
          }
        }
      }
      for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) {
          if (!r[a][b]) continue;
          for (std::size_t c = 0; c < n_; ++c) {
            if (r[b][c] && !r[a][c]) {
              r[a][c] = true;
              changed = true;
            }
          }
        }
      }
    }
    return r;
  }

 private:
  static void close(Matrix& m) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!m[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (m[k][j]) m[i][j] = true;
        }
      }
    }
  }

  const History& h_;
  std::size_t n_;
  Matrix co_;
};

}  // namespace causalcheck::testing
