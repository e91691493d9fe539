#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <set>

#include <absl/container/flat_hash_map.h>

#include "causalcheck/datalog.hpp"
#include "causalcheck/error.hpp"

namespace causalcheck::datalog {

// Tuples of arity <= 3 are packed into one 64-bit word, 21 bits per field.
namespace {

constexpr std::size_t kMaxArity = 3;
constexpr unsigned kFieldBits = 21;
constexpr std::uint64_t kFieldMask = (std::uint64_t{1} << kFieldBits) - 1;
constexpr std::size_t kMaxSymbols = std::size_t{1} << kFieldBits;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

using Tuple = std::uint64_t;

std::uint32_t field(Tuple t, std::size_t pos) {
  return static_cast<std::uint32_t>((t >> (kFieldBits * pos)) & kFieldMask);
}
Tuple with_field(Tuple t, std::size_t pos, std::uint32_t value) {
  return t | (Tuple{value} << (kFieldBits * pos));
}
// Bit mask covering the fields named by a position set.
Tuple field_mask(unsigned positions) {
  Tuple mask = 0;
  for (std::size_t p = 0; p < kMaxArity; ++p) {
    if (positions & (1U << p)) mask |= kFieldMask << (kFieldBits * p);
  }
  return mask;
}

struct ListIndex {
  unsigned positions = 0;
  Tuple mask = 0;
  absl::flat_hash_map<Tuple, std::vector<std::uint32_t>> buckets;
};

// For each assignment of `positions`, the set of values at `free_pos`.
struct BitIndex {
  unsigned positions = 0;
  std::size_t free_pos = 0;
  Tuple mask = 0;
  absl::flat_hash_map<Tuple, std::uint32_t> slots;
  std::vector<std::uint64_t> bits;
};

}  // namespace

struct FactSet::State {
  struct Table {
    std::string name;
    std::size_t arity = 0;
    bool derived = false;  // head of some rule
    std::vector<Tuple> tuples;
    absl::flat_hash_map<Tuple, std::uint32_t> index_of;
    std::vector<ListIndex> lists;
    std::vector<BitIndex> bitsets;
    std::size_t delta_begin = 0;
    std::size_t delta_end = 0;
  };

  SymbolTable symbols;
  std::vector<Table> tables;
  std::map<std::string, std::size_t, std::less<>> table_of;
  std::size_t words = 1;  // bitset width over the symbol space

  void index_tuple(Table& t, Tuple tuple, std::uint32_t idx) {
    for (auto& li : t.lists) li.buckets[tuple & li.mask].push_back(idx);
    for (auto& bi : t.bitsets) set_bit(bi, tuple);
  }

  void set_bit(BitIndex& bi, Tuple tuple) {
    auto [it, fresh] = bi.slots.try_emplace(tuple & bi.mask, 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(bi.bits.size() / words);
      bi.bits.resize(bi.bits.size() + words, 0);
    }
    const std::uint32_t v = field(tuple, bi.free_pos);
    bi.bits[it->second * words + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  bool insert(Table& t, Tuple tuple) {
    auto [it, fresh] = t.index_of.try_emplace(tuple, static_cast<std::uint32_t>(t.tuples.size()));
    if (!fresh) return false;
    t.tuples.push_back(tuple);
    index_tuple(t, tuple, it->second);
    return true;
  }

  std::size_t list_index(Table& t, unsigned positions) {
    for (std::size_t i = 0; i < t.lists.size(); ++i) {
      if (t.lists[i].positions == positions) return i;
    }
    ListIndex li;
    li.positions = positions;
    li.mask = field_mask(positions);
    for (std::uint32_t i = 0; i < t.tuples.size(); ++i) li.buckets[t.tuples[i] & li.mask].push_back(i);
    t.lists.push_back(std::move(li));
    return t.lists.size() - 1;
  }

  std::size_t bit_index(Table& t, unsigned positions, std::size_t free_pos) {
    for (std::size_t i = 0; i < t.bitsets.size(); ++i) {
      if (t.bitsets[i].positions == positions && t.bitsets[i].free_pos == free_pos) return i;
    }
    BitIndex bi;
    bi.positions = positions;
    bi.free_pos = free_pos;
    bi.mask = field_mask(positions);
    for (Tuple tuple : t.tuples) set_bit(bi, tuple);
    t.bitsets.push_back(std::move(bi));
    return t.bitsets.size() - 1;
  }

  std::size_t table(std::string_view name, std::size_t arity) {
    auto it = table_of.find(name);
    if (it != table_of.end()) {
      if (tables[it->second].arity != arity) {
        throw Error(ErrorCode::IllFormedProgram,
                    "predicate " + std::string(name) + " used with arities " +
                        std::to_string(tables[it->second].arity) + " and " + std::to_string(arity));
      }
      return it->second;
    }
    if (arity > kMaxArity) {
      throw Error(ErrorCode::IllFormedProgram,
                  "predicate " + std::string(name) + " has arity above " +
                      std::to_string(kMaxArity));
    }
    tables.push_back(Table{std::string(name), arity});
    table_of.emplace(std::string(name), tables.size() - 1);
    return tables.size() - 1;
  }
};

std::uint32_t SymbolTable::intern(std::string_view text) {
  auto it = ids_.find(text);
  if (it != ids_.end()) return it->second;
  if (texts_.size() >= kMaxSymbols) {
    throw Error(ErrorCode::IllFormedProgram, "too many distinct constants");
  }
  const auto id = static_cast<std::uint32_t>(texts_.size());
  texts_.emplace_back(text);
  ids_.emplace(std::string(text), id);
  return id;
}

std::optional<std::uint32_t> SymbolTable::lookup(std::string_view text) const {
  auto it = ids_.find(text);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

FactSet::FactSet() : state_(std::make_unique<State>()) {}
FactSet::FactSet(FactSet&&) noexcept = default;
FactSet& FactSet::operator=(FactSet&&) noexcept = default;
FactSet::~FactSet() = default;

std::size_t FactSet::size() const {
  std::size_t total = 0;
  for (const auto& t : state_->tables) total += t.tuples.size();
  return total;
}

std::size_t FactSet::count(std::string_view predicate) const {
  auto it = state_->table_of.find(predicate);
  return it == state_->table_of.end() ? 0 : state_->tables[it->second].tuples.size();
}

bool FactSet::contains(const Atom& ground) const {
  auto it = state_->table_of.find(ground.predicate);
  if (it == state_->table_of.end()) return false;
  const auto& table = state_->tables[it->second];
  if (table.arity != ground.args.size()) return false;
  Tuple tuple = 0;
  for (std::size_t p = 0; p < ground.args.size(); ++p) {
    if (ground.args[p].is_variable()) return false;
    auto id = state_->symbols.lookup(ground.args[p].text);
    if (!id) return false;
    tuple = with_field(tuple, p, *id);
  }
  return table.index_of.contains(tuple);
}

std::vector<std::vector<std::string>> FactSet::tuples(std::string_view predicate) const {
  std::vector<std::vector<std::string>> out;
  auto it = state_->table_of.find(predicate);
  if (it == state_->table_of.end()) return out;
  const auto& table = state_->tables[it->second];
  for (Tuple tuple : table.tuples) {
    std::vector<std::string> row;
    for (std::size_t p = 0; p < table.arity; ++p) row.push_back(state_->symbols.text(field(tuple, p)));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::string> FactSet::predicates() const {
  std::vector<std::string> out;
  for (const auto& [name, idx] : state_->table_of) out.push_back(name);
  return out;
}

namespace {

using State = FactSet::State;

struct Arg {
  bool is_var = false;
  std::uint32_t value = 0;  // variable number or symbol id
};

struct CompiledAtom {
  std::size_t table = kNone;
  Builtin* builtin = nullptr;
  std::vector<Arg> args;
};

struct CompiledRule {
  std::optional<CompiledAtom> head;
  std::vector<CompiledAtom> body;
  std::vector<std::string> var_names;
};

enum class Range : std::uint8_t { Old, Delta, Full };

struct Step {
  const CompiledAtom* atom = nullptr;
  Range range = Range::Full;
  unsigned bound = 0;  // positions fixed before the step runs
  std::size_t list = kNone;
  // Free positions to bind, and free positions repeating an earlier one.
  std::vector<std::pair<std::size_t, std::uint32_t>> binds;
  std::vector<std::pair<std::size_t, std::size_t>> repeats;
  // Bitset path for the final step: body and head bit indexes.
  std::size_t body_bits = kNone;
  std::size_t head_bits = kNone;
  std::size_t head_free_pos = 0;
};

struct Plan {
  const CompiledRule* rule = nullptr;
  std::size_t delta_table = kNone;
  std::vector<Step> steps;
};

CompiledAtom compile_atom(State& st, const Program& program, const Atom& atom,
                          std::map<std::string, std::uint32_t>& vars,
                          std::vector<std::string>& var_names) {
  CompiledAtom out;
  if (auto b = program.builtins.find(atom.predicate); b != program.builtins.end()) {
    if (b->second->arity() != atom.args.size()) {
      throw Error(ErrorCode::IllFormedProgram, "builtin " + atom.predicate + " expects " +
                                                   std::to_string(b->second->arity()) +
                                                   " arguments");
    }
    out.builtin = b->second.get();
  } else {
    out.table = st.table(atom.predicate, atom.args.size());
  }
  for (const auto& term : atom.args) {
    Arg arg;
    if (term.is_variable()) {
      arg.is_var = true;
      auto [it, fresh] = vars.try_emplace(term.text, static_cast<std::uint32_t>(vars.size()));
      if (fresh) var_names.push_back(term.text);
      arg.value = it->second;
    } else {
      arg.value = st.symbols.intern(term.text);
    }
    out.args.push_back(arg);
  }
  return out;
}

CompiledRule compile_rule(State& st, const Program& program, const Rule& rule) {
  if (rule.body.empty()) {
    throw Error(ErrorCode::IllFormedProgram, "rule with empty body: " + to_text(rule));
  }
  CompiledRule out;
  std::map<std::string, std::uint32_t> vars;
  for (const auto& atom : rule.body) {
    out.body.push_back(compile_atom(st, program, atom, vars, out.var_names));
  }
  // Range restriction: every variable must occur in a stored (non-builtin) body atom.
  std::vector<bool> bindable(vars.size(), false);
  bool has_stored = false;
  for (const auto& atom : out.body) {
    if (atom.builtin) continue;
    has_stored = true;
    for (const auto& a : atom.args) {
      if (a.is_var) bindable[a.value] = true;
    }
  }
  if (!has_stored) {
    throw Error(ErrorCode::IllFormedProgram, "rule body has no stored predicate: " + to_text(rule));
  }
  for (std::size_t v = 0; v < bindable.size(); ++v) {
    if (!bindable[v]) {
      throw Error(ErrorCode::IllFormedProgram,
                  "variable " + out.var_names[v] + " only occurs in builtins: " + to_text(rule));
    }
  }
  if (rule.head) {
    if (program.builtins.contains(rule.head->predicate)) {
      throw Error(ErrorCode::IllFormedProgram, "builtin in rule head: " + to_text(rule));
    }
    for (const auto& term : rule.head->args) {
      if (term.is_variable() && !vars.contains(term.text)) {
        throw Error(ErrorCode::IllFormedProgram,
                    "head variable " + term.text + " not bound by the body: " + to_text(rule));
      }
    }
    out.head = compile_atom(st, program, *rule.head, vars, out.var_names);
    st.tables[out.head->table].derived = true;
  }
  return out;
}

unsigned bound_positions(const CompiledAtom& atom, const std::vector<bool>& bound) {
  unsigned mask = 0;
  for (std::size_t p = 0; p < atom.args.size(); ++p) {
    if (!atom.args[p].is_var || bound[atom.args[p].value]) mask |= 1U << p;
  }
  return mask;
}

// Orders the body: `first` (if any) leads, then repeatedly the stored atom
// with the most bound positions; builtins go in as soon as they are bound.
Plan make_plan(State& st, const CompiledRule& rule, std::size_t first, bool allow_bits) {
  Plan plan;
  plan.rule = &rule;
  const std::size_t n = rule.body.size();
  std::vector<bool> placed(n, false);
  std::vector<bool> bound(rule.var_names.size(), false);

  auto place = [&](std::size_t i) {
    const CompiledAtom& atom = rule.body[i];
    Step step;
    step.atom = &atom;
    if (first != kNone) {
      step.range = i < first ? Range::Old : (i == first ? Range::Delta : Range::Full);
    }
    step.bound = bound_positions(atom, bound);
    std::vector<std::size_t> seen_at(rule.var_names.size(), kNone);
    for (std::size_t p = 0; p < atom.args.size(); ++p) {
      if (step.bound & (1U << p)) continue;
      const std::uint32_t v = atom.args[p].value;
      if (seen_at[v] == kNone) {
        seen_at[v] = p;
        step.binds.emplace_back(p, v);
      } else {
        step.repeats.emplace_back(p, seen_at[v]);
      }
    }
    const unsigned all = (1U << atom.args.size()) - 1;
    if (!atom.builtin && step.bound != 0 && step.bound != all) {
      step.list = st.list_index(st.tables[atom.table], step.bound);
    }
    for (const auto& a : atom.args) {
      if (a.is_var) bound[a.value] = true;
    }
    placed[i] = true;
    plan.steps.push_back(std::move(step));
  };
  auto place_ready_builtins = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || !rule.body[i].builtin) continue;
      const unsigned all = (1U << rule.body[i].args.size()) - 1;
      if (bound_positions(rule.body[i], bound) == all) place(i);
    }
  };

  place_ready_builtins();
  if (first != kNone) {
    plan.delta_table = rule.body[first].table;
    place(first);
    place_ready_builtins();
  }
  for (;;) {
    std::size_t best = kNone;
    std::tuple<bool, int, bool, std::size_t> best_key{};
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || rule.body[i].builtin) continue;
      const auto& atom = rule.body[i];
      const unsigned mask = bound_positions(atom, bound);
      const unsigned all = (1U << atom.args.size()) - 1;
      const auto& table = st.tables[atom.table];
      // Fully bound first, then most bound positions, base predicates, smaller tables.
      std::tuple<bool, int, bool, std::size_t> key{mask == all, std::popcount(mask),
                                                   !table.derived,
                                                   kNone - table.tuples.size()};
      if (best == kNone || key > best_key) {
        best = i;
        best_key = key;
      }
    }
    if (best == kNone) break;
    place(best);
    place_ready_builtins();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!placed[i]) {
      throw Error(ErrorCode::IllFormedProgram, "builtin arguments can never be bound");
    }
  }

  // Bitset path: the last step is stored, not the delta atom, and binds exactly
  // one variable that the head uses exactly once.
  if (!allow_bits || !rule.head || plan.steps.size() < 2) return plan;
  Step& last = plan.steps.back();
  if (last.atom->builtin || last.range == Range::Delta || last.binds.size() != 1 ||
      !last.repeats.empty()) {
    return plan;
  }
  const std::uint32_t var = last.binds[0].second;
  std::size_t head_pos = kNone;
  for (std::size_t p = 0; p < rule.head->args.size(); ++p) {
    const Arg& a = rule.head->args[p];
    if (!a.is_var || a.value != var) continue;
    if (head_pos != kNone) return plan;
    head_pos = p;
  }
  if (head_pos == kNone) return plan;
  const unsigned head_all = (1U << rule.head->args.size()) - 1;
  last.body_bits = st.bit_index(st.tables[last.atom->table], last.bound, last.binds[0].first);
  last.head_bits =
      st.bit_index(st.tables[rule.head->table], head_all & ~(1U << head_pos), head_pos);
  last.head_free_pos = head_pos;
  return plan;
}

class Executor {
 public:
  Executor(State& st, const Plan& plan) : st_(st), plan_(plan) {
    binding_.assign(plan.rule->var_names.size(), 0);
  }

  // Collects head tuples into `out`.
  void derive(std::vector<Tuple>& out) {
    out_ = &out;
    run(0);
  }

  // Stops at the first satisfying assignment.
  bool find_one() {
    stop_at_first_ = true;
    return run(0);
  }

  const std::vector<std::uint32_t>& binding() const { return binding_; }

 private:
  std::uint32_t value_of(const Arg& a) const { return a.is_var ? binding_[a.value] : a.value; }

  Tuple head_tuple() const {
    Tuple t = 0;
    const auto& head = *plan_.rule->head;
    for (std::size_t p = 0; p < head.args.size(); ++p) t = with_field(t, p, value_of(head.args[p]));
    return t;
  }

  bool run(std::size_t k) {
    if (k == plan_.steps.size()) {
      if (stop_at_first_) return true;
      out_->push_back(head_tuple());
      return false;
    }
    const Step& step = plan_.steps[k];
    const CompiledAtom& atom = *step.atom;

    if (atom.builtin) {
      std::array<std::uint32_t, kMaxArity> args{};
      std::vector<std::uint32_t> wide;
      std::span<const std::uint32_t> view;
      if (atom.args.size() <= kMaxArity) {
        for (std::size_t p = 0; p < atom.args.size(); ++p) args[p] = value_of(atom.args[p]);
        view = std::span<const std::uint32_t>(args.data(), atom.args.size());
      } else {
        for (const auto& a : atom.args) wide.push_back(value_of(a));
        view = wide;
      }
      return atom.builtin->holds(view) && run(k + 1);
    }

    auto& table = st_.tables[atom.table];
    std::size_t lo = 0;
    std::size_t hi = table.delta_end;
    if (step.range == Range::Old) hi = table.delta_begin;
    if (step.range == Range::Delta) lo = table.delta_begin;
    if (lo >= hi) return false;

    Tuple key = 0;
    for (std::size_t p = 0; p < atom.args.size(); ++p) {
      if (step.bound & (1U << p)) key = with_field(key, p, value_of(atom.args[p]));
    }

    if (step.body_bits != kNone) return run_bits(step, table, key);

    const unsigned all = (1U << atom.args.size()) - 1;
    if (step.bound == all) {
      auto it = table.index_of.find(key);
      if (it == table.index_of.end() || it->second < lo || it->second >= hi) return false;
      return run(k + 1);
    }
    if (step.bound == 0) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (try_tuple(step, table.tuples[i], k)) return true;
      }
      return false;
    }
    const auto& index = table.lists[step.list];
    auto bucket = index.buckets.find(key);
    if (bucket == index.buckets.end()) return false;
    const auto& ids = bucket->second;
    auto it = std::lower_bound(ids.begin(), ids.end(), static_cast<std::uint32_t>(lo));
    for (; it != ids.end() && *it < hi; ++it) {
      if (try_tuple(step, table.tuples[*it], k)) return true;
    }
    return false;
  }

  bool try_tuple(const Step& step, Tuple tuple, std::size_t k) {
    for (auto [pos, earlier] : step.repeats) {
      if (field(tuple, pos) != field(tuple, earlier)) return false;
    }
    for (auto [pos, var] : step.binds) binding_[var] = field(tuple, pos);
    return run(k + 1);
  }

  // Candidates from the body bitset minus values the head already holds.
  bool run_bits(const Step& step, State::Table& table, Tuple key) {
    const BitIndex& body = table.bitsets[step.body_bits];
    auto slot = body.slots.find(key);
    if (slot == body.slots.end()) return false;
    const std::size_t words = st_.words;
    const std::uint64_t* cand = body.bits.data() + std::size_t{slot->second} * words;

    const auto& head_atom = *plan_.rule->head;
    auto& head_table = st_.tables[head_atom.table];
    const BitIndex& head = head_table.bitsets[step.head_bits];
    Tuple head_key = 0;
    for (std::size_t p = 0; p < head_atom.args.size(); ++p) {
      if (p != step.head_free_pos) head_key = with_field(head_key, p, value_of(head_atom.args[p]));
    }
    auto head_slot = head.slots.find(head_key);
    const std::uint64_t* have = head_slot == head.slots.end()
                                    ? nullptr
                                    : head.bits.data() + std::size_t{head_slot->second} * words;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t fresh = cand[w] & (have ? ~have[w] : ~std::uint64_t{0});
      while (fresh != 0) {
        const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(fresh));
        fresh &= fresh - 1;
        out_->push_back(with_field(head_key, step.head_free_pos, v));
      }
    }
    return false;
  }

  State& st_;
  const Plan& plan_;
  std::vector<std::uint32_t> binding_;
  std::vector<Tuple>* out_ = nullptr;
  bool stop_at_first_ = false;
};

struct Compiled {
  std::vector<CompiledRule> rules;
  std::vector<CompiledRule> constraints;
};

Compiled load(State& st, const Program& program) {
  for (const auto& [name, builtin] : program.builtins) {
    if (!builtin) throw Error(ErrorCode::IllFormedProgram, "null builtin " + name);
  }
  std::vector<std::pair<std::size_t, Tuple>> facts;
  for (const auto& fact : program.facts) {
    if (program.builtins.contains(fact.predicate)) {
      throw Error(ErrorCode::IllFormedProgram, "fact for builtin predicate " + fact.predicate);
    }
    if (!fact.is_ground()) {
      throw Error(ErrorCode::IllFormedProgram, "fact is not ground: " + to_text(fact));
    }
    const std::size_t table = st.table(fact.predicate, fact.args.size());
    Tuple tuple = 0;
    for (std::size_t p = 0; p < fact.args.size(); ++p) {
      tuple = with_field(tuple, p, st.symbols.intern(fact.args[p].text));
    }
    facts.emplace_back(table, tuple);
  }
  Compiled out;
  for (const auto& rule : program.rules) {
    (rule.is_constraint() ? out.constraints : out.rules).push_back(compile_rule(st, program, rule));
  }
  st.words = std::max<std::size_t>(1, (st.symbols.size() + 63) / 64);
  for (auto [table, tuple] : facts) st.insert(st.tables[table], tuple);
  for (const auto& [name, builtin] : program.builtins) builtin->prepare(st.symbols);
  return out;
}

}  // namespace

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

bool operator==(const Program& a, const Program& b) {
  if (a.facts != b.facts || a.rules != b.rules || a.builtins.size() != b.builtins.size()) {
    return false;
  }
  return std::equal(a.builtins.begin(), a.builtins.end(), b.builtins.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; });
}

FactSet evaluate(const Program& program) {
  FactSet result;
  State& st = result.state();
  Compiled compiled = load(st, program);

  std::vector<Plan> plans;
  for (const auto& rule : compiled.rules) {
    for (std::size_t d = 0; d < rule.body.size(); ++d) {
      if (!rule.body[d].builtin) plans.push_back(make_plan(st, rule, d, true));
    }
  }

  for (auto& t : st.tables) {
    t.delta_begin = 0;
    t.delta_end = t.tuples.size();
  }
  std::vector<Tuple> derived;
  for (;;) {
    for (const Plan& plan : plans) {
      const auto& dt = st.tables[plan.delta_table];
      if (dt.delta_begin == dt.delta_end) continue;
      derived.clear();
      Executor(st, plan).derive(derived);
      auto& head = st.tables[plan.rule->head->table];
      for (Tuple t : derived) st.insert(head, t);
    }
    bool grew = false;
    for (auto& t : st.tables) {
      t.delta_begin = t.delta_end;
      t.delta_end = t.tuples.size();
      grew |= t.delta_begin != t.delta_end;
    }
    if (!grew) break;
  }
  return result;
}

ConstraintResult check_constraints(const Program& program, const FactSet& fixpoint) {
  // Planning may add indexes to the fact set; stored facts are never modified.
  ConstraintResult result;
  auto& st = const_cast<FactSet&>(fixpoint).state();
  std::size_t constraint_no = 0;
  for (const auto& rule : program.rules) {
    if (!rule.is_constraint()) continue;
    const std::size_t this_constraint = constraint_no++;
    bool unknown_constant = false;
    for (const auto& atom : rule.body) {
      for (const auto& term : atom.args) {
        if (!term.is_variable() && !st.symbols.lookup(term.text)) unknown_constant = true;
      }
    }
    // A constant never seen during evaluation cannot occur in any stored fact.
    if (unknown_constant && std::all_of(rule.body.begin(), rule.body.end(), [&](const Atom& a) {
          return !program.builtins.contains(a.predicate);
        })) {
      continue;
    }
    CompiledRule compiled = compile_rule(st, program, rule);
    for (auto& t : st.tables) t.delta_end = t.tuples.size();
    Plan plan = make_plan(st, compiled, kNone, false);
    Executor exec(st, plan);
    if (!exec.find_one()) continue;
    ConstraintViolation violation;
    violation.constraint = this_constraint;
    for (std::size_t v = 0; v < compiled.var_names.size(); ++v) {
      violation.bindings.emplace(compiled.var_names[v], st.symbols.text(exec.binding()[v]));
    }
    result.violations.push_back(std::move(violation));
  }
  result.satisfiable = result.violations.empty();
  return result;
}

}  // namespace causalcheck::datalog
