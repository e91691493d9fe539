#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace causalcheck::datalog {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };
  Kind kind = Kind::Constant;
  std::string text;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string value) { return {Kind::Constant, std::move(value)}; }
  bool is_variable() const noexcept { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// A rule without a head is a constraint.
struct Rule {
  std::optional<Atom> head;
  std::vector<Atom> body;

  bool is_constraint() const noexcept { return !head.has_value(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

class SymbolTable;

// A predicate answered by code instead of stored facts. It only filters: every
// argument must be bound when it is consulted.
class Builtin {
 public:
  virtual ~Builtin() = default;
  virtual std::size_t arity() const = 0;
  // Called once per evaluation, after every constant has been interned.
  virtual void prepare(const SymbolTable& symbols) = 0;
  virtual bool holds(std::span<const std::uint32_t> args) const = 0;
};

struct Program {
  std::vector<Atom> facts;
  std::vector<Rule> rules;
  // Predicates answered by code; absent from emitted text.
  std::map<std::string, std::shared_ptr<Builtin>> builtins;

  // Structural equality of facts and rules; builtins are compared by name.
  friend bool operator==(const Program& a, const Program& b);
};

class SymbolTable {
 public:
  std::uint32_t intern(std::string_view text);
  std::optional<std::uint32_t> lookup(std::string_view text) const;
  const std::string& text(std::uint32_t id) const { return texts_[id]; }
  std::size_t size() const noexcept { return texts_.size(); }

 private:
  std::vector<std::string> texts_;
  std::map<std::string, std::uint32_t, std::less<>> ids_;
};

// Least fixpoint of a program.
class FactSet {
 public:
  FactSet();
  FactSet(FactSet&&) noexcept;
  FactSet& operator=(FactSet&&) noexcept;
  ~FactSet();

  std::size_t size() const;
  std::size_t count(std::string_view predicate) const;
  bool contains(const Atom& ground) const;
  // Tuples of one predicate in derivation order.
  std::vector<std::vector<std::string>> tuples(std::string_view predicate) const;
  std::vector<std::string> predicates() const;

  struct State;
  const State& state() const { return *state_; }
  State& state() { return *state_; }

 private:
  std::unique_ptr<State> state_;
};

// Semi-naive bottom-up evaluation. Throws Error{IllFormedProgram} for
// non-range-restricted rules, inconsistent arities, arity above 3, or builtins
// whose arguments can never be bound.
FactSet evaluate(const Program& program);

struct ConstraintViolation {
  std::size_t constraint = 0;  // index among the program's constraints
  std::map<std::string, std::string> bindings;
};

struct ConstraintResult {
  bool satisfiable = true;
  std::vector<ConstraintViolation> violations;  // one per violated constraint
};

ConstraintResult check_constraints(const Program& program, const FactSet& fixpoint);

// Textual form: facts `p(a,b).`, rules `h(X) :- b(X).`, constraints `:- b(X).`
// and `%` line comments. Constants are lowercase identifiers, integers, quoted
// strings or ground compound terms such as w(x,1,id0), kept as their text.
Program parse_program(std::string_view text);
std::string emit_text(const Program& program);
std::string to_text(const Atom& atom);
std::string to_text(const Rule& rule);

}  // namespace causalcheck::datalog
