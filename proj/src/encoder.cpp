#include "causalcheck/encoder.hpp"

#include <algorithm>

#include "causalcheck/error.hpp"

namespace causalcheck {

using datalog::Atom;
using datalog::Program;
using datalog::Rule;
using datalog::Term;

namespace {

// sv(X,Y): distinct operations on the same variable.
class SameVariable : public datalog::Builtin {
 public:
  explicit SameVariable(std::unordered_map<std::string, std::size_t> variable_of)
      : variable_of_(std::move(variable_of)) {}

  std::size_t arity() const override { return 2; }

  void prepare(const datalog::SymbolTable& symbols) override {
    by_symbol_.assign(symbols.size(), kNoVariable);
    for (const auto& [text, variable] : variable_of_) {
      if (auto id = symbols.lookup(text)) by_symbol_[*id] = variable;
    }
  }

  bool holds(std::span<const std::uint32_t> args) const override {
    const std::uint32_t a = args[0];
    const std::uint32_t b = args[1];
    if (a == b || a >= by_symbol_.size() || b >= by_symbol_.size()) return false;
    return by_symbol_[a] != kNoVariable && by_symbol_[a] == by_symbol_[b];
  }

 private:
  static constexpr std::size_t kNoVariable = static_cast<std::size_t>(-1);
  std::unordered_map<std::string, std::size_t> variable_of_;
  std::vector<std::size_t> by_symbol_;
};

Term v(const char* name) { return Term::variable(name); }
Term c(const std::string& text) { return Term::constant(text); }

Atom atom(std::string predicate, std::vector<Term> args) {
  return Atom{std::move(predicate), std::move(args)};
}

class Builder {
 public:
  explicit Builder(Encoding& enc) : enc_(enc) {}

  void rule(Atom head, std::vector<Atom> body) {
    enc_.program.rules.push_back(Rule{std::move(head), std::move(body)});
  }
  void constraint(std::vector<Atom> body, Pattern pattern,
                  std::optional<std::size_t> anchor = std::nullopt) {
    enc_.program.rules.push_back(Rule{std::nullopt, std::move(body)});
    enc_.constraints.push_back({pattern, anchor});
  }

 private:
  Encoding& enc_;
};

void emit_cc(Builder& b) {
  b.rule(atom("co", {v("X"), v("Y")}), {atom("po", {v("X"), v("Y")})});
  b.rule(atom("co", {v("X"), v("Y")}), {atom("wr", {v("X"), v("Y")})});
  b.rule(atom("co", {v("X"), v("Z")}), {atom("co", {v("X"), v("Y")}), atom("co", {v("Y"), v("Z")})});
  b.constraint({atom("co", {v("X"), v("X")})}, Pattern::CyclicCO);
  b.constraint({atom("co", {v("X"), v("Y")}), atom("wrt", {v("X")}), atom("initread", {v("Y")}),
                atom("sv", {v("X"), v("Y")})},
               Pattern::WriteCOInitRead);
  b.constraint({atom("co", {v("X"), v("Y")}), atom("co", {v("Y"), v("Z")}),
                atom("wr", {v("X"), v("Z")}), atom("wrt", {v("X")}), atom("wrt", {v("Y")}),
                atom("rd", {v("Z")}), atom("sv", {v("X"), v("Y")}), atom("sv", {v("Y"), v("Z")})},
               Pattern::WriteCORead);
}

void emit_ccv(Builder& b, Fidelity fidelity) {
  b.rule(atom("cf", {v("X"), v("Y")}),
         {atom("co", {v("X"), v("Z")}), atom("wr", {v("Y"), v("Z")}), atom("wrt", {v("X")}),
          atom("sv", {v("X"), v("Y")}), atom("sv", {v("X"), v("Z")})});
  b.rule(atom("cf", {v("X"), v("Y")}), {atom("cf", {v("X"), v("Z")}), atom("cf", {v("Z"), v("Y")})});
  b.rule(atom("cfco", {v("X"), v("Y")}), {atom("co", {v("X"), v("Y")})});
  b.rule(atom("cfco", {v("X"), v("Y")}), {atom("cf", {v("X"), v("Y")})});
  if (fidelity == Fidelity::Sound) {
    b.rule(atom("cfco", {v("X"), v("Z")}),
           {atom("cfco", {v("X"), v("Y")}), atom("cfco", {v("Y"), v("Z")})});
  }
  b.constraint({atom("cfco", {v("X"), v("Y")}), atom("cfco", {v("Y"), v("X")})}, Pattern::CyclicCF);
}

void emit_cm_anchor(Builder& b, Fidelity fidelity, const std::string& o, std::size_t anchor) {
  b.rule(atom("hb", {v("X"), c(o), c(o)}), {atom("co", {v("X"), c(o)})});
  b.rule(atom("hb", {v("X"), v("Y"), c(o)}),
         {atom("hb", {v("Y"), c(o), c(o)}), atom("co", {v("X"), v("Y")})});
  b.rule(atom("hb", {v("X"), v("Y"), c(o)}),
         {atom("hb", {v("X"), v("Z"), c(o)}), atom("po", {v("Z"), c(o)}),
          atom("wr", {v("Y"), v("Z")}), atom("wrt", {v("X")}), atom("sv", {v("X"), v("Y")})});
  if (fidelity == Fidelity::Listing) {
    b.rule(atom("hb", {v("X"), v("Y"), c(o)}),
           {atom("hb", {v("X"), v("Z"), c(o)}), atom("wr", {v("Y"), v("Z")}), atom("wrt", {v("X")}),
            atom("sv", {v("X"), v("Y")})});
  } else {
    b.rule(atom("hb", {v("X"), v("Y"), c(o)}),
           {atom("hb", {v("X"), c(o), c(o)}), atom("wr", {v("Y"), c(o)}), atom("wrt", {v("X")}),
            atom("sv", {v("X"), v("Y")})});
  }
  b.rule(atom("hb", {v("X"), v("Z"), c(o)}),
         {atom("hb", {v("X"), v("Y"), c(o)}), atom("hb", {v("Y"), v("Z"), c(o)})});
  b.constraint({atom("hb", {v("X"), v("Y"), c(o)}), atom("wrt", {v("X")}),
                atom("sv", {v("X"), v("Y")}), atom("po", {v("Y"), c(o)}),
                atom("initread", {v("Y")})},
               Pattern::WriteHBInitRead, anchor);
  if (fidelity == Fidelity::Sound) {
    b.constraint({atom("hb", {v("X"), c(o), c(o)}), atom("wrt", {v("X")}),
                  atom("sv", {v("X"), c(o)}), atom("initread", {c(o)})},
                 Pattern::WriteHBInitRead, anchor);
  }
  b.constraint({atom("hb", {v("X"), v("Y"), c(o)}), atom("hb", {v("Y"), v("X"), c(o)})},
               Pattern::CyclicHB, anchor);
}

}  // namespace

std::string operation_constant(const Operation& op) {
  std::string out = op.is_write() ? "w(" : "r(";
  out += op.variable;
  out += ',';
  out += op.value ? std::to_string(*op.value) : "_";
  out += ',';
  out += op.id;
  out += ')';
  return out;
}

std::vector<std::size_t> cm_anchors(const History& history, Model model) {
  std::vector<std::size_t> out;
  if (model == Model::CM2) return po_maximal_indices(history);
  if (model != Model::CM1) return out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (history.op(i).is_write()) out.push_back(i);
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (history.op(i).is_read()) out.push_back(i);
  }
  return out;
}

Encoding encode(const History& h, Model model, const EncodeOptions& options) {
  if (!h.is_executed()) {
    throw Error(ErrorCode::NotExecuted, "cannot encode a history with unvalued reads");
  }
  Encoding enc;
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    enc.constant_of.push_back(operation_constant(h.op(i)));
    enc.operation_of.emplace(enc.constant_of.back(), i);
  }
  auto& facts = enc.program.facts;
  const auto& k = enc.constant_of;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& op = h.op(i);
    facts.push_back(atom(op.is_write() ? "wrt" : "rd", {c(k[i])}));
    if (op.is_initial_read()) facts.push_back(atom("initread", {c(k[i])}));
  }
  for (const auto& [a, b] : h.po().pairs()) facts.push_back(atom("po", {c(k[a]), c(k[b])}));
  for (const auto& [a, b] : h.wr().pairs()) facts.push_back(atom("wr", {c(k[a]), c(k[b])}));
  if (options.builtin_sv) {
    std::unordered_map<std::string, std::size_t> variable_of;
    for (std::size_t i = 0; i < n; ++i) variable_of.emplace(k[i], h.variable_of(i));
    enc.program.builtins.emplace("sv", std::make_shared<SameVariable>(std::move(variable_of)));
  } else {
    for (std::size_t var = 0; var < h.variable_count(); ++var) {
      std::vector<std::size_t> ops(h.writes_on(var).begin(), h.writes_on(var).end());
      ops.insert(ops.end(), h.reads_on(var).begin(), h.reads_on(var).end());
      std::sort(ops.begin(), ops.end());
      for (std::size_t a : ops) {
        for (std::size_t b : ops) {
          if (a != b) facts.push_back(atom("sv", {c(k[a]), c(k[b])}));
        }
      }
    }
  }

  Builder b(enc);
  emit_cc(b);
  if (model == Model::CCv) emit_ccv(b, options.fidelity);
  for (std::size_t anchor : cm_anchors(h, model)) {
    emit_cm_anchor(b, options.fidelity, k[anchor], anchor);
  }
  return enc;
}

}  // namespace causalcheck
