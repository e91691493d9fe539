#include <cctype>

#include "causalcheck/datalog.hpp"
#include "causalcheck/error.hpp"

namespace causalcheck::datalog {

namespace {

bool is_plain_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool is_integer(std::string_view s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string render_term(const Term& term) {
  if (term.is_variable() || is_plain_identifier(term.text) || is_integer(term.text)) {
    return term.text;
  }
  std::string out = "\"";
  for (char c : term.text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program parse() {
    Program program;
    skip_space();
    while (pos_ < text_.size()) {
      parse_statement(program);
      skip_space();
    }
    return program;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw Error(ErrorCode::MalformedInput, "datalog line " + std::to_string(line) + ": " + message);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_' ||
                                   (pos_ == start && text_[pos_] == '-'))) {
      ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    expect("\"");
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  // Ground compound terms are flattened to their text, e.g. w(x,1,id0).
  Term term() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '"') return Term::constant(quoted());
    std::string name = identifier();
    const char first = name[0];
    const bool variable = std::isupper(static_cast<unsigned char>(first)) || first == '_';
    if (!accept("(")) {
      return variable ? Term::variable(std::move(name)) : Term::constant(std::move(name));
    }
    if (variable) fail("variable used as a function symbol");
    std::string text = name + "(";
    do {
      skip_space();
      const bool is_quoted = pos_ < text_.size() && text_[pos_] == '"';
      Term inner = term();
      if (inner.is_variable()) fail("variables inside compound terms are not supported");
      if (text.back() != '(') text += ',';
      text += is_quoted ? render_term(inner) : inner.text;
    } while (accept(","));
    expect(")");
    return Term::constant(text + ")");
  }

  Atom atom() {
    Atom a;
    a.predicate = identifier();
    if (!std::islower(static_cast<unsigned char>(a.predicate[0]))) {
      fail("predicate names start with a lowercase letter");
    }
    if (accept("(")) {
      do {
        a.args.push_back(term());
      } while (accept(","));
      expect(")");
    }
    return a;
  }

  std::vector<Atom> body() {
    std::vector<Atom> atoms;
    do {
      atoms.push_back(atom());
    } while (accept(","));
    return atoms;
  }

  void parse_statement(Program& program) {
    if (accept(":-")) {
      program.rules.push_back(Rule{std::nullopt, body()});
      expect(".");
      return;
    }
    Atom head = atom();
    if (accept(":-")) {
      program.rules.push_back(Rule{std::move(head), body()});
      expect(".");
      return;
    }
    expect(".");
    if (!head.is_ground()) fail("fact " + to_text(head) + " contains variables");
    program.facts.push_back(std::move(head));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_body(const std::vector<Atom>& body) {
  std::string out;
  for (const auto& a : body) {
    if (!out.empty()) out += ", ";
    out += to_text(a);
  }
  return out;
}

}  // namespace

std::string to_text(const Atom& atom) {
  std::string out = atom.predicate;
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i > 0) out += ',';
    out += render_term(atom.args[i]);
  }
  out += ')';
  return out;
}

std::string to_text(const Rule& rule) {
  if (rule.head) return to_text(*rule.head) + " :- " + render_body(rule.body) + ".";
  return ":- " + render_body(rule.body) + ".";
}

Program parse_program(std::string_view text) { return Parser(text).parse(); }

std::string emit_text(const Program& program) {
  std::string out;
  for (const auto& fact : program.facts) out += to_text(fact) + ".\n";
  for (const auto& rule : program.rules) out += to_text(rule) + "\n";
  return out;
}

}  // namespace causalcheck::datalog
