#include "causalcheck/verdict.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace causalcheck {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::CC: return "CC";
    case Model::CCv: return "CCv";
    case Model::CM1: return "CM1";
    case Model::CM2: return "CM2";
  }
  return "?";
}

std::string_view to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::ThinAirRead: return "ThinAirRead";
    case Pattern::CyclicCO: return "CyclicCO";
    case Pattern::WriteCOInitRead: return "WriteCOInitRead";
    case Pattern::WriteCORead: return "WriteCORead";
    case Pattern::CyclicCF: return "CyclicCF";
    case Pattern::WriteHBInitRead: return "WriteHBInitRead";
    case Pattern::CyclicHB: return "CyclicHB";
  }
  return "?";
}

std::string_view to_string(Outcome outcome) {
  return outcome == Outcome::Conforming ? "Conforming" : "Violation";
}

std::optional<Model> parse_model(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cc") return Model::CC;
  if (lower == "ccv") return Model::CCv;
  if (lower == "cm1") return Model::CM1;
  if (lower == "cm2" || lower == "cm") return Model::CM2;
  return std::nullopt;
}

std::optional<Pattern> parse_pattern(std::string_view text) {
  for (Pattern p : kAllPatterns) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::vector<Pattern> patterns_of(Model model) {
  std::vector<Pattern> out = {Pattern::ThinAirRead, Pattern::CyclicCO, Pattern::WriteCOInitRead,
                              Pattern::WriteCORead};
  if (model == Model::CCv) out.push_back(Pattern::CyclicCF);
  if (model == Model::CM1 || model == Model::CM2) {
    out.push_back(Pattern::WriteHBInitRead);
    out.push_back(Pattern::CyclicHB);
  }
  return out;
}

Model weakest_model_with(Pattern pattern) {
  switch (pattern) {
    case Pattern::CyclicCF: return Model::CCv;
    case Pattern::WriteHBInitRead:
    case Pattern::CyclicHB: return Model::CM2;
    default: return Model::CC;
  }
}

namespace {

std::string_view model_family(Model model) {
  return model == Model::CM1 || model == Model::CM2 ? "CM" : to_string(model);
}

}  // namespace

std::string to_json(const Verdict& verdict) {
  nlohmann::ordered_json j;
  j["model"] = model_family(verdict.model);
  j["variant"] = to_string(verdict.model);
  j["outcome"] = to_string(verdict.outcome);
  if (verdict.witness) {
    j["pattern"] = to_string(verdict.witness->pattern);
    j["witness"] = verdict.witness->operations;
    if (verdict.witness->cycle) j["cycle"] = *verdict.witness->cycle;
    if (verdict.witness->anchor) j["anchor"] = *verdict.witness->anchor;
  } else {
    j["pattern"] = nullptr;
    j["witness"] = nlohmann::ordered_json::array();
  }
  j["elapsed_ms"] = verdict.elapsed_ms;
  return j.dump();
}

std::string to_human(const Verdict& verdict) {
  std::ostringstream out;
  out << model_family(verdict.model);
  if (model_family(verdict.model) != to_string(verdict.model)) {
    out << " (" << to_string(verdict.model) << ")";
  }
  out << ": " << to_string(verdict.outcome);
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    out << " [" << to_string(w.pattern) << "]";
    if (w.anchor) out << " at " << *w.anchor;
    out << "\n  operations:";
    for (const auto& id : w.operations) out << ' ' << id;
    if (w.cycle) {
      out << "\n  cycle:";
      for (std::size_t i = 0; i < w.cycle->size(); ++i) out << (i ? " -> " : " ") << (*w.cycle)[i];
    }
  }
  out << "\n";
  return out.str();
}

}  // namespace causalcheck
