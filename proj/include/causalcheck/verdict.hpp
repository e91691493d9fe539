#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causalcheck {

enum class Model { CC, CCv, CM1, CM2 };

enum class Pattern {
  ThinAirRead,
  CyclicCO,
  WriteCOInitRead,
  WriteCORead,
  CyclicCF,
  WriteHBInitRead,
  CyclicHB,
};

inline constexpr Pattern kAllPatterns[] = {
    Pattern::ThinAirRead, Pattern::CyclicCO,        Pattern::WriteCOInitRead, Pattern::WriteCORead,
    Pattern::CyclicCF,    Pattern::WriteHBInitRead, Pattern::CyclicHB,
};

enum class Outcome { Conforming, Violation };

struct Witness {
  Pattern pattern = Pattern::CyclicCO;
  std::vector<std::string> operations;  // ids, in pattern order
  std::optional<std::vector<std::string>> cycle;
  std::optional<std::string> anchor;  // hb patterns only

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
  Model model = Model::CC;
  Outcome outcome = Outcome::Conforming;
  std::optional<Witness> witness;
  double elapsed_ms = 0.0;

  bool conforming() const noexcept { return outcome == Outcome::Conforming; }
  std::optional<Pattern> pattern() const {
    return witness ? std::optional<Pattern>(witness->pattern) : std::nullopt;
  }
};

std::string_view to_string(Model model);
std::string_view to_string(Pattern pattern);
std::string_view to_string(Outcome outcome);

// Accepts cc, ccv, cm1, cm2 and cm (= cm2), case-insensitive.
std::optional<Model> parse_model(std::string_view text);
std::optional<Pattern> parse_pattern(std::string_view text);

// Patterns whose absence defines the model, in reporting order.
std::vector<Pattern> patterns_of(Model model);

// Weakest model whose pattern set contains the pattern.
Model weakest_model_with(Pattern pattern);

// {"model","variant","outcome","pattern","witness","cycle","anchor","elapsed_ms"}.
// Both CM variants report model "CM"; the variant field names the path.
std::string to_json(const Verdict& verdict);
std::string to_human(const Verdict& verdict);

}  // namespace causalcheck
