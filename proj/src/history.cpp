#include "causalcheck/history.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "causalcheck/error.hpp"

namespace causalcheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DuplicateWrite: return "DuplicateWrite";
    case ErrorCode::NotExecuted: return "NotExecuted";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CannotInject: return "CannotInject";
    case ErrorCode::IllFormedProgram: return "IllFormedProgram";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EngineDisagreement: return "EngineDisagreement";
  }
  return "Unknown";
}

std::string_view to_string(OpKind kind) { return kind == OpKind::Read ? "read" : "write"; }

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

}  // namespace

History History::from_operations(std::vector<Operation> operations) {
  History h;
  for (const auto& op : operations) {
    if (op.id.empty()) throw Error(ErrorCode::MalformedInput, "operation with empty id");
    if (op.index < 0) {
      throw Error(ErrorCode::MalformedInput, "negative index on operation " + op.id);
    }
    if (op.is_write() && !op.value) {
      throw Error(ErrorCode::MalformedInput, "write " + op.id + " has no value");
    }
    if (op.is_write() && *op.value == kInitialValue) {
      throw Error(ErrorCode::MalformedInput,
                  "write " + op.id + " writes 0, which is reserved for the initial state");
    }
  }
  if (auto dup = validate_differentiated(operations)) {
    throw Error(ErrorCode::DuplicateWrite, "value " + std::to_string(dup->value) + " written to " +
                                               dup->variable + " more than once by " +
                                               join_ids(dup->ids));
  }

  std::sort(operations.begin(), operations.end(), [](const Operation& a, const Operation& b) {
    if (a.process != b.process) return a.process < b.process;
    return a.index < b.index;
  });
  h.ops_ = std::move(operations);
  const std::size_t n = h.ops_.size();

  for (std::size_t i = 0; i < n; ++i) {
    const auto& op = h.ops_[i];
    if (!h.by_id_.emplace(op.id, i).second) {
      throw Error(ErrorCode::DuplicateId, "operation id " + op.id + " appears twice");
    }
    if (i > 0 && h.ops_[i - 1].process == op.process && h.ops_[i - 1].index == op.index) {
      throw Error(ErrorCode::MalformedInput, "operations " + h.ops_[i - 1].id + " and " + op.id +
                                                 " share process " + op.process + " and index " +
                                                 std::to_string(op.index));
    }
    if (op.is_read() && !op.value) h.executed_ = false;
  }

  h.process_of_.resize(n);
  h.position_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || h.ops_[i - 1].process != h.ops_[i].process) h.processes_.emplace_back();
    h.process_of_[i] = h.processes_.size() - 1;
    h.position_[i] = h.processes_.back().size();
    h.processes_.back().push_back(i);
  }

  std::map<std::string, std::size_t> var_ids;
  for (const auto& op : h.ops_) var_ids.emplace(op.variable, 0);
  for (auto& [name, id] : var_ids) {
    id = h.variables_.size();
    h.variables_.push_back(name);
  }
  h.variable_of_.resize(n);
  h.writes_by_var_.resize(h.variables_.size());
  h.reads_by_var_.resize(h.variables_.size());
  std::map<std::pair<std::size_t, std::int64_t>, std::size_t> writer;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = var_ids.at(h.ops_[i].variable);
    h.variable_of_[i] = v;
    if (h.ops_[i].is_write()) {
      h.writes_by_var_[v].push_back(i);
      writer.emplace(std::pair{v, *h.ops_[i].value}, i);
    } else {
      h.reads_by_var_[v].push_back(i);
    }
  }

  h.po_ = Relation(n);
  for (const auto& proc : h.processes_) {
    for (std::size_t a = 0; a < proc.size(); ++a) {
      for (std::size_t b = a + 1; b < proc.size(); ++b) h.po_.add(proc[a], proc[b]);
    }
  }

  h.wr_ = Relation(n);
  h.source_.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& op = h.ops_[i];
    if (!op.is_read() || !op.value || *op.value == kInitialValue) continue;
    auto it = writer.find({h.variable_of_[i], *op.value});
    if (it == writer.end()) continue;  // thin-air read, reported by the checkers
    h.source_[i] = it->second;
    h.wr_.add(it->second, i);
  }

  h.lex_order_.resize(n);
  std::iota(h.lex_order_.begin(), h.lex_order_.end(), std::size_t{0});
  std::sort(h.lex_order_.begin(), h.lex_order_.end(),
            [&](std::size_t a, std::size_t b) { return h.ops_[a].id < h.ops_[b].id; });
  return h;
}

std::optional<std::size_t> History::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> History::po_predecessor(std::size_t i) const {
  if (position_[i] == 0) return std::nullopt;
  return processes_[process_of_[i]][position_[i] - 1];
}

std::optional<std::size_t> History::wr_source(std::size_t read) const { return source_[read]; }

std::optional<DuplicateWrite> validate_differentiated(std::span<const Operation> operations) {
  std::map<std::pair<std::string, std::int64_t>, std::vector<std::string>> writers;
  for (const auto& op : operations) {
    if (op.is_write() && op.value) writers[{op.variable, *op.value}].push_back(op.id);
  }
  for (auto& [key, ids] : writers) {
    if (ids.size() > 1) return DuplicateWrite{key.first, key.second, std::move(ids)};
  }
  return std::nullopt;
}

std::optional<DuplicateWrite> validate_differentiated(const History& history) {
  return validate_differentiated(history.operations());
}

std::vector<std::size_t> po_maximal_indices(const History& history) {
  std::vector<std::size_t> out;
  for (const auto& proc : history.processes()) out.push_back(proc.back());
  return out;
}

std::vector<std::string> po_maximal(const History& history) {
  std::vector<std::string> out;
  for (std::size_t i : po_maximal_indices(history)) out.push_back(history.op(i).id);
  return out;
}

namespace {

template <typename T>
T required_field(const nlohmann::json& record, const char* key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw Error(ErrorCode::MalformedInput,
                "line " + std::to_string(line) + ": missing field \"" + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedInput,
                "line " + std::to_string(line) + ": field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

History parse_history(std::string_view text) {
  std::vector<Operation> ops;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(line_no) + ": expected a JSON object");
    }

    Operation op;
    op.id = required_field<std::string>(record, "id", line_no);
    op.process = required_field<std::string>(record, "process", line_no);
    op.index = required_field<std::int64_t>(record, "index", line_no);
    const auto kind = required_field<std::string>(record, "kind", line_no);
    if (kind == "read") {
      op.kind = OpKind::Read;
    } else if (kind == "write") {
      op.kind = OpKind::Write;
    } else {
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(line_no) + ": unknown kind \"" + kind + "\"");
    }
    op.variable = required_field<std::string>(record, "var", line_no);
    if (auto it = record.find("value"); it != record.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        throw Error(ErrorCode::MalformedInput,
                    "line " + std::to_string(line_no) + ": value must be an integer or null");
      }
      op.value = it->get<std::int64_t>();
    }
    ops.push_back(std::move(op));
  }
  return History::from_operations(std::move(ops));
}

std::string serialize_history(const History& history) {
  std::string out;
  for (const auto& op : history.operations()) {
    // ordered_json keeps the documented key order.
    nlohmann::ordered_json record;
    record["id"] = op.id;
    record["process"] = op.process;
    record["index"] = op.index;
    record["kind"] = to_string(op.kind);
    record["var"] = op.variable;
    record["value"] = op.value ? nlohmann::ordered_json(*op.value) : nlohmann::ordered_json();
    out += record.dump();
    out += '\n';
  }
  return out;
}

History with_read_values(const History& history,
                         std::span<const std::optional<std::int64_t>> read_values) {
  std::vector<Operation> ops(history.operations().begin(), history.operations().end());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].is_read()) ops[i].value = read_values[i];
  }
  return History::from_operations(std::move(ops));
}

}  // namespace causalcheck
