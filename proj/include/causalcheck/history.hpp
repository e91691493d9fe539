#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "causalcheck/relation.hpp"

namespace causalcheck {

enum class OpKind : std::uint8_t { Read, Write };

// Value read from a variable no write has touched.
inline constexpr std::int64_t kInitialValue = 0;

struct Operation {
  std::string id;
  std::string process;
  std::int64_t index = 0;
  OpKind kind = OpKind::Read;
  std::string variable;
  // Absent only for reads of a history that has not been executed yet.
  std::optional<std::int64_t> value;

  bool is_read() const noexcept { return kind == OpKind::Read; }
  bool is_write() const noexcept { return kind == OpKind::Write; }
  bool is_initial_read() const noexcept { return is_read() && value == kInitialValue; }

  friend bool operator==(const Operation&, const Operation&) = default;
};

// An immutable set of operations with the derived program order (po) and
// write-read relation (wr).
//
// Operations are stored sorted by (process, index); that position is the
// dense index used by every Relation over this history. po is transitive.
// wr links each read of v != 0 on x to the unique write of v on x, which is
// well defined because construction rejects histories that are not
// differentiated.
class History {
 public:
  History() = default;

  // Throws Error{MalformedInput | DuplicateId | DuplicateWrite}.
  static History from_operations(std::vector<Operation> operations);

  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }
  std::span<const Operation> operations() const noexcept { return ops_; }
  const Operation& op(std::size_t i) const { return ops_[i]; }
  std::optional<std::size_t> find(std::string_view id) const;

  const Relation& po() const noexcept { return po_; }
  const Relation& wr() const noexcept { return wr_; }

  // Processes in lexicographic order; each entry lists its operations in po order.
  const std::vector<std::vector<std::size_t>>& processes() const noexcept { return processes_; }
  std::size_t process_of(std::size_t i) const { return process_of_[i]; }
  // Position of operation i inside its process (0-based, contiguous).
  std::size_t position_in_process(std::size_t i) const { return position_[i]; }
  std::optional<std::size_t> po_predecessor(std::size_t i) const;

  // Dense variable numbering in lexicographic order of names.
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t variable_of(std::size_t i) const { return variable_of_[i]; }
  const std::string& variable_name(std::size_t v) const { return variables_[v]; }
  std::span<const std::size_t> writes_on(std::size_t v) const { return writes_by_var_[v]; }
  std::span<const std::size_t> reads_on(std::size_t v) const { return reads_by_var_[v]; }

  // The write a read takes its value from; nullopt for initial and thin-air reads.
  std::optional<std::size_t> wr_source(std::size_t read) const;

  // True when every read carries a return value.
  bool is_executed() const noexcept { return executed_; }

  // Node order for deterministic cycle search: operations sorted by id.
  std::span<const std::size_t> lexicographic_order() const noexcept { return lex_order_; }

  friend bool operator==(const History& a, const History& b) { return a.ops_ == b.ops_; }

 private:
  std::vector<Operation> ops_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<std::vector<std::size_t>> processes_;
  std::vector<std::size_t> process_of_;
  std::vector<std::size_t> position_;
  std::vector<std::string> variables_;
  std::vector<std::size_t> variable_of_;
  std::vector<std::vector<std::size_t>> writes_by_var_;
  std::vector<std::vector<std::size_t>> reads_by_var_;
  std::vector<std::optional<std::size_t>> source_;
  std::vector<std::size_t> lex_order_;
  Relation po_;
  Relation wr_;
  bool executed_ = true;
};

struct DuplicateWrite {
  std::string variable;
  std::int64_t value = 0;
  std::vector<std::string> ids;
};

// Differentiation check: no two writes share (variable, value).
std::optional<DuplicateWrite> validate_differentiated(std::span<const Operation> operations);
std::optional<DuplicateWrite> validate_differentiated(const History& history);

// Ids of the last operation of every nonempty process, in process order.
std::vector<std::string> po_maximal(const History& history);
std::vector<std::size_t> po_maximal_indices(const History& history);

// JSONL: one {"id","process","index","kind","var","value"} object per line.
History parse_history(std::string_view text);
std::string serialize_history(const History& history);

// Read values replaced; every other field kept. Used by executors and mutators.
History with_read_values(const History& history,
                         std::span<const std::optional<std::int64_t>> read_values);

std::string_view to_string(OpKind kind);

}  // namespace causalcheck
