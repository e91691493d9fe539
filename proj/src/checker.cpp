#include "causalcheck/checker.hpp"

#include <chrono>
#include <set>

#include "causalcheck/causality.hpp"
#include "causalcheck/error.hpp"

namespace causalcheck {

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::Native: return "native";
    case Engine::Datalog: return "datalog";
    case Engine::CrossCheck: return "cross";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "native") return Engine::Native;
  if (text == "datalog") return Engine::Datalog;
  if (text == "cross" || text == "crosscheck") return Engine::CrossCheck;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_executed(const History& h) {
  if (!h.is_executed()) {
    throw Error(ErrorCode::NotExecuted, "history has reads without return values");
  }
}

std::vector<std::string> ids(const History& h, std::initializer_list<std::size_t> ops) {
  std::vector<std::string> out;
  for (std::size_t i : ops) out.push_back(h.op(i).id);
  return out;
}

Witness cycle_witness(const History& h, Pattern pattern, const std::vector<std::size_t>& cycle) {
  Witness w{pattern};
  std::vector<std::string> path;
  for (std::size_t i : cycle) path.push_back(h.op(i).id);
  std::set<std::size_t> distinct(cycle.begin(), cycle.end());
  for (std::size_t i : cycle) {
    if (distinct.erase(i)) w.operations.push_back(h.op(i).id);
  }
  w.cycle = std::move(path);
  return w;
}

// Closed relations carry every cycle as a self-loop; search without them so
// the witness names the operations involved.
std::vector<std::size_t> cycle_without_loops(const History& h, Relation r) {
  for (std::size_t i = 0; i < r.size(); ++i) r.remove(i, i);
  return *find_cycle(r, h.lexicographic_order());
}

// Native detectors. Each `limit` bounds the number of instances returned.
class Detector {
 public:
  explicit Detector(const History& h) : h_(h) {}

  const Relation& co() {
    if (!co_) co_ = compute_co(h_);
    return *co_;
  }

  void thin_air(std::vector<Witness>& out, std::size_t limit) {
    for (std::size_t i = 0; i < h_.size() && out.size() < limit; ++i) {
      const auto& op = h_.op(i);
      if (op.is_read() && op.value != kInitialValue && !h_.wr_source(i)) {
        out.push_back({Pattern::ThinAirRead, ids(h_, {i})});
      }
    }
  }

  void cyclic_co(std::vector<Witness>& out) {
    if (!co().has_reflexive_pair()) return;
    Relation direct(h_.size());
    for (std::size_t i = 0; i < h_.size(); ++i) {
      if (auto p = h_.po_predecessor(i)) direct.add(*p, i);
      if (auto s = h_.wr_source(i)) direct.add(*s, i);
    }
    auto cycle = find_cycle(direct, h_.lexicographic_order());
    out.push_back(cycle_witness(h_, Pattern::CyclicCO, *cycle));
  }

  void write_co_init_read(std::vector<Witness>& out, std::size_t limit) {
    for (std::size_t r = 0; r < h_.size() && out.size() < limit; ++r) {
      if (!h_.op(r).is_initial_read()) continue;
      for (std::size_t w : h_.writes_on(h_.variable_of(r))) {
        if (co().contains(w, r)) {
          out.push_back({Pattern::WriteCOInitRead, ids(h_, {w, r})});
          break;
        }
      }
    }
  }

  void write_co_read(std::vector<Witness>& out, std::size_t limit) {
    for (std::size_t r = 0; r < h_.size() && out.size() < limit; ++r) {
      const auto w1 = h_.wr_source(r);
      if (!w1) continue;
      for (std::size_t w2 : h_.writes_on(h_.variable_of(r))) {
        if (w2 != *w1 && co().contains(*w1, w2) && co().contains(w2, r)) {
          out.push_back({Pattern::WriteCORead, ids(h_, {*w1, w2, r})});
          break;
        }
      }
    }
  }

  void cyclic_cf(std::vector<Witness>& out) {
    const Relation cf = compute_cf(h_, co());
    const Relation both = transitive_closure(cf | co());
    if (!both.has_reflexive_pair()) return;
    out.push_back(cycle_witness(h_, Pattern::CyclicCF, cycle_without_loops(h_, cf | co())));
  }

  // Instances at one anchor: at most one per pattern.
  void hb_patterns(std::size_t anchor, std::vector<Witness>& init_reads,
                   std::vector<Witness>& cycles) {
    const HbFamily hb = compute_hb(h_, co(), anchor);
    const auto& proc = h_.processes()[h_.process_of(anchor)];
    bool found = false;
    for (std::size_t pos = 0; pos <= h_.position_in_process(anchor) && !found; ++pos) {
      const std::size_t r = proc[pos];
      if (!h_.op(r).is_initial_read()) continue;
      for (std::size_t w : h_.writes_on(h_.variable_of(r))) {
        if (hb.relation.contains(w, r)) {
          Witness wit{Pattern::WriteHBInitRead, ids(h_, {w, r})};
          wit.anchor = h_.op(anchor).id;
          init_reads.push_back(std::move(wit));
          found = true;
          break;
        }
      }
    }
    if (hb.relation.has_reflexive_pair()) {
      Witness wit =
          cycle_witness(h_, Pattern::CyclicHB, cycle_without_loops(h_, hb.relation));
      wit.anchor = h_.op(anchor).id;
      cycles.push_back(std::move(wit));
    }
  }

 private:
  const History& h_;
  std::optional<Relation> co_;
};

constexpr std::size_t kFirst = 1;
constexpr std::size_t kAll = static_cast<std::size_t>(-1);

std::optional<Witness> first_native(const History& h, Model model) {
  Detector d(h);
  std::vector<Witness> found;
  d.thin_air(found, kFirst);
  if (found.empty()) d.cyclic_co(found);
  if (found.empty()) d.write_co_init_read(found, kFirst);
  if (found.empty()) d.write_co_read(found, kFirst);
  if (!found.empty()) return found.front();

  if (model == Model::CCv) {
    d.cyclic_cf(found);
  } else if (model == Model::CM1 || model == Model::CM2) {
    std::vector<Witness> cycles;
    for (std::size_t anchor : cm_anchors(h, model)) {
      d.hb_patterns(anchor, found, cycles);
      if (!found.empty()) break;
    }
    if (found.empty() && !cycles.empty()) found.push_back(cycles.front());
  }
  if (found.empty()) return std::nullopt;
  return found.front();
}

Verdict native_check(const History& h, Model model) {
  const auto start = Clock::now();
  Verdict v{model};
  v.witness = first_native(h, model);
  v.outcome = v.witness ? Outcome::Violation : Outcome::Conforming;
  v.elapsed_ms = ms_since(start);
  return v;
}

Witness datalog_witness(const History& h, const Encoding& enc, const ConstraintTag& tag,
                        const datalog::ConstraintViolation& violation) {
  Witness w{tag.pattern};
  for (const char* var : {"X", "Y", "Z"}) {
    auto it = violation.bindings.find(var);
    if (it == violation.bindings.end()) continue;
    auto op = enc.operation_of.find(it->second);
    if (op != enc.operation_of.end()) w.operations.push_back(h.op(op->second).id);
  }
  if (tag.anchor) {
    w.anchor = h.op(*tag.anchor).id;
    if (w.operations.size() == 1) w.operations.push_back(*w.anchor);
  }
  return w;
}

}  // namespace

Verdict check_datalog(const History& h, Model model, const EncodeOptions& options) {
  require_executed(h);
  const auto start = Clock::now();
  Verdict v{model};
  std::vector<Witness> thin;
  Detector(h).thin_air(thin, kFirst);
  if (!thin.empty()) {
    v.witness = thin.front();
  } else {
    const Encoding enc = encode(h, model, options);
    const datalog::FactSet fixpoint = datalog::evaluate(enc.program);
    const auto result = datalog::check_constraints(enc.program, fixpoint);
    // Lowest pattern in reporting order wins; ties keep constraint order.
    for (const auto& violation : result.violations) {
      const ConstraintTag& tag = enc.constraints[violation.constraint];
      if (!v.witness || tag.pattern < v.witness->pattern) {
        v.witness = datalog_witness(h, enc, tag, violation);
      }
    }
  }
  v.outcome = v.witness ? Outcome::Violation : Outcome::Conforming;
  v.elapsed_ms = ms_since(start);
  return v;
}

Verdict check(const History& h, Model model, Engine engine) {
  require_executed(h);
  switch (engine) {
    case Engine::Native: return native_check(h, model);
    case Engine::Datalog: return check_datalog(h, model, EncodeOptions{});
    case Engine::CrossCheck: {
      Verdict native = native_check(h, model);
      const Verdict datalog = check_datalog(h, model, EncodeOptions{});
      if (native.outcome != datalog.outcome || native.pattern() != datalog.pattern()) {
        auto describe = [](const Verdict& v) {
          return std::string(to_string(v.outcome)) +
                 (v.witness ? "/" + std::string(to_string(v.witness->pattern)) : "");
        };
        throw Error(ErrorCode::EngineDisagreement, std::string(to_string(model)) + ": native " +
                                                       describe(native) + ", datalog " +
                                                       describe(datalog));
      }
      native.elapsed_ms += datalog.elapsed_ms;
      return native;
    }
  }
  return native_check(h, model);
}

std::vector<Witness> detect_bad_patterns(const History& h, Model model) {
  require_executed(h);
  Detector d(h);
  std::vector<Witness> out;
  d.thin_air(out, kAll);
  d.cyclic_co(out);
  d.write_co_init_read(out, kAll);
  d.write_co_read(out, kAll);
  if (model == Model::CCv) d.cyclic_cf(out);
  if (model == Model::CM1 || model == Model::CM2) {
    std::vector<Witness> cycles;
    for (std::size_t anchor : cm_anchors(h, model)) d.hb_patterns(anchor, out, cycles);
    out.insert(out.end(), cycles.begin(), cycles.end());
  }
  return out;
}

bool exhibits(const History& h, Pattern pattern) {
  require_executed(h);
  Detector d(h);
  std::vector<Witness> out;
  switch (pattern) {
    case Pattern::ThinAirRead: d.thin_air(out, kFirst); break;
    case Pattern::CyclicCO: d.cyclic_co(out); break;
    case Pattern::WriteCOInitRead: d.write_co_init_read(out, kFirst); break;
    case Pattern::WriteCORead: d.write_co_read(out, kFirst); break;
    case Pattern::CyclicCF: d.cyclic_cf(out); break;
    case Pattern::WriteHBInitRead:
    case Pattern::CyclicHB: {
      std::vector<Witness> init_reads;
      std::vector<Witness> cycles;
      for (std::size_t anchor : po_maximal_indices(h)) d.hb_patterns(anchor, init_reads, cycles);
      return pattern == Pattern::WriteHBInitRead ? !init_reads.empty() : !cycles.empty();
    }
  }
  return !out.empty();
}

}  // namespace causalcheck
