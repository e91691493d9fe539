#include "causalcheck/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "causalcheck/checker.hpp"
#include "causalcheck/encoder.hpp"
#include "causalcheck/error.hpp"
#include "causalcheck/generator.hpp"
#include "causalcheck/history.hpp"

namespace causalcheck::cli {

namespace {

struct CheckArgs {
  std::string model = "cc";
  std::string engine = "native";
  std::string input;
  bool json = false;
};

struct GenerateArgs {
  GenConfig config;
  std::string out;
};

struct ExecuteArgs {
  std::string input;
  std::uint64_t seed = 0;
  std::string out;
};

struct MutateArgs {
  std::string input;
  std::string pattern;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchArgs {
  std::size_t ops_min = 100;
  std::size_t ops_max = 600;
  std::size_t step = 100;
  std::size_t processes = 4;
  std::size_t runs = 200;
  std::size_t variables = 5;
  std::uint64_t seed = 0;
  std::string engine = "native";
};

struct DumpArgs {
  std::string model = "cc";
  std::string input;
  std::string fidelity = "sound";
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path.empty() || path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    buffer << file.rdbuf();
  }
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  file << text;
}

Model model_arg(const std::string& text) {
  auto model = parse_model(text);
  if (!model) throw Error(ErrorCode::InvalidArgument, "unknown model: " + text);
  return *model;
}

Engine engine_arg(const std::string& text) {
  auto engine = parse_engine(text);
  if (!engine) throw Error(ErrorCode::InvalidArgument, "unknown engine: " + text);
  return *engine;
}

int cmd_check(const CheckArgs& args, std::istream& in, std::ostream& out) {
  const Model model = model_arg(args.model);
  const Engine engine = engine_arg(args.engine);
  const History h = parse_history(read_input(args.input, in));
  const Verdict v = check(h, model, engine);
  out << (args.json ? to_json(v) : to_human(v)) << '\n';
  return v.conforming() ? kConforming : kViolation;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  write_output(args.out, serialize_history(generate(args.config)), out);
  return kConforming;
}

int cmd_execute(const ExecuteArgs& args, std::istream& in, std::ostream& out) {
  const History h = parse_history(read_input(args.input, in));
  write_output(args.out, serialize_history(execute_simulated(h, args.seed)), out);
  return kConforming;
}

int cmd_mutate(const MutateArgs& args, std::istream& in, std::ostream& out) {
  const auto pattern = parse_pattern(args.pattern);
  if (!pattern) throw Error(ErrorCode::InvalidArgument, "unknown pattern: " + args.pattern);
  const History h = parse_history(read_input(args.input, in));
  write_output(args.out, serialize_history(mutate_violation(h, *pattern, args.seed)), out);
  return kConforming;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.step == 0) throw Error(ErrorCode::InvalidArgument, "--step must be positive");
  if (args.processes == 0) throw Error(ErrorCode::InvalidArgument, "--processes must be positive");
  const Engine engine = engine_arg(args.engine);
  constexpr Model kModels[] = {Model::CC, Model::CCv, Model::CM1, Model::CM2};
  out << "ops,CC,CCv,CM1,CM2\n";
  for (std::size_t ops = args.ops_min; ops <= args.ops_max; ops += args.step) {
    double total[4] = {0, 0, 0, 0};
    for (std::size_t run = 0; run < args.runs; ++run) {
      GenConfig config;
      config.clients = args.processes;
      config.transactions = std::max<std::size_t>(1, ops / args.processes);
      config.variables = args.variables;
      config.seed = args.seed + ops * 1000003ULL + run;
      const History h = execute_simulated(generate(config), config.seed);
      for (std::size_t m = 0; m < 4; ++m) total[m] += check(h, kModels[m], engine).elapsed_ms;
    }
    out << ops;
    for (double t : total) {
      out << ',' << std::fixed << std::setprecision(3)
          << (args.runs == 0 ? 0.0 : t / static_cast<double>(args.runs));
    }
    out << '\n';
  }
  return kConforming;
}

int cmd_dump(const DumpArgs& args, std::istream& in, std::ostream& out) {
  const Model model = model_arg(args.model);
  EncodeOptions options;
  options.builtin_sv = false;
  if (args.fidelity == "sound") {
    options.fidelity = Fidelity::Sound;
  } else if (args.fidelity == "listing") {
    options.fidelity = Fidelity::Listing;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown fidelity: " + args.fidelity);
  }
  const History h = parse_history(read_input(args.input, in));
  out << datalog::emit_text(encode(h, model, options).program);
  return kConforming;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Checker for causal consistency models on read/write histories"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Check a history against a model");
  check_cmd->add_option("--model", check_args.model, "cc, ccv, cm1, cm2 or cm")->capture_default_str();
  check_cmd->add_option("--engine", check_args.engine, "native, datalog or cross")
      ->capture_default_str();
  check_cmd->add_option("--input", check_args.input, "JSONL history (default stdin)");
  check_cmd->add_flag("--json", check_args.json, "Print the verdict as JSON");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a non-executed history");
  gen_cmd->add_option("--clients", gen_args.config.clients)->capture_default_str();
  gen_cmd->add_option("--transactions", gen_args.config.transactions, "Per client")
      ->capture_default_str();
  gen_cmd->add_option("--events", gen_args.config.events, "Per transaction")->capture_default_str();
  gen_cmd->add_option("--variables", gen_args.config.variables)->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.config.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out, "Output file (default stdout)");

  ExecuteArgs exec_args;
  auto* exec_cmd = app.add_subcommand("execute", "Fill read values by simulated execution");
  exec_cmd->add_option("--input", exec_args.input, "JSONL history (default stdin)");
  exec_cmd->add_option("--seed", exec_args.seed)->capture_default_str();
  exec_cmd->add_option("--out", exec_args.out, "Output file (default stdout)");

  MutateArgs mut_args;
  auto* mut_cmd = app.add_subcommand("mutate", "Rewrite read values to inject a bad pattern");
  mut_cmd->add_option("--input", mut_args.input, "JSONL history (default stdin)");
  mut_cmd->add_option("--pattern", mut_args.pattern, "Pattern name, e.g. CyclicCF")->required();
  mut_cmd->add_option("--seed", mut_args.seed)->capture_default_str();
  mut_cmd->add_option("--out", mut_args.out, "Output file (default stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Mean check time per history size, as CSV");
  bench_cmd->add_option("--ops-min", bench_args.ops_min)->capture_default_str();
  bench_cmd->add_option("--ops-max", bench_args.ops_max)->capture_default_str();
  bench_cmd->add_option("--step", bench_args.step)->capture_default_str();
  bench_cmd->add_option("--processes", bench_args.processes)->capture_default_str();
  bench_cmd->add_option("--runs", bench_args.runs)->capture_default_str();
  bench_cmd->add_option("--variables", bench_args.variables)->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed)->capture_default_str();
  bench_cmd->add_option("--engine", bench_args.engine)->capture_default_str();

  DumpArgs dump_args;
  auto* dump_cmd = app.add_subcommand("dump-datalog", "Print the Datalog program for a history");
  dump_cmd->add_option("--model", dump_args.model)->capture_default_str();
  dump_cmd->add_option("--input", dump_args.input, "JSONL history (default stdin)");
  dump_cmd->add_option("--fidelity", dump_args.fidelity, "sound or listing")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kConforming;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsageError;
  }

  try {
    if (check_cmd->parsed()) return cmd_check(check_args, in, out);
    if (gen_cmd->parsed()) return cmd_generate(gen_args, out);
    if (exec_cmd->parsed()) return cmd_execute(exec_args, in, out);
    if (mut_cmd->parsed()) return cmd_mutate(mut_args, in, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out);
    if (dump_cmd->parsed()) return cmd_dump(dump_args, in, out);
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::EngineDisagreement ? kEngineDisagreement : kUsageError;
  }
  return kUsageError;
}

}  // namespace causalcheck::cli
