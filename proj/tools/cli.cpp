#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xstates/error.hpp"
#include "xstates/json_io.hpp"
#include "xstates/random.hpp"
#include "xstates/verify.hpp"

namespace xstates::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  int n = 2;
  bool n_given = false;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::optional<double> tol;
  std::optional<double> fd_step;
  std::optional<double> rank_tol;
  std::string input = "-";
  std::string output;
  bool json_out = false;
  bool deep = false;
  int threads = 1;
  bool x_state = false;
  bool quotient = false;
  std::string suite;
};

// Thrown for anything that should exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const Options& o, std::istream& in) {
  std::string text;
  if (o.input.empty() || o.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(o.input);
    if (!file) throw UsageError("cannot read input '" + o.input + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

BlochState read_state(const Options& o, std::istream& in) {
  const json j = read_json(o, in);
  try {
    return state_from_json(j);
  } catch (const Error& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write output '" + o.output + "'");
  file << text;
}

void emit(const Options& o, const json& j, std::ostream& out) { emit(o, j.dump(2) + "\n", out); }

BlochState generic_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  BlochState b(n);
  for (std::size_t code = 1; code < word_count(n); ++code) b.set(PauliWord::from_code(n, code), rng.complex_normal());
  return b;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const BlochState b = o.x_state ? random_xstate(o.n, o.seed).state : generic_state(o.n, o.seed);
  emit(o, to_json(b), out);
  return kOk;
}

int cmd_bloch(const Options& o, std::istream& in, std::ostream& out) {
  const json j = read_json(o, in);
  try {
    if (j.is_object() && j.contains("matrix")) {
      emit(o, to_json(to_bloch(density_from_json(j))), out);
    } else {
      emit(o, to_json(from_bloch(bloch_from_json(j))), out);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::MalformedState) throw UsageError(e.what());
    throw;
  }
  return kOk;
}

int cmd_quotient(const Options& o, std::istream& in, std::ostream& out) {
  const BlochState b = read_state(o, in);
  emit(o, to_json(quotient_coords(truncate_to_xT(fiber_project(b)))), out);
  return kOk;
}

int cmd_invariants(const Options& o, std::istream& in, std::ostream& out) {
  if (o.quotient) return cmd_quotient(o, in, out);
  const BlochState b = read_state(o, in);
  if (b.n() != 2) throw UsageError("p invariants need a two-qubit state; use --quotient for X-states");
  emit(o, to_json(p_invariants(b)), out);
  return kOk;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
  const BlochState b = read_state(o, in);
  if (b.n() != 2) throw UsageError("reduce needs a two-qubit state");
  SectionReduction r;
  try {
    r = reduce_to_section2(b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotGeneric) throw;
    throw Error(ErrorKind::ReductionFailed, e.what());
  }
  emit(o, json{{"section", to_json(r.point)}, {"rotation", to_json(r.rotation)}}, out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  ToleranceConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.threads = o.threads;
  if (o.tol) cfg.residual_tol = *o.tol;
  if (o.fd_step) cfg.fd_step = *o.fd_step;
  if (o.rank_tol) cfg.rank_rel_tol = *o.rank_tol;

  std::vector<int> sizes{2, 3};
  if (o.deep) sizes.push_back(4);
  if (o.n_given) sizes = {o.n};

  const auto reports = run_suites(o.suite, sizes, cfg);
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;

  if (o.json_out) {
    json all = json::array();
    for (const auto& r : reports) all.push_back(to_json(r));
    emit(o, all, out);
  } else {
    std::ostringstream text;
    for (const auto& r : reports) {
      text << (r.pass ? "PASS " : "FAIL ") << r.suite << " n=" << r.n << " trials=" << r.trials
           << " observed=" << r.observed.dump() << "\n";
    }
    emit(o, text.str(), out);
  }
  return pass ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"X-state geometry toolkit"};
  app.require_subcommand(1);

  const auto common = [&o](CLI::App* sub) {
    sub->add_option("--n", o.n, "number of qubits")->check(CLI::Range(1, 15));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--input", o.input, "input JSON file, '-' for stdin");
    sub->add_option("--output", o.output, "output file, stdout by default");
    sub->add_flag("--json", o.json_out, "emit JSON");
  };

  auto* gen = app.add_subcommand("gen", "generate a random state");
  common(gen);
  gen->add_flag("--x-state", o.x_state, "generate a random X-state in general position");

  auto* bloch = app.add_subcommand("bloch", "convert between density matrix and Bloch components");
  common(bloch);

  auto* inv = app.add_subcommand("invariants", "evaluate invariants of a state");
  common(inv);
  inv->add_flag("--quotient", o.quotient, "quotient coordinates of an X-state instead of p");

  auto* reduce = app.add_subcommand("reduce", "reduce a two-qubit X-state to the section");
  common(reduce);

  auto* quot = app.add_subcommand("quotient-coords", "quotient coordinates of an X-state");
  common(quot);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("suite", o.suite, "suite name or 'all'")->required()->check(CLI::IsMember(allowed));
  verify->add_option("--trials", o.trials, "trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--fd-step", o.fd_step, "finite-difference step")->check(CLI::PositiveNumber);
  verify->add_option("--rank-tol", o.rank_tol, "relative rank tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  verify->add_flag("--deep", o.deep, "include n = 4");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    app.exit(e, help, err);
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--n") > 0) o.n_given = true;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (bloch->parsed()) return cmd_bloch(o, in, out);
    if (inv->parsed()) return cmd_invariants(o, in, out);
    if (reduce->parsed()) return cmd_reduce(o, in, out);
    if (quot->parsed()) return cmd_quotient(o, in, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace xstates::cli
