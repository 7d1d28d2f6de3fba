// One line per acceptance criterion; exit status is non-zero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "xstates/verify.hpp"
#include "xstates/xgeometry.hpp"

using namespace xstates;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

ToleranceConfig config(int trials) {
  ToleranceConfig cfg;
  cfg.trials = trials;
  cfg.seed = 1;
  return cfg;
}

bool only(const nlohmann::json& values, int expected) { return values == nlohmann::json::array({expected}); }

std::string seconds(Clock::duration d) {
  std::ostringstream s;
  s.precision(3);
  s << std::chrono::duration<double>(d).count() << " s";
  return s.str();
}

std::string cli_output(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  const std::vector<int> sizes{2, 3, 4};

  const auto dims_start = Clock::now();
  std::vector<SuiteReport> dims;
  for (int n : sizes) dims.push_back(suite_dims(n, config(20)));
  const auto dims_time = Clock::now() - dims_start;

  report(1, "dimension of the X-variety", [&] {
    const int expected[] = {11, 37, 135};
    bool ok = dims_time < std::chrono::seconds(60);
    std::ostringstream s;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto& r = dims[k];
      ok = ok && r.trials >= 20 && only(r.observed["param_rank"], expected[k]) && r.gap_audit >= 1e3 &&
           r.observed["step_stable"].get<bool>();
      s << "n=" << r.n << " rank " << r.observed["param_rank"].dump() << " gap " << r.gap_audit << "; ";
    }
    s << "time " << seconds(dims_time);
    return Outcome{ok, s.str()};
  });

  report(2, "transcendence degree", [&] {
    const int expected[] = {5, 28, 123};
    bool ok = true;
    std::ostringstream s;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto& r = dims[k];
      ok = ok && only(r.observed["difference"], expected[k]) && only(r.observed["orbit_rank"], 3 * r.n);
      s << "n=" << r.n << " difference " << r.observed["difference"].dump() << " ";
    }
    return Outcome{ok, s.str()};
  });

  report(3, "fiber dimension", [] {
    bool ok = true;
    std::ostringstream s;
    for (int n = 1; n <= 8; ++n) {
      const std::uint64_t count = fiber_dimension_by_count(n);
      ok = ok && count == (std::uint64_t{1} << (2 * n - 1)) - 1;
      s << count << (n < 8 ? " " : "");
    }
    return Outcome{ok, "n=1..8: " + s.str()};
  });

  report(4, "invariance", [&] {
    bool ok = true;
    std::ostringstream s;
    for (int n : sizes) {
      const SuiteReport r = suite_invariance(n, config(100));
      const double q = r.observed["quotient_max_deviation"].get<double>();
      ok = ok && r.trials == 100 && q < 1e-8 && r.observed["central_deviation"].get<double>() <= 1e-12;
      s << "n=" << n << " quotient " << q;
      if (n == 2) {
        const double p = r.observed["p_max_deviation"].get<double>();
        ok = ok && p < 1e-8;
        s << " p " << p;
      }
      s << "; ";
    }
    return Outcome{ok, s.str()};
  });

  report(5, "algebraic independence", [&] {
    bool ok = true;
    std::ostringstream s;
    for (int n : sizes) {
      const SuiteReport r = suite_independence(n, config(20));
      ok = ok && only(r.observed["quotient_rank"], 4 * n - 4) && only(r.observed["wprime_rank"], 3 * n - 4) &&
           r.gap_audit >= 1e3;
      s << "n=" << n << " quotient " << r.observed["quotient_rank"].dump() << " W' " << r.observed["wprime_rank"].dump();
      if (n == 2) {
        ok = ok && only(r.observed["p_rank"], 5) && only(r.observed["p_control_rank"], 5);
        s << " p " << r.observed["p_rank"].dump();
      }
      s << "; ";
    }
    return Outcome{ok, s.str()};
  });

  report(6, "SO2 torsor", [] {
    const SuiteReport r = suite_torsor(config(1000));
    const double rel = r.observed["relation_residual"].get<double>();
    const double rec = r.observed["recovery_error"].get<double>();
    const bool ok = r.trials == 1000 && rel < 1e-10 && rec < 1e-9 && r.observed["degenerate_rejected"].get<bool>();
    std::ostringstream s;
    s << "relation " << rel << ", recovery " << rec;
    return Outcome{ok, s.str()};
  });

  report(7, "relations", [] {
    bool ok = true;
    std::ostringstream s;
    for (int n : {3, 4}) {
      const SuiteReport r = suite_relations(n, config(100));
      double worst = 0.0;
      for (const char* key : {"diagonal", "loop2", "loop3", "rho"}) {
        if (r.observed.contains(key)) worst = std::max(worst, r.observed[key].get<double>());
      }
      const double eta = r.observed["eta_relative_error"].get<double>();
      ok = ok && r.trials == 100 && worst < 1e-10 && eta < 1e-8 && (n == 3 || r.observed.contains("loop3"));
      s << "n=" << n << " identities " << worst << " eta " << eta << "; ";
    }
    return Outcome{ok, s.str()};
  });

  report(8, "orbit separation", [] {
    const SuiteReport r = suite_separation2(config(200));
    const int matched = r.observed["planted_matched"].get<int>();
    const int false_matches = r.observed["false_matches"].get<int>();
    return Outcome{matched == 200 && false_matches == 0,
                   std::to_string(matched) + "/200 planted matched, " + std::to_string(false_matches) +
                       "/200 false matches"};
  });

  report(9, "X-pattern equivalence", [&] {
    bool ok = true;
    std::ostringstream s;
    for (int n : sizes) {
      const SuiteReport r = suite_pattern(n, config(1000));
      const int fiber = r.observed["fiber_points_x_patterned"].get<int>();
      const double leak = r.observed["max_inadmissible_weight"].get<double>();
      ok = ok && fiber == 1000 && leak <= 1e-12;
      s << "n=" << n << " " << fiber << "/1000, leak " << leak << "; ";
    }
    return Outcome{ok, s.str()};
  });

  report(10, "determinism", [] {
    const std::vector<std::string> args{"verify", "all", "--seed", "1", "--json"};
    std::vector<std::string> threaded = args;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const std::string first = cli_output(args);
    const bool ok = first.rfind("0\n", 0) == 0 && cli_output(args) == first && cli_output(threaded) == first &&
                    cli_output(threaded) == first;
    return Outcome{ok, std::to_string(first.size()) + " bytes, identical across 4 runs at 1 and 4 threads"};
  });

  return failures == 0 ? 0 : 1;
}
