#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xstates/bloch.hpp"
#include "xstates/types.hpp"

namespace xstates {

struct ToleranceConfig {
  double fd_step = 1e-6;
  double rank_rel_tol = 1e-6;
  double residual_tol = 1e-8;
  /// Unset means the suite's own default trial count.
  std::optional<int> trials;
  std::uint64_t seed = 1;
  int threads = 1;
};

using VectorMap = std::function<VecX(const VecX&)>;

/// Central differences; column k = (f(x + h e_k) - f(x - h e_k)) / 2h.
/// Throws EvaluationError if f returns non-finite values.
MatX jacobian(const VectorMap& f, const VecX& point, double step);

struct RankInfo {
  int rank = 0;
  /// Ratio of the last accepted to the first rejected singular value. When
  /// nothing is rejected, the last accepted value over the threshold instead.
  double gap = 0.0;
  Eigen::VectorXd singular_values;
};

RankInfo rank_info(const MatX& m, double rel_tol);
/// Count of singular values above rel_tol times the largest; 0 for the zero matrix.
int numeric_rank(const MatX& m, double rel_tol);

/// Admissible words over the standard system, in code order.
std::vector<PauliWord> admissible_words(int n);

/// (Lie coordinates, fiber coordinates) -> dense state act(exp(X), fiber_embed(p)), identity entry dropped.
VectorMap parametrization(int n);

/// Columns: infinitesimal_action of each of the 3n basis generators at b (dense, identity entry dropped).
MatX orbit_tangents(const BlochState& b);

/// Gap ratio demanded by every rank decision.
inline constexpr double kGapAudit = 1e3;
/// Residual bound for polynomial identities (scale-normalized).
inline constexpr double kIdentityTol = 1e-10;

struct SuiteReport {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  nlohmann::json expected = nlohmann::json::object();
  nlohmann::json observed = nlohmann::json::object();
  double gap_audit = 0.0;
  bool pass = false;
};

nlohmann::json to_json(const SuiteReport& r);

SuiteReport suite_dims(int n, const ToleranceConfig& cfg);
SuiteReport suite_invariance(int n, const ToleranceConfig& cfg);
SuiteReport suite_independence(int n, const ToleranceConfig& cfg);
SuiteReport suite_torsor(const ToleranceConfig& cfg);
SuiteReport suite_separation2(const ToleranceConfig& cfg);
SuiteReport suite_relations(int n, const ToleranceConfig& cfg);
SuiteReport suite_pattern(int n, const ToleranceConfig& cfg);

/// Suite names accepted by run_suites, "all" excluded.
const std::vector<std::string>& suite_names();

/// Runs the named suite (or "all") at the given sizes; reports are sorted by suite, then n.
/// Size-independent suites (torsor, separation) run once.
std::vector<SuiteReport> run_suites(const std::string& name, const std::vector<int>& sizes,
                                    const ToleranceConfig& cfg);

}  // namespace xstates
