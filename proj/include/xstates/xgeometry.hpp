#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xstates/bloch.hpp"
#include "xstates/group.hpp"
#include "xstates/random.hpp"
#include "xstates/types.hpp"

namespace xstates {

/// One non-degenerate axis per qubit, normalized so that <z, z> = 1.
class LongitudinalSystem {
 public:
  explicit LongitudinalSystem(std::vector<Vec3> axes);

  /// The z-axes; every fiber in this library lives over this system.
  static LongitudinalSystem standard(int n);

  const std::vector<Vec3>& axes() const { return axes_; }
  LongitudinalSystem transformed(const LocalRotation& g) const;

 private:
  std::vector<Vec3> axes_;
};

/// Words with an even number of transversal (X or Y) letters, over the standard system.
bool is_admissible(const PauliWord& word);

/// A point of the fiber X(B): a Bloch state supported on admissible words.
class XFiberPoint {
 public:
  XFiberPoint() = default;
  explicit XFiberPoint(int n);
  XFiberPoint(int n, BlochState::ComponentMap coefficients);

  int n() const { return state_.n(); }
  const BlochState::ComponentMap& coefficients() const { return state_.components(); }
  Scalar operator[](const PauliWord& w) const { return state_[w]; }

  void set(const PauliWord& word, Scalar value);

 private:
  BlochState state_;
};

/// True iff every entry coupling kets of different parity has magnitude <= tol.
bool is_x_pattern(const DensityMatrix& d, double tol);

BlochState fiber_embed(const XFiberPoint& p);

/// Reads a Bloch state back as a fiber point; throws InvalidArgument if an
/// inadmissible coefficient exceeds tol (scaled by 1 + max |component|).
XFiberPoint fiber_project(const BlochState& b, double tol = 1e-9);

XFiberPoint random_fiber_point(int n, Rng& rng, double scale = 1.0);

struct RandomXState {
  BlochState state;
  LocalRotation rotation;
  XFiberPoint fiber;
};

/// act(random rotation, random fiber point), resampled until every one-point
/// correlation has |<v, v>| > 1e-8 and, for n = 2, until reduce_to_section2
/// accepts it as generic. Throws DegenerateSample after 16 attempts.
RandomXState random_xstate(int n, Rng& rng);
RandomXState random_xstate(int n, std::uint64_t seed);

struct DimFormulas {
  std::uint64_t dim_fiber = 0;
  std::uint64_t dim_variety = 0;
  std::uint64_t trdeg = 0;
  std::uint64_t dim_xT = 0;
  std::uint64_t dim_F = 0;
};

/// sum over (s, t), 1 <= s + t <= n, t even, of n! / (s! t! (n-s-t)!) 2^t.
std::uint64_t fiber_dimension_by_count(int n);

/// Closed forms for 2 <= n <= 30; dim_fiber is cross-checked against the count.
DimFormulas dim_formulas(int n);

/// (x, y, lambda) on the two-qubit section: v = (0,0,x), w = (0,0,y), C = diag(lambda).
struct SectionPoint2 {
  Scalar x;
  Scalar y;
  std::array<Scalar, 3> lambda;
};

BlochState section_embed2(const SectionPoint2& s);

/// Roots of mu^3 + a2 mu^2 + a1 mu + a0 (Cardano, one Newton step per root).
std::array<Scalar, 3> solve_cubic(Scalar a2, Scalar a1, Scalar a0);

/// Eigenpairs of a complex symmetric 3x3 matrix with distinct eigenvalues.
/// Eigenvectors are returned as columns, not normalized.
struct SymmetricEigen3 {
  std::array<Scalar, 3> values;
  Mat3 vectors;
};
SymmetricEigen3 symmetric_eigen3(const Mat3& s);

struct SectionReduction {
  LocalRotation rotation;
  SectionPoint2 point;
};

/// Finds g with act(g, b) = section_embed2(s) for a two-qubit X-state in general position.
///
/// Genericity requires |<v,v>|, |<w,w>|, |det(C^T C)| and the discriminant of
/// C^T C, each scaled by the matching power of max |component|, to exceed tol.
/// Throws NotGeneric when they don't, ReductionFailed when the residual of the
/// normal form exceeds 1e-8 (the state is not an X-state).
SectionReduction reduce_to_section2(const BlochState& b, double tol = 1e-8);

/// The 32 elements of (K4 x K4) x| S2 as planar blocks.
std::vector<WeylElement> section_normalizer2();

/// Distinct images of s under section_normalizer2().
std::vector<SectionPoint2> weyl_orbit_section2(const SectionPoint2& s);

/// True iff b lies within tol (relative) of a point of a's section orbit.
bool same_section_orbit(const SectionPoint2& a, const SectionPoint2& b, double tol);

/// Truncated star-tree coordinates: longitudinal alphas and the edge blocks C_j (edge j -- n).
struct XTPoint {
  std::vector<Scalar> alphas;
  std::vector<Mat2> blocks;

  int n() const { return static_cast<int>(alphas.size()); }
};

XTPoint truncate_to_xT(const XFiberPoint& p);
/// The fiber point whose only non-zero coefficients are those read by truncate_to_xT.
XFiberPoint lift_xT(const XTPoint& t);

XTPoint random_xt_point(int n, Rng& rng, double scale = 1.0);

}  // namespace xstates
