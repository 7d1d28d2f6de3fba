#pragma once

#include <cstdint>
#include <vector>

#include "xstates/bloch.hpp"
#include "xstates/error.hpp"
#include "xstates/random.hpp"
#include "xstates/types.hpp"

namespace xstates {

/// An element of G = SO(V_1) x ... x SO(V_n), one complex 3x3 block per qubit.
class LocalRotation {
 public:
  LocalRotation() = default;
  /// Checks g^T g = I and det g = 1 on every block to 1e-9.
  explicit LocalRotation(std::vector<Mat3> blocks);

  static LocalRotation identity(int n);

  int n() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Mat3>& blocks() const { return blocks_; }
  const Mat3& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  LocalRotation operator*(const LocalRotation& other) const;
  LocalRotation inverse() const;

 private:
  std::vector<Mat3> blocks_;
};

/// Largest of max|g^T g - I| and |det g - 1| over the blocks.
double orthogonality_residual(const std::vector<Mat3>& blocks);

/// Element of the Lie algebra of G: one antisymmetric 3x3 block per qubit.
class LieTangent {
 public:
  LieTangent() = default;

  static LieTangent zero(int n);
  /// Block i = c(3i) Lx + c(3i+1) Ly + c(3i+2) Lz.
  static LieTangent from_coordinates(const VecX& coords);
  /// k-th basis generator of the 3n-dimensional algebra.
  static LieTangent basis(int n, int k);

  int n() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Mat3>& blocks() const { return blocks_; }

  LieTangent operator*(Scalar s) const;

 private:
  std::vector<Mat3> blocks_;
};

/// Generators with Lx e_y = e_z, Ly e_z = e_x, Lz e_x = e_y.
Mat3 so3_generator(int axis);

LocalRotation exp(const LieTangent& x);

/// Componentwise action: every I-correlation tensor is transformed by the blocks on its axes.
BlochState act(const LocalRotation& g, const BlochState& b);

/// act on the dense word-indexed vector of to_dense (entry 0 is carried unchanged).
VecX act_dense(const LocalRotation& g, const VecX& dense);

/// Derivative of act(exp(sX), b) at s = 0.
BlochState infinitesimal_action(const LieTangent& x, const BlochState& b);

/// Image of (M_1, ..., M_n) in PGL(2)^n under conjugation, in Pauli coordinates.
LocalRotation from_sl2(const std::vector<Mat2>& mats);

/// Each block exp(X) with X antisymmetric, off-diagonal entries complex normal of size `scale`.
LocalRotation random_rotation(int n, Rng& rng, double scale = 0.7);
LocalRotation random_rotation(int n, std::uint64_t seed, double scale = 0.7);

/// Inverse of gm_from_so2: [[(l+1/l)/2, (l-1/l)/2i], [-(l-1/l)/2i, (l+1/l)/2]].
template <typename S>
Matrix2<S> so2_from_gm(S lambda) {
  if (lambda == S(0)) throw Error(ErrorKind::InvalidArgument, "lambda must be non-zero");
  const S inv = S(1) / lambda;
  const S a = (lambda + inv) / S(2);
  const S b = (lambda - inv) / S(0, 2);
  Matrix2<S> m;
  m << a, b, -b, a;
  return m;
}

/// A = [[a, b], [-b, a]] maps to a + b i. Throws unless A is special orthogonal to 1e-9.
Scalar gm_from_so2(const Mat2& a);

/// Element of N = prod O(V_i^t): one planar orthogonal 2x2 block per qubit.
struct WeylElement {
  std::vector<Mat2> planar;

  int n() const { return static_cast<int>(planar.size()); }
};

/// Block i = diag(A_i, det A_i) in (x, y | z) coordinates.
LocalRotation weyl_embed(const WeylElement& w);

/// Per qubit: so2_from_gm(exp(scale z)); with_reflection composes diag(1, -1) on a fair coin.
WeylElement weyl_sample(int n, Rng& rng, bool with_reflection, double scale = 0.7);
WeylElement weyl_sample(int n, std::uint64_t seed, bool with_reflection, double scale = 0.7);

/// The element -I_2 on every transversal plane; it fixes X(B) pointwise.
WeylElement weyl_central(int n);

}  // namespace xstates
