#pragma once

#include <array>
#include <vector>

#include "xstates/bloch.hpp"
#include "xstates/xgeometry.hpp"
#include "xstates/types.hpp"

namespace xstates {

/// SO2-invariants of a 2x2 matrix under left multiplication.
struct AuxInvariants {
  Scalar delta;
  Scalar t;
  Scalar a;
  Scalar b;
};

/// delta = det M, t = tr(M^T M)/2, and M^T M - t I = [[a, b], [b, -a]].
template <typename Derived>
AuxInvariants aux_dtab(const Eigen::MatrixBase<Derived>& m) {
  const Mat2 mm = m;
  const Mat2 gram = mm.transpose() * mm;
  const Scalar t = 0.5 * gram.trace();
  return AuxInvariants{mm.determinant(), t, gram(0, 0) - t, gram(0, 1)};
}

/// |delta^2 - t^2 + a^2 + b^2| / (1 + max |term|).
double aux_relation_residual(const AuxInvariants& q);

/// The unique g in SO2 with g M = M'. Throws NotSameOrbit if the invariants
/// differ by more than tol (relative), Degenerate if |det M| <= tol.
Mat2 torsor_recover(const Mat2& m, const Mat2& m_prime, double tol = 1e-8);

struct WPlusMinus {
  Scalar minus;
  Scalar plus;
};

/// Coordinates of (a, b) in the basis e_(+-) = e_1 +- i e_2.
template <typename S>
WPlusMinus wpm(S a, S b) {
  const Scalar ca(a);
  const Scalar cb(b);
  return WPlusMinus{0.5 * (ca + kI * cb), 0.5 * (ca - kI * cb)};
}

/// u[j][k] = 4 w_j^+ w_k^-.
MatX u_matrix(const std::vector<AuxInvariants>& aux);

/// Invariants of the connected part of the Weyl group on the truncated fiber.
/// Edge j (0-based) is the star edge between qubit j and the centre qubit n-1;
/// s and v are indexed by edge and are zero at edge 0.
struct WPrimeChain {
  std::vector<AuxInvariants> aux;
  MatX u;
  std::vector<Scalar> s;
  std::vector<Scalar> v;
};

WPrimeChain wprime_chain(const XTPoint& p);

/// (t_0..t_{n-2}, delta_0..delta_{n-2}, u~_1..u~_{n-2}) with u~_j = u_{0j} / (delta_0^2 - t_0^2).
VecX wprime_coords(const XTPoint& p);

/// 4n-4 rational coordinates on X_T invariant under the full Weyl group.
///
/// delta_tilde[k] = alpha_k alpha_{n-1} delta_k, v_tilde = alpha_{n-1} v,
/// eta_first = alpha_0^2, eta_last = alpha_{n-1}^2; s_tilde and v_tilde cover
/// edges 1..n-2.
struct QuotientCoords {
  std::vector<Scalar> t_tilde;
  std::vector<Scalar> delta_tilde;
  std::vector<Scalar> s_tilde;
  std::vector<Scalar> v_tilde;
  Scalar eta_first;
  Scalar eta_last;

  /// Flattened in declaration order.
  VecX to_vector() const;
};

QuotientCoords quotient_coords(const XTPoint& p);

/// rho_j = s_j^2 + v_j^2 - (t_j^2 - delta_j^2)(t_0^2 - delta_0^2), 1 <= j <= n-2.
Scalar relation_rho(const WPrimeChain& chain, int j);
Scalar relation_rho(const XTPoint& p, int j);

/// alpha_j^2 recovered from the quotient coordinates, 1 <= j <= n-2.
/// Throws LocalizationViolated when the denominator is below 1e-12.
Scalar eta_reconstruct(const QuotientCoords& q, int j);

struct Invariants2 {
  std::array<Scalar, 5> p;
};

/// (<v,v>, <w,w>, <Cv,w>, tr(C^T C), det C) for a two-qubit state.
Invariants2 p_invariants(const BlochState& b);

}  // namespace xstates
