#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xstates/types.hpp"

namespace xstates {

/// A tensor product of single-qubit Paulis, written with qubit 1 first, e.g. "XIZ".
///
/// Letters are stored as written. `axis(i)` maps X, Y, Z to the Pauli
/// coordinate 0, 1, 2 and I to -1. Qubit positions in the C++ API are 0-based.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::string letters);

  static PauliWord identity(int n);
  /// Word from its base-4 code (I=0, X=1, Y=2, Z=3; qubit 1 most significant).
  static PauliWord from_code(int n, std::size_t code);

  int size() const { return static_cast<int>(letters_.size()); }
  char letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }
  int axis(int i) const;
  const std::string& str() const { return letters_; }

  std::size_t code() const;
  std::vector<int> support() const;
  bool is_identity() const;
  /// Number of letters in {X, Y}.
  int transversal_count() const;

  PauliWord with_letter(int i, char letter) const;

  auto operator<=>(const PauliWord&) const = default;

 private:
  std::string letters_;
};

/// Bloch model of an L-state: coefficients of the non-identity Pauli words.
///
/// Absent words have coefficient zero; the identity coefficient is implicitly 1.
/// The Pauli coefficients are tr(rho P) with no 2^-n factor, so one-point
/// components are ordinary Bloch vector entries.
class BlochState {
 public:
  using ComponentMap = std::map<PauliWord, Scalar>;

  BlochState() = default;
  explicit BlochState(int n);
  BlochState(int n, ComponentMap components);

  int n() const { return n_; }
  const ComponentMap& components() const { return components_; }

  Scalar operator[](const PauliWord& word) const;
  Scalar operator[](std::string_view word) const { return (*this)[PauliWord(std::string(word))]; }

  /// Sets a coefficient; exact zeros are removed from the map.
  void set(const PauliWord& word, Scalar value);
  void set(std::string_view word, Scalar value) { set(PauliWord(std::string(word)), value); }

  /// Largest coefficient magnitude (0 for the maximally mixed state).
  double max_abs() const;

 private:
  int n_ = 0;
  ComponentMap components_;
};

/// Operator picture of an L-state on n qubits (2^n x 2^n, row index = ket bits, qubit 1 most significant).
struct DensityMatrix {
  int n = 0;
  MatX matrix;

  DensityMatrix() = default;
  DensityMatrix(int n, MatX m);
};

inline std::size_t dimension(int n) { return std::size_t{1} << n; }
inline std::size_t word_count(int n) { return std::size_t{1} << (2 * n); }

/// Kronecker product of the word's single-qubit matrices, qubit 1 leftmost.
MatX pauli_string(const PauliWord& word);

/// component[w] = tr(d P_w). Throws MalformedState if |tr d - 1| > 1e-9.
BlochState to_bloch(const DensityMatrix& d);

/// d = 2^-n (I + sum_w component[w] P_w).
DensityMatrix from_bloch(const BlochState& b);

/// Dense coefficient vector indexed by word code, entry 0 (the identity) equal to 1.
VecX to_dense(const BlochState& b);
/// Inverse of to_dense; entry 0 is ignored and exact zeros are dropped.
BlochState from_dense(int n, const VecX& dense);

/// Analytical scalar product in Pauli coordinates: the bilinear dot product, no conjugation.
template <typename DerivedA, typename DerivedB>
auto scalar_product(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  return (u.transpose() * v).value();
}

/// 1/2 tr(AB) for traceless 2x2 matrices.
template <typename DerivedA, typename DerivedB>
auto scalar_product_matrix(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  return S(0.5) * (a * b).trace();
}

/// Lie bracket [a.sigma, b.sigma] in Pauli coordinates: 2i (a x b).
template <typename DerivedA, typename DerivedB>
auto bracket(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using S = typename DerivedA::Scalar;
  const Vector3<S> aa = a;
  const Vector3<S> bb = b;
  return Vector3<S>(S(0, 2) * cross(aa, bb));
}

/// Matrix a.sigma for a Pauli-coordinate vector.
Mat2 pauli_matrix(const Vec3& a);
/// Pauli coordinates of a traceless 2x2 matrix.
Vec3 pauli_coordinates(const Mat2& a);

/// Coefficients of all words supported exactly on `qubits` (sorted, 0-based),
/// flattened with the first listed qubit's axis most significant (x, y, z order).
VecX correlation(const BlochState& b, const std::vector<int>& qubits);

Vec3 one_point(const BlochState& b, int qubit);
/// C(a, b) = component of the word with axis a at qubit i and axis b at qubit j (i < j).
Mat3 two_point(const BlochState& b, int i, int j);

}  // namespace xstates
