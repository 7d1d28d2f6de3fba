#include "xstates/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "xstates/error.hpp"

namespace xstates {

namespace {

constexpr std::string_view kLetters = "IXYZ";

int letter_code(char c) {
  const auto pos = kLetters.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

// Entry (row_bit, col_bit) of the single-qubit matrix for letter code 0..3.
Scalar pauli_entry(int code, int row_bit, int col_bit) {
  switch (code) {
    case 0: return row_bit == col_bit ? 1.0 : 0.0;
    case 1: return row_bit != col_bit ? 1.0 : 0.0;
    case 2:
      if (row_bit == col_bit) return 0.0;
      return row_bit == 0 ? -kI : kI;
    default:
      if (row_bit != col_bit) return 0.0;
      return row_bit == 0 ? 1.0 : -1.0;
  }
}

// Every Pauli word is monomial: row r has its single non-zero in column r ^ mask.
struct Monomial {
  std::size_t mask = 0;
  std::vector<Scalar> values;  // values[r] = P[r][r ^ mask]
};

Monomial monomial(const PauliWord& word) {
  const int n = word.size();
  Monomial m;
  std::vector<int> codes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    codes[static_cast<std::size_t>(i)] = letter_code(word.letter(i));
    if (codes[static_cast<std::size_t>(i)] == 1 || codes[static_cast<std::size_t>(i)] == 2) {
      m.mask |= std::size_t{1} << (n - 1 - i);
    }
  }
  const std::size_t dim = dimension(n);
  m.values.resize(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t c = r ^ m.mask;
    Scalar v = 1.0;
    for (int i = 0; i < n; ++i) {
      const int shift = n - 1 - i;
      v *= pauli_entry(codes[static_cast<std::size_t>(i)], static_cast<int>((r >> shift) & 1U),
                       static_cast<int>((c >> shift) & 1U));
    }
    m.values[r] = v;
  }
  return m;
}

}  // namespace

PauliWord::PauliWord(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty Pauli word");
  }
  for (char c : letters_) {
    if (letter_code(c) < 0) {
      throw Error(ErrorKind::InvalidArgument, "bad Pauli letter in '" + letters_ + "'");
    }
  }
}

PauliWord PauliWord::identity(int n) {
  return PauliWord(std::string(static_cast<std::size_t>(n), 'I'));
}

PauliWord PauliWord::from_code(int n, std::size_t code) {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int i = n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = kLetters[code & 3U];
    code >>= 2;
  }
  return PauliWord(std::move(s));
}

int PauliWord::axis(int i) const { return letter_code(letter(i)) - 1; }

std::size_t PauliWord::code() const {
  std::size_t c = 0;
  for (char l : letters_) c = (c << 2) | static_cast<std::size_t>(letter_code(l));
  return c;
}

std::vector<int> PauliWord::support() const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i) {
    if (letter(i) != 'I') s.push_back(i);
  }
  return s;
}

bool PauliWord::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
}

int PauliWord::transversal_count() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [](char c) { return c == 'X' || c == 'Y'; }));
}

PauliWord PauliWord::with_letter(int i, char l) const {
  std::string s = letters_;
  s[static_cast<std::size_t>(i)] = l;
  return PauliWord(std::move(s));
}

BlochState::BlochState(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "qubit count must be positive");
}

BlochState::BlochState(int n, ComponentMap components) : BlochState(n) {
  for (const auto& [word, value] : components) set(word, value);
}

Scalar BlochState::operator[](const PauliWord& word) const {
  const auto it = components_.find(word);
  return it == components_.end() ? Scalar{} : it->second;
}

void BlochState::set(const PauliWord& word, Scalar value) {
  if (word.size() != n_) {
    throw Error(ErrorKind::InvalidArgument, "word '" + word.str() + "' has wrong length");
  }
  if (word.is_identity()) {
    throw Error(ErrorKind::InvalidArgument, "the identity component is fixed to 1");
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorKind::MalformedState, "non-finite coefficient for '" + word.str() + "'");
  }
  if (value == Scalar{}) {
    components_.erase(word);
  } else {
    components_[word] = value;
  }
}

double BlochState::max_abs() const {
  double m = 0.0;
  for (const auto& [word, value] : components_) m = std::max(m, std::abs(value));
  return m;
}

DensityMatrix::DensityMatrix(int n_qubits, MatX m) : n(n_qubits), matrix(std::move(m)) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "qubit count must be positive");
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw Error(ErrorKind::MalformedState, "density matrix has wrong shape");
  }
}

MatX pauli_string(const PauliWord& word) {
  const Monomial m = monomial(word);
  const auto dim = static_cast<Eigen::Index>(m.values.size());
  MatX out = MatX::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    out(r, static_cast<Eigen::Index>(static_cast<std::size_t>(r) ^ m.mask)) = m.values[static_cast<std::size_t>(r)];
  }
  return out;
}

BlochState to_bloch(const DensityMatrix& d) {
  const Scalar tr = d.matrix.trace();
  if (std::abs(tr - 1.0) > kSolveTol) {
    throw Error(ErrorKind::MalformedState, "trace differs from 1");
  }
  const int n = d.n;
  BlochState b(n);
  for (std::size_t code = 1; code < word_count(n); ++code) {
    const PauliWord w = PauliWord::from_code(n, code);
    const Monomial m = monomial(w);
    // tr(d P) = sum_r P[r][r^mask] d[r^mask][r]
    Scalar acc = 0.0;
    for (std::size_t r = 0; r < m.values.size(); ++r) {
      acc += m.values[r] * d.matrix(static_cast<Eigen::Index>(r ^ m.mask), static_cast<Eigen::Index>(r));
    }
    b.set(w, acc);
  }
  return b;
}

DensityMatrix from_bloch(const BlochState& b) {
  const int n = b.n();
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  MatX d = MatX::Identity(dim, dim);
  for (const auto& [word, value] : b.components()) {
    const Monomial m = monomial(word);
    for (std::size_t r = 0; r < m.values.size(); ++r) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ m.mask)) += value * m.values[r];
    }
  }
  d /= static_cast<double>(dim);
  return DensityMatrix(n, std::move(d));
}

VecX to_dense(const BlochState& b) {
  VecX dense = VecX::Zero(static_cast<Eigen::Index>(word_count(b.n())));
  dense(0) = 1.0;
  for (const auto& [word, value] : b.components()) dense(static_cast<Eigen::Index>(word.code())) = value;
  return dense;
}

BlochState from_dense(int n, const VecX& dense) {
  if (dense.size() != static_cast<Eigen::Index>(word_count(n))) {
    throw Error(ErrorKind::InvalidArgument, "dense vector has wrong length");
  }
  BlochState b(n);
  for (std::size_t code = 1; code < word_count(n); ++code) {
    const Scalar v = dense(static_cast<Eigen::Index>(code));
    if (v != Scalar{}) b.set(PauliWord::from_code(n, code), v);
  }
  return b;
}

Mat2 pauli_matrix(const Vec3& a) {
  Mat2 m;
  m << a(2), a(0) - kI * a(1), a(0) + kI * a(1), -a(2);
  return m;
}

Vec3 pauli_coordinates(const Mat2& a) {
  // a = x sx + y sy + z sz  =>  x = (a01 + a10)/2, y = i (a01 - a10)/2, z = (a00 - a11)/2
  return Vec3(0.5 * (a(0, 1) + a(1, 0)), 0.5 * kI * (a(0, 1) - a(1, 0)), 0.5 * (a(0, 0) - a(1, 1)));
}

VecX correlation(const BlochState& b, const std::vector<int>& qubits) {
  if (qubits.empty()) throw Error(ErrorKind::InvalidArgument, "empty qubit subset");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k] < 0 || qubits[k] >= b.n() || (k > 0 && qubits[k] <= qubits[k - 1])) {
      throw Error(ErrorKind::InvalidArgument, "qubit subset must be sorted, distinct and in range");
    }
  }
  const auto k = static_cast<int>(qubits.size());
  Eigen::Index total = 1;
  for (int i = 0; i < k; ++i) total *= 3;
  VecX out(total);
  std::string letters(static_cast<std::size_t>(b.n()), 'I');
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rest = flat;
    for (int m = k - 1; m >= 0; --m) {
      letters[static_cast<std::size_t>(qubits[static_cast<std::size_t>(m)])] = "XYZ"[rest % 3];
      rest /= 3;
    }
    out(flat) = b[PauliWord(letters)];
  }
  return out;
}

Vec3 one_point(const BlochState& b, int qubit) { return correlation(b, {qubit}); }

Mat3 two_point(const BlochState& b, int i, int j) {
  const VecX flat = correlation(b, {i, j});
  Mat3 c;
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) c(r, s) = flat(3 * r + s);
  }
  return c;
}

}  // namespace xstates
