#include "rotinv/operator.hpp"

#include <algorithm>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "rotinv/errors.hpp"
#include "rotinv/kernels.hpp"

namespace rotinv {

void check_qubit_count(int n) {
  if (n < 1) throw DomainError("qubit count must be at least 1, got " + std::to_string(n));
  if (n > kMaxDenseQubits) {
    throw ResourceError("qubit count " + std::to_string(n) + " exceeds the dense cap of " +
                        std::to_string(kMaxDenseQubits));
  }
}

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) {
    throw DomainError("qubit index " + std::to_string(q + 1) + " out of range [1, " +
                      std::to_string(n) + "]");
  }
}

void check_qubit_pair(int n, int r, int s) {
  check_qubit(n, r);
  check_qubit(n, s);
  if (r == s) throw DomainError("exchange pair needs two distinct qubits");
}

Operator::Operator(int n, Matrix data) : n_(n), data_(std::move(data)) {
  check_qubit_count(n);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  if (data_.rows() != dim || data_.cols() != dim) {
    throw DomainError("matrix of size " + std::to_string(data_.rows()) + "x" +
                      std::to_string(data_.cols()) + " does not match " +
                      std::to_string(n) + " qubits");
  }
}

Operator Operator::identity(int n) {
  check_qubit_count(n);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  return Operator(n, Matrix::Identity(dim, dim));
}

Operator Operator::zero(int n) {
  check_qubit_count(n);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  return Operator(n, Matrix::Zero(dim, dim));
}

Operator Operator::adjoint() const { return Operator(n_, data_.adjoint()); }

double Operator::max_abs() const { return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }

bool Operator::is_hermitian(double tol) const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_skew_hermitian(double tol) const {
  return (data_ + data_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Operator& Operator::operator+=(const Operator& other) {
  check_same_size(*this, other);
  data_ += other.data_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  check_same_size(*this, other);
  data_ -= other.data_;
  return *this;
}

Operator& Operator::operator*=(Complex scalar) {
  data_ *= scalar;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  check_same_size(a, b);
  return Operator(a.n(), a.matrix() * b.matrix());
}

void check_same_size(const Operator& a, const Operator& b) {
  if (a.n() != b.n()) {
    throw DomainError("operators act on different qubit counts (" + std::to_string(a.n()) +
                      " vs " + std::to_string(b.n()) + ")");
  }
}

std::uint32_t swap_index(std::uint32_t x, int n, int r, int s) {
  const std::uint32_t mr = 1u << bit_of(n, r);
  const std::uint32_t ms = 1u << bit_of(n, s);
  if (((x & mr) != 0) != ((x & ms) != 0)) x ^= (mr | ms);
  return x;
}

std::uint32_t permute_index(std::uint32_t x, int n, const std::vector<int>& perm) {
  std::uint32_t y = 0;
  for (int q = 0; q < n; ++q) {
    if (x & (1u << bit_of(n, q))) y |= 1u << bit_of(n, perm[q]);
  }
  return y;
}

namespace {

template <typename M>
void swap_rows(M& m, int n, int r, int s) {
  check_qubit_pair(n, r, s);
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  for (std::uint32_t x = 0; x < dim; ++x) {
    const std::uint32_t y = swap_index(x, n, r, s);
    if (y > x) m.row(x).swap(m.row(y));
  }
}

template <typename M>
void swap_cols(M& m, int n, int r, int s) {
  check_qubit_pair(n, r, s);
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  for (std::uint32_t x = 0; x < dim; ++x) {
    const std::uint32_t y = swap_index(x, n, r, s);
    if (y > x) m.col(x).swap(m.col(y));
  }
}

void check_permutation(int n, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != n) throw DomainError("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (int q : perm) {
    check_qubit(n, q);
    if (seen[q]) throw DomainError("permutation repeats a qubit");
    seen[q] = true;
  }
}

}  // namespace

void apply_swap_left(Matrix& m, int n, int r, int s) { swap_rows(m, n, r, s); }
void apply_swap_right(Matrix& m, int n, int r, int s) { swap_cols(m, n, r, s); }
void apply_swap_left(RealMatrix& m, int n, int r, int s) { swap_rows(m, n, r, s); }
void apply_swap_right(RealMatrix& m, int n, int r, int s) { swap_cols(m, n, r, s); }

Operator swap_op(int n, int r, int s) {
  check_qubit_count(n);
  check_qubit_pair(n, r, s);
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t x = 0; x < dim; ++x) m(swap_index(x, n, r, s), x) = 1.0;
  return Operator(n, std::move(m));
}

Operator exchange_op(int n, int r, int s) {
  Operator p = swap_op(n, r, s);
  p.matrix().diagonal().array() -= 0.5;
  return p;
}

Operator permutation_op(int n, const std::vector<int>& perm) {
  check_qubit_count(n);
  check_permutation(n, perm);
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t x = 0; x < dim; ++x) m(permute_index(x, n, perm), x) = 1.0;
  return Operator(n, std::move(m));
}

Matrix2 pauli(int axis) {
  Matrix2 p;
  switch (axis) {
    case 0:
      p << 0, 1, 1, 0;
      break;
    case 1:
      p << 0, Complex{0, -1}, Complex{0, 1}, 0;
      break;
    case 2:
      p << 1, 0, 0, -1;
      break;
    default:
      throw DomainError("Pauli axis must be 0, 1 or 2");
  }
  return p;
}

Operator pauli_op(int n, int q, int axis) {
  check_qubit_count(n);
  check_qubit(n, q);
  return embed(Operator(1, pauli(axis)), n, {q});
}

Operator total_spin(int n, int axis) {
  Operator out = Operator::zero(n);
  for (int q = 0; q < n; ++q) out += pauli_op(n, q, axis);
  return out * Complex{0.5};
}

Operator chirality_op(int n, int p, int q, int r) {
  check_qubit_count(n);
  check_qubit_pair(n, p, q);
  check_qubit_pair(n, q, r);
  check_qubit_pair(n, p, r);
  Operator out = Operator::zero(n);
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& c : cyc) {
    for (int sign : {1, -1}) {
      const int a = c[0];
      const int b = sign > 0 ? c[1] : c[2];
      const int d = sign > 0 ? c[2] : c[1];
      out += pauli_op(n, p, a) * pauli_op(n, q, b) * pauli_op(n, r, d) * Complex(sign);
    }
  }
  return out;
}

Complex hs_inner(const Operator& a, const Operator& b) {
  check_same_size(a, b);
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

Operator commutator(const Operator& a, const Operator& b) {
  check_same_size(a, b);
  Matrix c = a.matrix() * b.matrix();
  c.noalias() -= b.matrix() * a.matrix();
  return Operator(a.n(), std::move(c));
}

Operator kron(const Operator& a, const Operator& b) {
  check_qubit_count(a.n() + b.n());
  return Operator(a.n() + b.n(), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

Operator embed(const Operator& local, int n, const std::vector<int>& qubits) {
  check_qubit_count(n);
  const int k = local.n();
  if (static_cast<int>(qubits.size()) != k) throw DomainError("embedding needs one target per qubit");
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < k; ++i) {
    check_qubit(n, qubits[i]);
    if (used[qubits[i]]) throw DomainError("embedding targets repeat a qubit");
    used[qubits[i]] = true;
    perm[i] = qubits[i];
  }
  int next = k;
  for (int q = 0; q < n; ++q) {
    if (!used[q]) perm[next++] = q;
  }
  Operator full = k == n ? local : kron(local, Operator::identity(n - k));
  // Move local qubit i to target qubits[i].
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  std::vector<std::uint32_t> map(dim);
  for (std::uint32_t x = 0; x < dim; ++x) map[x] = permute_index(x, n, perm);
  Matrix out(dim, dim);
  for (std::uint32_t c = 0; c < dim; ++c) {
    for (std::uint32_t r = 0; r < dim; ++r) out(map[r], map[c]) = full.matrix()(r, c);
  }
  return Operator(n, std::move(out));
}

Operator partial_trace(const Operator& a, std::vector<int> keep) {
  const int n = a.n();
  if (keep.empty()) throw DomainError("partial trace needs at least one kept qubit");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int q : keep) check_qubit(n, q);
  const int k = static_cast<int>(keep.size());
  std::uint32_t keep_mask = 0;
  for (int q : keep) keep_mask |= 1u << bit_of(n, q);
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  auto compress = [&](std::uint32_t x) {
    std::uint32_t y = 0;
    for (int i = 0; i < k; ++i) {
      if (x & (1u << bit_of(n, keep[i]))) y |= 1u << bit_of(k, i);
    }
    return y;
  };
  std::vector<std::uint32_t> small(dim);
  for (std::uint32_t x = 0; x < dim; ++x) small[x] = compress(x);
  const auto kdim = static_cast<Eigen::Index>(dimension(k));
  Matrix out = Matrix::Zero(kdim, kdim);
  for (std::uint32_t c = 0; c < dim; ++c) {
    for (std::uint32_t r = 0; r < dim; ++r) {
      if ((r & ~keep_mask) == (c & ~keep_mask)) out(small[r], small[c]) += a.matrix()(r, c);
    }
  }
  return Operator(k, std::move(out));
}

std::map<int, Operator> pauli_weight_components(const Operator& a) {
  auto slices = kernels::parallel::pauli_weight_split(a.matrix(), a.n());
  const double scale = std::max(1.0, a.max_abs());
  std::map<int, Operator> out;
  for (int w = 0; w <= a.n(); ++w) {
    if (slices[w].cwiseAbs().maxCoeff() > 1e-13 * scale) {
      out.emplace(w, Operator(a.n(), std::move(slices[w])));
    }
  }
  return out;
}

Matrix2 random_su2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : q) {
      v = normal(rng);
      norm += v * v;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (double& v : q) v /= norm;
  Matrix2 u;
  u << Complex{q[0], q[1]}, Complex{q[2], q[3]}, Complex{-q[2], q[3]}, Complex{q[0], -q[1]};
  return u;
}

Operator random_global_rotation(int n, std::uint64_t seed) {
  check_qubit_count(n);
  const Matrix2 u = random_su2(seed);
  Matrix out = u;
  for (int q = 1; q < n; ++q) out = Eigen::kroneckerProduct(out, u).eval();
  return Operator(n, std::move(out));
}

Operator conjugate_global(const Operator& a, const Matrix2& u) {
  const int n = a.n();
  Matrix m = a.matrix();
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  const Matrix2 ud = u.adjoint();
  for (int q = 0; q < n; ++q) {
    const std::uint32_t mask = 1u << bit_of(n, q);
    for (std::uint32_t x = 0; x < dim; ++x) {
      if (x & mask) continue;
      const std::uint32_t y = x | mask;
      // rows: U acting from the left
      Eigen::RowVectorXcd r0 = m.row(x);
      Eigen::RowVectorXcd r1 = m.row(y);
      m.row(x) = u(0, 0) * r0 + u(0, 1) * r1;
      m.row(y) = u(1, 0) * r0 + u(1, 1) * r1;
    }
    for (std::uint32_t x = 0; x < dim; ++x) {
      if (x & mask) continue;
      const std::uint32_t y = x | mask;
      // columns: U^dagger acting from the right
      Eigen::VectorXcd c0 = m.col(x);
      Eigen::VectorXcd c1 = m.col(y);
      m.col(x) = c0 * ud(0, 0) + c1 * ud(1, 0);
      m.col(y) = c0 * ud(0, 1) + c1 * ud(1, 1);
    }
  }
  return Operator(n, std::move(m));
}

Operator evolve(const Operator& h, double t) {
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_hermitian(1e-10 * scale)) throw PreconditionError("evolve needs a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return Operator(h.n(),
                  es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  const Matrix d = rho - sigma;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace rotinv
