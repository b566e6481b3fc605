#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace rotinv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Matrix2 = Eigen::Matrix2cd;

/// Largest qubit count accepted for dense operators.
inline constexpr int kMaxDenseQubits = 12;

/// Throws ResourceError unless 1 <= n <= kMaxDenseQubits.
void check_qubit_count(int n);

/// Throws DomainError unless 0 <= q < n.
void check_qubit(int n, int q);

/// Throws DomainError unless both indices are valid and distinct.
void check_qubit_pair(int n, int r, int s);

inline std::size_t dimension(int n) { return std::size_t{1} << n; }

/// Bit position of (0-based) qubit q in a basis index.  Qubit 0 is the most
/// significant bit, so operators compose like kron(q0, q1, ...).
inline int bit_of(int n, int q) { return n - 1 - q; }

/// A 2^n x 2^n complex matrix tagged with its qubit count.
class Operator {
 public:
  Operator() = default;
  Operator(int n, Matrix data);

  static Operator identity(int n);
  static Operator zero(int n);

  int n() const { return n_; }
  std::size_t dim() const { return dimension(n_); }
  const Matrix& matrix() const { return data_; }
  Matrix& matrix() { return data_; }

  Operator adjoint() const;
  Complex trace() const { return data_.trace(); }
  double frobenius_norm() const { return data_.norm(); }
  double max_abs() const;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_skew_hermitian(double tol = 1e-12) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scalar);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator-(Operator a) { return a *= -1.0; }

 private:
  int n_ = 0;
  Matrix data_;
};

/// Throws DomainError if the qubit counts differ.
void check_same_size(const Operator& a, const Operator& b);

// Permutation actions on the rows (left) or columns (right) of a square
// matrix acting on n qubits.  Swapping rows realizes P_rs * M, swapping
// columns realizes M * P_rs.
void apply_swap_left(Matrix& m, int n, int r, int s);
void apply_swap_right(Matrix& m, int n, int r, int s);
void apply_swap_left(RealMatrix& m, int n, int r, int s);
void apply_swap_right(RealMatrix& m, int n, int r, int s);

/// Image of basis index x under the exchange of qubits r and s.
std::uint32_t swap_index(std::uint32_t x, int n, int r, int s);

/// Image of basis index x when qubit q is moved to position perm[q].
std::uint32_t permute_index(std::uint32_t x, int n, const std::vector<int>& perm);

/// R_rs = (sigma_r . sigma_s) / 2.
Operator exchange_op(int n, int r, int s);

/// Swap P_rs = R_rs + I/2.
Operator swap_op(int n, int r, int s);

/// Permutation operator moving qubit q to perm[q].
Operator permutation_op(int n, const std::vector<int>& perm);

/// Pauli matrix on one qubit; axis 0, 1, 2 = x, y, z.
Matrix2 pauli(int axis);
Operator pauli_op(int n, int q, int axis);

/// Total spin component J_v = (1/2) sum_q sigma_q^(v).
Operator total_spin(int n, int axis);

/// sum_{abc} eps_{abc} sigma_p^(a) sigma_q^(b) sigma_r^(c).
Operator chirality_op(int n, int p, int q, int r);

/// Tr(A^dagger B).
Complex hs_inner(const Operator& a, const Operator& b);

Operator commutator(const Operator& a, const Operator& b);

/// A (x) B with A on the leading qubits.
Operator kron(const Operator& a, const Operator& b);

/// Embeds an operator on qubits.size() qubits into n qubits; qubits[i] is
/// the target of local qubit i.
Operator embed(const Operator& local, int n, const std::vector<int>& qubits);

/// Traces out every qubit not in `keep`.  The result acts on the kept qubits
/// in ascending order.
Operator partial_trace(const Operator& a, std::vector<int> keep);

/// Components of A grouped by Pauli weight.  Only weights whose component
/// is nonzero (relative to the largest coefficient) are present.
std::map<int, Operator> pauli_weight_components(const Operator& a);

/// Deterministic pseudo-random element of SU(2).
Matrix2 random_su2(std::uint64_t seed);

/// U^{(x)n} for U = random_su2(seed).
Operator random_global_rotation(int n, std::uint64_t seed);

/// U^{(x)n} A U^{dagger (x)n}, applied one qubit at a time.
Operator conjugate_global(const Operator& a, const Matrix2& u);

/// exp(-i t H) for Hermitian H.
Operator evolve(const Operator& h, double t);

/// Trace distance between density matrices, (1/2) ||rho - sigma||_1.
double trace_distance(const Matrix& rho, const Matrix& sigma);

}  // namespace rotinv
