#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rotinv/exact.hpp"
#include "rotinv/operator.hpp"

namespace rotinv {

/// Default qubit cap for closure computations.
inline constexpr int kMaxClosureQubits = 8;

struct ClosureOptions {
  double tol = 1e-9;       // rank tolerance on unit-normalized candidates
  int max_rounds = 64;
  int max_qubits = kMaxClosureQubits;
  bool use_parallel = true;
  /// Stop once this dimension is reached; 0 means "use sum_j m(n, j)^2".
  std::int64_t ambient_dimension = 0;
};

struct Membership {
  bool member = false;
  double residual = 0.0;  // ||A - proj(A)|| / ||A||
};

/// Orthonormal basis (under Re Tr(A^dagger B)) of a real Lie algebra of
/// skew-Hermitian operators, stored as packed real columns.
class LieBasis {
 public:
  LieBasis() = default;
  LieBasis(int n, RealMatrix packed, int rounds, bool converged);

  int n() const { return n_; }
  std::int64_t dimension() const { return packed_.cols(); }
  int rounds() const { return rounds_; }
  bool converged() const { return converged_; }
  const RealMatrix& packed() const { return packed_; }

  Operator element(std::int64_t i) const;

  /// Projects A onto the span.  A must be skew-Hermitian.
  Membership contains(const Operator& a, double tol = 1e-7) const;

 private:
  int n_ = 0;
  RealMatrix packed_;
  int rounds_ = 0;
  bool converged_ = false;
};

/// Independent k-local symmetric skew-Hermitian generators on n qubits: for
/// every subset of min(k, n) qubits and every permutation P of it, i(P + P^T)
/// and P - P^T, keeping only directions not already spanned.
std::vector<Operator> symmetric_local_generators(int n, int k);

/// i I and i R_rs for all pairs.
std::vector<Operator> exchange_generators(int n);

LieBasis lie_closure(const std::vector<Operator>& generators, const ClosureOptions& options = {});

/// Catalan(n) - floor(n/2) + floor(k/2).
std::int64_t dimension_formula(int n, int k);

struct DimensionResult {
  std::int64_t computed = 0;
  std::int64_t formula = 0;
  int rounds = 0;
  bool converged = false;
};

DimensionResult closure_dimension(int n, int k, const ClosureOptions& options = {});

struct CenterReport {
  int n = 0;
  int k = 0;
  std::int64_t center_dimension = 0;
  std::int64_t expected_dimension = 0;              // floor(k/2) + 1
  std::map<int, double> commutator_norms;           // l -> max_g ||[iC_l, g]||_max (unit norms)
  std::map<int, double> membership_residuals;       // l -> residual of iC_l in the closure
  bool passed = false;
};

CenterReport center_check(int n, int k, const ClosureOptions& options = {});

/// Same, reusing a closure of the given generators.
CenterReport center_check(const LieBasis& basis, const std::vector<Operator>& generators, int k);

}  // namespace rotinv
