#pragma once

#include <map>
#include <string>
#include <vector>

#include "rotinv/exact.hpp"
#include "rotinv/operator.hpp"

namespace rotinv {

/// Throws DomainError unless twice_j has the parity of n and 0 <= twice_j <= n.
void check_sector(int n, int twice_j);

/// Sector labels 2j in ascending order: n mod 2, n mod 2 + 2, ..., n.
std::vector<int> sector_labels(int n);

/// Number of spin-j irreps in n qubits.
Integer multiplicity(int n, int twice_j);

/// Same, but zero whenever j > n/2 or the labels are otherwise empty.
Integer multiplicity_or_zero(int n, int twice_j);

/// Multiplicity from m(n, j) = m(n-1, j+1/2) + m(n-1, j-1/2).
Integer multiplicity_recursive(int n, int twice_j);

/// j(j+1) for a sector label, as 4 j(j+1) = twice_j (twice_j + 2) over 4.
Rational casimir(int twice_j);

struct SectorEntry {
  int twice_j = 0;
  Integer multiplicity;
  Integer trace;  // (2j+1) m(n, j)
};

struct SectorTable {
  int n = 0;
  std::vector<SectorEntry> entries;
};

SectorTable sector_table(int n);

/// sum_j m(n, j)^2, the dimension of the symmetric operators on n qubits.
Integer symmetric_dimension(int n);

/// J^2 = (3n/4) I + sum_{r<s} R_rs.
Operator total_j2(int n);

/// Projector onto total spin j, by Lagrange interpolation in J^2.
/// Results are cached per (n, twice_j); safe to call concurrently.
Operator sector_projector(int n, int twice_j);

struct ChargeVector {
  int n = 0;
  std::map<int, double> values;  // twice_j -> Tr(H Pi_j)

  double max_abs() const;
};

ChargeVector charge_vector(const Operator& h);

/// Largest of ||[A, J_v]||_max and ||U A U^dagger - A||_max over two fixed
/// random rotations, relative to max(1, ||A||_max).
double symmetry_defect(const Operator& a);

bool is_symmetric(const Operator& a, double tol = 1e-8);

/// Throws PreconditionError naming the defect if `a` is not symmetric.
void require_symmetric(const Operator& a, const std::string& what, double tol = 1e-8);

/// Orthonormal basis of range(Pi_j) as columns, by pivoted orthogonalization
/// of the projector columns (pivot = largest remaining diagonal, lowest index
/// on ties).
Matrix sector_basis(int n, int twice_j);

/// B^dagger V B for the sector basis B.
Matrix sector_block(const Operator& v, int twice_j);

}  // namespace rotinv
