#pragma once

// Hot loops shared by the modules.  Every kernel exists twice: a plain serial
// reference and an OpenMP version that must produce bit-identical results
// (the parallel loops partition output entries, so the summation order of
// every entry is the same in both).

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "rotinv/operator.hpp"

namespace rotinv::kernels {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using Pairing = std::vector<std::pair<int, int>>;

/// All sets of `pairs` disjoint qubit pairs among n qubits, each pair (r, s)
/// with r < s, pairs sorted by first index.  Order is lexicographic.
std::vector<Pairing> matchings(int n, int pairs);

/// Packs a skew-Hermitian N x N matrix into N^2 reals so that the Euclidean
/// inner product equals Re Tr(A^dagger B).
void pack_skew(const Matrix& a, double* out);
Matrix unpack_skew(const double* in, std::size_t dim);

/// Index maps for qubit permutations: result[p][x] is the preimage of basis
/// index x under perms[p].
std::vector<std::vector<std::uint32_t>> inverse_index_maps(
    int n, const std::vector<std::vector<int>>& perms);

namespace serial {

/// sum over matchings M with l/2 pairs of prod_{(r,s) in M} (P_rs + shift I).
RealMatrix pairing_sum(int n, int l, double shift);

/// Packed columns of [lhs[i], rhs[j]] for each (i, j) in pairs.
RealMatrix commutator_batch(const std::vector<Matrix>& lhs,
                            const std::vector<SparseMatrix>& rhs,
                            const std::vector<std::pair<int, int>>& pairs);

/// sum_p U_p X U_p^dagger over qubit permutations of an n-qubit operator.
Matrix permutation_sum(const Matrix& x, int n,
                       const std::vector<std::vector<int>>& perms);

/// Pauli-weight components of an n-qubit matrix, indexed by weight 0..n.
std::vector<Matrix> pauli_weight_split(const Matrix& a, int n);

}  // namespace serial

namespace parallel {

RealMatrix pairing_sum(int n, int l, double shift);

RealMatrix commutator_batch(const std::vector<Matrix>& lhs,
                            const std::vector<SparseMatrix>& rhs,
                            const std::vector<std::pair<int, int>>& pairs);

Matrix permutation_sum(const Matrix& x, int n,
                       const std::vector<std::vector<int>>& perms);

std::vector<Matrix> pauli_weight_split(const Matrix& a, int n);

}  // namespace parallel

}  // namespace rotinv::kernels
