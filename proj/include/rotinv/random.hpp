#pragma once

#include <cstdint>

#include "rotinv/hamiltonian_spec.hpp"
#include "rotinv/operator.hpp"

namespace rotinv {

/// Hermitian symmetric Hamiltonian: `terms` random exchange monomials of
/// degree 1..max_degree, each paired with its reversed product so the sum is
/// Hermitian.  Coefficients are standard normal.  Deterministic in seed.
HamiltonianSpec random_symmetric_spec(int n, int terms, int max_degree, std::uint64_t seed);

/// Random 2-local symmetric Hamiltonian sum_{r<s} J_rs R_rs.
HamiltonianSpec random_exchange_spec(int n, std::uint64_t seed);

/// exp(-i H) for H built from random_symmetric_spec(n, 8, n - 1, seed).
Operator random_symmetric_unitary(int n, std::uint64_t seed);

}  // namespace rotinv
