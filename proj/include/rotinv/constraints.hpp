#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rotinv/exact.hpp"
#include "rotinv/operator.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv {

struct RealizabilityReport {
  int n = 0;
  int k = 0;
  ChargeVector charges;
  std::map<int, double> obstructions;  // l -> Tr(H C_l) for l > 2 floor(k/2)
  std::map<int, std::map<int, Integer>> constraint_coefficients;  // l -> twice_j -> c_l(j)
  std::map<int, double> q;             // l -> Tr(H C_l) / Tr(C_l^2), every l
  double h0_norm = 0.0;                // ||H_0||_F
  double tol = 0.0;
  bool verdict = false;
  bool indeterminate = false;  // largest obstruction in [tol, 10 tol]

  std::string summary() const;
};

/// Decides whether H can be generated by k-local symmetric unitaries.  The
/// default tolerance is 1e-8 ||H||_F.  For k < 2 the verdict is true only
/// for real multiples of the identity.
RealizabilityReport check_realizable(const Operator& h, int k,
                                     std::optional<double> tol = std::nullopt);

struct Decomposition {
  Operator h0;
  std::map<int, double> q;
};

/// H = H_0 + sum_l q_l C_l with Tr(H_0 Pi_j) = 0.
Decomposition decompose(const Operator& h);

struct EnergyTable {
  int n = 0;
  std::map<int, double> energies;  // twice_j -> Tr(Pi_j H) / Tr(Pi_j)
};

EnergyTable average_energies(const Operator& h);

struct EnergyFit {
  std::vector<double> coefficients;  // ascending powers of a = j(j+1)
  double residual = 0.0;             // Euclidean norm over sectors
};

/// Least-squares fit of E_j by a polynomial of degree floor(k/2) in j(j+1),
/// solved with exact rational normal equations.
EnergyFit fit_energy_polynomial(const EnergyTable& table, int k);

/// S_AB = P_12 P_34 ... P_{n-1,n} for even n.
Operator swap_hamiltonian(int n);

/// Tr(S_AB C_l) in closed form.
Rational swap_overlap(int n, int l);

/// True iff H only has odd Pauli-weight content.
bool time_reversal_realizable(const Operator& h);

}  // namespace rotinv
