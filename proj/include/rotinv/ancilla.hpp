#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotinv/exact.hpp"
#include "rotinv/hamiltonian_spec.hpp"
#include "rotinv/lie_closure.hpp"
#include "rotinv/operator.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv {

// Ancillas are always the last two qubits: a = n and b = n + 1 (0-based).

/// F~ = (F R_rs) (x) I_ab - F (x) R_ab.
Operator lift_pairwise(const Operator& f, int r, int s);

/// Q_l = R_{0,1} R_{2,3} ... R_{l-2,l-1}.
Operator q_monomial(int n, int l);

/// Q~_l = 2^{-l/2} [2 Q_2 (x) I + sum_{s=4}^{l} 2^{s/2} (Q_s (x) I - Q_{s-2} (x) R_ab)].
Operator q_tilde(int n, int l);

/// E~_l = n! / ((n-l)! (l/2)!) P(Q~_l), P = average over system permutations.
/// All n! permutations are summed for n <= 6; above that a transversal of
/// the cosets of the stabilizer of Q~_l is used.
Operator e_tilde(int n, int l);

/// Permutations (of n + 2 qubits, ancillas fixed) used by e_tilde, with the
/// weight that turns their sum into E~_l.
std::pair<std::vector<std::vector<int>>, Rational> e_tilde_permutations(int n, int l);

struct SynthesisOptions {
  double time = 0.37;
  bool verify_closure = false;
  ClosureOptions closure;
};

struct SynthesisResult {
  int n = 0;
  Operator h_tilde;
  std::map<int, double> q;          // l -> Tr(H C_l) / Tr(C_l^2)
  double block_residual = 0.0;      // max over basis states
  double dynamical_residual = 0.0;  // at options.time
  ChargeVector charges;             // of H~ on n + 2 qubits
  double max_obstruction = 0.0;     // max_{l >= 4} |Tr(H~ C_l)| on n + 2 qubits
  std::optional<double> membership_residual;
};

SynthesisResult synthesize(const Operator& h, const SynthesisOptions& options = {});

struct CommutatorTerm {
  Rational coeff;
  /// Left-nested commutator [[...[R_{p0}, R_{p1}], R_{p2}]...]; a single
  /// entry means the bare exchange R_{p0}.
  std::vector<std::pair<int, int>> nesting;
};

struct CommutatorProgram {
  int qubits = 0;  // labels 0 .. qubits-3 are system qubits, then a, b
  std::vector<CommutatorTerm> terms;
};

/// Program for 4 (Q_l - R_ab R_{3,4} T_l) on l + 2 qubits, T_l = R_{5,6} ... R_{l-1,l}
/// (1-based labels), built recursively from the l = 4 identity.
CommutatorProgram nested_commutator_program(int l);

/// Program realizing M~ for a monomial of disjoint pairs on n system qubits:
/// M~ (psi (x) |00>) = (M psi) (x) |00>.  nullopt for overlapping pairs or
/// the identity monomial.
std::optional<CommutatorProgram> monomial_program(int n, const Monomial& m);

/// M~ as an operator on n + 2 qubits, for disjoint pairs.
Operator monomial_lift(int n, const Monomial& m);

Operator evaluate(const CommutatorProgram& program);

/// Bracket text, ancillas printed as a and b, e.g.
/// -[[[[R(1,2),R(2,3)],R(3,4)],R(4,a)],R(a,1)]
std::string to_string(const CommutatorProgram& program);

}  // namespace rotinv
