#include "rotinv/ancilla.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rotinv/cl_basis.hpp"
#include "rotinv/constraints.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/kernels.hpp"

namespace rotinv {

namespace {

constexpr int kFullAverageMaxQubits = 6;

void check_lift_size(int n) {
  check_qubit_count(n);
  check_qubit_count(n + 2);
}

void check_l(int n, int l) {
  if (l < 2 || l % 2 != 0 || l > max_l(n)) {
    throw DomainError("l must be even with 2 <= l <= 2 floor(n/2), got l = " + std::to_string(l));
  }
}

Operator ancilla_identity() { return Operator::identity(2); }
Operator ancilla_exchange() { return exchange_op(2, 0, 1); }

// Q_s for s >= 0 (Q_0 = I).
Operator q_product(int n, int s) {
  Monomial m{1.0, {}};
  for (int p = 0; p < s; p += 2) m.pairs.emplace_back(p, p + 1);
  return monomial_operator(n, m);
}

double pow2(int e) { return std::ldexp(1.0, e); }

// Column-by-column residual between an (n+2)-qubit operator restricted to
// |x>|00> inputs and a target n-qubit operator tensored with |00>.
double ancilla_block_residual(const Matrix& big, const Matrix& target) {
  const Eigen::Index dim = target.rows();
  double worst = 0.0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::VectorXcd diff = big.col(4 * x);
    for (Eigen::Index y = 0; y < dim; ++y) diff(4 * y) -= target(y, x);
    worst = std::max(worst, diff.norm());
  }
  return worst;
}

std::string label(int q, int qubits) {
  if (q == qubits - 2) return "a";
  if (q == qubits - 1) return "b";
  return std::to_string(q + 1);
}

bool disjoint_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> seen;
  for (const auto& [r, s] : pairs) {
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) return false;
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) return false;
    seen.push_back(r);
    seen.push_back(s);
  }
  return true;
}

// Relabels every pair in a program through `map`.
CommutatorTerm relabel(const CommutatorTerm& t, const std::vector<int>& map) {
  CommutatorTerm out{t.coeff, {}};
  for (const auto& [r, s] : t.nesting) out.nesting.emplace_back(map.at(r), map.at(s));
  return out;
}

}  // namespace

Operator lift_pairwise(const Operator& f, int r, int s) {
  const int n = f.n();
  check_lift_size(n);
  check_qubit_pair(n, r, s);
  require_symmetric(f, "lifted operator");
  return kron(f * exchange_op(n, r, s), ancilla_identity()) - kron(f, ancilla_exchange());
}

Operator q_monomial(int n, int l) {
  check_qubit_count(n);
  check_l(n, l);
  return q_product(n, l);
}

Operator q_tilde(int n, int l) {
  check_lift_size(n);
  check_l(n, l);
  const Operator id = ancilla_identity();
  const Operator rab = ancilla_exchange();
  Operator sum = kron(q_product(n, 2), id) * Complex(2.0);
  for (int s = 4; s <= l; s += 2) {
    sum += (kron(q_product(n, s), id) - kron(q_product(n, s - 2), rab)) * Complex(pow2(s / 2));
  }
  return sum * Complex(pow2(-l / 2));
}

std::pair<std::vector<std::vector<int>>, Rational> e_tilde_permutations(int n, int l) {
  check_l(n, l);
  const int total = n + 2;
  std::vector<std::vector<int>> perms;
  if (n <= kFullAverageMaxQubits) {
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    do {
      std::vector<int> perm(image);
      perm.push_back(n);
      perm.push_back(n + 1);
      perms.push_back(std::move(perm));
    } while (std::next_permutation(image.begin(), image.end()));
    return {perms, Rational(Integer(1), factorial(n - l) * factorial(l / 2))};
  }
  // Ordered sequences of l/2 unordered pairs; the rest keep their order.
  const int pairs = l / 2;
  std::vector<int> perm(total);
  perm[n] = n;
  perm[n + 1] = n + 1;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == pairs) {
      int next = 2 * pairs;
      for (int q = 0; q < n; ++q) {
        if (!used[q]) perm[next++] = q;
      }
      perms.push_back(perm);
      return;
    }
    for (int p = 0; p < n; ++p) {
      if (used[p]) continue;
      for (int q = p + 1; q < n; ++q) {
        if (used[q]) continue;
        used[p] = used[q] = true;
        perm[2 * depth] = p;
        perm[2 * depth + 1] = q;
        self(self, depth + 1);
        used[p] = used[q] = false;
      }
    }
  };
  rec(rec, 0);
  return {perms, Rational(power_of_two(pairs), factorial(pairs))};
}

Operator e_tilde(int n, int l) {
  check_lift_size(n);
  const auto [perms, weight] = e_tilde_permutations(n, l);
  const Operator qt = q_tilde(n, l);
  Matrix sum = kernels::parallel::permutation_sum(qt.matrix(), n + 2, perms);
  sum *= to_double(weight);
  return Operator(n + 2, std::move(sum));
}

SynthesisResult synthesize(const Operator& h, const SynthesisOptions& options) {
  const int n = h.n();
  check_lift_size(n);
  require_symmetric(h, "Hamiltonian");
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_hermitian(1e-10 * scale)) throw PreconditionError("Hamiltonian is not Hermitian");

  SynthesisResult res;
  res.n = n;
  res.q = decompose(h).q;
  const double shift = h.trace().real() / static_cast<double>(h.dim());
  const Operator traceless = h - Operator::identity(n) * Complex(shift);
  Operator ht = kron(traceless, ancilla_identity());
  for (const auto& [l, q] : res.q) {
    if (l < 2 || q == 0.0) continue;
    ht += (e_tilde(n, l) - kron(cl_operator(n, l), ancilla_identity())) * Complex(q);
  }
  res.block_residual = ancilla_block_residual(ht.matrix(), traceless.matrix());

  const Operator big = evolve(ht, options.time);
  const Operator small = evolve(h, options.time) * std::exp(Complex{0.0, shift * options.time});
  res.dynamical_residual = ancilla_block_residual(big.matrix(), small.matrix());

  res.charges = charge_vector(ht);
  const ClTable table = cl_table(n + 2);
  for (int l : table.ls) {
    if (l < 4) continue;
    double s = 0.0;
    for (const auto& [tj, c] : res.charges.values) s += table.at(l, tj).convert_to<double>() * c;
    res.max_obstruction = std::max(res.max_obstruction, std::abs(s));
  }
  if (options.verify_closure) {
    const LieBasis basis = lie_closure(exchange_generators(n + 2), options.closure);
    res.membership_residual = basis.contains(ht * Complex{0.0, 1.0}).residual;
  }
  res.h_tilde = std::move(ht);
  return res;
}

CommutatorProgram nested_commutator_program(int l) {
  if (l < 4 || l % 2 != 0) throw DomainError("program needs an even l >= 4");
  // Base identity on labels 1..4, a, b, written 0-based with a = 4, b = 5.
  struct BaseTerm {
    int sign;
    std::vector<std::pair<int, int>> nesting;
    int r, s, u, v;  // innermost pair (r, s) and the spectator pair (u, v)
  };
  const int A = 4, B = 5;
  const std::vector<BaseTerm> base = {
      {-1, {{0, 1}, {1, 2}, {2, 3}, {3, A}, {A, 0}}, 0, 1, 3, A},
      {-1, {{1, 2}, {2, 3}, {3, A}, {A, B}, {B, 1}}, 1, 2, 0, A},
      {-1, {{0, 2}, {2, 1}, {1, 3}}, 0, 2, 3, A},
      {+1, {{2, A}, {A, 3}, {3, B}}, 2, A, 0, 1},
  };
  CommutatorProgram prog;
  prog.qubits = 6;
  for (const auto& t : base) prog.terms.push_back({Rational(t.sign), t.nesting});

  for (int level = 4; level < l; level += 2) {
    // Labels of the next level: system 0..level+1, a = level+2, b = level+3.
    const int na = level + 2, nb = level + 3;
    auto lift = [&](int q) {
      if (q == A) return na;
      if (q == B) return nb;
      return q;
    };
    CommutatorProgram next;
    next.qubits = level + 4;
    for (const auto& t : base) {
      // Old labels: 0 -> r, 1 -> s, a -> u, b -> v, k -> k + 2 for 2 <= k < level.
      std::vector<int> map(prog.qubits);
      map[0] = lift(t.r);
      map[1] = lift(t.s);
      for (int k = 2; k < level; ++k) map[k] = k + 2;
      map[level] = lift(t.u);
      map[level + 1] = lift(t.v);
      for (const auto& inner : prog.terms) {
        CommutatorTerm term = relabel(inner, map);
        term.coeff *= Rational(t.sign, 4);
        for (std::size_t i = 1; i < t.nesting.size(); ++i) {
          term.nesting.emplace_back(lift(t.nesting[i].first), lift(t.nesting[i].second));
        }
        next.terms.push_back(std::move(term));
      }
    }
    prog = std::move(next);
  }
  return prog;
}

std::optional<CommutatorProgram> monomial_program(int n, const Monomial& m) {
  check_lift_size(n);
  if (m.pairs.empty() || !disjoint_pairs(m.pairs)) return std::nullopt;
  for (const auto& [r, s] : m.pairs) check_qubit_pair(n, r, s);
  const int d = static_cast<int>(m.pairs.size());
  const int l = 2 * d;
  const Rational coeff = exact_rational(m.coeff);
  CommutatorProgram out;
  out.qubits = n + 2;
  for (int s = 4; s <= l; s += 2) {
    const CommutatorProgram p = nested_commutator_program(s);
    std::vector<int> map(s + 2);
    map[0] = m.pairs[s / 2 - 1].first;
    map[1] = m.pairs[s / 2 - 1].second;
    for (int i = 1; i < s / 2; ++i) {
      map[2 * i] = m.pairs[i - 1].first;
      map[2 * i + 1] = m.pairs[i - 1].second;
    }
    map[s] = n;
    map[s + 1] = n + 1;
    const Rational factor = coeff * power_of_two_rational((s - l) / 2) * Rational(1, 4);
    for (const auto& t : p.terms) {
      CommutatorTerm term = relabel(t, map);
      term.coeff *= factor;
      out.terms.push_back(std::move(term));
    }
  }
  out.terms.push_back({coeff * power_of_two_rational(1 - d), {m.pairs.front()}});
  return out;
}

Operator monomial_lift(int n, const Monomial& m) {
  check_lift_size(n);
  if (m.pairs.empty() || !disjoint_pairs(m.pairs)) {
    throw DomainError("monomial lift needs a nonempty product of disjoint pairs");
  }
  const int d = static_cast<int>(m.pairs.size());
  auto prefix = [&](int count) {
    Monomial p{1.0, std::vector<std::pair<int, int>>(m.pairs.begin(), m.pairs.begin() + count)};
    return monomial_operator(n, p);
  };
  const Operator id = ancilla_identity();
  const Operator rab = ancilla_exchange();
  Operator out = kron(prefix(1), id) * Complex(pow2(1 - d));
  for (int s = 2; s <= d; ++s) {
    out += (kron(prefix(s), id) - kron(prefix(s - 1), rab)) * Complex(pow2(s - d));
  }
  return out * Complex(m.coeff);
}

Operator evaluate(const CommutatorProgram& program) {
  const int n = program.qubits;
  check_qubit_count(n);
  Operator out = Operator::zero(n);
  for (const auto& term : program.terms) {
    if (term.nesting.empty()) throw DomainError("empty commutator term");
    const auto& [r0, s0] = term.nesting.front();
    Matrix x = exchange_op(n, r0, s0).matrix();
    for (std::size_t i = 1; i < term.nesting.size(); ++i) {
      // [X, R_rs] = [X, P_rs]
      const auto& [r, s] = term.nesting[i];
      Matrix right = x;
      apply_swap_right(right, n, r, s);
      apply_swap_left(x, n, r, s);
      x = right - x;
    }
    out.matrix() += to_double(term.coeff) * x;
  }
  return out;
}

std::string to_string(const CommutatorProgram& program) {
  std::ostringstream os;
  bool first = true;
  for (const auto& term : program.terms) {
    const bool negative = term.coeff < 0;
    const Rational mag = negative ? Rational(-term.coeff) : term.coeff;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << mag.str() << "*";
    const auto& nest = term.nesting;
    for (std::size_t i = 1; i < nest.size(); ++i) os << "[";
    for (std::size_t i = 0; i < nest.size(); ++i) {
      if (i > 0) os << ",";
      os << "R(" << label(nest[i].first, program.qubits) << "," << label(nest[i].second, program.qubits)
         << ")";
      if (i > 0) os << "]";
    }
  }
  return os.str();
}

}  // namespace rotinv
