#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "rotinv/ancilla.hpp"
#include "rotinv/cl_basis.hpp"
#include "rotinv/constraints.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/random.hpp"

using namespace rotinv;

namespace {

Operator rab() { return exchange_op(2, 0, 1); }
Operator i4() { return Operator::identity(2); }

// max_x || big (e_x (x) anc) - (small e_x) (x) anc ||
double block_residual(const Operator& big, const Operator& small, const Eigen::Vector4cd& anc) {
  const auto dim = static_cast<Eigen::Index>(small.dim());
  double worst = 0.0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(4 * dim), want = Eigen::VectorXcd::Zero(4 * dim);
    for (int a = 0; a < 4; ++a) in(4 * x + a) = anc(a);
    for (Eigen::Index y = 0; y < dim; ++y) {
      for (int a = 0; a < 4; ++a) want(4 * y + a) = small.matrix()(y, x) * anc(a);
    }
    worst = std::max(worst, (big.matrix() * in - want).norm());
  }
  return worst;
}

Eigen::Vector4cd ket00() { return Eigen::Vector4cd(1, 0, 0, 0); }
Eigen::Vector4cd singlet() { return Eigen::Vector4cd(0, 1, -1, 0) / std::sqrt(2.0); }

Operator q_product(int n, int s) {
  Monomial m{1.0, {}};
  for (int p = 0; p < s; p += 2) m.pairs.emplace_back(p, p + 1);
  return monomial_operator(n, m);
}

// K_s = (n - s)! (s/2)! / n!
Rational k_factor(int n, int s) { return Rational(factorial(n - s) * factorial(s / 2), factorial(n)); }

// E~_l = C_l (x) I + 2 sum_{r=2}^{l-2} 2^{(r-l)/2} (K_r / K_l) C_r (x) (I/2 - R_ab)
Operator e_tilde_closed_form(int n, int l) {
  Operator out = kron(cl_operator(n, l), i4());
  const Operator anc = i4() * Complex(0.5) - rab();
  for (int r = 2; r <= l - 2; r += 2) {
    const double c = 2.0 * to_double(power_of_two_rational((r - l) / 2) * k_factor(n, r) / k_factor(n, l));
    out += kron(cl_operator(n, r), anc) * Complex(c);
  }
  return out;
}

double max_obstruction(const Operator& big) {
  const ClTable t = cl_table(big.n());
  double worst = 0.0;
  for (int l : t.ls) {
    if (l >= 4) worst = std::max(worst, std::abs(hs_inner(cl_operator(big.n(), l), big).real()));
  }
  return worst;
}

}  // namespace

TEST(Ancilla, PairwiseLiftBlockAction) {
  const Operator f = exchange_op(4, 0, 1);
  const Operator lifted = lift_pairwise(f, 2, 3);
  const Operator fr = f * exchange_op(4, 2, 3);
  EXPECT_LT(block_residual(lifted, fr - f * Complex(0.5), ket00()), 1e-10);
  EXPECT_LT(block_residual(lifted, fr + f * Complex(1.5), singlet()), 1e-10);
  // F = I gives R_rs - 1/2.
  const Operator id_lift = lift_pairwise(Operator::identity(3), 0, 2);
  EXPECT_LT(block_residual(id_lift, exchange_op(3, 0, 2) - Operator::identity(3) * Complex(0.5), ket00()), 1e-10);
}

TEST(Ancilla, PairwiseLiftIsExchangeRealizable) {
  // F acting away from (r, s): the whole charge vector vanishes.
  const Operator lifted = lift_pairwise(exchange_op(4, 0, 1), 2, 3);
  for (const auto& [tj, v] : charge_vector(lifted).values) EXPECT_NEAR(v, 0.0, 1e-9) << tj;
  EXPECT_TRUE(check_realizable(lifted, 2).verdict);
  // F overlapping (r, s): F R_rs is no longer Hermitian and the permutation
  // argument for the charges no longer applies.
  const Operator overlap = lift_pairwise(exchange_op(4, 0, 1), 1, 2);
  EXPECT_FALSE(overlap.is_hermitian(1e-6));
  EXPECT_GT(charge_vector(overlap).max_abs(), 1e-3);
  EXPECT_GT(max_obstruction(overlap), 1.0);
  EXPECT_THROW(lift_pairwise(pauli_op(3, 0, 2), 1, 2), PreconditionError);
  EXPECT_THROW(lift_pairwise(exchange_op(3, 0, 1), 1, 1), DomainError);
}

TEST(Ancilla, QTildeExpansion) {
  // Q~_4 = Q_4 (x) I - Q_2 (x) R_ab + Q_2 (x) I / 2 at n = 4.
  const Operator want = kron(q_product(4, 4), i4()) - kron(q_product(4, 2), rab()) +
                        kron(q_product(4, 2), i4()) * Complex(0.5);
  EXPECT_LT((q_tilde(4, 4) - want).max_abs(), 1e-14);
  EXPECT_LT((q_tilde(4, 2) - kron(exchange_op(4, 0, 1), i4())).max_abs(), 1e-14);
  EXPECT_LT((q_monomial(4, 4) - q_product(4, 4)).max_abs(), 1e-14);
}

TEST(Ancilla, QTildeBlockAction) {
  for (int n : {4, 5, 6}) {
    for (int l = 2; l <= max_l(n); l += 2) {
      EXPECT_LT(block_residual(q_tilde(n, l), q_monomial(n, l), ket00()), 1e-9) << n << " " << l;
    }
  }
  EXPECT_THROW(q_tilde(4, 6), DomainError);
  EXPECT_THROW(q_tilde(4, 3), DomainError);
  EXPECT_THROW(q_monomial(4, 0), DomainError);
}

TEST(Ancilla, ETildeBlockActionAndSymmetry) {
  for (int n : {4, 5, 7}) {
    for (int l = 2; l <= max_l(n); l += 2) {
      const Operator e = e_tilde(n, l);
      EXPECT_LT(block_residual(e, cl_operator(n, l), ket00()), 1e-9) << n << " " << l;
      EXPECT_TRUE(is_symmetric(e));
      std::vector<int> cycle(n + 2);
      std::iota(cycle.begin(), cycle.end(), 0);
      std::rotate(cycle.begin(), cycle.begin() + 1, cycle.begin() + n);
      const Operator u = permutation_op(n + 2, cycle);
      EXPECT_LT((u * e * u.adjoint() - e).max_abs(), 1e-9);
      EXPECT_LT(max_obstruction(e), 1e-9);
    }
  }
}

TEST(Ancilla, ETildeMatchesClosedForm) {
  // The full permutation sum (n <= 6) and the coset transversal (n = 7) both
  // agree with the closed form.
  for (int n : {4, 5, 6, 7}) {
    for (int l = 2; l <= max_l(n); l += 2) {
      EXPECT_LT((e_tilde(n, l) - e_tilde_closed_form(n, l)).max_abs(), 1e-9) << n << " " << l;
    }
  }
  EXPECT_EQ(e_tilde_permutations(4, 4).first.size(), 24u);
  EXPECT_EQ(e_tilde_permutations(7, 4).first.size(), 7u * 6 * 5 * 4 / 4);
  EXPECT_EQ(e_tilde_permutations(7, 4).second, Rational(2));
}

TEST(Ancilla, ETildeOracleCharges) {
  // Frozen from the literal n!-permutation average.
  const std::vector<double> e2 = {-18, -54, 30, 42}, e4 = {-9, -27, 15, 21};
  const ChargeVector c2 = charge_vector(e_tilde(4, 2)), c4 = charge_vector(e_tilde(4, 4));
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(c2.values.at(2 * i), e2[i], 1e-9);
    EXPECT_NEAR(c4.values.at(2 * i), e4[i], 1e-9);
  }
}

TEST(Ancilla, SynthesizeExchange) {
  const SynthesisResult r = synthesize(exchange_op(4, 0, 1));
  EXPECT_LT((r.h_tilde - kron(exchange_op(4, 0, 1), i4())).max_abs(), 1e-12);
  EXPECT_NEAR(r.q.at(2), 1.0 / 12.0, 1e-14);
  EXPECT_NEAR(r.q.at(4), 0.0, 1e-14);
}

TEST(Ancilla, SynthesizeSwap) {
  const Operator s = swap_hamiltonian(4);
  const SynthesisResult r = synthesize(s);
  EXPECT_LT(block_residual(r.h_tilde, s - Operator::identity(4) * Complex(0.25), ket00()), 1e-9);
  EXPECT_LT(r.block_residual, 1e-9);
}

TEST(Ancilla, SynthesizeRandom) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Operator h = build(random_symmetric_spec(4, 6, 3, seed));
    const SynthesisResult r = synthesize(h);
    EXPECT_LT(r.block_residual, 1e-9);
    EXPECT_LT(r.dynamical_residual, 1e-8);
    EXPECT_LT(r.max_obstruction, 1e-9);
    EXPECT_TRUE(is_symmetric(r.h_tilde));
    EXPECT_TRUE(r.h_tilde.is_hermitian(1e-12));
    const ChargeVector cv = charge_vector(r.h_tilde);
    for (const auto& [tj, v] : cv.values) EXPECT_NEAR(r.charges.values.at(tj), v, 1e-12);
    EXPECT_TRUE(check_realizable(r.h_tilde, 2).verdict);
    // Triplet ancilla states see the same block action.
    const Operator target = h - Operator::identity(4) * Complex(h.trace().real() / 16.0);
    EXPECT_LT(block_residual(r.h_tilde, target, Eigen::Vector4cd(0, 0, 0, 1)), 1e-9);
    EXPECT_LT(block_residual(r.h_tilde, target, Eigen::Vector4cd(0, 1, 1, 0) / std::sqrt(2.0)), 1e-9);
  }
}

TEST(Ancilla, AncillasReturn) {
  const Operator h = build(random_symmetric_spec(4, 6, 3, 99));
  const Operator u = evolve(synthesize(h).h_tilde, 0.37);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi(3) = 0.6;
  psi(9) = Complex(0, 0.8);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(64);
  for (int x = 0; x < 16; ++x) in(4 * x) = psi(x);
  const Eigen::VectorXcd out = u.matrix() * in;
  Matrix rho = Matrix::Zero(4, 4);
  for (int x = 0; x < 16; ++x) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) rho(a, b) += out(4 * x + a) * std::conj(out(4 * x + b));
    }
  }
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = 1.0;
  EXPECT_LT(trace_distance(rho, want), 1e-8);
}

TEST(Ancilla, SynthesizeC4IsInExchangeClosure) {
  SynthesisOptions opts;
  opts.verify_closure = true;
  const SynthesisResult r = synthesize(cl_operator(4, 4), opts);
  ASSERT_TRUE(r.membership_residual.has_value());
  EXPECT_LT(*r.membership_residual, 1e-7);
  EXPECT_FALSE(synthesize(cl_operator(4, 4)).membership_residual.has_value());
  EXPECT_THROW(synthesize(pauli_op(3, 0, 2)), PreconditionError);
}

TEST(Ancilla, BaseIdentity) {
  const CommutatorProgram p = nested_commutator_program(4);
  EXPECT_EQ(p.qubits, 6);
  EXPECT_EQ(to_string(p),
            "-[[[[R(1,2),R(2,3)],R(3,4)],R(4,a)],R(a,1)] - [[[[R(2,3),R(3,4)],R(4,a)],R(a,b)],R(b,2)]"
            " - [[R(1,3),R(3,2)],R(2,4)] + [[R(3,a),R(a,4)],R(4,b)]");
  const Operator want = (exchange_op(6, 0, 1) * exchange_op(6, 2, 3) - exchange_op(6, 2, 3) * exchange_op(6, 4, 5)) *
                        Complex(4.0);
  EXPECT_LT((evaluate(p) - want).max_abs(), 1e-12);
}

TEST(Ancilla, RecursivePrograms) {
  const std::vector<std::size_t> counts = {4, 16, 64};
  for (int l : {4, 6, 8}) {
    const CommutatorProgram p = nested_commutator_program(l);
    EXPECT_EQ(p.terms.size(), counts[(l - 4) / 2]);
    const int q = l + 2;
    Monomial lead{4.0, {}}, tail{-4.0, {{q - 2, q - 1}}};
    for (int r = 0; r < l; r += 2) lead.pairs.emplace_back(r, r + 1);
    for (int r = 2; r < l; r += 2) tail.pairs.emplace_back(r, r + 1);
    const Operator want = monomial_operator(q, lead) + monomial_operator(q, tail);
    EXPECT_LT((evaluate(p) - want).max_abs(), 1e-12) << l;
    for (const auto& t : p.terms) {
      for (const auto& [r, s] : t.nesting) {
        EXPECT_NE(r, s);
        EXPECT_LT(std::max(r, s), q);
      }
    }
  }
  EXPECT_THROW(nested_commutator_program(5), DomainError);
  EXPECT_THROW(nested_commutator_program(2), DomainError);
}

TEST(Ancilla, MonomialPrograms) {
  const std::vector<Monomial> monomials = {
      {0.7, {{0, 3}, {1, 4}, {2, 5}}}, {-1.0, {{0, 1}, {2, 3}}}, {2.0, {{3, 5}}}, {1.0, {{4, 5}, {0, 2}}}};
  for (const auto& m : monomials) {
    const auto prog = monomial_program(6, m);
    ASSERT_TRUE(prog.has_value());
    const Operator lifted = monomial_lift(6, m);
    EXPECT_LT((evaluate(*prog) - lifted).max_abs(), 1e-12);
    EXPECT_LT(block_residual(lifted, monomial_operator(6, m), ket00()), 1e-12);
  }
  EXPECT_FALSE(monomial_program(4, Monomial{1.0, {{0, 1}, {1, 2}}}).has_value());
  EXPECT_FALSE(monomial_program(4, Monomial{1.0, {}}).has_value());
  EXPECT_THROW(monomial_lift(4, Monomial{1.0, {{0, 1}, {0, 2}}}), DomainError);
}
