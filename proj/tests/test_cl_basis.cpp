#include <gtest/gtest.h>

#include "rotinv/cl_basis.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/sectors.hpp"

using namespace rotinv;

namespace {

// 2^{l/2} (l/2)! c_l as generic polynomials in n, ascending in a = j(j+1).
std::vector<Integer> generic_polynomial(int l, Integer n) {
  switch (l) {
    case 0:
      return {1};
    case 2:
      return {-3 * n, 4};
    case 4:
      return {15 * n * (n - 2), -8 * (5 * n - 6), 16};
    case 6:
      return {-105 * n * (n - 2) * (n - 4), 12 * (35 * n * n - 154 * n + 120), -16 * (21 * n - 52), 64};
    case 8:
      return {945 * n * (n - 2) * (n - 4) * (n - 6),
              -144 * (35 * n * n * n - 336 * n * n + 892 * n - 560),
              288 * (21 * n * n - 146 * n + 216), -256 * (9 * n - 34), 256};
    case 10:
      return {-10395 * n * (n - 2) * (n - 4) * (n - 6) * (n - 8),
              180 * (385 * n * n * n * n - 6468 * n * n * n + 35948 * n * n - 73744 * n + 40320),
              -288 * (385 * n * n * n - 5170 * n * n + 20680 * n - 23488),
              128 * (495 * n * n - 4730 * n + 10224), -1280 * (11 * n - 56), 1024};
  }
  return {};
}

}  // namespace

TEST(ClBasis, ReferenceTableN10) {
  const std::int64_t want[6][6] = {
      {1, 1, 1, 1, 1, 1},
      {-15, -11, -3, 9, 25, 45},
      {150, 70, -42, -90, 70, 630},
      {-1050, -210, 462, -90, -1050, 3150},
      {4725, -315, -1323, 2565, -3675, 4725},
      {-10395, 3465, -2079, 1485, -1155, 945},
  };
  const ClTable t = cl_table(10);
  ASSERT_EQ(t.ls, (std::vector<int>{0, 2, 4, 6, 8, 10}));
  ASSERT_EQ(t.twice_js, (std::vector<int>{0, 2, 4, 6, 8, 10}));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) EXPECT_EQ(t.at(2 * a, 2 * b), want[a][b]) << a << "," << b;
  }
}

TEST(ClBasis, PolynomialsMatchGenericForms) {
  for (int n : {4, 6, 8, 10}) {
    for (int l = 0; l <= n; l += 2) {
      EXPECT_EQ(cl_polynomial(n, l), generic_polynomial(l, n)) << "n=" << n << " l=" << l;
      EXPECT_EQ(cl_table(n).polynomials.at(l), generic_polynomial(l, n));
    }
  }
}

TEST(ClBasis, PolynomialsAtOddN) {
  // The generic forms hold for odd n as well.
  for (int n : {5, 7, 9}) {
    for (int l = 0; l <= max_l(n); l += 2) EXPECT_EQ(cl_polynomial(n, l), generic_polynomial(l, n));
  }
}

TEST(ClBasis, ClosedFormRecursionAndDenseAgree) {
  for (int n = 1; n <= 8; ++n) {
    const ClTable closed = cl_table(n);
    const ClTable rec = cl_table_recursive(n);
    EXPECT_EQ(closed.values, rec.values) << n;
    EXPECT_EQ(closed.norms, rec.norms) << n;
    for (int l : closed.ls) {
      const Operator c = cl_operator(n, l);
      for (int tj : closed.twice_js) {
        const Operator p = sector_projector(n, tj);
        const double want = closed.at(l, tj).convert_to<double>();
        EXPECT_LT((c * p - p * Complex(want)).max_abs(), 1e-6) << "n=" << n << " l=" << l << " 2j=" << tj;
      }
    }
  }
}

TEST(ClBasis, OracleValues) {
  // Frozen from the brute-force tuple-sum oracle.
  const ClTable t4 = cl_table(4);
  EXPECT_EQ(t4.at(4, 0), 15);
  EXPECT_EQ(t4.at(4, 2), -5);
  EXPECT_EQ(t4.at(4, 4), 3);
  EXPECT_EQ(t4.norms.at(2), 288);
  EXPECT_EQ(t4.norms.at(4), 720);
  const ClTable t6 = cl_table(6);
  EXPECT_EQ(t6.at(4, 0), 45);
  EXPECT_EQ(t6.at(4, 2), 5);
  EXPECT_EQ(t6.at(4, 4), -27);
  EXPECT_EQ(t6.at(4, 6), 45);
  EXPECT_EQ(t6.norms.at(0), 64);
  EXPECT_EQ(t6.norms.at(2), 2880);
  EXPECT_EQ(t6.norms.at(4), 43200);
  EXPECT_EQ(t6.norms.at(6), 100800);
}

TEST(ClBasis, C4IsPairingSum) {
  const Operator want = (exchange_op(4, 0, 1) * exchange_op(4, 2, 3) + exchange_op(4, 0, 2) * exchange_op(4, 1, 3) +
                         exchange_op(4, 0, 3) * exchange_op(4, 1, 2)) *
                        Complex(4.0);
  EXPECT_LT((cl_operator(4, 4) - want).max_abs(), 1e-12);
  Operator c2 = Operator::zero(5);
  for (int r = 0; r < 5; ++r) {
    for (int s = r + 1; s < 5; ++s) c2 += exchange_op(5, r, s) * Complex(2.0);
  }
  EXPECT_LT((cl_operator(5, 2) - c2).max_abs(), 1e-12);
}

TEST(ClBasis, C2Eigenvalue) {
  // c_2(j) = 2 j (j + 1) - 3n/2
  for (int n = 2; n <= 12; ++n) {
    for (int tj : sector_labels(n)) {
      const Rational want = 2 * casimir(tj) - Rational(3 * n, 2);
      EXPECT_EQ(Rational(cl_eigenvalue_closed_form(n, 2, tj)), want);
    }
  }
}

TEST(ClBasis, OrthogonalityAndLocality) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<Operator> cs;
    for (int l : cl_labels(n)) cs.push_back(cl_operator(n, l));
    for (std::size_t a = 0; a < cs.size(); ++a) {
      EXPECT_TRUE(is_symmetric(cs[a]));
      const auto comps = pauli_weight_components(cs[a]);
      ASSERT_EQ(comps.size(), 1u);
      EXPECT_EQ(comps.begin()->first, static_cast<int>(2 * a));
      for (std::size_t b = 0; b < cs.size(); ++b) {
        const double v = hs_inner(cs[a], cs[b]).real();
        if (a == b) {
          EXPECT_NEAR(v, cl_norm(n, static_cast<int>(2 * a)).convert_to<double>(), 1e-8 * std::abs(v));
        } else {
          EXPECT_NEAR(v, 0.0, 1e-8);
        }
      }
    }
  }
}

TEST(ClBasis, PartialTraceRule) {
  // Tr_B C_l^{(AB)} = 2^{n_B} C_l^{(A)}
  for (int n = 2; n <= 6; ++n) {
    for (int na = 1; na < n; ++na) {
      std::vector<int> keep(na);
      for (int q = 0; q < na; ++q) keep[q] = q;
      for (int l : cl_labels(n)) {
        const Operator reduced = partial_trace(cl_operator(n, l), keep);
        const Operator want = cl_operator(na, l) * Complex(std::ldexp(1.0, n - na));
        EXPECT_LT((reduced - want).max_abs(), 1e-9) << "n=" << n << " nA=" << na << " l=" << l;
      }
    }
  }
}

TEST(ClBasis, DlAndBm) {
  const Operator d = dl_operator(4, 4);
  EXPECT_NEAR(hs_inner(d, cl_operator(4, 4)).real(), 1.0, 1e-12);
  EXPECT_THROW(dl_operator(4, 0), DomainError);
  EXPECT_THROW(dl_operator(4, 6), DomainError);
  for (int n : {4, 5, 6}) {
    for (int m = 2; m <= max_l(n); m += 2) {
      const BmResult b = bm_operator(n, m);
      Operator sum = Operator::zero(n);
      for (const auto& [l, c] : b.coefficients) sum += cl_operator(n, l) * Complex(to_double(c));
      EXPECT_LT((sum - b.op).max_abs(), 1e-9) << n << " " << m;
    }
  }
  // B_2 = 2 sum_{r<s} P_rs
  Operator b2 = Operator::zero(4);
  for (int r = 0; r < 4; ++r) {
    for (int s = r + 1; s < 4; ++s) b2 += swap_op(4, r, s) * Complex(2.0);
  }
  EXPECT_LT((bm_operator(4, 2).op - b2).max_abs(), 1e-12);
}

TEST(ClBasis, Errors) {
  EXPECT_THROW(cl_operator(4, 3), DomainError);
  EXPECT_THROW(cl_operator(4, -2), DomainError);
  EXPECT_EQ(cl_operator(3, 4).max_abs(), 0.0);
  EXPECT_EQ(cl_norm(3, 4), 0);
  EXPECT_THROW(cl_polynomial(4, 6), DomainError);
}
