#pragma once

#include <map>
#include <vector>

#include "rotinv/exact.hpp"
#include "rotinv/operator.hpp"

namespace rotinv {

/// Largest nonzero index 2 floor(n/2).
inline int max_l(int n) { return 2 * (n / 2); }

/// Even l in [0, max_l(n)].
std::vector<int> cl_labels(int n);

/// C_l = (1/(l/2)!) sum over distinct index tuples of R products.  Zero for
/// even l above max_l(n); odd or negative l is a DomainError.
Operator cl_operator(int n, int l);

/// Eigenvalue c_l(j) from the alternating binomial sum over multiplicities.
Integer cl_eigenvalue_closed_form(int n, int l, int twice_j);

struct ClTable {
  int n = 0;
  std::vector<int> ls;
  std::vector<int> twice_js;
  std::map<int, std::map<int, Integer>> values;  // l -> twice_j -> c_l(j)
  std::map<int, Integer> norms;                  // l -> Tr(C_l^2)
  std::map<int, std::vector<Integer>> polynomials;  // l -> ascending coefficients in a = j(j+1)

  const Integer& at(int l, int twice_j) const { return values.at(l).at(twice_j); }
};

/// Table from the closed form, with norms and polynomials filled in.
ClTable cl_table(int n);

/// Table from the three-term recursion in l; norms filled, polynomials empty.
ClTable cl_table_recursive(int n);

/// Ascending integer coefficients of 2^{l/2} (l/2)! c_l in a = j(j+1),
/// obtained by exact interpolation and checked on every sector.
std::vector<Integer> cl_polynomial(int n, int l);

/// Tr(C_l^2) = sum_j (2j+1) m(n, j) c_l(j)^2; zero above max_l(n).
Integer cl_norm(int n, int l);

/// D_l = C_l / Tr(C_l^2) for even 2 <= l <= max_l(n).
Operator dl_operator(int n, int l);

struct BmResult {
  Operator op;
  std::map<int, Rational> coefficients;  // l -> coefficient of C_l
};

/// B_m = (1/(m/2)!) sum over distinct tuples of swap products, with its
/// expansion over the C_l.
BmResult bm_operator(int n, int m);

/// Coefficient of C_l in B_m.
Rational bm_coefficient(int n, int m, int l);

}  // namespace rotinv
