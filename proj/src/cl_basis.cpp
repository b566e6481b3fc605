#include "rotinv/cl_basis.hpp"

#include "rotinv/errors.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv {

namespace {

void check_even(int l, const char* what) {
  if (l < 0 || l % 2 != 0) {
    throw DomainError(std::string(what) + " must be a non-negative even integer, got " +
                      std::to_string(l));
  }
}

// Exact polynomial through the points (x_i, y_i), ascending coefficients.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t k = xs.size();
  std::vector<Rational> coeffs(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    // basis polynomial prod_{m != i} (x - x_m) / (x_i - x_m)
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (std::size_t m = 0; m < k; ++m) {
      if (m == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * xs[m];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[m];
    }
    for (std::size_t d = 0; d < k; ++d) coeffs[d] += ys[i] * basis[d] / denom;
  }
  return coeffs;
}

Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational out(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * x + *it;
  return out;
}

void fill_norms(ClTable& t) {
  for (int l : t.ls) {
    Integer s = 0;
    for (int tj : t.twice_js) {
      const Integer& c = t.values[l][tj];
      s += multiplicity(t.n, tj) * (tj + 1) * c * c;
    }
    t.norms[l] = s;
  }
}

}  // namespace

std::vector<int> cl_labels(int n) {
  std::vector<int> out;
  for (int l = 0; l <= max_l(n); l += 2) out.push_back(l);
  return out;
}

Operator cl_operator(int n, int l) {
  check_qubit_count(n);
  check_even(l, "l");
  if (l > max_l(n)) return Operator::zero(n);
  // Each unordered pairing appears 2^{l/2} (l/2)! times among the tuples.
  RealMatrix m = kernels::parallel::pairing_sum(n, l, -0.5);
  m *= std::ldexp(1.0, l / 2);
  return Operator(n, m.cast<Complex>());
}

Integer cl_eigenvalue_closed_form(int n, int l, int twice_j) {
  check_even(l, "l");
  check_sector(n, twice_j);
  if (l > max_l(n)) return 0;
  const int h = l / 2;
  Rational sum(0);
  Integer four_pow = 1;
  for (int r = 0; r <= h; ++r) {
    const Integer term = four_pow * binomial(h, r) * multiplicity_or_zero(n - 2 * r, twice_j);
    sum += (r % 2 == 0) ? Rational(term) : Rational(-term);
    four_pow *= 4;
  }
  const Rational prefactor(factorial(n), factorial(n - l) * power_of_two(h) * factorial(h));
  return require_integer(prefactor * sum / Rational(multiplicity(n, twice_j)),
                         "c_l(j) closed form");
}

ClTable cl_table(int n) {
  if (n < 1) throw DomainError("qubit count must be at least 1");
  ClTable t;
  t.n = n;
  t.ls = cl_labels(n);
  t.twice_js = sector_labels(n);
  for (int l : t.ls) {
    for (int tj : t.twice_js) t.values[l][tj] = cl_eigenvalue_closed_form(n, l, tj);
  }
  fill_norms(t);
  for (int l : t.ls) t.polynomials[l] = cl_polynomial(n, l);
  return t;
}

ClTable cl_table_recursive(int n) {
  if (n < 1) throw DomainError("qubit count must be at least 1");
  ClTable t;
  t.n = n;
  t.ls = cl_labels(n);
  t.twice_js = sector_labels(n);
  for (int tj : t.twice_js) {
    const Rational a = casimir(tj);
    Rational prev(0);  // c_{l-2}
    Rational cur(1);   // c_l
    for (int l = 0; l <= max_l(n); l += 2) {
      t.values[l][tj] = require_integer(cur, "c_l(j) recursion");
      const Rational lin = 2 * a - Rational(l * (n - l - 1)) - Rational(3 * n, 2);
      const Rational next =
          (lin * cur - Rational(binomial(n - l + 2, 2) * (l + 1)) * prev) / Rational(l / 2 + 1);
      prev = cur;
      cur = next;
    }
  }
  fill_norms(t);
  return t;
}

std::vector<Integer> cl_polynomial(int n, int l) {
  check_even(l, "l");
  if (l > max_l(n)) throw DomainError("l exceeds 2 floor(n/2)");
  const int h = l / 2;
  const Integer scale = power_of_two(h) * factorial(h);
  const auto labels = sector_labels(n);
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= h; ++i) {
    xs.push_back(casimir(labels[i]));
    ys.push_back(Rational(scale * cl_eigenvalue_closed_form(n, l, labels[i])));
  }
  const auto coeffs = interpolate(xs, ys);
  for (std::size_t i = h + 1; i < labels.size(); ++i) {
    const Rational expect(scale * cl_eigenvalue_closed_form(n, l, labels[i]));
    if (evaluate(coeffs, casimir(labels[i])) != expect) {
      throw InternalError("c_l(j) is not a polynomial of degree l/2 in j(j+1)");
    }
  }
  std::vector<Integer> out;
  for (const auto& c : coeffs) out.push_back(require_integer(c, "polynomial coefficient"));
  if (out.back() == 0) throw InternalError("polynomial degree is below l/2");
  return out;
}

Integer cl_norm(int n, int l) {
  check_even(l, "l");
  if (l > max_l(n)) return 0;
  Integer s = 0;
  for (int tj : sector_labels(n)) {
    const Integer c = cl_eigenvalue_closed_form(n, l, tj);
    s += multiplicity(n, tj) * (tj + 1) * c * c;
  }
  return s;
}

Operator dl_operator(int n, int l) {
  check_even(l, "l");
  if (l < 2 || l > max_l(n)) {
    throw DomainError("D_l needs 2 <= l <= 2 floor(n/2), got l = " + std::to_string(l));
  }
  return cl_operator(n, l) * Complex(1.0 / to_double(Rational(cl_norm(n, l))));
}

Rational bm_coefficient(int n, int m, int l) {
  check_even(m, "m");
  check_even(l, "l");
  if (l > m) return Rational(0);
  return power_of_two_rational((l - m) / 2) *
         Rational(factorial(n - l), factorial(n - m) * factorial(m / 2 - l / 2));
}

BmResult bm_operator(int n, int m) {
  check_qubit_count(n);
  check_even(m, "m");
  if (m < 2 || m > max_l(n)) {
    throw DomainError("B_m needs 2 <= m <= 2 floor(n/2), got m = " + std::to_string(m));
  }
  RealMatrix s = kernels::parallel::pairing_sum(n, m, 0.0);
  s *= std::ldexp(1.0, m / 2);
  BmResult out{Operator(n, s.cast<Complex>()), {}};
  for (int l = 0; l <= m; l += 2) out.coefficients[l] = bm_coefficient(n, m, l);
  return out;
}

}  // namespace rotinv
