#include "rotinv/constraints.hpp"

#include <cmath>
#include <sstream>

#include "rotinv/cl_basis.hpp"
#include "rotinv/errors.hpp"

namespace rotinv {

namespace {

void require_hermitian(const Operator& h, const std::string& what) {
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_hermitian(1e-10 * scale)) throw PreconditionError(what + " is not Hermitian");
}

// Tr(H C_l) for every l from the charge vector.
std::map<int, double> cl_overlaps(const ChargeVector& cv, const ClTable& table) {
  std::map<int, double> out;
  for (int l : table.ls) {
    double s = 0.0;
    for (const auto& [tj, charge] : cv.values) s += table.at(l, tj).convert_to<double>() * charge;
    out[l] = s;
  }
  return out;
}

Operator center_part(const Operator& h, const ChargeVector& cv) {
  Operator out = Operator::zero(h.n());
  for (const auto& [tj, charge] : cv.values) {
    const double trace = to_double(Rational(multiplicity(h.n(), tj) * (tj + 1)));
    out += sector_projector(h.n(), tj) * Complex(charge / trace);
  }
  return out;
}

}  // namespace

std::string RealizabilityReport::summary() const {
  std::ostringstream os;
  os << "n = " << n << ", k = " << k << "\n";
  auto jl = [](int tj) { return tj % 2 == 0 ? std::to_string(tj / 2) : std::to_string(tj) + "/2"; };
  os << "charge vector Tr(H Pi_j):";
  for (const auto& [tj, v] : charges.values) os << "  j=" << jl(tj) << ": " << v;
  os << "\n";
  for (const auto& [l, v] : obstructions) {
    os << "l = " << l << " constraint: ";
    bool first = true;
    for (const auto& [tj, c] : constraint_coefficients.at(l)) {
      if (first) {
        os << c;
      } else {
        os << (c < 0 ? " - " : " + ") << (c < 0 ? Integer(-c) : c);
      }
      os << " Tr(H Pi_" << jl(tj) << ")";
      first = false;
    }
    os << " = " << v << "\n";
  }
  os << "verdict: " << (verdict ? "realizable" : (indeterminate ? "indeterminate" : "obstructed"))
     << " (tol " << tol << ")\n";
  return os.str();
}

RealizabilityReport check_realizable(const Operator& h, int k, std::optional<double> tol) {
  if (k < 0) throw DomainError("locality k must be non-negative");
  require_hermitian(h, "Hamiltonian");
  require_symmetric(h, "Hamiltonian");
  RealizabilityReport rep;
  rep.n = h.n();
  rep.k = k;
  rep.tol = tol.value_or(1e-8 * h.frobenius_norm());
  if (rep.tol < 0) throw DomainError("tolerance must be non-negative");
  rep.charges = charge_vector(h);
  const ClTable table = cl_table(h.n());
  const auto overlaps = cl_overlaps(rep.charges, table);
  const int threshold = 2 * (k / 2);
  double worst = 0.0;
  for (int l : table.ls) {
    rep.q[l] = overlaps.at(l) / table.norms.at(l).convert_to<double>();
    if (l > threshold) {
      rep.obstructions[l] = overlaps.at(l);
      rep.constraint_coefficients[l] = table.values.at(l);
      worst = std::max(worst, std::abs(overlaps.at(l)));
    }
  }
  rep.h0_norm = (h - center_part(h, rep.charges)).frobenius_norm();
  if (k < 2) worst = std::max(worst, rep.h0_norm);
  rep.verdict = worst < rep.tol || worst == 0.0;
  rep.indeterminate = !rep.verdict && worst <= 10.0 * rep.tol;
  return rep;
}

Decomposition decompose(const Operator& h) {
  require_symmetric(h, "Hamiltonian");
  const ChargeVector cv = charge_vector(h);
  const ClTable table = cl_table(h.n());
  Decomposition d{h - center_part(h, cv), {}};
  for (const auto& [l, v] : cl_overlaps(cv, table)) {
    d.q[l] = v / table.norms.at(l).convert_to<double>();
  }
  return d;
}

EnergyTable average_energies(const Operator& h) {
  EnergyTable t;
  t.n = h.n();
  for (const auto& [tj, charge] : charge_vector(h).values) {
    t.energies[tj] = charge / to_double(Rational(multiplicity(h.n(), tj) * (tj + 1)));
  }
  return t;
}

EnergyFit fit_energy_polynomial(const EnergyTable& table, int k) {
  if (k < 0) throw DomainError("locality k must be non-negative");
  const int degree = k / 2;
  if (degree > table.n / 2) {
    throw DomainError("fit degree " + std::to_string(degree) + " exceeds floor(n/2) = " +
                      std::to_string(table.n / 2));
  }
  const int cols = degree + 1;
  std::vector<Rational> xs, ys;
  for (const auto& [tj, e] : table.energies) {
    xs.push_back(casimir(tj));
    ys.push_back(exact_rational(e));
  }
  // Normal equations (V^T V) c = V^T y, solved exactly.
  std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(cols + 1, Rational(0)));
  for (std::size_t p = 0; p < xs.size(); ++p) {
    std::vector<Rational> powers(2 * cols, Rational(1));
    for (int i = 1; i < 2 * cols; ++i) powers[i] = powers[i - 1] * xs[p];
    for (int r = 0; r < cols; ++r) {
      for (int c = 0; c < cols; ++c) a[r][c] += powers[r + c];
      a[r][cols] += powers[r] * ys[p];
    }
  }
  for (int c = 0; c < cols; ++c) {
    int pivot = c;
    while (pivot < cols && a[pivot][c] == 0) ++pivot;
    if (pivot == cols) throw InternalError("singular normal equations in energy fit");
    std::swap(a[c], a[pivot]);
    for (int r = 0; r < cols; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int m = c; m <= cols; ++m) a[r][m] -= f * a[c][m];
    }
  }
  EnergyFit fit;
  for (int c = 0; c < cols; ++c) fit.coefficients.push_back(to_double(a[c][cols] / a[c][c]));
  double sq = 0.0;
  for (const auto& [tj, e] : table.energies) {
    const double x = to_double(casimir(tj));
    double p = 0.0;
    for (auto it = fit.coefficients.rbegin(); it != fit.coefficients.rend(); ++it) p = p * x + *it;
    sq += (e - p) * (e - p);
  }
  fit.residual = std::sqrt(sq);
  return fit;
}

Operator swap_hamiltonian(int n) {
  if (n % 2 != 0) throw DomainError("the bipartite swap needs an even qubit count");
  check_qubit_count(n);
  std::vector<int> perm(n);
  for (int q = 0; q < n; q += 2) {
    perm[q] = q + 1;
    perm[q + 1] = q;
  }
  return permutation_op(n, perm);
}

Rational swap_overlap(int n, int l) {
  if (n < 2 || n % 2 != 0) throw DomainError("the bipartite swap needs an even qubit count");
  if (l < 0 || l % 2 != 0 || l > n) throw DomainError("l must be even with 0 <= l <= n");
  const Rational factor = power_of_two_rational((l - n) / 2) *
                          Rational(factorial(n - l) * factorial(n / 2),
                                   factorial(n) * factorial(n / 2 - l / 2));
  return factor * Rational(cl_norm(n, l));
}

bool time_reversal_realizable(const Operator& h) {
  require_symmetric(h, "Hamiltonian");
  for (const auto& [w, component] : pauli_weight_components(h)) {
    if (w % 2 == 0) return false;
  }
  return true;
}

}  // namespace rotinv
