#include "rotinv/sectors.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include <Eigen/Sparse>

#include "rotinv/errors.hpp"

namespace rotinv {

void check_sector(int n, int twice_j) {
  if (n < 0) throw DomainError("qubit count must be non-negative");
  if (twice_j < 0 || twice_j > n) {
    throw DomainError("2j = " + std::to_string(twice_j) + " outside [0, " + std::to_string(n) + "]");
  }
  if ((twice_j - n) % 2 != 0) {
    throw DomainError("2j = " + std::to_string(twice_j) + " has the wrong parity for n = " +
                      std::to_string(n));
  }
}

std::vector<int> sector_labels(int n) {
  std::vector<int> out;
  for (int tj = n % 2; tj <= n; tj += 2) out.push_back(tj);
  return out;
}

Integer multiplicity(int n, int twice_j) {
  check_sector(n, twice_j);
  // C(n, n/2 - j) (2j+1) / (n/2 + j + 1)
  const Integer num = binomial(n, (n - twice_j) / 2) * (twice_j + 1);
  const int den = (n + twice_j) / 2 + 1;
  if (num % den != 0) throw InternalError("multiplicity is not an integer");
  return num / den;
}

Integer multiplicity_or_zero(int n, int twice_j) {
  if (n < 0 || twice_j < 0 || twice_j > n || (twice_j - n) % 2 != 0) return 0;
  return multiplicity(n, twice_j);
}

Integer multiplicity_recursive(int n, int twice_j) {
  check_sector(n, twice_j);
  // row[tj] holds m(k, tj/2) for the current k
  std::vector<Integer> row(n + 2, 0);
  row[0] = 1;
  for (int k = 1; k <= n; ++k) {
    std::vector<Integer> next(n + 2, 0);
    for (int tj = k % 2; tj <= k; tj += 2) {
      Integer v = row[tj + 1];
      if (tj >= 1) v += row[tj - 1];
      next[tj] = v;
    }
    row = std::move(next);
  }
  return row[twice_j];
}

Rational casimir(int twice_j) { return Rational(twice_j * (twice_j + 2), 4); }

SectorTable sector_table(int n) {
  if (n < 1) throw DomainError("qubit count must be at least 1");
  SectorTable t;
  t.n = n;
  for (int tj : sector_labels(n)) {
    SectorEntry e;
    e.twice_j = tj;
    e.multiplicity = multiplicity(n, tj);
    e.trace = e.multiplicity * (tj + 1);
    t.entries.push_back(std::move(e));
  }
  return t;
}

Integer symmetric_dimension(int n) {
  Integer out = 0;
  for (int tj : sector_labels(n)) {
    const Integer m = multiplicity(n, tj);
    out += m * m;
  }
  return out;
}

namespace {

// J^2 X using J^2 = (3n/4 - n(n-1)/4) I + sum_{r<s} P_rs.
RealMatrix apply_j2(const RealMatrix& x, int n) {
  RealMatrix out = (0.75 * n - 0.25 * n * (n - 1)) * x;
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      RealMatrix p = x;
      apply_swap_left(p, n, r, s);
      out += p;
    }
  }
  return out;
}

RealMatrix compute_projector(int n, int twice_j) {
  const double a = to_double(casimir(twice_j));
  std::vector<double> others;
  for (int tj : sector_labels(n)) {
    if (tj != twice_j) others.push_back(to_double(casimir(tj)));
  }
  std::stable_sort(others.begin(), others.end(), [a](double x, double y) {
    return std::abs(a - x) < std::abs(a - y);
  });
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  RealMatrix x = RealMatrix::Identity(dim, dim);
  for (double b : others) x = (apply_j2(x, n) - b * x) / (a - b);
  return x;
}

constexpr int kMaxCachedQubits = 10;

std::shared_ptr<const RealMatrix> projector_cached(int n, int twice_j) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const RealMatrix>> cache;
  const auto key = std::make_pair(n, twice_j);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto value = std::make_shared<const RealMatrix>(compute_projector(n, twice_j));
  if (n <= kMaxCachedQubits) {
    std::unique_lock lock(mutex);
    cache.emplace(key, value);
  }
  return value;
}

using SparseOp = Eigen::SparseMatrix<Complex>;

SparseOp sparse_total_spin(int n, int axis) {
  const auto dim = static_cast<std::uint32_t>(dimension(n));
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::uint32_t x = 0; x < dim; ++x) {
    double z = 0.0;
    for (int q = 0; q < n; ++q) {
      const std::uint32_t mask = 1u << bit_of(n, q);
      const bool one = (x & mask) != 0;
      if (axis == 2) {
        z += one ? -0.5 : 0.5;
      } else if (axis == 0) {
        trips.emplace_back(x ^ mask, x, Complex{0.5, 0.0});
      } else {
        // sigma_y |0> = i |1>, sigma_y |1> = -i |0>
        trips.emplace_back(x ^ mask, x, Complex{0.0, one ? -0.5 : 0.5});
      }
    }
    if (axis == 2) trips.emplace_back(x, x, Complex{z, 0.0});
  }
  SparseOp j(dim, dim);
  j.setFromTriplets(trips.begin(), trips.end());
  return j;
}

constexpr std::uint64_t kRotationSeeds[2] = {0x5eed0001ULL, 0x5eed0002ULL};

}  // namespace

Operator total_j2(int n) {
  check_qubit_count(n);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  return Operator(n, apply_j2(RealMatrix::Identity(dim, dim), n).cast<Complex>());
}

Operator sector_projector(int n, int twice_j) {
  check_qubit_count(n);
  check_sector(n, twice_j);
  return Operator(n, projector_cached(n, twice_j)->cast<Complex>());
}

double ChargeVector::max_abs() const {
  double m = 0.0;
  for (const auto& [tj, v] : values) m = std::max(m, std::abs(v));
  return m;
}

ChargeVector charge_vector(const Operator& h) {
  ChargeVector cv;
  cv.n = h.n();
  for (int tj : sector_labels(h.n())) {
    const auto p = projector_cached(h.n(), tj);
    // Tr(H Pi) with Pi real symmetric
    cv.values[tj] = (h.matrix().real().cwiseProduct(*p)).sum();
  }
  return cv;
}

double symmetry_defect(const Operator& a) {
  const int n = a.n();
  const double scale = std::max(1.0, a.max_abs());
  double defect = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const SparseOp j = sparse_total_spin(n, axis);
    Matrix c = a.matrix() * j;
    c -= j * a.matrix();
    defect = std::max(defect, c.cwiseAbs().maxCoeff());
  }
  for (std::uint64_t seed : kRotationSeeds) {
    const Operator rotated = conjugate_global(a, random_su2(seed));
    defect = std::max(defect, (rotated.matrix() - a.matrix()).cwiseAbs().maxCoeff());
  }
  return defect / scale;
}

bool is_symmetric(const Operator& a, double tol) { return symmetry_defect(a) < tol; }

void require_symmetric(const Operator& a, const std::string& what, double tol) {
  const double d = symmetry_defect(a);
  if (!(d < tol)) {
    std::ostringstream msg;
    msg << what << " is not rotationally invariant: relative commutator norm " << d
        << " exceeds " << tol;
    throw PreconditionError(msg.str());
  }
}

Matrix sector_basis(int n, int twice_j) {
  check_qubit_count(n);
  check_sector(n, twice_j);
  const auto p = projector_cached(n, twice_j);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  const auto rank = static_cast<Eigen::Index>(to_int64(multiplicity(n, twice_j) * (twice_j + 1)));
  RealMatrix basis(dim, rank);
  Eigen::VectorXd residual = p->diagonal();
  for (Eigen::Index k = 0; k < rank; ++k) {
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < dim; ++i) {
      if (residual(i) > residual(pivot)) pivot = i;
    }
    const double d = residual(pivot);
    if (!(d > 1e-8)) throw InternalError("sector basis lost rank");
    Eigen::VectorXd v = p->col(pivot);
    if (k > 0) v -= basis.leftCols(k) * basis.block(pivot, 0, 1, k).transpose();
    v /= std::sqrt(d);
    basis.col(k) = v;
    residual -= v.cwiseAbs2();
    residual(pivot) = 0.0;
  }
  return basis.cast<Complex>();
}

Matrix sector_block(const Operator& v, int twice_j) {
  require_symmetric(v, "sector block input");
  const Matrix b = sector_basis(v.n(), twice_j);
  return b.adjoint() * v.matrix() * b;
}

}  // namespace rotinv
