#include "rotinv/lie_closure.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rotinv/cl_basis.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv {

namespace {

using kernels::SparseMatrix;

const Complex kI{0.0, 1.0};

Eigen::VectorXd pack(const Operator& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.dim() * a.dim()));
  kernels::pack_skew(a.matrix(), v.data());
  return v;
}

void require_skew(const Operator& a, const char* what) {
  const double scale = std::max(1.0, a.max_abs());
  if (!a.is_skew_hermitian(1e-10 * scale)) {
    throw PreconditionError(std::string(what) + " is not skew-Hermitian");
  }
}

// Growing orthonormal column set with two-pass classical Gram-Schmidt.
class OrthoSet {
 public:
  explicit OrthoSet(Eigen::Index rows) : q_(rows, 0) {}

  Eigen::Index size() const { return size_; }
  Eigen::Index rows() const { return q_.rows(); }
  auto view() const { return q_.leftCols(size_); }

  // Removes the span from every column of y.
  void project_out(RealMatrix& y) const {
    if (size_ == 0 || y.cols() == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
      const RealMatrix coeffs = view().transpose() * y;
      y.noalias() -= view() * coeffs;
    }
  }

  void project_out(Eigen::VectorXd& y) const {
    if (size_ == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeffs = view().transpose() * y;
      y.noalias() -= view() * coeffs;
    }
  }

  void append(const Eigen::VectorXd& unit) {
    if (size_ == q_.cols()) q_.conservativeResize(Eigen::NoChange, std::max<Eigen::Index>(16, 2 * size_));
    q_.col(size_++) = unit;
  }

  RealMatrix take() && {
    q_.conservativeResize(Eigen::NoChange, size_);
    return std::move(q_);
  }

 private:
  RealMatrix q_;
  Eigen::Index size_ = 0;
};

// Accepts the columns of y (already orthogonal to `basis`) one by one in
// order, orthogonalizing each against the ones accepted before it.  Returns
// the indices of accepted columns.
std::vector<Eigen::Index> accept_columns(RealMatrix& y, OrthoSet& basis, double tol,
                                         std::int64_t limit) {
  std::vector<Eigen::Index> accepted;
  const Eigen::Index start = basis.size();
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    if (basis.size() >= limit) break;
    Eigen::VectorXd v = y.col(c);
    const Eigen::Index fresh = basis.size() - start;
    if (fresh > 0) {
      auto recent = basis.view().rightCols(fresh);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeffs = recent.transpose() * v;
        v.noalias() -= recent * coeffs;
      }
    }
    const double norm = v.norm();
    if (norm > tol) {
      basis.append(v / norm);
      accepted.push_back(c);
    }
  }
  return accepted;
}

SparseMatrix to_sparse(const Operator& a) {
  return a.matrix().sparseView(Complex{0.0, 0.0}, 0.0);
}

std::int64_t chunk_size(Eigen::Index rows) {
  const std::int64_t budget = std::int64_t{1} << 23;  // doubles per candidate block
  return std::clamp<std::int64_t>(budget / std::max<Eigen::Index>(1, rows), 16, 512);
}

}  // namespace

LieBasis::LieBasis(int n, RealMatrix packed, int rounds, bool converged)
    : n_(n), packed_(std::move(packed)), rounds_(rounds), converged_(converged) {}

Operator LieBasis::element(std::int64_t i) const {
  if (i < 0 || i >= dimension()) throw DomainError("basis index out of range");
  return Operator(n_, kernels::unpack_skew(packed_.col(i).data(), rotinv::dimension(n_)));
}

Membership LieBasis::contains(const Operator& a, double tol) const {
  if (a.n() != n_) throw DomainError("operator size does not match the Lie basis");
  require_skew(a, "membership candidate");
  Eigen::VectorXd v = pack(a);
  const double norm = v.norm();
  if (norm == 0.0) return {true, 0.0};
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd coeffs = packed_.transpose() * v;
    v.noalias() -= packed_ * coeffs;
  }
  const double residual = v.norm() / norm;
  return {residual < tol, residual};
}

std::vector<Operator> symmetric_local_generators(int n, int k) {
  check_qubit_count(n);
  if (k < 2) throw DomainError("generators need locality k >= 2");
  const int m = std::min(k, n);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  OrthoSet seen(dim * dim);
  std::vector<Operator> out;
  auto offer = [&](Operator g) {
    Eigen::VectorXd v = pack(g);
    const double norm = v.norm();
    if (norm < 1e-12) return;
    v /= norm;
    seen.project_out(v);
    const double r = v.norm();
    if (r > 1e-9) {
      seen.append(v / r);
      out.push_back(std::move(g));
    }
  };
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + m, true);
  do {
    std::vector<int> subset;
    for (int q = 0; q < n; ++q) {
      if (mask[q]) subset.push_back(q);
    }
    std::vector<int> image = subset;
    do {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = 0; i < m; ++i) perm[subset[i]] = image[i];
      const Operator p = permutation_op(n, perm);
      const Operator pt = p.adjoint();
      offer((p + pt) * kI);
      offer(p - pt);
    } while (std::next_permutation(image.begin(), image.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<Operator> exchange_generators(int n) {
  check_qubit_count(n);
  std::vector<Operator> out{Operator::identity(n) * kI};
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) out.push_back(exchange_op(n, r, s) * kI);
  }
  return out;
}

LieBasis lie_closure(const std::vector<Operator>& generators, const ClosureOptions& options) {
  if (generators.empty()) throw DomainError("closure needs at least one generator");
  const int n = generators.front().n();
  if (n > options.max_qubits) {
    throw ResourceError("closure on " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(options.max_qubits));
  }
  bool all_symmetric = true;
  for (const auto& g : generators) {
    if (g.n() != n) throw DomainError("generators act on different qubit counts");
    require_skew(g, "generator");
    all_symmetric = all_symmetric && is_symmetric(g);
  }
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  std::int64_t ambient = options.ambient_dimension;
  if (ambient <= 0) {
    ambient = all_symmetric ? to_int64(symmetric_dimension(n)) : static_cast<std::int64_t>(dim * dim);
  }

  OrthoSet basis(dim * dim);
  std::vector<Matrix> gens_dense;
  std::vector<SparseMatrix> gens_sparse;
  for (const auto& g : generators) {
    Eigen::VectorXd v = pack(g);
    const double norm = v.norm();
    if (norm == 0.0) continue;
    v /= norm;
    basis.project_out(v);
    const double r = v.norm();
    if (r > options.tol && basis.size() < ambient) {
      basis.append(v / r);
      gens_dense.push_back(g.matrix());
      gens_sparse.push_back(to_sparse(g));
    }
  }
  const auto num_gens = static_cast<int>(gens_dense.size());
  std::vector<double> gen_norms;
  for (const auto& g : gens_dense) gen_norms.push_back(g.norm());

  const std::int64_t chunk = chunk_size(dim * dim);
  int rounds = 0;
  bool converged = basis.size() >= ambient;

  // Round 1 commutes generator pairs a < b; later rounds commute the
  // directions added in the previous round with every generator.
  std::vector<Eigen::Index> frontier;
  bool first = true;
  while (!converged && rounds < options.max_rounds) {
    ++rounds;
    std::vector<Matrix> lhs;
    std::vector<double> lhs_norms;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Eigen::Index> next_frontier;
    bool added = false;

    auto flush = [&]() {
      if (pairs.empty()) return;
      RealMatrix cand = options.use_parallel
                            ? kernels::parallel::commutator_batch(lhs, gens_sparse, pairs)
                            : kernels::serial::commutator_batch(lhs, gens_sparse, pairs);
      // Drop numerically vanishing commutators, normalize the rest.
      std::vector<Eigen::Index> keep;
      for (Eigen::Index c = 0; c < cand.cols(); ++c) {
        const double norm = cand.col(c).norm();
        const double scale = lhs_norms[pairs[c].first] * gen_norms[pairs[c].second];
        if (norm > 1e-10 * scale) {
          cand.col(c) /= norm;
          keep.push_back(c);
        }
      }
      RealMatrix y(cand.rows(), static_cast<Eigen::Index>(keep.size()));
      for (std::size_t i = 0; i < keep.size(); ++i) y.col(i) = cand.col(keep[i]);
      basis.project_out(y);
      const Eigen::Index before = basis.size();
      const auto acc = accept_columns(y, basis, options.tol, ambient);
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(acc.size()); ++i) {
        next_frontier.push_back(before + i);
      }
      added = added || !acc.empty();
      lhs.clear();
      lhs_norms.clear();
      pairs.clear();
    };

    if (first) {
      for (int a = 0; a < num_gens && basis.size() < ambient; ++a) {
        lhs.push_back(gens_dense[a]);
        lhs_norms.push_back(gen_norms[a]);
        for (int b = a + 1; b < num_gens; ++b) pairs.emplace_back(static_cast<int>(lhs.size()) - 1, b);
        if (static_cast<std::int64_t>(pairs.size()) >= chunk) flush();
      }
      first = false;
    } else {
      for (Eigen::Index f : frontier) {
        if (basis.size() >= ambient) break;
        lhs.push_back(kernels::unpack_skew(basis.view().col(f).data(), dimension(n)));
        lhs_norms.push_back(1.0);
        for (int b = 0; b < num_gens; ++b) pairs.emplace_back(static_cast<int>(lhs.size()) - 1, b);
        if (static_cast<std::int64_t>(pairs.size()) >= chunk) flush();
      }
    }
    flush();
    frontier = std::move(next_frontier);
    if (basis.size() >= ambient || !added) converged = true;
  }
  return LieBasis(n, std::move(basis).take(), rounds, converged);
}

std::int64_t dimension_formula(int n, int k) {
  if (n < 1) throw DomainError("qubit count must be at least 1");
  if (k < 2) throw DomainError("the dimension formula needs k >= 2");
  k = std::min(k, n);
  return to_int64(catalan(n)) - n / 2 + k / 2;
}

namespace {

void check_closure_args(int n, int k, const ClosureOptions& options) {
  if (n > options.max_qubits) {
    throw ResourceError("closure on " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(options.max_qubits));
  }
  check_qubit_count(n);
  if (k < 2 || k > n) {
    throw DomainError("closure needs 2 <= k <= n, got k = " + std::to_string(k));
  }
}

}  // namespace

DimensionResult closure_dimension(int n, int k, const ClosureOptions& options) {
  check_closure_args(n, k, options);
  const LieBasis basis = lie_closure(symmetric_local_generators(n, k), options);
  return {basis.dimension(), dimension_formula(n, k), basis.rounds(), basis.converged()};
}

CenterReport center_check(int n, int k, const ClosureOptions& options) {
  check_closure_args(n, k, options);
  const auto gens = symmetric_local_generators(n, k);
  return center_check(lie_closure(gens, options), gens, k);
}

CenterReport center_check(const LieBasis& basis, const std::vector<Operator>& generators, int k) {
  const int n = basis.n();
  if (k < 2) throw DomainError("center check needs k >= 2");
  CenterReport rep;
  rep.n = n;
  rep.k = k;
  rep.expected_dimension = std::min(k, n) / 2 + 1;

  // The centralizer of every R_rs among symmetric operators is span{Pi_j},
  // which is central; so the center is the common kernel of ad(iR_rs).
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  std::vector<Matrix> elems;
  for (Eigen::Index i = 0; i < dim; ++i) elems.push_back(basis.element(i).matrix());
  std::vector<SparseMatrix> exch;
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) exch.push_back(to_sparse(exchange_op(n, r, s) * kI));
  }
  RealMatrix gram = RealMatrix::Zero(dim, dim);
  for (std::size_t p = 0; p < exch.size(); ++p) {
    std::vector<std::pair<int, int>> pairs;
    for (Eigen::Index i = 0; i < dim; ++i) pairs.emplace_back(static_cast<int>(i), static_cast<int>(p));
    const RealMatrix m = kernels::parallel::commutator_batch(elems, exch, pairs);
    gram.noalias() += m.transpose() * m;
  }
  if (dim > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    rep.center_dimension = (es.eigenvalues().array() < 1e-9 * top).count();
  }

  bool ok = rep.center_dimension == rep.expected_dimension;
  for (int l = 0; l <= std::min(2 * (k / 2), max_l(n)); l += 2) {
    Operator c = cl_operator(n, l) * kI;
    c *= Complex(1.0 / c.frobenius_norm());
    double worst = 0.0;
    for (const auto& g : generators) {
      const double gn = g.frobenius_norm();
      if (gn == 0.0) continue;
      worst = std::max(worst, commutator(c, g).max_abs() / gn);
    }
    rep.commutator_norms[l] = worst;
    rep.membership_residuals[l] = basis.contains(c).residual;
    ok = ok && worst < 1e-10 && rep.membership_residuals[l] < 1e-7;
  }
  rep.passed = ok;
  return rep;
}

}  // namespace rotinv
