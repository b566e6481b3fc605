#include "rotinv/kernels.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "rotinv/errors.hpp"

namespace rotinv::kernels {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Flattened (permutation, coefficient) pairs for one pairing sum.  Each
// permutation is a product of disjoint transpositions, stored as the list of
// bit masks (one per transposition).
struct PairingTerm {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps;  // (mask_r, mask_s)
  double coeff;
};

std::vector<PairingTerm> pairing_terms(int n, int l, double shift) {
  if (l < 0 || l % 2 != 0) throw DomainError("pairing sum needs an even l >= 0");
  std::vector<PairingTerm> terms;
  const int pairs = l / 2;
  if (pairs * 2 > n) return terms;
  for (const auto& m : matchings(n, pairs)) {
    for (std::uint32_t subset = 0; subset < (1u << pairs); ++subset) {
      const int dropped = pairs - std::popcount(subset);
      if (shift == 0.0 && dropped > 0) continue;
      PairingTerm t;
      t.coeff = std::pow(shift, dropped);
      for (int p = 0; p < pairs; ++p) {
        if (subset & (1u << p)) {
          t.swaps.emplace_back(1u << bit_of(n, m[p].first), 1u << bit_of(n, m[p].second));
        }
      }
      terms.push_back(std::move(t));
    }
  }
  return terms;
}

inline std::uint32_t apply_swaps(
    std::uint32_t x, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& swaps) {
  for (const auto& [mr, ms] : swaps) {
    if (((x & mr) != 0) != ((x & ms) != 0)) x ^= (mr | ms);
  }
  return x;
}

void check_pairs(const std::vector<Matrix>& lhs, const std::vector<SparseMatrix>& rhs,
                 const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= static_cast<int>(lhs.size()) ||
        j >= static_cast<int>(rhs.size())) {
      throw DomainError("commutator batch index out of range");
    }
  }
}

void commutator_column(const Matrix& a, const SparseMatrix& b, double* out) {
  Matrix c = a * b;
  c.noalias() -= b * a;
  pack_skew(c, out);
}

// In-place unnormalized Walsh-Hadamard transform.
void walsh_hadamard(std::vector<Complex>& v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex x = v[j];
        const Complex y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

// Handles one X-pattern x: fills entries (c ^ x, c) of every weight slice.
void pauli_row(const Matrix& a, int n, std::uint32_t x, std::vector<Matrix>& out) {
  const std::size_t dim = dimension(n);
  std::vector<Complex> u(dim);
  for (std::size_t c = 0; c < dim; ++c) u[c] = a(c ^ x, c);
  walsh_hadamard(u);
  const double inv = 1.0 / static_cast<double>(dim);
  for (auto& v : u) v *= inv;
  std::vector<Complex> slice(dim);
  for (int w = 0; w <= n; ++w) {
    bool any = false;
    for (std::size_t z = 0; z < dim; ++z) {
      const bool hit = std::popcount(static_cast<std::uint32_t>(x | z)) == w;
      slice[z] = hit ? u[z] : Complex{0.0, 0.0};
      any = any || (hit && u[z] != Complex{0.0, 0.0});
    }
    if (!any) continue;
    walsh_hadamard(slice);
    for (std::size_t c = 0; c < dim; ++c) out[w](c ^ x, c) = slice[c];
  }
}

std::vector<Matrix> zero_slices(int n) {
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  return std::vector<Matrix>(n + 1, Matrix::Zero(dim, dim));
}

void check_square(const Matrix& a, int n) {
  if (a.rows() != static_cast<Eigen::Index>(dimension(n)) || a.cols() != a.rows()) {
    throw DomainError("matrix size does not match the qubit count");
  }
}

}  // namespace

std::vector<Pairing> matchings(int n, int pairs) {
  std::vector<Pairing> out;
  if (pairs < 0 || 2 * pairs > n) return out;
  Pairing current;
  std::vector<bool> used(n, false);
  // Pairs are emitted with increasing first index, so each matching appears once.
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(current.size()) == pairs) {
      out.push_back(current);
      return;
    }
    for (int r = start; r < n; ++r) {
      if (used[r]) continue;
      used[r] = true;
      for (int s = r + 1; s < n; ++s) {
        if (used[s]) continue;
        used[s] = true;
        current.emplace_back(r, s);
        rec(r + 1);
        current.pop_back();
        used[s] = false;
      }
      used[r] = false;
    }
  };
  rec(0);
  return out;
}

void pack_skew(const Matrix& a, double* out) {
  const Eigen::Index dim = a.rows();
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) out[k++] = a(i, i).imag();
  for (Eigen::Index j = 1; j < dim; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      out[k++] = kSqrt2 * a(i, j).real();
      out[k++] = kSqrt2 * a(i, j).imag();
    }
  }
}

Matrix unpack_skew(const double* in, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix a(d, d);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < d; ++i) a(i, i) = Complex{0.0, in[k++]};
  for (Eigen::Index j = 1; j < d; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const Complex v{in[k] / kSqrt2, in[k + 1] / kSqrt2};
      k += 2;
      a(i, j) = v;
      a(j, i) = -std::conj(v);
    }
  }
  return a;
}

std::vector<std::vector<std::uint32_t>> inverse_index_maps(
    int n, const std::vector<std::vector<int>>& perms) {
  const std::size_t dim = dimension(n);
  std::vector<std::vector<std::uint32_t>> maps;
  maps.reserve(perms.size());
  for (const auto& perm : perms) {
    if (static_cast<int>(perm.size()) != n) throw DomainError("permutation has the wrong length");
    std::vector<std::uint32_t> inv(dim);
    for (std::uint32_t x = 0; x < dim; ++x) inv[permute_index(x, n, perm)] = x;
    maps.push_back(std::move(inv));
  }
  return maps;
}

namespace serial {

RealMatrix pairing_sum(int n, int l, double shift) {
  check_qubit_count(n);
  const auto terms = pairing_terms(n, l, shift);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  RealMatrix out = RealMatrix::Zero(dim, dim);
  for (const auto& t : terms) {
    for (std::uint32_t x = 0; x < dim; ++x) out(apply_swaps(x, t.swaps), x) += t.coeff;
  }
  return out;
}

RealMatrix commutator_batch(const std::vector<Matrix>& lhs,
                            const std::vector<SparseMatrix>& rhs,
                            const std::vector<std::pair<int, int>>& pairs) {
  check_pairs(lhs, rhs, pairs);
  if (pairs.empty()) return RealMatrix(0, 0);
  const Eigen::Index dim = lhs[pairs[0].first].rows();
  RealMatrix out(dim * dim, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    commutator_column(lhs[pairs[p].first], rhs[pairs[p].second], out.col(p).data());
  }
  return out;
}

Matrix permutation_sum(const Matrix& x, int n, const std::vector<std::vector<int>>& perms) {
  check_square(x, n);
  const auto maps = inverse_index_maps(n, perms);
  const auto dim = static_cast<Eigen::Index>(dimension(n));
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& inv : maps) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index r = 0; r < dim; ++r) out(r, c) += x(inv[r], inv[c]);
    }
  }
  return out;
}

std::vector<Matrix> pauli_weight_split(const Matrix& a, int n) {
  check_square(a, n);
  auto out = zero_slices(n);
  for (std::uint32_t x = 0; x < dimension(n); ++x) pauli_row(a, n, x, out);
  return out;
}

}  // namespace serial

namespace parallel {

RealMatrix pairing_sum(int n, int l, double shift) {
  check_qubit_count(n);
  const auto terms = pairing_terms(n, l, shift);
  const auto dim = static_cast<std::int64_t>(dimension(n));
  RealMatrix out = RealMatrix::Zero(dim, dim);
  // Column x is owned by one thread; terms are visited in the serial order.
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < dim; ++x) {
    for (const auto& t : terms) {
      out(apply_swaps(static_cast<std::uint32_t>(x), t.swaps), x) += t.coeff;
    }
  }
  return out;
}

RealMatrix commutator_batch(const std::vector<Matrix>& lhs,
                            const std::vector<SparseMatrix>& rhs,
                            const std::vector<std::pair<int, int>>& pairs) {
  check_pairs(lhs, rhs, pairs);
  if (pairs.empty()) return RealMatrix(0, 0);
  const Eigen::Index dim = lhs[pairs[0].first].rows();
  RealMatrix out(dim * dim, static_cast<Eigen::Index>(pairs.size()));
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t p = 0; p < count; ++p) {
    commutator_column(lhs[pairs[p].first], rhs[pairs[p].second], out.col(p).data());
  }
  return out;
}

Matrix permutation_sum(const Matrix& x, int n, const std::vector<std::vector<int>>& perms) {
  check_square(x, n);
  const auto maps = inverse_index_maps(n, perms);
  const auto dim = static_cast<std::int64_t>(dimension(n));
  Matrix out = Matrix::Zero(dim, dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < dim; ++c) {
    for (const auto& inv : maps) {
      const auto src = static_cast<Eigen::Index>(inv[c]);
      for (std::int64_t r = 0; r < dim; ++r) out(r, c) += x(inv[r], src);
    }
  }
  return out;
}

std::vector<Matrix> pauli_weight_split(const Matrix& a, int n) {
  check_square(a, n);
  auto out = zero_slices(n);
  const auto dim = static_cast<std::int64_t>(dimension(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < dim; ++x) pauli_row(a, n, static_cast<std::uint32_t>(x), out);
  return out;
}

}  // namespace parallel

}  // namespace rotinv::kernels
