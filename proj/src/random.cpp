#include "rotinv/random.hpp"

#include <algorithm>
#include <random>

#include "rotinv/errors.hpp"

namespace rotinv {

HamiltonianSpec random_symmetric_spec(int n, int terms, int max_degree, std::uint64_t seed) {
  check_qubit_count(n);
  if (n < 2) throw DomainError("random symmetric Hamiltonians need n >= 2");
  if (terms < 1 || max_degree < 1) throw DomainError("terms and max_degree must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> degree(1, max_degree);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  HamiltonianSpec spec{n, {}};
  for (int t = 0; t < terms; ++t) {
    Monomial m{0.5 * normal(rng), {}};
    const int d = degree(rng);
    for (int i = 0; i < d; ++i) {
      int r = qubit(rng), s = qubit(rng);
      while (s == r) s = qubit(rng);
      m.pairs.emplace_back(std::min(r, s), std::max(r, s));
    }
    Monomial rev{m.coeff, {m.pairs.rbegin(), m.pairs.rend()}};
    spec.terms.push_back(std::move(m));
    spec.terms.push_back(std::move(rev));
  }
  return spec;
}

HamiltonianSpec random_exchange_spec(int n, std::uint64_t seed) {
  check_qubit_count(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  HamiltonianSpec spec{n, {}};
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) spec.terms.push_back({normal(rng), {{r, s}}});
  }
  return spec;
}

Operator random_symmetric_unitary(int n, std::uint64_t seed) {
  return evolve(build(random_symmetric_spec(n, 8, std::max(1, n - 1), seed)), 1.0);
}

}  // namespace rotinv
