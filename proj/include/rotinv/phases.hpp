#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rotinv/hamiltonian_spec.hpp"
#include "rotinv/operator.hpp"

namespace rotinv {

/// Reduces an angle to (-pi, pi].
double wrap_angle(double x);

/// |wrap(a - b)|.
double circle_distance(double a, double b);

struct PhaseVector {
  int n = 0;
  std::map<int, double> theta;  // twice_j -> arg det V_j
  std::map<int, double> phi;    // l -> l-body phase
};

struct PathSegment {
  double duration = 0.0;
  HamiltonianSpec hamiltonian;
};

struct PiecewisePath {
  int n = 0;
  std::vector<PathSegment> segments;

  /// Unitary exp(-i t_k H_k) ... exp(-i t_1 H_1).
  Operator unitary() const;
};

/// {"n": N, "segments": [{"duration": t, "terms": [...]}, ...]}, 1-based.
PiecewisePath path_from_json(const nlohmann::json& j);
PiecewisePath path_from_string(const std::string& text);
nlohmann::json path_to_json(const PiecewisePath& path);

/// Sector phases arg det V_j as summed principal eigenvalue arguments.
std::map<int, double> sector_phases(const Operator& v);

/// Phi_l = sum_j c_l(j) theta_j from a phase map.
std::map<int, double> lbody_from_sector_phases(int n, const std::map<int, double>& theta);

PhaseVector lbody_phases(const Operator& v);

/// Phi_l = -sum_k t_k Tr(H_k C_l) and theta_j = -sum_k t_k Tr(H_k Pi_j).
PhaseVector lbody_phases_from_path(const PiecewisePath& path);

/// Phi^{AB}_l = 2^{nB} Phi^A_l + 2^{nA} Phi^B_l (mod 2 pi); missing l count as zero.
std::map<int, double> compose_phases(const std::map<int, double>& phi_a, int n_a,
                                     const std::map<int, double>& phi_b, int n_b);

struct LocalityCertificate {
  bool certified = false;
  std::vector<std::pair<int, double>> violations;  // (l, Phi_l) with l > k
};

LocalityCertificate k_locality_certificate(const Operator& v, int k, double tol = 1e-7);
LocalityCertificate k_locality_certificate(const PhaseVector& phases, int k, double tol = 1e-7);

struct RecoveredPhases {
  std::map<int, int> windings;      // l -> r_l
  std::map<int, double> theta;      // reconstructed theta_j, wrapped
};

/// Searches integers r_l in [-bound, bound] such that
/// theta_j = sum_l Tr(D_l Pi_j)(Phi_l + 2 pi r_l) (mod 2 pi) for every j,
/// within tol.  Returns nullopt when no such choice exists.
std::optional<RecoveredPhases> recover_sector_phases(const PhaseVector& phases, int bound = 4,
                                                     double tol = 1e-7);

}  // namespace rotinv
