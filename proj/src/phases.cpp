#include "rotinv/phases.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rotinv/cl_basis.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unitary(const Operator& v) {
  const auto dim = static_cast<Eigen::Index>(v.dim());
  const double defect =
      (v.matrix().adjoint() * v.matrix() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(defect < 1e-8)) {
    throw PreconditionError("operator is not unitary: ||V^dagger V - I||_max = " +
                            std::to_string(defect));
  }
}

}  // namespace

double wrap_angle(double x) {
  double y = std::remainder(x, kTwoPi);  // in [-pi, pi]
  if (y <= -kPi) y += kTwoPi;
  return y;
}

double circle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

Operator PiecewisePath::unitary() const {
  Operator v = Operator::identity(n);
  for (const auto& seg : segments) v = evolve(build(seg.hamiltonian), seg.duration) * v;
  return v;
}

PiecewisePath path_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("path must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("path needs an integer field \"n\"");
  }
  if (!j.contains("segments") || !j["segments"].is_array()) {
    throw ParseError("path needs an array field \"segments\"");
  }
  PiecewisePath path;
  path.n = j["n"].get<int>();
  if (path.n < 1) throw ParseError("\"n\" must be positive");
  const auto& segs = j["segments"];
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string where = "segment " + std::to_string(i);
    const auto& js = segs[i];
    if (!js.is_object()) throw ParseError(where + ": expected an object");
    if (!js.contains("duration") || !js["duration"].is_number()) {
      throw ParseError(where + ": missing numeric \"duration\"");
    }
    PathSegment seg;
    seg.duration = js["duration"].get<double>();
    if (!(seg.duration > 0.0)) throw ParseError(where + ": duration must be positive");
    json spec = {{"n", path.n}, {"terms", js.value("terms", json::array())}};
    try {
      seg.hamiltonian = spec_from_json(spec);
    } catch (const ParseError& e) {
      throw ParseError(where + ", " + e.what());
    }
    path.segments.push_back(std::move(seg));
  }
  return path;
}

PiecewisePath path_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return path_from_json(j);
}

json path_to_json(const PiecewisePath& path) {
  json segs = json::array();
  for (const auto& seg : path.segments) {
    segs.push_back({{"duration", seg.duration},
                    {"terms", spec_to_json(seg.hamiltonian)["terms"]}});
  }
  return {{"n", path.n}, {"segments", segs}};
}

std::map<int, double> sector_phases(const Operator& v) {
  require_unitary(v);
  require_symmetric(v, "unitary");
  std::map<int, double> theta;
  for (int tj : sector_labels(v.n())) {
    const Matrix b = sector_basis(v.n(), tj);
    const Matrix block = b.adjoint() * v.matrix() * b;
    Eigen::ComplexEigenSolver<Matrix> es(block, false);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) sum += std::arg(es.eigenvalues()(i));
    theta[tj] = wrap_angle(sum);
  }
  return theta;
}

std::map<int, double> lbody_from_sector_phases(int n, const std::map<int, double>& theta) {
  const ClTable table = cl_table(n);
  std::map<int, double> phi;
  for (int l : table.ls) {
    double s = 0.0;
    for (const auto& [tj, t] : theta) s += table.at(l, tj).convert_to<double>() * t;
    phi[l] = wrap_angle(s);
  }
  return phi;
}

PhaseVector lbody_phases(const Operator& v) {
  PhaseVector pv;
  pv.n = v.n();
  pv.theta = sector_phases(v);
  pv.phi = lbody_from_sector_phases(v.n(), pv.theta);
  return pv;
}

PhaseVector lbody_phases_from_path(const PiecewisePath& path) {
  check_qubit_count(path.n);
  const ClTable table = cl_table(path.n);
  PhaseVector pv;
  pv.n = path.n;
  for (int tj : table.twice_js) pv.theta[tj] = 0.0;
  for (int l : table.ls) pv.phi[l] = 0.0;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    if (seg.duration < 0.0) throw DomainError("segment " + std::to_string(i) + " has negative duration");
    if (seg.hamiltonian.n != path.n) {
      throw DomainError("segment " + std::to_string(i) + " acts on the wrong qubit count");
    }
    const Operator h = build(seg.hamiltonian);
    require_symmetric(h, "segment " + std::to_string(i) + " Hamiltonian");
    const ChargeVector cv = charge_vector(h);
    for (const auto& [tj, charge] : cv.values) pv.theta[tj] -= seg.duration * charge;
    for (int l : table.ls) {
      double s = 0.0;
      for (const auto& [tj, charge] : cv.values) s += table.at(l, tj).convert_to<double>() * charge;
      pv.phi[l] -= seg.duration * s;
    }
  }
  for (auto& [tj, t] : pv.theta) t = wrap_angle(t);
  for (auto& [l, p] : pv.phi) p = wrap_angle(p);
  return pv;
}

std::map<int, double> compose_phases(const std::map<int, double>& phi_a, int n_a,
                                     const std::map<int, double>& phi_b, int n_b) {
  if (n_a < 1 || n_b < 1) throw DomainError("subsystems need at least one qubit");
  std::map<int, double> out;
  auto get = [](const std::map<int, double>& m, int l) {
    auto it = m.find(l);
    return it == m.end() ? 0.0 : it->second;
  };
  for (int l = 0; l <= max_l(n_a + n_b); l += 2) {
    out[l] = wrap_angle(std::ldexp(get(phi_a, l), n_b) + std::ldexp(get(phi_b, l), n_a));
  }
  return out;
}

LocalityCertificate k_locality_certificate(const PhaseVector& phases, int k, double tol) {
  if (k < 0) throw DomainError("locality k must be non-negative");
  LocalityCertificate cert;
  for (const auto& [l, p] : phases.phi) {
    if (l > k && circle_distance(p, 0.0) > tol) cert.violations.emplace_back(l, p);
  }
  cert.certified = cert.violations.empty();
  return cert;
}

LocalityCertificate k_locality_certificate(const Operator& v, int k, double tol) {
  return k_locality_certificate(lbody_phases(v), k, tol);
}

std::optional<RecoveredPhases> recover_sector_phases(const PhaseVector& phases, int bound,
                                                     double tol) {
  if (bound < 0) throw DomainError("winding bound must be non-negative");
  const int n = phases.n;
  const ClTable table = cl_table(n);
  const auto& ls = table.ls;
  const auto& tjs = table.twice_js;
  // weight[l][j] = Tr(D_l Pi_j) = c_l(j) Tr(Pi_j) / Tr(C_l^2), with D_0 = I / 2^n
  std::vector<std::vector<double>> weight(ls.size(), std::vector<double>(tjs.size()));
  std::vector<double> base(tjs.size(), 0.0);
  for (std::size_t a = 0; a < ls.size(); ++a) {
    for (std::size_t b = 0; b < tjs.size(); ++b) {
      const Rational w(table.at(ls[a], tjs[b]) * multiplicity(n, tjs[b]) * (tjs[b] + 1),
                       table.norms.at(ls[a]));
      weight[a][b] = to_double(w);
      base[b] += weight[a][b] * phases.phi.at(ls[a]);
    }
  }
  std::vector<int> r(ls.size(), -bound);
  while (true) {
    bool ok = true;
    std::vector<double> theta(tjs.size());
    for (std::size_t b = 0; b < tjs.size() && ok; ++b) {
      double v = base[b];
      for (std::size_t a = 0; a < ls.size(); ++a) v += kTwoPi * r[a] * weight[a][b];
      theta[b] = wrap_angle(v);
      ok = circle_distance(theta[b], phases.theta.at(tjs[b])) < tol;
    }
    if (ok) {
      RecoveredPhases out;
      for (std::size_t a = 0; a < ls.size(); ++a) out.windings[ls[a]] = r[a];
      for (std::size_t b = 0; b < tjs.size(); ++b) out.theta[tjs[b]] = theta[b];
      return out;
    }
    std::size_t pos = 0;
    while (pos < r.size() && r[pos] == bound) r[pos++] = -bound;
    if (pos == r.size()) break;
    ++r[pos];
  }
  return std::nullopt;
}

}  // namespace rotinv
