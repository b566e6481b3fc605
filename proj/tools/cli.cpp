#include "rotinv/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotinv/ancilla.hpp"
#include "rotinv/cl_basis.hpp"
#include "rotinv/constraints.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/lie_closure.hpp"
#include "rotinv/phases.hpp"
#include "rotinv/random.hpp"
#include "rotinv/sectors.hpp"

namespace rotinv::cli {

using nlohmann::json;

namespace {

struct Globals {
  double tol = 1e-8;
  int max_n = 16;
  bool json = false;
  std::uint64_t seed = 1;
  bool timing = false;
};

struct Outcome {
  json inputs;
  json tolerances = json::object();
  json result;
  std::string text;
  int code = kExitOk;
};

std::string fmt(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

json int_json(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ResourceError("integer " + v.str() + " does not fit a 64-bit JSON integer; lower n");
  }
  return to_int64(v);
}

std::string j_label(int twice_j) {
  return twice_j % 2 == 0 ? std::to_string(twice_j / 2) : std::to_string(twice_j) + "/2";
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_n(int n, const Globals& g) {
  if (n < 1) throw DomainError("n must be positive");
  if (n > g.max_n) {
    throw ResourceError("n = " + std::to_string(n) + " exceeds --max-n " + std::to_string(g.max_n));
  }
}

// Right-aligned table with a header row.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      os << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << "\n";
  }
  return os.str();
}

json charges_json(const ChargeVector& cv) {
  json out = json::array();
  for (const auto& [tj, v] : cv.values) out.push_back({{"twice_j", tj}, {"value", v}});
  return out;
}

json l_map_json(const std::map<int, double>& m, const char* key) {
  json out = json::array();
  for (const auto& [l, v] : m) out.push_back({{"l", l}, {key, v}});
  return out;
}

// ---- sectors ----

Outcome cmd_sectors(int n, const Globals& g) {
  check_n(n, g);
  const SectorTable table = sector_table(n);
  Outcome o;
  o.inputs = {{"n", n}};
  json sectors = json::array();
  std::vector<std::vector<std::string>> rows = {{"j", "mult", "trace"}};
  for (const auto& e : table.entries) {
    sectors.push_back({{"twice_j", e.twice_j}, {"mult", int_json(e.multiplicity)}, {"trace", int_json(e.trace)}});
    rows.push_back({j_label(e.twice_j), e.multiplicity.str(), e.trace.str()});
  }
  o.result = {{"n", n}, {"sectors", sectors}};
  o.text = "n = " + std::to_string(n) + "\n" + render_table(rows);
  return o;
}

// ---- cltable ----

std::string cl_grid(const ClTable& t) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {""};
  for (int tj : t.twice_js) head.push_back("j=" + j_label(tj));
  rows.push_back(head);
  for (int l : t.ls) {
    std::vector<std::string> row = {"l=" + std::to_string(l)};
    for (int tj : t.twice_js) row.push_back(t.at(l, tj).str());
    rows.push_back(row);
  }
  return render_table(rows);
}

std::string poly_text(const std::vector<Integer>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t p = coeffs.size(); p-- > 0;) {
    const Integer& c = coeffs[p];
    if (c == 0) continue;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (p == 0 || mag != 1) os << mag;
    if (p >= 1) os << "a";
    if (p >= 2) os << "^" << p;
  }
  if (first) os << "0";
  return os.str();
}

Outcome cmd_cltable(int n, bool polynomials, const Globals& g) {
  check_n(n, g);
  const ClTable t = cl_table(n);
  Outcome o;
  o.inputs = {{"n", n}};
  json values = json::array(), norms = json::array(), polys = json::array();
  for (int l : t.ls) {
    json row = json::array();
    for (int tj : t.twice_js) row.push_back(int_json(t.at(l, tj)));
    values.push_back(row);
    norms.push_back(int_json(t.norms.at(l)));
    json p = json::array();
    for (const auto& c : t.polynomials.at(l)) p.push_back(int_json(c));
    polys.push_back(p);
  }
  o.result = {{"n", n},          {"ls", t.ls},       {"twice_js", t.twice_js},
              {"values", values}, {"norms", norms}, {"polynomials", polys}};
  o.text = cl_grid(t);
  if (polynomials) {
    o.text += "\n2^{l/2} (l/2)! c_l in a = j(j+1):\n";
    for (int l : t.ls) o.text += "l=" + std::to_string(l) + ": " + poly_text(t.polynomials.at(l)) + "\n";
  }
  return o;
}

// ---- check ----

Outcome cmd_check(const std::string& path, int k, const Globals& g) {
  const std::string text = read_input(path);
  const HamiltonianSpec spec = spec_from_string(text);
  check_n(spec.n, g);
  const Operator h = build(spec);
  const double tol = g.tol * h.frobenius_norm();
  const RealizabilityReport rep = check_realizable(h, k, tol);
  Outcome o;
  o.inputs = {{"k", k}, {"input", json::parse(text)}};
  o.tolerances = {{"relative", g.tol}, {"absolute", tol}};
  json obs = json::array();
  for (const auto& [l, v] : rep.obstructions) {
    json coeffs = json::array();
    for (const auto& [tj, c] : rep.constraint_coefficients.at(l)) {
      coeffs.push_back({{"twice_j", tj}, {"c", int_json(c)}});
    }
    obs.push_back({{"l", l}, {"value", v}, {"coefficients", coeffs}});
  }
  o.result = {{"n", rep.n},
              {"k", rep.k},
              {"charges", charges_json(rep.charges)},
              {"obstructions", obs},
              {"q", l_map_json(rep.q, "value")},
              {"h0_norm", rep.h0_norm},
              {"verdict", rep.verdict},
              {"indeterminate", rep.indeterminate}};
  o.text = rep.summary();
  o.code = rep.verdict ? kExitOk : kExitFalse;
  return o;
}

// ---- dim ----

Outcome cmd_dim(int n, int k, bool verify, const Globals& g) {
  check_n(n, g);
  const std::int64_t formula = dimension_formula(n, k);
  Outcome o;
  o.inputs = {{"n", n}, {"k", k}, {"verify_closure", verify}};
  o.result = {{"n", n}, {"k", k}, {"formula", formula}};
  std::ostringstream os;
  os << "n = " << n << ", k = " << k << "\nformula dimension: " << formula << "\n";
  if (verify) {
    if (k > n) throw DomainError("closure needs k <= n");
    ClosureOptions opts;
    o.tolerances = {{"rank", opts.tol}};
    const auto gens = symmetric_local_generators(n, k);
    const LieBasis basis = lie_closure(gens, opts);
    const CenterReport center = center_check(basis, gens, k);
    const bool match = basis.dimension() == formula;
    o.result["computed"] = basis.dimension();
    o.result["rounds"] = basis.rounds();
    o.result["converged"] = basis.converged();
    o.result["generators"] = gens.size();
    o.result["center_dimension"] = center.center_dimension;
    o.result["center_expected"] = center.expected_dimension;
    o.result["match"] = match && center.passed;
    os << "closure dimension: " << basis.dimension() << " (" << gens.size() << " generators, "
       << basis.rounds() << " rounds, " << (basis.converged() ? "converged" : "not converged")
       << ")\n";
    os << "center dimension: " << center.center_dimension << " (expected "
       << center.expected_dimension << ")\n";
    os << (match && center.passed ? "match" : "MISMATCH") << "\n";
    if (!(match && center.passed)) o.code = kExitFalse;
  }
  o.text = os.str();
  return o;
}

// ---- phases ----

Outcome cmd_phases(const std::string& path, std::optional<int> k, const Globals& g) {
  const std::string text = read_input(path);
  const PiecewisePath p = path_from_string(text);
  check_n(p.n, g);
  const PhaseVector pv = lbody_phases_from_path(p);
  Outcome o;
  o.inputs = {{"input", json::parse(text)}};
  if (k) o.inputs["k"] = *k;
  json theta = json::array(), phi = json::array();
  std::vector<std::vector<std::string>> trows = {{"j", "theta_j"}}, prows = {{"l", "Phi_l"}};
  for (const auto& [tj, t] : pv.theta) {
    theta.push_back({{"twice_j", tj}, {"theta", t}});
    trows.push_back({j_label(tj), fmt(t)});
  }
  for (const auto& [l, v] : pv.phi) {
    phi.push_back({{"l", l}, {"phi", v}});
    prows.push_back({std::to_string(l), fmt(v)});
  }
  o.result = {{"n", p.n}, {"theta", theta}, {"phi", phi}};
  o.text = render_table(trows) + "\n" + render_table(prows);
  if (k) {
    const double tol = std::max(g.tol, 1e-7);
    o.tolerances = {{"phase", tol}};
    const LocalityCertificate cert = k_locality_certificate(pv, *k, tol);
    json viol = json::array();
    for (const auto& [l, v] : cert.violations) viol.push_back({{"l", l}, {"phi", v}});
    o.result["certificate"] = {{"k", *k}, {"certified", cert.certified}, {"violations", viol}};
    o.text += "\n" + std::to_string(*k) + "-local certificate: " + (cert.certified ? "true" : "false") + "\n";
    if (!cert.certified) o.code = kExitFalse;
  }
  return o;
}

// ---- synthesize ----

Outcome cmd_synthesize(const std::string& path, bool verify, double time, const Globals& g) {
  const std::string text = read_input(path);
  const HamiltonianSpec spec = spec_from_string(text);
  check_n(spec.n, g);
  const Operator h = build(spec);
  SynthesisOptions opts;
  opts.time = time;
  opts.verify_closure = verify;
  const SynthesisResult r = synthesize(h, opts);
  const double scale = std::max(1.0, h.frobenius_norm());
  const double tol = g.tol * scale;

  Outcome o;
  o.inputs = {{"input", json::parse(text)}, {"verify_closure", verify}, {"time", time}};
  o.tolerances = {{"relative", g.tol}, {"absolute", tol}};
  o.result = {{"n", r.n},
              {"q", l_map_json(r.q, "value")},
              {"block_residual", r.block_residual},
              {"dynamical_residual", r.dynamical_residual},
              {"charges", charges_json(r.charges)},
              {"max_obstruction", r.max_obstruction}};
  std::ostringstream os;
  os << "n = " << r.n << " system qubits, ancillas a = " << r.n + 1 << ", b = " << r.n + 2 << "\n";
  os << "block residual: " << fmt(r.block_residual) << "\n";
  os << "dynamical residual (t = " << fmt(time) << "): " << fmt(r.dynamical_residual) << "\n";
  os << "max |Tr(H~ C_l)|, l >= 4: " << fmt(r.max_obstruction) << "\n";
  bool ok = r.block_residual < tol && r.dynamical_residual < tol && r.max_obstruction < tol;
  if (r.membership_residual) {
    o.result["membership_residual"] = *r.membership_residual;
    os << "closure membership residual: " << fmt(*r.membership_residual) << "\n";
    ok = ok && *r.membership_residual < 1e-7;
  }

  // Commutator programs exist for sums of disjoint-pair monomials.
  std::vector<std::pair<std::size_t, CommutatorProgram>> programs;
  bool expressible = true;
  for (std::size_t t = 0; t < spec.terms.size() && expressible; ++t) {
    const Monomial& m = spec.terms[t];
    if (m.pairs.empty() || m.coeff == 0.0) continue;  // global phase
    auto prog = monomial_program(spec.n, m);
    if (!prog) {
      expressible = false;
    } else {
      programs.emplace_back(t, std::move(*prog));
    }
  }
  if (expressible) {
    json progs = json::array();
    for (const auto& [t, prog] : programs) {
      const Operator lifted = evaluate(prog);
      const Operator target = monomial_operator(spec.n, spec.terms[t]);
      double res = 0.0;
      const auto dim = static_cast<Eigen::Index>(target.dim());
      for (Eigen::Index x = 0; x < dim; ++x) {
        Eigen::VectorXcd d = lifted.matrix().col(4 * x);
        for (Eigen::Index y = 0; y < dim; ++y) d(4 * y) -= target.matrix()(y, x);
        res = std::max(res, d.norm());
      }
      ok = ok && res < tol;
      const std::string s = to_string(prog);
      progs.push_back({{"term", t}, {"program", s}, {"block_residual", res}});
      os << "term " << t << " (" << prog.terms.size() << " nested commutators, block residual "
         << fmt(res) << "):\n  " << s << "\n";
    }
    o.result["programs"] = progs;
  } else {
    o.result["programs"] = nullptr;
    os << "no commutator program: Hamiltonian has overlapping exchange products\n";
  }
  os << (ok ? "verified" : "FAILED") << "\n";
  o.result["verified"] = ok;
  o.text = os.str();
  o.code = ok ? kExitOk : kExitFalse;
  return o;
}

// ---- verify ----

struct SuiteResult {
  bool passed = true;
  json checks = json::array();

  void add(const std::string& name, bool ok, json detail = nullptr) {
    passed = passed && ok;
    json c = {{"name", name}, {"passed", ok}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    checks.push_back(std::move(c));
  }
};

SuiteResult suite_table1() {
  // c_l(j) at n = 10, rows l = 0..10, columns j = 0..5.
  static const std::int64_t kReference[6][6] = {
      {1, 1, 1, 1, 1, 1},
      {-15, -11, -3, 9, 25, 45},
      {150, 70, -42, -90, 70, 630},
      {-1050, -210, 462, -90, -1050, 3150},
      {4725, -315, -1323, 2565, -3675, 4725},
      {-10395, 3465, -2079, 1485, -1155, 945},
  };
  SuiteResult s;
  const ClTable closed = cl_table(10);
  const ClTable rec = cl_table_recursive(10);
  bool closed_ok = true, rec_ok = true;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      closed_ok = closed_ok && closed.at(2 * a, 2 * b) == kReference[a][b];
      rec_ok = rec_ok && rec.at(2 * a, 2 * b) == kReference[a][b];
    }
  }
  s.add("closed form n=10", closed_ok);
  s.add("recursion n=10", rec_ok);
  return s;
}

SuiteResult suite_orthogonality(const Globals& g) {
  SuiteResult s;
  for (int n = 2; n <= std::min(6, g.max_n); ++n) {
    const ClTable t = cl_table(n);
    std::vector<Operator> cs;
    for (int l : t.ls) cs.push_back(cl_operator(n, l));
    double cross = 0.0, norm_err = 0.0;
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = 0; b < cs.size(); ++b) {
        const double v = std::abs(hs_inner(cs[a], cs[b]));
        if (a == b) {
          const double want = t.norms.at(t.ls[a]).convert_to<double>();
          norm_err = std::max(norm_err, std::abs(v - want) / want);
        } else {
          cross = std::max(cross, v);
        }
      }
    }
    bool weights = true;
    for (std::size_t a = 0; a < cs.size(); ++a) {
      const auto comps = pauli_weight_components(cs[a]);
      weights = weights && comps.size() == 1 && comps.begin()->first == t.ls[a];
    }
    Operator sum = Operator::zero(n);
    double proj_err = 0.0;
    for (int tj : sector_labels(n)) {
      const Operator p = sector_projector(n, tj);
      sum += p;
      proj_err = std::max(proj_err, (p * p - p).max_abs());
    }
    proj_err = std::max(proj_err, (sum - Operator::identity(n)).max_abs());
    const std::string tag = "n=" + std::to_string(n);
    s.add(tag + " Tr(C_l C_l') = 0", cross < 1e-9, cross);
    s.add(tag + " Tr(C_l^2)", norm_err < 1e-12, norm_err);
    s.add(tag + " C_l has pure Pauli weight l", weights);
    s.add(tag + " projectors", proj_err < 1e-10, proj_err);
  }
  return s;
}

SuiteResult suite_dimensions(const Globals& g) {
  SuiteResult s;
  for (int n = 2; n <= std::min(5, g.max_n); ++n) {
    for (int k = 2; k <= n; ++k) {
      const auto gens = symmetric_local_generators(n, k);
      const LieBasis basis = lie_closure(gens);
      const CenterReport center = center_check(basis, gens, k);
      const std::int64_t formula = dimension_formula(n, k);
      const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      s.add(tag + " dimension", basis.dimension() == formula,
            {{"computed", basis.dimension()}, {"formula", formula}});
      s.add(tag + " center", center.passed,
            {{"computed", center.center_dimension}, {"expected", center.expected_dimension}});
    }
  }
  return s;
}

SuiteResult suite_commutator() {
  SuiteResult s;
  for (int l : {4, 6}) {
    const CommutatorProgram p = nested_commutator_program(l);
    const int q = l + 2;
    Monomial lead{4.0, {}}, tail{-4.0, {{q - 2, q - 1}}};
    for (int r = 0; r < l; r += 2) lead.pairs.emplace_back(r, r + 1);
    for (int r = 2; r < l; r += 2) tail.pairs.emplace_back(r, r + 1);
    const Operator want = monomial_operator(q, lead) + monomial_operator(q, tail);
    const double res = (evaluate(p) - want).max_abs();
    s.add("l=" + std::to_string(l) + " identity", res < 1e-12, res);
  }
  return s;
}

SuiteResult suite_ancilla(const Globals& g) {
  SuiteResult s;
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
    const Operator h = build(random_symmetric_spec(4, 6, 3, seed));
    SynthesisOptions opts;
    opts.verify_closure = i == 0;
    const SynthesisResult r = synthesize(h, opts);
    const std::string tag = "seed " + std::to_string(seed);
    s.add(tag + " block action", r.block_residual < 1e-9, r.block_residual);
    s.add(tag + " dynamics", r.dynamical_residual < 1e-8, r.dynamical_residual);
    s.add(tag + " l>=4 obstructions", r.max_obstruction < 1e-9 * std::max(1.0, h.frobenius_norm()),
          r.max_obstruction);
    if (r.membership_residual) {
      s.add(tag + " closure membership", *r.membership_residual < 1e-7, *r.membership_residual);
    }
  }
  const Monomial m{1.0, {{0, 1}, {2, 3}}};
  const Operator lifted = evaluate(*monomial_program(4, m));
  const Operator target = monomial_operator(4, m);
  double res = 0.0;
  for (Eigen::Index x = 0; x < 16; ++x) {
    Eigen::VectorXcd d = lifted.matrix().col(4 * x);
    for (Eigen::Index y = 0; y < 16; ++y) d(4 * y) -= target.matrix()(y, x);
    res = std::max(res, d.norm());
  }
  s.add("R12 R34 program block action", res < 1e-12, res);
  return s;
}

Outcome cmd_verify(const std::string& suite, const Globals& g) {
  static const std::vector<std::string> kSuites = {"table1", "orthogonality", "dimensions",
                                                   "commutator", "ancilla"};
  std::vector<std::string> run;
  if (suite == "all") {
    run = kSuites;
  } else {
    run = {suite};
  }
  Outcome o;
  o.inputs = {{"suite", suite}, {"seed", g.seed}};
  json suites = json::array();
  std::ostringstream os;
  bool all = true;
  for (const auto& name : run) {
    SuiteResult r;
    if (name == "table1") r = suite_table1();
    else if (name == "orthogonality") r = suite_orthogonality(g);
    else if (name == "dimensions") r = suite_dimensions(g);
    else if (name == "commutator") r = suite_commutator();
    else r = suite_ancilla(g);
    all = all && r.passed;
    suites.push_back({{"suite", name}, {"passed", r.passed}, {"checks", r.checks}});
    os << name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks)\n";
    for (const auto& c : r.checks) {
      if (!c["passed"].get<bool>()) os << "  failed: " << c["name"].get<std::string>() << "\n";
    }
  }
  o.result = {{"suites", suites}, {"passed", all}};
  o.text = os.str();
  o.code = all ? kExitOk : kExitFalse;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotationally invariant qubit circuits: sectors, C_l basis, realizability, "
               "Lie closures, l-body phases and two-ancilla synthesis.\n"
               "Global flags can also be set through ROTINV_TOL, ROTINV_MAX_N, ROTINV_JSON, "
               "ROTINV_SEED and ROTINV_TIMING."};
  app.name("rotinv");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Relative tolerance")->envname("ROTINV_TOL")->check(CLI::PositiveNumber);
  app.add_option("--max-n", g.max_n, "Largest accepted qubit count")->envname("ROTINV_MAX_N")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Emit a JSON report")->envname("ROTINV_JSON");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->envname("ROTINV_SEED");
  app.add_flag("--timing", g.timing, "Report wall-clock duration")->envname("ROTINV_TIMING");

  int n = 0, k = 0;
  std::optional<int> phase_k;
  std::string input, suite = "all";
  bool verify_closure = false, polynomials = false;
  double time = 0.37;

  auto* sectors = app.add_subcommand("sectors", "Angular momentum sectors and multiplicities")->fallthrough();
  sectors->add_option("--n", n, "Qubit count")->required();

  auto* cltable = app.add_subcommand("cltable", "Eigenvalues c_l(j) of the C_l operators")->fallthrough();
  cltable->add_option("--n", n, "Qubit count")->required();
  cltable->add_flag("--polynomials", polynomials, "Also print the polynomials in j(j+1)");

  auto* check = app.add_subcommand("check", "Realizability by k-local symmetric Hamiltonians")->fallthrough();
  check->add_option("--input", input, "Hamiltonian JSON file, '-' for stdin")->required();
  check->add_option("--k", k, "Locality")->required();

  auto* dim = app.add_subcommand("dim", "Dimension of the k-local symmetric Lie algebra")->fallthrough();
  dim->add_option("--n", n, "Qubit count")->required();
  dim->add_option("--k", k, "Locality")->required();
  dim->add_flag("--verify-closure", verify_closure, "Compute the closure and its center");

  auto* phases = app.add_subcommand("phases", "Sector and l-body phases of a piecewise path")->fallthrough();
  phases->add_option("--input", input, "Path JSON file, '-' for stdin")->required();
  phases->add_option("--k", phase_k, "Certify k-locality");

  auto* synth = app.add_subcommand("synthesize", "Two-ancilla lift of a symmetric Hamiltonian")->fallthrough();
  synth->add_option("--input", input, "Hamiltonian JSON file, '-' for stdin")->required();
  synth->add_flag("--verify-closure", verify_closure, "Check membership in the exchange closure");
  synth->add_option("--time", time, "Evolution time for the dynamical check");

  auto* verify = app.add_subcommand("verify", "Built-in identity suites")->fallthrough();
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"table1", "orthogonality", "dimensions", "commutator", "ancilla", "all"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string command;
  try {
    if (*sectors) {
      command = "sectors";
      o = cmd_sectors(n, g);
    } else if (*cltable) {
      command = "cltable";
      o = cmd_cltable(n, polynomials, g);
    } else if (*check) {
      command = "check";
      o = cmd_check(input, k, g);
    } else if (*dim) {
      command = "dim";
      o = cmd_dim(n, k, verify_closure, g);
    } else if (*phases) {
      command = "phases";
      o = cmd_phases(input, phase_k, g);
    } else if (*synth) {
      command = "synthesize";
      o = cmd_synthesize(input, verify_closure, time, g);
    } else {
      command = "verify";
      o = cmd_verify(suite, g);
    }
  } catch (const ParseError& e) {
    err << "rotinv " << command << ": input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "rotinv " << command << ": input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalError& e) {
    err << "rotinv " << command << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::logic_error& e) {
    // DomainError, PreconditionError and ResourceError all derive from logic_error.
    err << "rotinv " << command << ": " << e.what() << "\n";
    return kExitInput;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (g.json) {
    json report;
    report["command"] = command;
    report["inputs_digest"] = sha256_hex(json{{"command", command}, {"inputs", o.inputs}}.dump());
    o.tolerances["tol"] = g.tol;
    report["tolerances"] = o.tolerances;
    report["result"] = o.result;
    if (g.timing) report["duration_s"] = seconds;
    out << report.dump(2) << "\n";
  } else {
    out << o.text;
    if (g.timing) out << "time: " << fmt(seconds) << " s\n";
  }
  return o.code;
}

}  // namespace rotinv::cli
