#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "rotinv/cl_basis.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/phases.hpp"
#include "rotinv/random.hpp"

using namespace rotinv;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_phases_equal(const std::map<int, double>& a, const std::map<int, double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [l, v] : a) EXPECT_LT(circle_distance(v, b.at(l)), tol) << "l=" << l;
}

}  // namespace

TEST(Phases, WrapAngle) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_angle(2 * kPi + 0.1), 0.1, 1e-12);
  EXPECT_NEAR(circle_distance(kPi - 1e-3, -kPi + 1e-3), 2e-3, 1e-12);
}

TEST(Phases, TwoQubitExchange) {
  // Oracle: exp(-0.3 i R_12) has theta_0 = 0.45 and theta_1 = -0.45.
  const auto theta = sector_phases(evolve(exchange_op(2, 0, 1), 0.3));
  EXPECT_NEAR(theta.at(0), 0.45, 1e-12);
  EXPECT_NEAR(theta.at(2), -0.45, 1e-12);
}

TEST(Phases, PathIndependence) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dur(0.1, 1.5);
  for (std::uint64_t i = 0; i < 20; ++i) {
    PiecewisePath a{4, {}};
    a.segments.push_back({dur(rng), random_symmetric_spec(4, 4, 3, 100 + i)});
    a.segments.push_back({dur(rng), random_symmetric_spec(4, 4, 3, 200 + i)});
    // Same unitary: first segment split in two, second one run at double strength for half the time.
    PiecewisePath b{4, {}};
    b.segments.push_back({a.segments[0].duration * 0.3, a.segments[0].hamiltonian});
    b.segments.push_back({a.segments[0].duration * 0.7, a.segments[0].hamiltonian});
    HamiltonianSpec doubled = a.segments[1].hamiltonian;
    for (auto& t : doubled.terms) t.coeff *= 2.0;
    b.segments.push_back({a.segments[1].duration / 2, doubled});
    ASSERT_LT((a.unitary() - b.unitary()).max_abs(), 1e-10);
    const PhaseVector pa = lbody_phases_from_path(a), pb = lbody_phases_from_path(b);
    expect_phases_equal(pa.phi, pb.phi, 1e-7);
    expect_phases_equal(pa.theta, pb.theta, 1e-7);
    const PhaseVector direct = lbody_phases(a.unitary());
    expect_phases_equal(pa.phi, direct.phi, 1e-7);
    expect_phases_equal(pa.theta, direct.theta, 1e-7);
  }
}

TEST(Phases, HomomorphismAndGlobalPhase) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(i % 3);
    const Operator v1 = random_symmetric_unitary(n, 300 + i);
    const Operator v2 = random_symmetric_unitary(n, 400 + i);
    const PhaseVector p1 = lbody_phases(v1), p2 = lbody_phases(v2), p12 = lbody_phases(v1 * v2);
    for (const auto& [l, v] : p12.phi) EXPECT_LT(circle_distance(v, p1.phi.at(l) + p2.phi.at(l)), 1e-7);
    const double alpha = angle(rng);
    const PhaseVector g = lbody_phases(v1 * std::exp(Complex(0, alpha)));
    for (const auto& [l, v] : g.phi) {
      if (l >= 2) {
        EXPECT_LT(circle_distance(v, p1.phi.at(l)), 1e-7) << "l=" << l;
      } else {
        EXPECT_LT(circle_distance(v, p1.phi.at(0) + std::ldexp(alpha, n)), 1e-7);
      }
    }
  }
}

TEST(Phases, SingleAncillaDoubling) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Operator v = random_symmetric_unitary(3, seed);
    const PhaseVector p = lbody_phases(v);
    const PhaseVector lifted = lbody_phases(kron(v, Operator::identity(1)));
    for (const auto& [l, phi] : p.phi) EXPECT_LT(circle_distance(lifted.phi.at(l), 2 * phi), 1e-7);
    expect_phases_equal(compose_phases(p.phi, 3, {}, 1), lifted.phi, 1e-7);
  }
}

TEST(Phases, ComposeTwoSubsystems) {
  const Operator va = random_symmetric_unitary(3, 21), vb = random_symmetric_unitary(2, 22);
  const auto composed = compose_phases(lbody_phases(va).phi, 3, lbody_phases(vb).phi, 2);
  expect_phases_equal(composed, lbody_phases(kron(va, vb)).phi, 1e-7);
  EXPECT_THROW(compose_phases({}, 0, {}, 1), DomainError);
}

TEST(Phases, LocalityCertificate) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    PiecewisePath p{n, {}};
    p.segments.push_back({0.8, random_exchange_spec(n, seed)});
    p.segments.push_back({1.3, random_exchange_spec(n, seed + 1000)});
    EXPECT_TRUE(k_locality_certificate(p.unitary(), 2).certified) << seed;
  }
  const Operator v = evolve(cl_operator(4, 4), kPi / 1440);
  const PhaseVector pv = lbody_phases(v);
  EXPECT_NEAR(pv.phi.at(4), -kPi / 2, 1e-7);
  const LocalityCertificate cert = k_locality_certificate(pv, 2);
  EXPECT_FALSE(cert.certified);
  ASSERT_EQ(cert.violations.size(), 1u);
  EXPECT_EQ(cert.violations[0].first, 4);
  EXPECT_TRUE(k_locality_certificate(v, 4).certified);
}

TEST(Phases, RecoverSectorPhases) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PhaseVector pv = lbody_phases(random_symmetric_unitary(4, 500 + seed));
    const auto rec = recover_sector_phases(pv);
    ASSERT_TRUE(rec.has_value()) << seed;
    expect_phases_equal(rec->theta, pv.theta, 1e-7);
  }
  // Inconsistent data has no solution.
  PhaseVector bad = lbody_phases(random_symmetric_unitary(4, 1));
  bad.theta[0] += 0.5;
  EXPECT_FALSE(recover_sector_phases(bad, 2).has_value());
}

TEST(Phases, PathJson) {
  const std::string text =
      R"({"n": 3, "segments": [{"duration": 0.5, "terms": [{"coeff": 1.0, "pairs": [[1, 2]]}]}]})";
  const PiecewisePath p = path_from_string(text);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].hamiltonian.terms[0].pairs[0], std::make_pair(0, 1));
  EXPECT_EQ(path_to_json(p), nlohmann::json::parse(text));
  try {
    path_from_string(R"({"n": 3, "segments": [{"duration": 1}, {"duration": -1}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("segment 1"), std::string::npos);
  }
  EXPECT_THROW(path_from_string("{"), ParseError);
  EXPECT_THROW(path_from_string(R"({"n": 3})"), ParseError);
}

TEST(Phases, Preconditions) {
  EXPECT_THROW(sector_phases(exchange_op(2, 0, 1)), PreconditionError);
  EXPECT_THROW(sector_phases(evolve(pauli_op(2, 0, 2), 0.4)), PreconditionError);
  EXPECT_THROW(k_locality_certificate(PhaseVector{}, -1), DomainError);
}
