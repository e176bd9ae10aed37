#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "ctap/hamiltonian.hpp"

using namespace ctap;
using doctest::Approx;

TEST_CASE("three-donor charge Hamiltonian matrix") {
  const double o12 = 1.5, o23 = 2.5, delta = 0.75;
  const ChainSpec spec =
      make_chain(3, {0.0, delta, 0.0}, {o12, o23}, SpinMode::charge_only);
  const std::vector<double> amps{o12, o23};
  const Eigen::MatrixXd h = charge_hamiltonian_real(spec, amps);
  Eigen::MatrixXd expected(3, 3);
  expected << 0.0, -o12, 0.0, -o12, delta, -o23, 0.0, -o23, 0.0;
  CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero couplings leave only the detunings") {
  const ChainSpec spec =
      make_chain(4, {0.5, -1.0, 2.0, 0.0}, {1, 1, 1}, SpinMode::charge_only);
  const std::vector<double> amps{0.0, 0.0, 0.0};
  const Eigen::MatrixXd h = charge_hamiltonian_real(spec, amps);
  CHECK((h - Eigen::Vector4d(0.5, -1.0, 2.0, 0.0).asDiagonal().toDenseMatrix())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("uniform five-site chain spectrum is symmetric with an exact zero") {
  const double omega = 2.0;
  const ChainSpec spec = make_chain(5, std::vector<double>(5, 0.0),
                                    std::vector<double>(4, omega),
                                    SpinMode::charge_only);
  const std::vector<double> amps(4, omega);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      charge_hamiltonian_real(spec, amps));
  const Eigen::VectorXd ev = es.eigenvalues();
  // analytic: -2 omega cos(k pi / 6), k = 1..5
  CHECK(ev[0] == Approx(-std::sqrt(3.0) * omega).epsilon(1e-12));
  CHECK(ev[1] == Approx(-omega).epsilon(1e-12));
  CHECK(std::abs(ev[2]) < 1e-12);
  CHECK(ev[3] == Approx(omega).epsilon(1e-12));
  CHECK(ev[4] == Approx(std::sqrt(3.0) * omega).epsilon(1e-12));
}

TEST_CASE("outputs are Hermitian for random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + 2 * (trial % 3);
    std::vector<double> detunings(static_cast<std::size_t>(n));
    std::vector<double> amps(static_cast<std::size_t>(n - 1));
    for (auto& d : detunings) d = dist(rng);
    for (auto& a : amps) a = std::abs(dist(rng));
    const ChainSpec charge = make_chain(n, detunings, amps, SpinMode::charge_only);
    CHECK(is_hermitian(charge_hamiltonian(charge, amps)));
    const ChainSpec spin = make_chain(n, detunings, amps, SpinMode::site_spin);
    CHECK(is_hermitian(spin_site_hamiltonian(spin, amps)));
  }
}

TEST_CASE("tunnelling never couples opposite spins") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  const ChainSpec spec = make_chain(3, {0.0, 1.0, 0.0}, {1, 1}, SpinMode::site_spin);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> amps{dist(rng), dist(rng)};
    const Eigen::MatrixXd h = spin_site_hamiltonian_real(spec, amps);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        if (a % 2 != b % 2) CHECK(h(a, b) == 0.0);
      }
    }
  }
}

TEST_CASE("zero splittings give the exact Kronecker structure") {
  const std::vector<double> amps{1.25, 0.5, 3.0, 0.75};
  const std::vector<double> detunings{0.0, 0.5, -0.25, 1.0, 0.0};
  const ChainSpec spin = make_chain(5, detunings, amps, SpinMode::site_spin);
  ChainSpec charge = spin;
  charge.spin_mode = SpinMode::charge_only;

  const Eigen::MatrixXd hc = charge_hamiltonian_real(charge, amps);
  const Eigen::MatrixXd hs = spin_site_hamiltonian_real(spin, amps);
  Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(10, 10);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      kron(2 * i, 2 * j) = hc(i, j);
      kron(2 * i + 1, 2 * j + 1) = hc(i, j);
    }
  }
  CHECK((hs - kron).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spin splittings appear on the diagonal when controls are off") {
  ChainSpec spec = make_chain(3, {0.0, 0.0, 0.0}, {1, 1}, SpinMode::site_spin);
  spec.spin_splittings = {0.1, -0.1, 0.2, -0.2, 0.3, -0.3};
  const std::vector<double> amps{0.0, 0.0};
  const Eigen::MatrixXd h = spin_site_hamiltonian_real(spec, amps);
  for (int k = 0; k < 6; ++k) {
    CHECK(h(k, k) == Approx(spec.spin_splittings[static_cast<std::size_t>(k)]));
  }
  CHECK(h.cwiseAbs().sum() == Approx(h.diagonal().cwiseAbs().sum()));
}

TEST_CASE("mode mismatches and length mismatches are rejected") {
  const ChainSpec charge = make_chain(3, {0, 0, 0}, {1, 1}, SpinMode::charge_only);
  const ChainSpec spin = make_chain(3, {0, 0, 0}, {1, 1}, SpinMode::site_spin);
  const std::vector<double> amps{1.0, 1.0};
  CHECK_THROWS_AS((void)charge_hamiltonian(spin, amps), ValidationError);
  CHECK_THROWS_AS((void)spin_site_hamiltonian(charge, amps), ValidationError);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS((void)charge_hamiltonian(charge, wrong), ValidationError);
}
