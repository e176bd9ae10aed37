#include "ctap/hamiltonian.hpp"

#include <string>

namespace ctap {

namespace {

void require_link_count(const ChainSpec& spec, std::span<const double> amplitudes,
                        const char* who) {
  if (static_cast<int>(amplitudes.size()) != spec.n_sites - 1) {
    throw ValidationError(std::string(who) + ": expected " +
                          std::to_string(spec.n_sites - 1) + " amplitudes, got " +
                          std::to_string(amplitudes.size()));
  }
}

}  // namespace

Eigen::MatrixXd charge_hamiltonian_real(const ChainSpec& spec,
                                        std::span<const double> amplitudes) {
  if (spec.spin_mode != SpinMode::charge_only) {
    throw ValidationError("charge_hamiltonian: spec is not charge_only");
  }
  require_link_count(spec, amplitudes, "charge_hamiltonian");
  const int n = spec.n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = spec.detunings[i];
  }
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = -amplitudes[i];
    h(i + 1, i) = -amplitudes[i];
  }
  return h;
}

Eigen::MatrixXd spin_site_hamiltonian_real(const ChainSpec& spec,
                                           std::span<const double> amplitudes) {
  if (spec.spin_mode != SpinMode::site_spin) {
    throw ValidationError("spin_site_hamiltonian: spec is not site_spin");
  }
  require_link_count(spec, amplitudes, "spin_site_hamiltonian");
  const int n = spec.n_sites;
  const int d = 2 * n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int site = 0; site < n; ++site) {
    for (int spin = 0; spin < 2; ++spin) {
      const int k = 2 * site + spin;
      h(k, k) = spec.detunings[site] + spec.spin_splittings[k];
    }
  }
  for (int link = 0; link + 1 < n; ++link) {
    for (int spin = 0; spin < 2; ++spin) {
      const int a = 2 * link + spin;
      const int b = 2 * (link + 1) + spin;
      h(a, b) = -amplitudes[link];
      h(b, a) = -amplitudes[link];
    }
  }
  return h;
}

Eigen::MatrixXd hamiltonian_real(const ChainSpec& spec,
                                 std::span<const double> amplitudes) {
  return spec.spin_mode == SpinMode::site_spin
             ? spin_site_hamiltonian_real(spec, amplitudes)
             : charge_hamiltonian_real(spec, amplitudes);
}

Eigen::MatrixXcd charge_hamiltonian(const ChainSpec& spec,
                                    std::span<const double> amplitudes) {
  return charge_hamiltonian_real(spec, amplitudes).cast<std::complex<double>>();
}

Eigen::MatrixXcd spin_site_hamiltonian(const ChainSpec& spec,
                                       std::span<const double> amplitudes) {
  return spin_site_hamiltonian_real(spec, amplitudes).cast<std::complex<double>>();
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ctap
