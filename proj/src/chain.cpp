#include "ctap/chain.hpp"

#include <cmath>
#include <string>

namespace ctap {

ChainSpec make_chain(int n_sites, std::vector<double> detunings,
                     std::vector<double> base_amplitudes, SpinMode spin_mode) {
  if (n_sites < 3) {
    throw ValidationError("make_chain: n_sites must be at least 3, got " +
                          std::to_string(n_sites));
  }
  if (static_cast<int>(detunings.size()) != n_sites) {
    throw ValidationError("make_chain: detunings length " +
                          std::to_string(detunings.size()) +
                          " does not match n_sites " + std::to_string(n_sites));
  }
  if (static_cast<int>(base_amplitudes.size()) != n_sites - 1) {
    throw ValidationError("make_chain: base_amplitudes length " +
                          std::to_string(base_amplitudes.size()) +
                          " does not match n_sites - 1 = " +
                          std::to_string(n_sites - 1));
  }
  for (double d : detunings) {
    if (!std::isfinite(d)) {
      throw ValidationError("make_chain: detunings must be finite");
    }
  }
  for (double a : base_amplitudes) {
    if (!(a >= 0.0)) {
      throw ValidationError("make_chain: base_amplitudes must be non-negative");
    }
  }
  ChainSpec spec;
  spec.n_sites = n_sites;
  spec.detunings = std::move(detunings);
  spec.base_amplitudes = std::move(base_amplitudes);
  spec.spin_mode = spin_mode;
  spec.spin_splittings.assign(2 * static_cast<std::size_t>(n_sites), 0.0);
  return spec;
}

int dimension(const ChainSpec& spec) {
  return spec.spin_mode == SpinMode::site_spin ? 2 * spec.n_sites : spec.n_sites;
}

int basis_index(const ChainSpec& spec, int site, int spin) {
  return spec.spin_mode == SpinMode::site_spin ? 2 * site + spin : site;
}

int site_of_index(const ChainSpec& spec, int index) {
  return spec.spin_mode == SpinMode::site_spin ? index / 2 : index;
}

}  // namespace ctap
