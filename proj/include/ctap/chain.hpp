#pragma once

#include <vector>

#include "ctap/errors.hpp"

namespace ctap {

enum class SpinMode { charge_only, site_spin };

/// Static description of an N-donor chain: per-site detunings relative to
/// the end sites, nominal peak tunnelling rate per link, and whether the
/// electron spin is carried along. Immutable once built; shared freely
/// across workers.
struct ChainSpec {
  int n_sites = 0;
  std::vector<double> detunings;        // per site, rad/ns
  std::vector<double> base_amplitudes;  // per link, rad/ns, >= 0
  SpinMode spin_mode = SpinMode::charge_only;
  std::vector<double> spin_splittings;  // per (site, spin) energy offset, rad/ns
};

/// Validating factory. Spin splittings default to zero.
ChainSpec make_chain(int n_sites, std::vector<double> detunings,
                     std::vector<double> base_amplitudes, SpinMode spin_mode);

/// Basis dimension: n_sites (charge_only) or 2*n_sites (site_spin).
int dimension(const ChainSpec& spec);

// Basis conventions, 0-based: charge index = site; site_spin index =
// 2*site + spin with spin 0 = down, 1 = up.
int basis_index(const ChainSpec& spec, int site, int spin);
int site_of_index(const ChainSpec& spec, int index);

}  // namespace ctap
