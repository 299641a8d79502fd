#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "isingloop/model.hpp"
#include "isingloop/pauli.hpp"

namespace isingloop {

/// Pauli-string form of the extended Ising Hamiltonian on a periodic chain;
/// per site XX, YY, Z, XZX, YZY in that order, zero coefficients omitted.
std::vector<PauliString> build_hamiltonian(const ModelParams& p, int num_sites);

struct SpectralResult {
  double ground_energy = 0.0;
  StateVector ground_state;
  double even_sector_energy = 0.0;
  StateVector even_sector_state;
  double odd_sector_energy = 0.0;  // NaN when the strings mix parity sectors
  int parity_of_ground = 1;
  double parity_expectation = 1.0;  // <prod_j Z_j> in ground_state
  double degeneracy_gap = 0.0;      // E_1 - E_0 over the whole spectrum
  bool parity_conserving = true;
  std::string method;  // "dense" or "lanczos"
};

/// Lowest eigenpairs of sum_s P_s, globally and within the even-parity
/// subspace. Dense Householder/QL up to 10 sites, Lanczos above (max 14).
/// When every string conserves parity the two sectors are diagonalized
/// separately; an exact tie between sectors reports the even one as ground.
SpectralResult dense_ground(std::span<const PauliString> strings, int num_sites);

/// Free-fermion ground state of the even sector written out in the spin basis:
/// prod_{k>0} (v_k + u_k c_{-k}^dag c_k^dag) |all up>, with (u_k, v_k) the
/// pseudo spin anti-aligned with r(k). Phase fixed so the |all up> amplitude is
/// real positive when it is nonzero.
StateVector paired_ground_state(const ModelParams& p, int num_sites);

/// |G_{+-2}> by its explicit position-space sum over even flip sets;
/// sign = +1 or -1, num_sites a multiple of 4.
StateVector literal_double_winding_state(int sign, int num_sites);

/// |G_lambda>: lambda = 0 all down; +-1 Neel states along x / y; +-2 the
/// paired ground state of h_{+-2} (num_sites a multiple of 4).
StateVector special_state(int lambda, int num_sites);

struct OrderParameterMatrix {
  int num_sites = 0;
  std::array<std::array<double, 5>, 5> entries{};  // [lambda + 2][rho + 2]

  double at(int lambda, int rho) const { return entries[lambda + 2][rho + 2]; }
};

/// <G_lambda| h_rho |G_lambda> for lambda, rho in {-2..2}; num_sites in {4, 8, 12}.
OrderParameterMatrix order_parameter_matrix(int num_sites);

inline constexpr double kCrossValidationTolerance = 1e-9;

struct CrossValidation {
  ModelParams params;
  int num_sites = 0;
  double even_sector_energy = 0.0;
  double free_fermion_energy = 0.0;
  double ground_energy = 0.0;
  double residual = 0.0;
  int parity = 1;
  double degeneracy_gap = 0.0;
  bool passed = false;
};

/// ED even-sector minimum against -2 sum_{k>0} |r(k)|; num_sites even, 4..12.
CrossValidation cross_validate(const ModelParams& p, int num_sites);

}  // namespace isingloop
