#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isingloop {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I, X, Y, Z };

// Basis convention used throughout the oracle: site 1 is the most significant
// bit of a basis index, bit value 0 is spin up (sigma^z = +1), 1 is spin down.
inline constexpr int kMaxSites = 14;

inline std::uint64_t site_bit(int site, int num_sites) {
  return std::uint64_t{1} << (num_sites - 1 - site);
}

/// Basis index of a spin configuration written as 'u'/'d' characters, site 1 first.
std::uint64_t basis_index(std::string_view spins);

/// A real coefficient times a tensor product of single-site Pauli matrices.
class PauliString {
 public:
  PauliString(double coefficient, std::vector<Pauli> letters);

  /// Identity everywhere except the listed (0-based site, letter) pairs.
  /// Sites are taken modulo num_sites, so periodic neighbours can be written j-1, j+1.
  static PauliString on_sites(double coefficient, int num_sites,
                              std::initializer_list<std::pair<int, Pauli>> ops);

  double coefficient() const { return coefficient_; }
  std::span<const Pauli> letters() const { return letters_; }
  int num_sites() const { return static_cast<int>(letters_.size()); }

  /// "XZXI"-style label, site 1 first.
  std::string label() const;

  /// Matrix elements are real iff the string holds an even number of Y.
  bool is_real() const { return num_y_ % 2 == 0; }

  /// Commutes with prod_j sigma^z_j iff it flips an even number of spins.
  bool conserves_parity() const;

  /// P|basis> = phase * |target>, coefficient included.
  std::pair<std::uint64_t, Complex> act(std::uint64_t basis) const;

  /// Same as act() for strings with is_real(); returns the real phase.
  std::pair<std::uint64_t, double> act_real(std::uint64_t basis) const;

  PauliString relabeled(int shift) const;

 private:
  double coefficient_;
  std::vector<Pauli> letters_;
  std::uint64_t flip_mask_ = 0;
  std::uint64_t sign_mask_ = 0;
  int num_y_ = 0;
};

struct StateVector {
  int num_sites = 0;
  std::vector<Complex> amplitudes;

  static StateVector zero(int num_sites);
  static StateVector basis(int num_sites, std::uint64_t index);

  double norm() const;
  void normalize();
};

Complex inner(const StateVector& bra, const StateVector& ket);

/// out += sum_s P_s |in>
void apply_add(std::span<const PauliString> strings, std::span<const Complex> in,
               std::span<Complex> out);

StateVector apply(std::span<const PauliString> strings, const StateVector& state);

/// <state| sum_s P_s |state>; real because every PauliString is Hermitian.
double expectation(std::span<const PauliString> strings, const StateVector& state);

/// <prod_j sigma^z_j>
double parity_expectation(const StateVector& state);

}  // namespace isingloop
