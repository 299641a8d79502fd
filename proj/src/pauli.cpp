#include "isingloop/pauli.hpp"

#include <bit>
#include <cmath>

#include "isingloop/errors.hpp"

namespace isingloop {

std::uint64_t basis_index(std::string_view spins) {
  std::uint64_t index = 0;
  for (char c : spins) {
    index <<= 1;
    if (c == 'd') {
      index |= 1;
    } else if (c != 'u') {
      throw InvalidArgument("basis_index: expected 'u' or 'd', got '" + std::string(1, c) + "'");
    }
  }
  return index;
}

PauliString::PauliString(double coefficient, std::vector<Pauli> letters)
    : coefficient_(coefficient), letters_(std::move(letters)) {
  const int n = num_sites();
  if (n < 1 || n > 62) {
    throw InvalidArgument("PauliString: unsupported number of sites " + std::to_string(n));
  }
  if (!std::isfinite(coefficient_)) {
    throw InvalidArgument("PauliString: coefficient is not finite");
  }
  for (int s = 0; s < n; ++s) {
    const std::uint64_t bit = site_bit(s, n);
    switch (letters_[s]) {
      case Pauli::I:
        break;
      case Pauli::X:
        flip_mask_ |= bit;
        break;
      case Pauli::Y:
        flip_mask_ |= bit;
        sign_mask_ |= bit;
        ++num_y_;
        break;
      case Pauli::Z:
        sign_mask_ |= bit;
        break;
    }
  }
}

PauliString PauliString::on_sites(double coefficient, int num_sites,
                                  std::initializer_list<std::pair<int, Pauli>> ops) {
  if (num_sites < 1) {
    throw InvalidArgument("PauliString::on_sites: num_sites must be positive");
  }
  std::vector<Pauli> letters(num_sites, Pauli::I);
  for (auto [site, letter] : ops) {
    const int s = ((site % num_sites) + num_sites) % num_sites;
    if (letters[s] != Pauli::I) {
      throw InvalidArgument("PauliString::on_sites: site " + std::to_string(s + 1) +
                            " assigned twice");
    }
    letters[s] = letter;
  }
  return PauliString(coefficient, std::move(letters));
}

std::string PauliString::label() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back("IXYZ"[static_cast<int>(p)]);
  return out;
}

bool PauliString::conserves_parity() const { return std::popcount(flip_mask_) % 2 == 0; }

// X|s> = |~s>, Z|s> = (-1)^s |s>, Y|s> = i (-1)^s |~s>.
std::pair<std::uint64_t, Complex> PauliString::act(std::uint64_t basis) const {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double sign = std::popcount(basis & sign_mask_) % 2 ? -1.0 : 1.0;
  return {basis ^ flip_mask_, coefficient_ * sign * kIPow[num_y_ % 4]};
}

std::pair<std::uint64_t, double> PauliString::act_real(std::uint64_t basis) const {
  double sign = std::popcount(basis & sign_mask_) % 2 ? -1.0 : 1.0;
  if (num_y_ % 4 == 2) sign = -sign;
  return {basis ^ flip_mask_, coefficient_ * sign};
}

PauliString PauliString::relabeled(int shift) const {
  const int n = num_sites();
  std::vector<Pauli> moved(n, Pauli::I);
  for (int s = 0; s < n; ++s) moved[((s + shift) % n + n) % n] = letters_[s];
  return PauliString(coefficient_, std::move(moved));
}

StateVector StateVector::zero(int num_sites) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw InvalidArgument("StateVector: unsupported number of sites " + std::to_string(num_sites));
  }
  return StateVector{num_sites, std::vector<Complex>(std::size_t{1} << num_sites)};
}

StateVector StateVector::basis(int num_sites, std::uint64_t index) {
  StateVector s = zero(num_sites);
  s.amplitudes.at(index) = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& c : amplitudes) sum += std::norm(c);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("StateVector::normalize: zero vector");
  for (Complex& c : amplitudes) c /= n;
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.amplitudes.size() != ket.amplitudes.size()) {
    throw InvalidArgument("inner: dimension mismatch");
  }
  Complex sum = 0.0;
  for (std::size_t i = 0; i < bra.amplitudes.size(); ++i) {
    sum += std::conj(bra.amplitudes[i]) * ket.amplitudes[i];
  }
  return sum;
}

void apply_add(std::span<const PauliString> strings, std::span<const Complex> in,
               std::span<Complex> out) {
  const std::size_t dim = in.size();
  for (const PauliString& p : strings) {
    if ((std::size_t{1} << p.num_sites()) != dim || out.size() != dim) {
      throw InvalidArgument("apply: Pauli string " + p.label() + " does not match state size");
    }
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (in[i] == Complex{}) continue;
      auto [j, phase] = p.act(i);
      out[j] += phase * in[i];
    }
  }
}

StateVector apply(std::span<const PauliString> strings, const StateVector& state) {
  StateVector out = StateVector::zero(state.num_sites);
  apply_add(strings, state.amplitudes, out.amplitudes);
  return out;
}

double expectation(std::span<const PauliString> strings, const StateVector& state) {
  return inner(state, apply(strings, state)).real();
}

double parity_expectation(const StateVector& state) {
  double sum = 0.0;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    const double w = std::norm(state.amplitudes[i]);
    sum += std::popcount(i) % 2 ? -w : w;
  }
  return sum;
}

}  // namespace isingloop
