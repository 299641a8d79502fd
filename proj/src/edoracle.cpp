#include "isingloop/edoracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "isingloop/eigensolver.hpp"
#include "isingloop/errors.hpp"
#include "isingloop/freefermion.hpp"
#include "isingloop/loopgeo.hpp"

namespace isingloop {

namespace {

constexpr int kDenseMaxSites = 10;

void require_chain(int num_sites, int lo, int hi, const char* where) {
  if (num_sites < lo || num_sites > hi || num_sites % 2 != 0) {
    throw InvalidArgument(std::string(where) + ": chain length must be even and in [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                          std::to_string(num_sites));
  }
}

// Lowest eigenpairs of the Hamiltonian compressed onto a set of basis states.
struct BlockSpectrum {
  double lowest = 0.0;
  double second = std::numeric_limits<double>::infinity();
  std::vector<Complex> state;  // full 2^N amplitudes
};

std::vector<std::uint64_t> block_indices(int num_sites, int parity) {
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const int p = std::popcount(i) % 2 == 0 ? 1 : -1;
    if (parity == 0 || p == parity) out.push_back(i);
  }
  return out;
}

BlockSpectrum dense_block(std::span<const PauliString> strings, int num_sites,
                          const std::vector<std::uint64_t>& indices, bool real) {
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  const int m = static_cast<int>(indices.size());
  std::vector<int> position(dim, -1);
  for (int c = 0; c < m; ++c) position[indices[c]] = c;

  std::vector<Complex> h(static_cast<std::size_t>(m) * m);
  for (int c = 0; c < m; ++c) {
    for (const PauliString& s : strings) {
      auto [target, phase] = s.act(indices[c]);
      const int r = position[target];
      if (r >= 0) h[static_cast<std::size_t>(r) * m + c] += phase;
    }
  }

  double biggest = 0.0;
  for (const Complex& v : h) biggest = std::max(biggest, std::abs(v));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < r; ++c) {
      const Complex diff = h[static_cast<std::size_t>(r) * m + c] -
                           std::conj(h[static_cast<std::size_t>(c) * m + r]);
      if (std::abs(diff) > 1e-12 * std::max(1.0, biggest)) {
        throw InvalidArgument("dense_ground: assembled matrix is not Hermitian");
      }
    }
  }

  BlockSpectrum out;
  out.state.assign(dim, Complex{});
  if (real) {
    std::vector<double> a(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) a[i] = h[i].real();
    const SymmetricEigen eig = symmetric_eigen(std::move(a), m);
    out.lowest = eig.values[0];
    if (m > 1) out.second = eig.values[1];
    const auto v = eig.vector(0);
    for (int c = 0; c < m; ++c) out.state[indices[c]] = v[c];
  } else {
    // Real embedding [[Re, -Im], [Im, Re]]; every eigenvalue appears twice.
    const int n2 = 2 * m;
    std::vector<double> a(static_cast<std::size_t>(n2) * n2);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        const Complex v = h[static_cast<std::size_t>(r) * m + c];
        a[static_cast<std::size_t>(r) * n2 + c] = v.real();
        a[static_cast<std::size_t>(r) * n2 + c + m] = -v.imag();
        a[static_cast<std::size_t>(r + m) * n2 + c] = v.imag();
        a[static_cast<std::size_t>(r + m) * n2 + c + m] = v.real();
      }
    }
    const SymmetricEigen eig = symmetric_eigen(std::move(a), n2);
    out.lowest = eig.values[0];
    if (m > 1) out.second = eig.values[2];
    const auto v = eig.vector(0);
    for (int c = 0; c < m; ++c) out.state[indices[c]] = Complex(v[c], v[c + m]);
  }
  return out;
}

BlockSpectrum lanczos_block(std::span<const PauliString> strings, int num_sites,
                            const std::vector<std::uint64_t>& indices) {
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  std::vector<char> inside(dim, indices.size() == dim ? 1 : 0);
  for (std::uint64_t i : indices) inside[i] = 1;

  LinearOperator op = [&](std::span<const Complex> in, std::span<Complex> out) {
    apply_add(strings, in, out);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (!inside[i]) out[i] = 0.0;
    }
  };

  std::mt19937_64 rng(0x5eed1e5);
  std::normal_distribution<double> gauss;
  auto random_start = [&] {
    std::vector<Complex> v(dim);
    for (std::uint64_t i : indices) v[i] = Complex(gauss(rng), gauss(rng));
    return v;
  };

  BlockSpectrum out;
  LanczosResult first = lanczos_lowest(op, random_start(), {});
  out.lowest = first.value;
  if (indices.size() > 1) {
    std::vector<std::vector<Complex>> found{first.vector};
    out.second = lanczos_lowest(op, random_start(), found).value;
  }
  out.state = std::move(first.vector);
  return out;
}

BlockSpectrum solve_block(std::span<const PauliString> strings, int num_sites,
                          const std::vector<std::uint64_t>& indices, bool real) {
  if (num_sites <= kDenseMaxSites) return dense_block(strings, num_sites, indices, real);
  return lanczos_block(strings, num_sites, indices);
}

StateVector to_state(int num_sites, std::vector<Complex> amplitudes) {
  StateVector s{num_sites, std::move(amplitudes)};
  s.normalize();
  return s;
}

// c_j^dag = -prod_{l<j} Z_l sigma^-_j, site j 0-based; accumulates coeff * c_j^dag |in> into out.
void add_creation(int site, int num_sites, Complex coeff, std::span<const Complex> in,
                  std::span<Complex> out) {
  const std::uint64_t bit = site_bit(site, num_sites);
  const std::uint64_t left = ~((bit << 1) - 1) & ((std::uint64_t{1} << num_sites) - 1);
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    if ((i & bit) || in[i] == Complex{}) continue;
    const double sign = std::popcount(i & left) % 2 ? 1.0 : -1.0;
    out[i | bit] += coeff * sign * in[i];
  }
}

// c_k^dag = N^{-1/2} sum_{j=1}^{N} e^{ikj} c_j^dag
std::vector<Complex> create_mode(double k, int num_sites, std::span<const Complex> in) {
  std::vector<Complex> out(in.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(num_sites));
  for (int s = 0; s < num_sites; ++s) {
    add_creation(s, num_sites, norm * std::polar(1.0, k * (s + 1)), in, out);
  }
  return out;
}

// Ground state of 2(x sigma^y + y sigma^z) in the pseudo-spin basis
// (|up> = c_{-k}^dag c_k^dag |0>, |down> = |0>), returned as (up, down).
std::pair<Complex, Complex> pseudo_spin_ground(const LoopPoint& r) {
  const double rho = r.radius();
  const Complex i(0.0, 1.0);
  Complex up, down;
  if (rho == 0.0) {
    up = 0.0;
    down = 1.0;
  } else if (r.y > 0.0) {
    down = 1.0;
    up = i * r.x / (r.y + rho);
  } else {
    up = 1.0;
    down = -i * r.x / (rho - r.y);
  }
  const double n = std::sqrt(std::norm(up) + std::norm(down));
  return {up / n, down / n};
}

void fix_global_phase(StateVector& s) {
  std::size_t pivot = 0;
  if (std::abs(s.amplitudes[0]) < 1e-8) {
    for (std::size_t i = 1; i < s.amplitudes.size(); ++i) {
      if (std::abs(s.amplitudes[i]) > std::abs(s.amplitudes[pivot]) + 1e-12) pivot = i;
    }
  }
  const Complex a = s.amplitudes[pivot];
  if (std::abs(a) == 0.0) return;
  const Complex rotate = std::conj(a) / std::abs(a);
  for (Complex& c : s.amplitudes) c *= rotate;
}

StateVector neel_state(int num_sites, Pauli axis) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  // (up, down) components of the +1 and -1 eigenvectors of sigma^x or sigma^y.
  const std::array<Complex, 2> plus = axis == Pauli::X ? std::array<Complex, 2>{h, h}
                                                       : std::array<Complex, 2>{h, i * h};
  const std::array<Complex, 2> minus = axis == Pauli::X ? std::array<Complex, 2>{h, -h}
                                                        : std::array<Complex, 2>{h, -i * h};
  StateVector s = StateVector::zero(num_sites);
  for (std::uint64_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    Complex first = 1.0, second = 1.0;
    for (int site = 0; site < num_sites; ++site) {
      const int spin = (idx & site_bit(site, num_sites)) ? 1 : 0;
      const bool even_site = (site + 1) % 2 == 0;
      first *= even_site ? plus[spin] : minus[spin];
      second *= even_site ? minus[spin] : plus[spin];
    }
    s.amplitudes[idx] = first + second;
  }
  s.normalize();
  return s;
}

}  // namespace

std::vector<PauliString> build_hamiltonian(const ModelParams& p, int num_sites) {
  validate(p);
  require_chain(num_sites, 4, kMaxSites, "build_hamiltonian");
  std::vector<PauliString> terms;
  terms.reserve(5 * num_sites);
  auto emit = [&](double coeff, std::initializer_list<std::pair<int, Pauli>> ops) {
    if (coeff != 0.0) terms.push_back(PauliString::on_sites(coeff, num_sites, ops));
  };
  for (int j = 0; j < num_sites; ++j) {
    emit(p.a * (1.0 + p.gamma) / 2.0, {{j, Pauli::X}, {j + 1, Pauli::X}});
    emit(p.a * (1.0 - p.gamma) / 2.0, {{j, Pauli::Y}, {j + 1, Pauli::Y}});
    emit(p.g, {{j, Pauli::Z}});
    emit(p.b * (1.0 + p.delta) / 2.0, {{j - 1, Pauli::X}, {j, Pauli::Z}, {j + 1, Pauli::X}});
    emit(p.b * (1.0 - p.delta) / 2.0, {{j - 1, Pauli::Y}, {j, Pauli::Z}, {j + 1, Pauli::Y}});
  }
  return terms;
}

SpectralResult dense_ground(std::span<const PauliString> strings, int num_sites) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw InvalidArgument("dense_ground: dimension overflow, at most " + std::to_string(kMaxSites) +
                          " sites are supported, got " + std::to_string(num_sites));
  }
  bool real = true;
  bool conserving = true;
  for (const PauliString& s : strings) {
    if (s.num_sites() != num_sites) {
      throw InvalidArgument("dense_ground: string " + s.label() + " does not have " +
                            std::to_string(num_sites) + " sites");
    }
    real = real && s.is_real();
    conserving = conserving && s.conserves_parity();
  }

  SpectralResult out;
  out.parity_conserving = conserving;
  out.method = num_sites <= kDenseMaxSites ? "dense" : "lanczos";

  const BlockSpectrum even = solve_block(strings, num_sites, block_indices(num_sites, 1), real);
  out.even_sector_energy = even.lowest;
  out.even_sector_state = to_state(num_sites, even.state);

  if (conserving) {
    const BlockSpectrum odd = solve_block(strings, num_sites, block_indices(num_sites, -1), real);
    out.odd_sector_energy = odd.lowest;
    const double tie = 1e-10 * std::max(1.0, std::abs(even.lowest));
    const bool odd_ground = odd.lowest < even.lowest - tie;
    const BlockSpectrum& ground = odd_ground ? odd : even;
    const BlockSpectrum& other = odd_ground ? even : odd;
    out.ground_energy = ground.lowest;
    out.ground_state = to_state(num_sites, ground.state);
    out.degeneracy_gap = std::min(ground.second, other.lowest) - ground.lowest;
  } else {
    out.odd_sector_energy = std::numeric_limits<double>::quiet_NaN();
    const BlockSpectrum full = solve_block(strings, num_sites, block_indices(num_sites, 0), real);
    out.ground_energy = full.lowest;
    out.ground_state = to_state(num_sites, full.state);
    out.degeneracy_gap = full.second - full.lowest;
  }
  out.parity_expectation = parity_expectation(out.ground_state);
  out.parity_of_ground = out.parity_expectation >= 0.0 ? 1 : -1;
  return out;
}

StateVector paired_ground_state(const ModelParams& p, int num_sites) {
  validate(p);
  require_chain(num_sites, 2, kMaxSites, "paired_ground_state");
  StateVector state = StateVector::basis(num_sites, 0);
  for (double k : momentum_grid(num_sites).positive()) {
    const auto [up, down] = pseudo_spin_ground(loop_point(p, k));
    const std::vector<Complex> once = create_mode(k, num_sites, state.amplitudes);
    const std::vector<Complex> pair = create_mode(-k, num_sites, once);
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
      state.amplitudes[i] = down * state.amplitudes[i] + up * pair[i];
    }
  }
  state.normalize();
  fix_global_phase(state);
  return state;
}

StateVector literal_double_winding_state(int sign, int num_sites) {
  if (sign != 1 && sign != -1) throw InvalidArgument("literal_double_winding_state: sign must be +-1");
  if (num_sites < 4 || num_sites > kMaxSites || num_sites % 4 != 0) {
    throw InvalidArgument("literal_double_winding_state: chain length must be a multiple of 4");
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double norm = std::pow(2.0, -(num_sites - 2) / 2.0);
  StateVector s = StateVector::zero(num_sites);
  for (std::uint64_t idx = 0; idx < s.amplitudes.size(); ++idx) {
    // Flipped sites n_1 < n_2 < ... (1-based); the phase is i^{sum_l (-1)^l n_l}.
    int count = 0, site_sum = 0, alternating = 0;
    for (int site = 0; site < num_sites; ++site) {
      if (!(idx & site_bit(site, num_sites))) continue;
      ++count;
      site_sum += site + 1;
      alternating += (count % 2 == 0 ? 1 : -1) * (site + 1);
    }
    if (count % 2 != 0 || site_sum % 2 != 0) continue;
    const double pair_sign = (sign < 0 && (count / 2) % 2 == 1) ? -1.0 : 1.0;
    s.amplitudes[idx] = norm * pair_sign * kIPow[((alternating % 4) + 4) % 4];
  }
  return s;
}

StateVector special_state(int lambda, int num_sites) {
  switch (lambda) {
    case 0:
      require_chain(num_sites, 2, kMaxSites, "special_state");
      return StateVector::basis(num_sites, (std::uint64_t{1} << num_sites) - 1);
    case 1:
      require_chain(num_sites, 2, kMaxSites, "special_state");
      return neel_state(num_sites, Pauli::X);
    case -1:
      require_chain(num_sites, 2, kMaxSites, "special_state");
      return neel_state(num_sites, Pauli::Y);
    case 2:
    case -2:
      if (num_sites < 4 || num_sites > kMaxSites || num_sites % 4 != 0) {
        throw InvalidArgument("special_state: lambda = +-2 needs a chain length that is a multiple "
                              "of 4, got " + std::to_string(num_sites));
      }
      return paired_ground_state(limit_params(lambda), num_sites);
    default:
      throw InvalidArgument("special_state: lambda must lie in {-2,...,2}, got " +
                            std::to_string(lambda));
  }
}

OrderParameterMatrix order_parameter_matrix(int num_sites) {
  if (num_sites != 4 && num_sites != 8 && num_sites != 12) {
    throw InvalidArgument("order_parameter_matrix: chain length must be 4, 8 or 12, got " +
                          std::to_string(num_sites));
  }
  OrderParameterMatrix out{num_sites, {}};
  std::array<LimitCase, 5> cases;
  for (int rho = -2; rho <= 2; ++rho) cases[rho + 2] = limit_case(rho, num_sites);
  for (int lambda = -2; lambda <= 2; ++lambda) {
    const StateVector g = special_state(lambda, num_sites);
    for (int rho = -2; rho <= 2; ++rho) {
      out.entries[lambda + 2][rho + 2] = expectation(cases[rho + 2].terms, g);
    }
  }
  return out;
}

CrossValidation cross_validate(const ModelParams& p, int num_sites) {
  require_chain(num_sites, 4, 12, "cross_validate");
  const std::vector<PauliString> h = build_hamiltonian(p, num_sites);
  const SpectralResult ed = dense_ground(h, num_sites);
  CrossValidation out;
  out.params = p;
  out.num_sites = num_sites;
  out.even_sector_energy = ed.even_sector_energy;
  out.free_fermion_energy = finite_ground_energy(p, num_sites).total;
  out.ground_energy = ed.ground_energy;
  out.residual = std::abs(out.even_sector_energy - out.free_fermion_energy);
  out.parity = ed.parity_of_ground;
  out.degeneracy_gap = ed.degeneracy_gap;
  out.passed = out.residual < kCrossValidationTolerance;
  return out;
}

}  // namespace isingloop
