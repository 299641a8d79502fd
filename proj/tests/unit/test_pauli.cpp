#include <doctest.h>

#include <random>

#include "isingloop/errors.hpp"
#include "isingloop/pauli.hpp"
#include "oracles.hpp"

using namespace isingloop;

namespace {

PauliString random_string(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> coeff(-2, 2);
  std::vector<Pauli> letters(n);
  for (Pauli& p : letters) p = static_cast<Pauli>(letter(rng));
  return PauliString(coeff(rng), letters);
}

}  // namespace

TEST_CASE("basis index convention: site 1 is the most significant bit, down = 1") {
  CHECK(basis_index("uuuu") == 0);
  CHECK(basis_index("duuu") == 8);
  CHECK(basis_index("uuud") == 1);
  CHECK(basis_index("dddd") == 15);
  CHECK_THROWS_AS(basis_index("uxu"), InvalidArgument);
}

TEST_CASE("single-site action") {
  const PauliString x = PauliString::on_sites(1.0, 2, {{0, Pauli::X}});
  CHECK(x.act(basis_index("uu")).first == basis_index("du"));
  const PauliString z = PauliString::on_sites(1.0, 2, {{1, Pauli::Z}});
  CHECK(z.act(basis_index("ud")).second == Complex(-1, 0));
  const PauliString y = PauliString::on_sites(1.0, 1, {{0, Pauli::Y}});
  // Y|up> = i|down>, Y|down> = -i|up>
  CHECK(y.act(0) == std::pair<std::uint64_t, Complex>{1, Complex(0, 1)});
  CHECK(y.act(1) == std::pair<std::uint64_t, Complex>{0, Complex(0, -1)});
}

TEST_CASE("bitmask action equals the Kronecker-product matrix") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const PauliString s = random_string(rng, n);
    const oracle::Matrix m = oracle::kron_string(s);
    const std::uint64_t dim = std::uint64_t{1} << n;
    double worst = 0.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
      const auto [row, phase] = s.act(col);
      for (std::uint64_t r = 0; r < dim; ++r) {
        const Complex expect = m[r * dim + col];
        const Complex got = r == row ? phase : Complex{};
        worst = std::max(worst, std::abs(expect - got));
      }
    }
    CAPTURE(s.label());
    CHECK(worst < 1e-15);
  }
}

TEST_CASE("reality and parity flags") {
  CHECK(PauliString(1.0, {Pauli::Y, Pauli::Y}).is_real());
  CHECK_FALSE(PauliString(1.0, {Pauli::Y, Pauli::Z}).is_real());
  CHECK(PauliString(1.0, {Pauli::X, Pauli::Y}).conserves_parity());
  CHECK_FALSE(PauliString(1.0, {Pauli::X, Pauli::Z}).conserves_parity());
  CHECK(PauliString(1.0, {Pauli::Z, Pauli::I}).conserves_parity());
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(PauliString(std::nan(""), {Pauli::X}), InvalidArgument);
  CHECK_THROWS_AS(PauliString(1.0, {}), InvalidArgument);
  CHECK_THROWS_AS(PauliString::on_sites(1.0, 3, {{0, Pauli::X}, {3, Pauli::Z}}), InvalidArgument);
}

TEST_CASE("relabeling shifts sites cyclically") {
  const PauliString s = PauliString::on_sites(0.5, 5, {{0, Pauli::X}, {1, Pauli::Z}});
  CHECK(s.label() == "XZIII");
  CHECK(s.relabeled(1).label() == "IXZII");
  CHECK(s.relabeled(4).label() == "ZIIIX");
  CHECK(s.relabeled(1).coefficient() == 0.5);
}

TEST_CASE("apply, expectation and parity") {
  std::mt19937_64 rng(11);
  const int n = 4;
  std::vector<PauliString> strings;
  for (int i = 0; i < 5; ++i) strings.push_back(random_string(rng, n));
  const oracle::Matrix h = oracle::kron_sum(strings, n);

  StateVector psi = StateVector::zero(n);
  std::normal_distribution<double> gauss;
  for (Complex& c : psi.amplitudes) c = Complex(gauss(rng), gauss(rng));
  psi.normalize();
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));

  const StateVector out = isingloop::apply(strings, psi);
  double worst = 0.0;
  for (int r = 0; r < 16; ++r) {
    Complex expect = 0;
    for (int c = 0; c < 16; ++c) expect += h[r * 16 + c] * psi.amplitudes[c];
    worst = std::max(worst, std::abs(expect - out.amplitudes[r]));
  }
  CHECK(worst < 1e-13);
  CHECK(expectation(strings, psi) == doctest::Approx(inner(psi, out).real()).epsilon(1e-13));

  CHECK(parity_expectation(StateVector::basis(n, basis_index("uudu"))) == -1.0);
  CHECK(parity_expectation(StateVector::basis(n, basis_index("dudu"))) == 1.0);
}
