// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "probewit/qmath.hpp"

using namespace probewit;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
  CMatrix g = random_matrix(rng, n, n);
  return Complex(0.5, 0.0) * (g + adjoint(g));
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
  return expm_generator(random_hermitian(rng, n), 1.0);
}

// Independent oracle: partial trace over the probe factor of a [2,2,2]
// composite, written as bare index arithmetic over explicit qubit digits.
// Deliberately shares no code with partial_trace().
CMatrix trace_out_last_of_222(const CMatrix& a) {
  CMatrix out(4, 4);
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2)
      for (int p1 = 0; p1 < 2; ++p1)
        for (int p2 = 0; p2 < 2; ++p2) {
          Complex s = 0.0;
          for (int e = 0; e < 2; ++e) s += a(4 * q1 + 2 * q2 + e, 4 * p1 + 2 * p2 + e);
          out(2 * q1 + q2, 2 * p1 + p2) = s;
        }
  return out;
}

// Same idea for the middle factor.
CMatrix trace_out_middle_of_222(const CMatrix& a) {
  CMatrix out(4, 4);
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q3 = 0; q3 < 2; ++q3)
      for (int p1 = 0; p1 < 2; ++p1)
        for (int p3 = 0; p3 < 2; ++p3) {
          Complex s = 0.0;
          for (int e = 0; e < 2; ++e) s += a(4 * q1 + 2 * e + q3, 4 * p1 + 2 * e + p3);
          out(2 * q1 + q3, 2 * p1 + p3) = s;
        }
  return out;
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  CMatrix a(2, 2);
  a(0, 0) = Complex(1.0, 2.0);
  a(0, 1) = Complex(0.0, -1.0);
  a(1, 0) = 3.0;
  a(1, 1) = Complex(-2.0, 0.5);

  const CMatrix id = CMatrix::identity(2);
  CHECK(max_abs_diff(a * id, a) == 0.0);
  CHECK(max_abs_diff(id * a, a) == 0.0);

  const CMatrix aa = adjoint(a);
  CHECK(aa(0, 1) == std::conj(a(1, 0)));
  CHECK(trace(a) == a(0, 0) + a(1, 1));

  const CMatrix sum = a + a;
  CHECK(sum(1, 0) == Complex(6.0, 0.0));
  const CMatrix diff = sum - a;
  CHECK(max_abs_diff(diff, a) == 0.0);

  CHECK_THROWS_AS(trace(CMatrix(2, 3)), UsageError);
  CHECK_THROWS_AS(a * CMatrix(3, 3), UsageError);
}

TEST_CASE("pauli algebra") {
  const CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  const CMatrix id = CMatrix::identity(2);
  CHECK(max_abs_diff(x * x, id) < 1e-15);
  CHECK(max_abs_diff(y * y, id) < 1e-15);
  CHECK(max_abs_diff(z * z, id) < 1e-15);
  // x y = i z and cyclic.
  CHECK(max_abs_diff(x * y, Complex(0.0, 1.0) * z) < 1e-15);
  CHECK(max_abs_diff(y * z, Complex(0.0, 1.0) * x) < 1e-15);
  CHECK(max_abs_diff(z * x, Complex(0.0, 1.0) * y) < 1e-15);
}

TEST_CASE("kron ordering and values") {
  const CMatrix zz = kron(pauli_z(), pauli_z());
  const double expected[4] = {1.0, -1.0, -1.0, 1.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(zz(i, j) - (i == j ? expected[i] : 0.0)) < 1e-15);

  // First factor is the slow index.
  const CMatrix zx = kron(pauli_z(), pauli_x());
  CHECK(zx(0, 1) == Complex(1.0, 0.0));
  CHECK(zx(2, 3) == Complex(-1.0, 0.0));
  CHECK(zx(0, 2) == Complex(0.0, 0.0));
}

TEST_CASE("kron trace multiplicativity against brute-force sum") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix a = random_matrix(rng, 3, 3);
    const CMatrix b = random_matrix(rng, 4, 4);
    const CMatrix k = kron(a, b);
    Complex brute = 0.0;
    for (int i = 0; i < 12; ++i) brute += k(i, i);
    CHECK(std::abs(brute - trace(a) * trace(b)) < 1e-12);
  }
}

TEST_CASE("kron dimension cap") {
  const CMatrix m8 = CMatrix::identity(8);
  CHECK_NOTHROW(kron(m8, CMatrix::identity(2)));
  CHECK_THROWS_AS(kron(m8, CMatrix::identity(4)), UsageError);
}

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(make_layout({2, 2}, {"a"}), UsageError);
  CHECK_THROWS_AS(make_layout({2, 2}, {"a", "a"}), UsageError);
  CHECK_THROWS_AS(make_layout({4, 8}, {"a", "b"}), UsageError);
  const SpaceLayout l = make_layout({2, 2, 2}, {"q1", "q2", "probe"});
  CHECK(l.dim() == 8);
}

TEST_CASE("partial trace of a singlet projector") {
  // |psi-> = (|01> - |10>)/sqrt(2); either marginal is I/2.
  CMatrix rho(4, 4);
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = -0.5;
  rho(2, 1) = -0.5;
  const SpaceLayout l = make_layout({2, 2}, {"q1", "q2"});
  const CMatrix left = partial_trace(rho, l, {"q1"});
  const CMatrix right = partial_trace(rho, l, {"q2"});
  CMatrix half = Complex(0.5, 0.0) * CMatrix::identity(2);
  CHECK(max_abs_diff(left, half) < 1e-15);
  CHECK(max_abs_diff(right, half) < 1e-15);
}

TEST_CASE("partial trace against the index-sum oracle") {
  std::mt19937_64 rng(42);
  const SpaceLayout l = make_layout({2, 2, 2}, {"q1", "q2", "probe"});
  for (int rep = 0; rep < 25; ++rep) {
    const CMatrix a = random_matrix(rng, 8, 8);
    CHECK(max_abs_diff(partial_trace(a, l, {"q1", "q2"}), trace_out_last_of_222(a)) < 1e-13);
    CHECK(max_abs_diff(partial_trace(a, l, {"q1", "probe"}), trace_out_middle_of_222(a)) < 1e-13);
    // Tracing everything else preserves the full trace.
    const CMatrix single = partial_trace(a, l, {"q2"});
    CHECK(std::abs(trace(single) - trace(a)) < 1e-12);
  }
}

TEST_CASE("partial trace keep-set errors") {
  const SpaceLayout l = make_layout({2, 2}, {"q1", "q2"});
  const CMatrix a = CMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace(a, l, {}), UsageError);
  CHECK_THROWS_AS(partial_trace(a, l, {"nope"}), UsageError);
  CHECK_THROWS_AS(partial_trace(CMatrix::identity(3), l, {"q1"}), UsageError);
}

TEST_CASE("eigensolver on diagonal input") {
  CMatrix d(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  const EigResult e = eig_hermitian(d);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.values[2] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("eigensolver on sigma-dot-sigma: spectrum (-3, 1, 1, 1)") {
  CMatrix st(4, 4);
  st = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z());
  const EigResult e = eig_hermitian(st);
  CHECK(e.values[0] == doctest::Approx(-3.0).epsilon(1e-13));
  for (int i = 1; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigensolver reconstruction and unitarity on random Hermitian matrices") {
  std::mt19937_64 rng(7);
  for (int n : {2, 4, 8, 16}) {
    for (int rep = 0; rep < 6; ++rep) {
      const CMatrix h = random_hermitian(rng, n);
      const EigResult e = eig_hermitian(h);
      // V diag(w) V^dagger reproduces the input.
      CMatrix w(n, n);
      for (int i = 0; i < n; ++i) w(i, i) = e.values[i];
      const CMatrix rebuilt = e.vectors * w * adjoint(e.vectors);
      CHECK(max_abs_diff(rebuilt, h) < 1e-10);
      CHECK(max_abs_diff(adjoint(e.vectors) * e.vectors, CMatrix::identity(n)) < 1e-10);
      // Ascending order.
      for (int i = 1; i < n; ++i) CHECK(e.values[i] >= e.values[i - 1]);
    }
  }
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix h = random_hermitian(rng, 6);
    const CMatrix u = random_unitary(rng, 6);
    const EigResult e1 = eig_hermitian(h);
    const EigResult e2 = eig_hermitian(u * h * adjoint(u));
    for (int i = 0; i < 6; ++i)
      CHECK(e1.values[i] == doctest::Approx(e2.values[i]).epsilon(0).scale(1).epsilon(1e-9));
  }
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(a), ContractError);
}

TEST_CASE("expm_generator basics") {
  // angle 0 -> identity.
  std::mt19937_64 rng(3);
  const CMatrix h = random_hermitian(rng, 4);
  CHECK(max_abs_diff(expm_generator(h, 0.0), CMatrix::identity(4)) < 1e-12);

  // exp(-i (pi/2) sigma_x) = -i sigma_x.
  const CMatrix u = expm_generator(pauli_x(), kPi / 2.0);
  CHECK(max_abs_diff(u, Complex(0.0, -1.0) * pauli_x()) < 1e-13);
}

TEST_CASE("expm_generator produces unitaries that invert cleanly") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix h = random_hermitian(rng, 8);
    const double angle = 0.3 + 0.2 * rep;
    const CMatrix u = expm_generator(h, angle);
    CHECK(max_abs_diff(adjoint(u) * u, CMatrix::identity(8)) < 1e-11);
    const CMatrix uinv = expm_generator(h, -angle);
    CHECK(max_abs_diff(u * uinv, CMatrix::identity(8)) < 1e-11);
  }
}

TEST_CASE("expm_generator matches a power-series evaluation") {
  // Independent oracle: plain Taylor series of exp(-i angle h), summed in
  // double precision until the term norm underflows the tolerance.
  std::mt19937_64 rng(31);
  const CMatrix h = random_hermitian(rng, 5);
  const double angle = 0.7;
  CMatrix series = CMatrix::identity(5);
  CMatrix term = CMatrix::identity(5);
  for (int k = 1; k < 60; ++k) {
    term = (Complex(0.0, -angle) * (1.0 / k)) * (term * h);
    series = series + term;
    if (max_abs(term) < 1e-18) break;
  }
  CHECK(max_abs_diff(expm_generator(h, angle), series) < 1e-12);
}

TEST_CASE("finite-entry guard") {
  CMatrix a(2, 2);
  a(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(ensure_finite(a, "test"), ContractError);
}
