#include <doctest.h>

#include "kcpt/oracle.hpp"
#include "kcpt/transforms.hpp"
#include "series_helpers.hpp"
#include "support.hpp"

using namespace kcpt;
using kcpt::test::term;

namespace {

const GaussianRational kI = GaussianRational::imaginary_unit();

AlphaSeries random_generator(std::mt19937& rng, std::size_t modes, std::size_t order) {
  test::RandomShape shape;
  shape.modes = modes;
  shape.max_degree = 3;
  shape.max_terms = 2;
  shape.max_sqrt_hbar = 2;
  AlphaSeries g(modes, order);
  for (std::size_t k = 0; k <= order; ++k) g[k] = test::random_hermitian(rng, shape);
  return g;
}

AlphaSeries random_series(std::mt19937& rng, std::size_t modes, std::size_t order) {
  test::RandomShape shape;
  shape.modes = modes;
  shape.max_degree = 3;
  shape.max_terms = 3;
  AlphaSeries h(modes, order);
  for (std::size_t k = 0; k <= order; ++k) h[k] = test::random_expression(rng, shape);
  return h;
}

bool block_diagonal(const AlphaSeries& h, const ModeSystem& sys) {
  for (const auto& c : h.coeffs()) {
    if (!(project(c, sys) == c)) return false;
  }
  return true;
}

bool all_hermitian(const AlphaSeries& h) {
  for (const auto& c : h.coeffs()) {
    if (!is_hermitian(c)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : {Method::Kato, Method::VanVleck, Method::Magnus}) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("birkhoff"), ArgumentError);
}

TEST_CASE("deprit recursions at low order") {
  std::mt19937 rng(1);
  const ModeSystem sys = test::quartic_system();
  const AlphaSeries g = random_generator(rng, 1, 2);
  const AlphaSeries h0 = test::constant_series(sys.h0(), 2);
  const AlphaSeries v = deprit_inverse_apply(g, h0, 2);
  const auto L = [&](std::size_t k, const OperatorExpression& x) { return commutator(g[k], x); };
  CHECK(v[0] == sys.h0());
  CHECK(v[1] == L(0, sys.h0()) * (-kI));
  CHECK(v[2] == (L(0, L(0, sys.h0())) + L(1, sys.h0()) * kI) * GaussianRational(Rational(-1, 2)));
  const AlphaSeries u = deprit_forward_apply(g, h0, 2);
  CHECK(u[1] == L(0, sys.h0()) * kI);

  const AlphaSeries zero(1, 3);
  const AlphaSeries f = random_series(rng, 1, 3);
  CHECK(deprit_inverse_apply(zero, f, 3) == f);
  CHECK(deprit_forward_apply(zero, f, 3) == f);
  CHECK(fast_inverse_transform(zero, f, 3) == f);
}

TEST_CASE("forward after inverse is the identity") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t modes = 1 + static_cast<std::size_t>(trial % 2);
    const AlphaSeries g = random_generator(rng, modes, 3);
    const AlphaSeries f = random_series(rng, modes, 3);
    CHECK(deprit_forward_apply(g, deprit_inverse_apply(g, f, 3), 3) == f);
    CHECK(deprit_inverse_apply(g, deprit_forward_apply(g, f, 3), 3) == f);
  }
}

TEST_CASE("fast back-substitution equals the Deprit triangle on 50 random pairs") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t modes = 1 + static_cast<std::size_t>(trial % 2);
    const AlphaSeries g = random_generator(rng, modes, 5);
    const AlphaSeries h = random_series(rng, modes, 5);
    CHECK(fast_inverse_transform(g, h, 5) == deprit_inverse_apply(g, h, 5));
  }
}

TEST_CASE("kato pipeline on the quartic oscillator") {
  const ModeSystem sys = test::quartic_system();
  const BlockDiagonalResult r = kato_block_diagonalize(sys, test::quartic_h1(), 2);
  CHECK(r.effective_hamiltonian == test::quartic_reference());
  CHECK(r.method == Method::Kato);
  CHECK(r.generator.role == GeneratorRole::OrderedExponential);
  CHECK(r.peak_terms > 0);
  CHECK(all_hermitian(r.generator.coeffs));

  const BlockDiagonalResult zero = kato_block_diagonalize(sys, OperatorExpression(1), 3);
  CHECK(zero.effective_hamiltonian == test::constant_series(sys.h0(), 3));
  CHECK(zero.generator.coeffs.total_terms() == 0);
}

TEST_CASE("all methods agree on the quartic oscillator and stay block-diagonal") {
  const ModeSystem sys = test::quartic_system();
  const OperatorExpression h1 = test::quartic_h1();
  const AlphaSeries h = perturbed_hamiltonian(sys, h1, 5);
  const auto kato = kato_block_diagonalize(sys, h1, 5);
  const auto vv = van_vleck_block_diagonalize(sys, h, 5);
  const auto magnus = magnus_block_diagonalize(sys, h, 5);
  CHECK(kato.effective_hamiltonian == vv.effective_hamiltonian);
  CHECK(kato.effective_hamiltonian == magnus.effective_hamiltonian);
  for (const auto* r : {&kato, &vv, &magnus}) {
    CHECK(block_diagonal(r->effective_hamiltonian, sys));
    CHECK(all_hermitian(r->effective_hamiltonian));
    CHECK(all_hermitian(r->generator.coeffs));
  }
  CHECK(vv.generator.role == GeneratorRole::VanVleckChain);
  CHECK(magnus.generator.role == GeneratorRole::MagnusExponent);
  // leading generator is i S H1 for every method
  CHECK(vv.generator.coeffs[0] == integrate(h1, sys) * kI);
  CHECK(magnus.generator.coeffs[0] == integrate(h1, sys) * kI);
  CHECK(kato.generator.coeffs[0] == integrate(h1, sys) * kI);
}

TEST_CASE("fully resonant input is left alone") {
  const ModeSystem sys = test::henon_heiles_system();
  AlphaSeries h(2, 3);
  h[0] = sys.h0();
  h[1] = term({1, 1}, {1, 1}, 4, 1);
  h[2] = term({2, 0}, {0, 2}, 4, 1) + term({0, 2}, {2, 0}, 4, 1);
  for (const auto& r : {van_vleck_block_diagonalize(sys, h, 3), magnus_block_diagonalize(sys, h, 3)}) {
    CHECK(r.effective_hamiltonian == h);
    CHECK(r.generator.coeffs.total_terms() == 0);
  }
}

TEST_CASE("baseline methods validate their input") {
  const ModeSystem sys = test::quartic_system();
  AlphaSeries h(1, 2);
  h[0] = term({1}, {1}, 2, 1);  // missing the zero-point term
  CHECK_THROWS_AS(van_vleck_block_diagonalize(sys, h, 2), ArgumentError);
  h[0] = sys.h0();
  h[1] = term({1}, {0}, 1, 1);
  CHECK_THROWS_AS(magnus_block_diagonalize(sys, h, 2), ArgumentError);
  CHECK_THROWS_AS(kato_block_diagonalize(sys, term({1}, {0}, 1, 1), 2), ArgumentError);
}

TEST_CASE("Hénon-Heiles through alpha^4 for every method") {
  const ModeSystem sys = test::henon_heiles_system();
  const OperatorExpression h1 = test::henon_heiles_h1();
  const AlphaSeries reference = test::henon_heiles_reference();
  const AlphaSeries h = perturbed_hamiltonian(sys, h1, 4);
  CHECK(kato_block_diagonalize(sys, h1, 4).effective_hamiltonian == reference);
  CHECK(van_vleck_block_diagonalize(sys, h, 4).effective_hamiltonian == reference);
  CHECK(magnus_block_diagonalize(sys, h, 4).effective_hamiltonian == reference);
}

TEST_CASE("closed-form effective Hamiltonian matches the pipeline") {
  for (const auto& [sys, h1] : {std::pair{test::quartic_system(), test::quartic_h1()},
                                std::pair{test::henon_heiles_system(), test::henon_heiles_h1()}}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(kato_effective_direct(sys, h1, n) == kato_block_diagonalize(sys, h1, n).effective_hamiltonian);
    }
  }
  CHECK(kato_effective_direct(test::quartic_system(), test::quartic_h1(), 2) == test::quartic_reference());
  CHECK(kato_effective_direct(test::quartic_system(), test::quartic_h1(), 1) == test::quartic_reference().truncated(1));
  CHECK_THROWS_AS(kato_effective_direct(test::quartic_system(), test::quartic_h1(), 5), UnsupportedError);
}

TEST_CASE("the inverse ordered exponential intertwines P_H with P") {
  constexpr std::size_t N = 3;
  std::mt19937 rng(9);
  const ModeSystem sys = test::henon_heiles_system();
  const OperatorExpression h1 = test::henon_heiles_h1();
  const AlphaSeries g = kato_generator(sys, h1, N);
  for (int trial = 0; trial < 3; ++trial) {
    test::RandomShape shape;
    shape.modes = 2;
    shape.max_degree = 3;
    shape.max_terms = 4;
    const OperatorExpression f = test::random_hermitian(rng, shape);
    const AlphaSeries lhs = fast_inverse_transform(g, kato_series(KatoKind::Projector, N, f, sys, h1), N);
    const AlphaSeries vf = fast_inverse_transform(g, test::constant_series(f, N), N);
    for (std::size_t n = 0; n <= N; ++n) CHECK(lhs[n] == project(vf[n], sys));
  }
}

TEST_CASE("shifted Kato generators") {
  const ModeSystem sys = test::henon_heiles_system();
  const OperatorExpression h1 = test::henon_heiles_h1();
  AlphaSeries shift_a(2, 0);
  shift_a[0] = term({1, 1}, {1, 1}, 4, 1) + term({2, 0}, {0, 2}, 4, Rational(1, 2)) + term({0, 2}, {2, 0}, 4, Rational(1, 2));
  AlphaSeries shift_b(2, 1);
  shift_b[0] = term({1, 0}, {0, 1}, 2, 3) + term({0, 1}, {1, 0}, 2, 3);
  shift_b[1] = term({2, 0}, {0, 0}, 1, 1) + term({0, 0}, {2, 0}, 1, 1);  // non-resonant, still allowed
  const auto ra = kato_block_diagonalize(sys, h1, 4, shift_a);
  const auto rb = kato_block_diagonalize(sys, h1, 4, shift_b);
  CHECK(block_diagonal(ra.effective_hamiltonian, sys));
  CHECK(block_diagonal(rb.effective_hamiltonian, sys));
  const OperatorExpression diff = ra.generator.coeffs[0] - rb.generator.coeffs[0];
  CHECK(project(diff, sys) == diff);
  CHECK(all_hermitian(ra.generator.coeffs));

  AlphaSeries bad(2, 0);
  bad[0] = term({1, 0}, {0, 0}, 1, 1);
  CHECK_THROWS_AS(kato_block_diagonalize(sys, h1, 2, bad), ArgumentError);
  CHECK_THROWS_AS(kato_block_diagonalize(sys, h1, 2, AlphaSeries(1, 0)), DimensionError);
}

TEST_CASE("a shift leaves the quartic spectrum unchanged") {
  const ModeSystem sys = test::quartic_system();
  const OperatorExpression h1 = test::quartic_h1();
  AlphaSeries shift(1, 2);
  shift[0] = term({2}, {2}, 4, Rational(2, 3));
  shift[2] = term({1}, {1}, 2, -5) + term({3}, {0}, 3, 1) + term({0}, {3}, 3, 1);
  const auto plain = kato_block_diagonalize(sys, h1, 4);
  const auto shifted = kato_block_diagonalize(sys, h1, 4, shift);
  CHECK(block_diagonal(shifted.effective_hamiltonian, sys));
  const FockMatrix a = fock_matrix(plain.effective_hamiltonian, sys, 40, 1.0, 1e-3);
  const FockMatrix b = fock_matrix(shifted.effective_hamiltonian, sys, 40, 1.0, 1e-3);
  const auto ea = lowest_eigenvalues(a, 5);
  const auto eb = lowest_eigenvalues(b, 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(ea[i] - eb[i]) < 1e-12);
}
