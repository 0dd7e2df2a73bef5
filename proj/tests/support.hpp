#pragma once

#include <random>
#include <vector>

#include "kcpt/ladder_algebra.hpp"
#include "kcpt/superoperators.hpp"

namespace kcpt::test {

struct RandomShape {
  std::size_t modes = 1;
  int max_degree = 4;  // per-mode cap on dagger and lower exponents, total degree <= max_degree
  std::size_t max_terms = 20;
  int min_sqrt_hbar = 0;
  int max_sqrt_hbar = 4;
  bool complex = true;
};

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  return Rational(num(rng), den(rng));
}

inline GaussianRational random_scalar(std::mt19937& rng, bool complex) {
  GaussianRational c(random_rational(rng), complex ? random_rational(rng) : Rational(0));
  if (c.is_zero()) c = GaussianRational(1);
  return c;
}

inline LadderMonomial random_monomial(std::mt19937& rng, const RandomShape& s) {
  std::uniform_int_distribution<int> pick(0, s.max_degree);
  std::uniform_int_distribution<int> hb(s.min_sqrt_hbar, s.max_sqrt_hbar);
  std::vector<int> dagger(s.modes, 0);
  std::vector<int> lower(s.modes, 0);
  int budget = pick(rng);
  std::uniform_int_distribution<std::size_t> slot(0, 2 * s.modes - 1);
  while (budget-- > 0) {
    const std::size_t k = slot(rng);
    (k < s.modes ? dagger[k] : lower[k - s.modes]) += 1;
  }
  return LadderMonomial(dagger, lower, hb(rng));
}

inline OperatorExpression random_expression(std::mt19937& rng, const RandomShape& s) {
  std::uniform_int_distribution<std::size_t> count(1, s.max_terms);
  std::vector<OperatorExpression::Term> terms;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) terms.emplace_back(random_monomial(rng, s), random_scalar(rng, s.complex));
  return OperatorExpression(s.modes, std::move(terms));
}

inline OperatorExpression random_hermitian(std::mt19937& rng, const RandomShape& s) {
  const OperatorExpression a = random_expression(rng, s);
  return a + adjoint(a);
}

// Monomial helper: m({dagger...}, {lower...}, e) with a coefficient.
inline OperatorExpression term(std::initializer_list<int> dagger, std::initializer_list<int> lower, int sqrt_hbar,
                               const GaussianRational& c) {
  return OperatorExpression::monomial(LadderMonomial(dagger, lower, sqrt_hbar), c);
}

inline ModeSystem quartic_system() { return ModeSystem({Rational(1)}); }
inline ModeSystem henon_heiles_system() { return ModeSystem({Rational(1), Rational(1)}); }

// Σ_j c_j (N + 1/2)^j with N = a†a on one mode, every term carrying sqrt_hbar exponent e.
inline OperatorExpression shifted_number_polynomial(const std::vector<Rational>& c, int sqrt_hbar) {
  const OperatorExpression shifted = term({1}, {1}, 0, 1) + OperatorExpression::constant(1, Rational(1, 2));
  OperatorExpression power = OperatorExpression::identity(1);
  OperatorExpression sum(1);
  for (const auto& cj : c) {
    sum += power * GaussianRational(cj);
    power = multiply(power, shifted);
  }
  OperatorExpression out(1);
  for (const auto& [m, v] : sum.terms()) out += OperatorExpression::monomial(m.with_sqrt_hbar(sqrt_hbar), v);
  return out;
}

// The displayed quartic effective Hamiltonian through α²:
//   ℏ(N+½) + αℏ²(3/8(N+½)² + 3/32) − α²ℏ³(17/64(N+½)³ + 67/256(N+½))
inline AlphaSeries quartic_reference() {
  return AlphaSeries({shifted_number_polynomial({0, 1}, 2),
                      shifted_number_polynomial({Rational(3, 32), 0, Rational(3, 8)}, 4),
                      shifted_number_polynomial({0, Rational(-67, 256), 0, Rational(-17, 64)}, 6)});
}

// The displayed Hénon-Heiles effective Hamiltonian through α⁴ (odd orders vanish).
inline AlphaSeries henon_heiles_reference() {
  auto r = [](std::int64_t p, std::int64_t q) { return GaussianRational(Rational(p, q)); };
  AlphaSeries h(2, 4);
  h[0] = term({1, 0}, {1, 0}, 2, 1) + term({0, 1}, {0, 1}, 2, 1) + term({0, 0}, {0, 0}, 2, 1);
  h[2] = term({0, 0}, {0, 0}, 4, r(-1, 9)) + term({1, 0}, {1, 0}, 4, r(-2, 3)) + term({0, 1}, {0, 1}, 4, r(-2, 3)) +
         term({2, 0}, {2, 0}, 4, r(-5, 12)) + term({0, 2}, {0, 2}, 4, r(-5, 12)) + term({0, 2}, {2, 0}, 4, r(-7, 12)) +
         term({2, 0}, {0, 2}, 4, r(-7, 12)) + term({1, 1}, {1, 1}, 4, r(1, 3));
  h[4] = term({0, 0}, {0, 0}, 6, r(-11, 108)) + term({1, 0}, {1, 0}, 6, r(-61, 54)) +
         term({0, 1}, {0, 1}, 6, r(-61, 54)) + term({2, 0}, {2, 0}, 6, r(-47, 48)) +
         term({0, 2}, {0, 2}, 6, r(-47, 48)) + term({0, 2}, {2, 0}, 6, r(7, 48)) + term({2, 0}, {0, 2}, 6, r(7, 48)) +
         term({1, 1}, {1, 1}, 6, r(-9, 4)) + term({3, 0}, {3, 0}, 6, r(101, 432)) +
         term({3, 0}, {1, 2}, 6, r(-161, 144)) + term({2, 1}, {2, 1}, 6, r(-65, 16)) +
         term({2, 1}, {0, 3}, 6, r(175, 144)) + term({0, 3}, {0, 3}, 6, r(-235, 432)) +
         term({1, 2}, {3, 0}, 6, r(-161, 144)) + term({1, 2}, {1, 2}, 6, r(47, 16)) +
         term({0, 3}, {2, 1}, 6, r(175, 144));
  return h;
}

inline OperatorExpression quartic_h1() {
  return from_position_momentum(
      PhaseSpacePolynomial{{PhaseSpaceTerm{Rational(1, 4), {{PhaseSpaceFactor::Kind::Position, 0, 4}}}}}, 1);
}

inline OperatorExpression henon_heiles_h1() {
  using K = PhaseSpaceFactor::Kind;
  return from_position_momentum(PhaseSpacePolynomial{{PhaseSpaceTerm{1, {{K::Position, 0, 2}, {K::Position, 1, 1}}},
                                                      PhaseSpaceTerm{Rational(-1, 3), {{K::Position, 1, 3}}}}},
                                2);
}

}  // namespace kcpt::test
