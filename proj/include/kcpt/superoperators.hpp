#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kcpt/ladder_algebra.hpp"

namespace kcpt {

/// d harmonic modes with exact positive frequencies; defines H0 = Σ ω_k ℏ (a†_k a_k + 1/2).
class ModeSystem {
 public:
  explicit ModeSystem(std::vector<Rational> omega);

  std::size_t modes() const { return omega_.size(); }
  const std::vector<Rational>& omega() const { return omega_; }

  OperatorExpression h0() const;

  friend bool operator==(const ModeSystem&, const ModeSystem&) = default;

 private:
  std::vector<Rational> omega_;
};

/// (ω, m - n) for the monomial a†^m a^n. L_{H0} multiplies the monomial by ℏ times this.
Rational weight(const LadderMonomial& m, const ModeSystem& sys);

/// P: keeps the resonant (zero-weight) terms.
OperatorExpression project(const OperatorExpression& f, const ModeSystem& sys);
/// S: divides each non-resonant term by ℏ·weight and drops the resonant ones.
OperatorExpression integrate(const OperatorExpression& f, const ModeSystem& sys);
/// S^power (power >= 1), or -P for power == 0.
OperatorExpression integrate_power(const OperatorExpression& f, const ModeSystem& sys, int power);
/// L_{H0} F = [H0, F], computed from the weights.
OperatorExpression liouville_h0(const OperatorExpression& f, const ModeSystem& sys);

enum class KatoKind { Projector, Integrator, EigenNilpotent };

/// Total number of S factors distributed over the n+1 slots of the α^n term:
/// n, n+1 and n-1 for P_H, S_H and D_H.
int kato_weight(KatoKind kind, int n);

/// Calls fn with every composition of `total` into `parts` nonnegative parts, in
/// lexicographic order. fn receives (p_1, ..., p_parts).
void for_each_composition(int parts, int total, const std::function<void(std::span<const int>)>& fn);

/// Number of compositions summed by kato_apply at order n.
std::uint64_t composition_count(KatoKind kind, int n);

/// α^n coefficient of the perturbed superoperator (P_H, S_H or D_H) of H = H0 + αH1, applied to f.
OperatorExpression kato_apply(KatoKind kind, int n, const OperatorExpression& f, const ModeSystem& sys,
                              const OperatorExpression& h1);

/// kato_apply for n = 0..order, collected into a series (the α^0 term of D_H is zero).
AlphaSeries kato_series(KatoKind kind, std::size_t order, const OperatorExpression& f, const ModeSystem& sys,
                        const OperatorExpression& h1);

/// Generator G = i S_H H1 through α^order, computed with the F-table recursion
///   F_0^0 = P H1,  F_0^m = -S^m H1,  F_{n+1}^m = Σ_k Z_0^{m-k} L_{H1} F_n^k,
/// with G_n = -i F_n^{n+1}.
AlphaSeries kato_generator(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order);

}  // namespace kcpt
