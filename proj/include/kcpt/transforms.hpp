#pragma once

#include <optional>
#include <string_view>

#include "kcpt/ladder_algebra.hpp"
#include "kcpt/superoperators.hpp"

namespace kcpt {

enum class GeneratorRole { OrderedExponential, VanVleckChain, MagnusExponent };

enum class Method { Kato, VanVleck, Magnus };

std::string_view method_name(Method m);
/// "kato", "vanvleck", "magnus"; throws ArgumentError otherwise.
Method parse_method(std::string_view name);

/// Hermitian generator coefficients G_0, G_1, ... and how they are meant to be applied.
struct GeneratorSeries {
  AlphaSeries coeffs;
  GeneratorRole role;
};

struct BlockDiagonalResult {
  AlphaSeries effective_hamiltonian;
  GeneratorSeries generator;
  Method method;
  std::size_t order;
  /// Largest intermediate expression (in terms) seen while transforming.
  std::size_t peak_terms = 0;
};

/// H0 + αH1 as a series of the given order.
AlphaSeries perturbed_hamiltonian(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order);

/// (Σ α^n V_n) F through α^order with the Deprit recursion V_n = -(i/n) Σ_k V_k L_{G_{n-k-1}}.
/// Evaluated literally (exponential in the order); intended as a reference.
AlphaSeries deprit_inverse_apply(const AlphaSeries& g, const AlphaSeries& f, std::size_t order);

/// (Σ α^n U_n) F through α^order with U_n = (i/n) Σ_k L_{G_{n-k-1}} U_k.
AlphaSeries deprit_forward_apply(const AlphaSeries& g, const AlphaSeries& f, std::size_t order);

/// Same result as deprit_inverse_apply, by back-substitution over the auxiliary series
/// F_k = Σ_{j>=k} α^j H_{j-k}:  F_k <- F_k - i/(n+1) L_{G_{n-k}} F_{n+1},  n = order-1 .. 0.
AlphaSeries fast_inverse_transform(const AlphaSeries& g, const AlphaSeries& h, std::size_t order,
                                   std::size_t* peak_terms = nullptr);

/// Ordered exponential with G = i S_H H1 (+ P_H F when a shift series is given).
BlockDiagonalResult kato_block_diagonalize(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order,
                                           const std::optional<AlphaSeries>& shift = std::nullopt);

/// Chain of exponents exp(-iα^n L_{G_{n-1}}) ... exp(-iα L_{G_0}) with G_{n-1} = i S h_n.
BlockDiagonalResult van_vleck_block_diagonalize(const ModeSystem& sys, const AlphaSeries& h, std::size_t order);

/// Single exponent exp(-i Σ_k α^k L_{G_{k-1}}) built order by order.
BlockDiagonalResult magnus_block_diagonalize(const ModeSystem& sys, const AlphaSeries& h, std::size_t order);

/// Closed-form effective Hamiltonian through α^4 written directly in P, S and L_{H1}.
AlphaSeries kato_effective_direct(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order);

}  // namespace kcpt
