#pragma once

#include <unordered_map>

#include "kcpt/ladder_algebra.hpp"

namespace kcpt::detail {

/// Hash-based collector of terms; finish() drops zeros and sorts canonically.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t modes) : modes_(modes) {}

  void add(const LadderMonomial& m, const GaussianRational& c);
  /// Adds c * factor to the coefficient of m.
  void add_scaled(const LadderMonomial& m, const GaussianRational& c, const Rational& factor);
  void add_expression(const OperatorExpression& e, const GaussianRational& scale = 1);
  void reserve(std::size_t n) { map_.reserve(n); }

  OperatorExpression finish();

 private:
  std::size_t modes_;
  std::unordered_map<LadderMonomial, GaussianRational, LadderMonomialHash> map_;
};

/// Accumulates sign * coeff * (a·b) in normal order. With `contracted_only`, the uncontracted
/// term a†^(ma+mb) a^(na+nb) is skipped (it cancels in a commutator).
void accumulate_product(TermAccumulator& acc, const LadderMonomial& a, const LadderMonomial& b,
                        const GaussianRational& coeff, bool contracted_only);

/// Builds an expression from terms already sorted, unique and nonzero.
OperatorExpression expression_from_canonical(std::size_t modes, std::vector<OperatorExpression::Term> terms);

}  // namespace kcpt::detail
