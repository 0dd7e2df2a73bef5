#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kcpt/errors.hpp"
#include "kcpt/rational.hpp"

namespace kcpt {

/// Largest supported number of oscillator modes.
inline constexpr std::size_t kMaxModes = 8;

class GaussianRational;
class LadderMonomial;
class OperatorExpression;

namespace detail {
class TermAccumulator;
void accumulate_product(TermAccumulator& acc, const LadderMonomial& a, const LadderMonomial& b,
                        const GaussianRational& coeff, bool contracted_only);
OperatorExpression expression_from_canonical(std::size_t modes,
                                             std::vector<std::pair<LadderMonomial, GaussianRational>> terms);
}  // namespace detail

/// Exact complex rational re + i*im.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(std::int64_t re) : re_(re) {}         // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& rhs);
  GaussianRational& operator-=(const GaussianRational& rhs);
  GaussianRational& operator*=(const GaussianRational& rhs);
  GaussianRational& operator*=(const Rational& rhs);
  GaussianRational& operator/=(const GaussianRational& rhs);

  /// this += a * b (b real).
  void add_product(const GaussianRational& a, const Rational& b);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  /// "a", "a + b*i", "b*i" with rational a, b.
  std::string to_string() const;

 private:
  Rational re_;
  Rational im_;
};

/// Normal-ordered monomial a†^m a^n over a fixed number of modes, scaled by the ℏ factor
///
///   ℏ^(e/2) · 2^(-(e mod 2)/2),   e = sqrt_hbar.
///
/// Even e is a plain power of ℏ. Odd e carries one extra 1/√2, so that q = √(ℏ/2)(a†+a)
/// has rational coefficients; the product of two odd-e monomials picks up a factor 1/2.
class LadderMonomial {
 public:
  using Exponent = std::uint8_t;

  LadderMonomial() = default;
  /// The identity monomial over `modes` modes.
  explicit LadderMonomial(std::size_t modes);
  LadderMonomial(std::span<const int> dagger, std::span<const int> lower, int sqrt_hbar);
  LadderMonomial(std::initializer_list<int> dagger, std::initializer_list<int> lower, int sqrt_hbar = 0);

  std::size_t modes() const { return modes_; }
  std::span<const Exponent> dagger() const { return {dagger_.data(), modes_}; }
  std::span<const Exponent> lower() const { return {lower_.data(), modes_}; }
  int dagger(std::size_t k) const { return dagger_[k]; }
  int lower(std::size_t k) const { return lower_[k]; }
  int sqrt_hbar() const { return sqrt_hbar_; }
  int degree() const;

  LadderMonomial with_sqrt_hbar(int sqrt_hbar) const;
  /// a†^n a^m for a†^m a^n (the formal swap, not yet reordered).
  LadderMonomial swapped() const;

  friend bool operator==(const LadderMonomial&, const LadderMonomial&) = default;
  friend std::strong_ordering operator<=>(const LadderMonomial& a, const LadderMonomial& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  friend void detail::accumulate_product(detail::TermAccumulator&, const LadderMonomial&, const LadderMonomial&,
                                         const GaussianRational&, bool);

  std::uint8_t modes_ = 0;
  std::array<Exponent, kMaxModes> dagger_{};
  std::array<Exponent, kMaxModes> lower_{};
  std::int16_t sqrt_hbar_ = 0;
};

struct LadderMonomialHash {
  std::size_t operator()(const LadderMonomial& m) const { return m.hash(); }
};

/// Normal-ordered expansion of the product a·b.
OperatorExpression normal_order_product(const LadderMonomial& a, const LadderMonomial& b);

/// Sparse sum of normal-ordered monomials with nonzero Gaussian-rational coefficients,
/// kept sorted by monomial.
class OperatorExpression {
 public:
  using Term = std::pair<LadderMonomial, GaussianRational>;

  /// The zero operator over `modes` modes; throws DimensionError unless 1 <= modes <= kMaxModes.
  explicit OperatorExpression(std::size_t modes);
  /// Builds from arbitrary (possibly repeated or zero) terms.
  OperatorExpression(std::size_t modes, std::vector<Term> terms);

  static OperatorExpression identity(std::size_t modes);
  static OperatorExpression constant(std::size_t modes, GaussianRational value);
  static OperatorExpression monomial(const LadderMonomial& m, GaussianRational coeff = 1);
  static OperatorExpression creation(std::size_t modes, std::size_t k);
  static OperatorExpression annihilation(std::size_t modes, std::size_t k);

  std::size_t modes() const { return modes_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  GaussianRational coefficient(const LadderMonomial& m) const;
  int max_degree() const;

  OperatorExpression& operator+=(const OperatorExpression& rhs);
  OperatorExpression& operator-=(const OperatorExpression& rhs);
  OperatorExpression& operator*=(const GaussianRational& scalar);

  friend OperatorExpression operator+(OperatorExpression a, const OperatorExpression& b) { return a += b; }
  friend OperatorExpression operator-(OperatorExpression a, const OperatorExpression& b) { return a -= b; }
  friend OperatorExpression operator*(OperatorExpression a, const GaussianRational& s) { return a *= s; }
  friend OperatorExpression operator*(const GaussianRational& s, OperatorExpression a) { return a *= s; }
  OperatorExpression operator-() const;

  friend bool operator==(const OperatorExpression&, const OperatorExpression&) = default;

  std::string to_string() const;

 private:
  friend OperatorExpression detail::expression_from_canonical(std::size_t, std::vector<Term>);

  std::uint8_t modes_;
  std::vector<Term> terms_;
};

OperatorExpression multiply(const OperatorExpression& a, const OperatorExpression& b);
/// [a, b] = ab - ba.
OperatorExpression commutator(const OperatorExpression& a, const OperatorExpression& b);
OperatorExpression adjoint(const OperatorExpression& a);
bool is_hermitian(const OperatorExpression& a);

/// Truncated power series Σ_{k<=order} α^k c_k with operator coefficients.
class AlphaSeries {
 public:
  AlphaSeries(std::size_t modes, std::size_t order);
  explicit AlphaSeries(std::vector<OperatorExpression> coeffs);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t modes() const { return coeffs_.front().modes(); }
  const OperatorExpression& operator[](std::size_t k) const { return coeffs_.at(k); }
  OperatorExpression& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<OperatorExpression>& coeffs() const { return coeffs_; }

  /// Coefficient k, or zero when k exceeds the order.
  OperatorExpression at_or_zero(std::size_t k) const;
  AlphaSeries truncated(std::size_t order) const;
  std::size_t total_terms() const;

  AlphaSeries& operator+=(const AlphaSeries& rhs);
  AlphaSeries& operator-=(const AlphaSeries& rhs);
  friend AlphaSeries operator+(AlphaSeries a, const AlphaSeries& b) { return a += b; }
  friend AlphaSeries operator-(AlphaSeries a, const AlphaSeries& b) { return a -= b; }

  friend bool operator==(const AlphaSeries&, const AlphaSeries&) = default;

 private:
  std::vector<OperatorExpression> coeffs_;
};

/// Position/momentum symbols appearing in phase-space polynomials.
struct PhaseSpaceFactor {
  enum class Kind : std::uint8_t { Position, Momentum };
  Kind kind;
  std::size_t mode;  // 0-based
  int power;

  friend bool operator==(const PhaseSpaceFactor&, const PhaseSpaceFactor&) = default;
};

/// A rational coefficient times an ordered (noncommutative) word in q_k, p_k.
struct PhaseSpaceTerm {
  Rational coeff;
  std::vector<PhaseSpaceFactor> word;

  friend bool operator==(const PhaseSpaceTerm&, const PhaseSpaceTerm&) = default;
};

/// Polynomial in q_k, p_k; products keep their written operator order.
struct PhaseSpacePolynomial {
  std::vector<PhaseSpaceTerm> terms;

  std::size_t max_mode() const;
  /// Text form accepted by the problem-file polynomial grammar.
  std::string to_string() const;

  friend bool operator==(const PhaseSpacePolynomial&, const PhaseSpacePolynomial&) = default;
};

/// Substitutes q = √(ℏ/2)(a†+a), p = i√(ℏ/2)(a†-a) and normal-orders.
OperatorExpression from_position_momentum(const PhaseSpacePolynomial& poly, std::size_t modes);

}  // namespace kcpt
