#include "kcpt/ladder_algebra.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "kcpt/detail/term_accumulator.hpp"

namespace kcpt {

namespace {

std::uint8_t checked_modes(std::size_t modes) {
  if (modes == 0 || modes > kMaxModes) {
    throw DimensionError("mode count must be in [1, " + std::to_string(kMaxModes) + "], got " +
                         std::to_string(modes));
  }
  return static_cast<std::uint8_t>(modes);
}

LadderMonomial::Exponent checked_exponent(int value) {
  if (value < 0 || value > 255) throw std::out_of_range("ladder exponent out of range: " + std::to_string(value));
  return static_cast<LadderMonomial::Exponent>(value);
}

void require_same_modes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("mode-count mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// k! C(n,k) C(m,k): the weight of k contractions in a^n a†^m.
Rational contraction_weight_uncached(int n, int m, int k) {
  mpz_class w = 1;
  for (int j = 0; j < k; ++j) {
    w *= (n - j);
    w *= (m - j);
  }
  mpz_class kf;
  mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(mpq_class(w, kf));
}

constexpr int kCachedExponent = 32;

struct ContractionTable {
  // offset[n * kCachedExponent + m] indexes the k = 0 entry of the (n, m) row.
  std::vector<std::size_t> offset;
  std::vector<Rational> weights;

  ContractionTable() : offset(kCachedExponent * kCachedExponent) {
    for (int n = 0; n < kCachedExponent; ++n) {
      for (int m = 0; m < kCachedExponent; ++m) {
        offset[n * kCachedExponent + m] = weights.size();
        for (int k = 0; k <= std::min(n, m); ++k) weights.push_back(contraction_weight_uncached(n, m, k));
      }
    }
  }
};

const Rational& contraction_weight(int n, int m, int k, Rational& scratch) {
  if (n < kCachedExponent && m < kCachedExponent) {
    static const ContractionTable table;
    return table.weights[table.offset[n * kCachedExponent + m] + k];
  }
  scratch = contraction_weight_uncached(n, m, k);
  return scratch;
}

}  // namespace

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs) {
  re_ += rhs.re_;
  if (!rhs.im_.is_zero()) im_ += rhs.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs) {
  re_ -= rhs.re_;
  if (!rhs.im_.is_zero()) im_ -= rhs.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs) {
  if (rhs.im_.is_zero()) return *this *= rhs.re_;
  if (im_.is_zero()) {
    im_ = re_ * rhs.im_;
    re_ *= rhs.re_;
    return *this;
  }
  Rational re = re_ * rhs.re_;
  re.sub_product(im_, rhs.im_);
  Rational im = re_ * rhs.im_;
  im.add_product(im_, rhs.re_);
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator*=(const Rational& rhs) {
  re_ *= rhs;
  if (!im_.is_zero()) im_ *= rhs;
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Gaussian rational division by zero");
  Rational norm = rhs.re_ * rhs.re_;
  norm.add_product(rhs.im_, rhs.im_);
  *this *= rhs.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const Rational& b) {
  if (!a.re_.is_zero()) re_.add_product(a.re_, b);
  if (!a.im_.is_zero()) im_.add_product(a.im_, b);
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  const std::string im = (im_.is_one() ? std::string() : (im_ == Rational(-1) ? "-" : im_.to_string() + "*")) + "i";
  if (re_.is_zero()) return im;
  if (im_.sign() < 0) {
    const Rational mag = -im_;
    return re_.to_string() + " - " + (mag.is_one() ? std::string() : mag.to_string() + "*") + "i";
  }
  return re_.to_string() + " + " + im;
}

// ---------------------------------------------------------------------------
// LadderMonomial

LadderMonomial::LadderMonomial(std::size_t modes) : modes_(checked_modes(modes)) {}

LadderMonomial::LadderMonomial(std::span<const int> dagger, std::span<const int> lower, int sqrt_hbar)
    : modes_(checked_modes(dagger.size())), sqrt_hbar_(static_cast<std::int16_t>(sqrt_hbar)) {
  require_same_modes(dagger.size(), lower.size());
  for (std::size_t k = 0; k < modes_; ++k) {
    dagger_[k] = checked_exponent(dagger[k]);
    lower_[k] = checked_exponent(lower[k]);
  }
}

LadderMonomial::LadderMonomial(std::initializer_list<int> dagger, std::initializer_list<int> lower, int sqrt_hbar)
    : LadderMonomial(std::span<const int>(dagger.begin(), dagger.size()),
                     std::span<const int>(lower.begin(), lower.size()), sqrt_hbar) {}

int LadderMonomial::degree() const {
  int d = 0;
  for (std::size_t k = 0; k < modes_; ++k) d += dagger_[k] + lower_[k];
  return d;
}

LadderMonomial LadderMonomial::with_sqrt_hbar(int sqrt_hbar) const {
  LadderMonomial out = *this;
  out.sqrt_hbar_ = static_cast<std::int16_t>(sqrt_hbar);
  return out;
}

LadderMonomial LadderMonomial::swapped() const {
  LadderMonomial out = *this;
  std::swap(out.dagger_, out.lower_);
  return out;
}

std::strong_ordering operator<=>(const LadderMonomial& a, const LadderMonomial& b) {
  if (auto c = a.modes_ <=> b.modes_; c != 0) return c;
  if (auto c = a.dagger_ <=> b.dagger_; c != 0) return c;
  if (auto c = a.lower_ <=> b.lower_; c != 0) return c;
  return a.sqrt_hbar_ <=> b.sqrt_hbar_;
}

std::size_t LadderMonomial::hash() const {
  static_assert(kMaxModes == sizeof(std::uint64_t));
  std::uint64_t d;
  std::uint64_t l;
  std::memcpy(&d, dagger_.data(), sizeof d);
  std::memcpy(&l, lower_.data(), sizeof l);
  return mix64(d ^ mix64(l ^ (static_cast<std::uint64_t>(static_cast<std::uint16_t>(sqrt_hbar_)) << 8 | modes_)));
}

std::string LadderMonomial::to_string() const {
  std::ostringstream os;
  bool any = false;
  auto factor = [&](const char* sym, std::size_t k, int power) {
    if (power == 0) return;
    if (any) os << ' ';
    os << sym << (k + 1);
    if (power != 1) os << '^' << power;
    any = true;
  };
  for (std::size_t k = 0; k < modes_; ++k) factor("a+", k, dagger_[k]);
  for (std::size_t k = 0; k < modes_; ++k) factor("a", k, lower_[k]);
  if (sqrt_hbar_ != 0) {
    if (any) os << ' ';
    const int e = sqrt_hbar_;
    const int whole = (e - (e & 1)) / 2;
    if (whole != 0) os << "hbar" << (whole != 1 ? "^" + std::to_string(whole) : std::string());
    if (e & 1) os << (whole != 0 ? " " : "") << "sqrt(hbar/2)";
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

// ---------------------------------------------------------------------------
// Product kernel

namespace detail {

void TermAccumulator::add(const LadderMonomial& m, const GaussianRational& c) {
  auto [it, inserted] = map_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add_scaled(const LadderMonomial& m, const GaussianRational& c, const Rational& factor) {
  auto [it, inserted] = map_.try_emplace(m);
  it->second.add_product(c, factor);
}

void TermAccumulator::add_expression(const OperatorExpression& e, const GaussianRational& scale) {
  require_same_modes(modes_, e.modes());
  const bool unit = scale == GaussianRational(1);
  for (const auto& [m, c] : e.terms()) {
    if (unit) {
      add(m, c);
    } else {
      add(m, c * scale);
    }
  }
}

OperatorExpression TermAccumulator::finish() {
  std::vector<OperatorExpression::Term> terms;
  terms.reserve(map_.size());
  for (auto& [m, c] : map_) {
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  }
  map_.clear();
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return expression_from_canonical(modes_, std::move(terms));
}

void accumulate_product(TermAccumulator& acc, const LadderMonomial& a, const LadderMonomial& b,
                        const GaussianRational& coeff, bool contracted_only) {
  const std::size_t d = a.modes_;
  require_same_modes(d, b.modes_);

  GaussianRational base = coeff;
  if ((a.sqrt_hbar_ & 1) && (b.sqrt_hbar_ & 1)) base *= Rational(1, 2);

  std::array<int, kMaxModes> kmax{};
  bool any_contraction = false;
  for (std::size_t j = 0; j < d; ++j) {
    kmax[j] = std::min<int>(a.lower_[j], b.dagger_[j]);
    any_contraction |= kmax[j] > 0;
  }
  if (contracted_only && !any_contraction) return;

  LadderMonomial out = a;
  out.sqrt_hbar_ = static_cast<std::int16_t>(a.sqrt_hbar_ + b.sqrt_hbar_);
  for (std::size_t j = 0; j < d; ++j) {
    out.dagger_[j] = checked_exponent(a.dagger_[j] + b.dagger_[j]);
    out.lower_[j] = checked_exponent(a.lower_[j] + b.lower_[j]);
  }

  std::array<int, kMaxModes> k{};
  Rational scratch;
  Rational weight;
  while (true) {
    bool contracted = false;
    for (std::size_t j = 0; j < d; ++j) contracted |= k[j] > 0;
    if (contracted || !contracted_only) {
      weight = Rational(1);
      for (std::size_t j = 0; j < d; ++j) {
        if (k[j] > 0) weight *= contraction_weight(a.lower_[j], b.dagger_[j], k[j], scratch);
      }
      acc.add_scaled(out, base, weight);
    }
    // odometer step: contracting one more pair lowers both exponents of that mode
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (k[j] < kmax[j]) {
        ++k[j];
        --out.dagger_[j];
        --out.lower_[j];
        break;
      }
      out.dagger_[j] = static_cast<LadderMonomial::Exponent>(out.dagger_[j] + k[j]);
      out.lower_[j] = static_cast<LadderMonomial::Exponent>(out.lower_[j] + k[j]);
      k[j] = 0;
    }
    if (j == d) break;
  }
}

OperatorExpression expression_from_canonical(std::size_t modes, std::vector<OperatorExpression::Term> terms) {
  OperatorExpression out(modes);
  out.terms_ = std::move(terms);
  return out;
}

}  // namespace detail

OperatorExpression normal_order_product(const LadderMonomial& a, const LadderMonomial& b) {
  require_same_modes(a.modes(), b.modes());
  detail::TermAccumulator acc(a.modes());
  detail::accumulate_product(acc, a, b, GaussianRational(1), false);
  return acc.finish();
}

// ---------------------------------------------------------------------------
// OperatorExpression

OperatorExpression::OperatorExpression(std::size_t modes) : modes_(checked_modes(modes)) {}

OperatorExpression::OperatorExpression(std::size_t modes, std::vector<Term> terms) : modes_(checked_modes(modes)) {
  detail::TermAccumulator acc(modes);
  for (auto& [m, c] : terms) {
    require_same_modes(modes, m.modes());
    acc.add(m, c);
  }
  terms_ = acc.finish().terms_;
}

OperatorExpression OperatorExpression::identity(std::size_t modes) { return constant(modes, 1); }

OperatorExpression OperatorExpression::constant(std::size_t modes, GaussianRational value) {
  OperatorExpression out(modes);
  if (!value.is_zero()) out.terms_.emplace_back(LadderMonomial(modes), std::move(value));
  return out;
}

OperatorExpression OperatorExpression::monomial(const LadderMonomial& m, GaussianRational coeff) {
  OperatorExpression out(m.modes());
  if (!coeff.is_zero()) out.terms_.emplace_back(m, std::move(coeff));
  return out;
}

OperatorExpression OperatorExpression::creation(std::size_t modes, std::size_t k) {
  std::vector<int> dagger(modes, 0);
  std::vector<int> lower(modes, 0);
  dagger.at(k) = 1;
  return monomial(LadderMonomial(dagger, lower, 0));
}

OperatorExpression OperatorExpression::annihilation(std::size_t modes, std::size_t k) {
  std::vector<int> dagger(modes, 0);
  std::vector<int> lower(modes, 0);
  lower.at(k) = 1;
  return monomial(LadderMonomial(dagger, lower, 0));
}

GaussianRational OperatorExpression::coefficient(const LadderMonomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const LadderMonomial& key) {
    return t.first < key;
  });
  if (it != terms_.end() && it->first == m) return it->second;
  return {};
}

int OperatorExpression::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

OperatorExpression& OperatorExpression::operator+=(const OperatorExpression& rhs) {
  require_same_modes(modes_, rhs.modes_);
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      a->second += b->second;
      if (!a->second.is_zero()) merged.push_back(std::move(*a));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

OperatorExpression& OperatorExpression::operator-=(const OperatorExpression& rhs) { return *this += -rhs; }

OperatorExpression& OperatorExpression::operator*=(const GaussianRational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

OperatorExpression OperatorExpression::operator-() const {
  OperatorExpression out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::string OperatorExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ')';
    const std::string mono = m.to_string();
    if (mono != "1") os << ' ' << mono;
  }
  return os.str();
}

OperatorExpression multiply(const OperatorExpression& a, const OperatorExpression& b) {
  require_same_modes(a.modes(), b.modes());
  detail::TermAccumulator acc(a.modes());
  acc.reserve(a.size() * b.size());
  GaussianRational c;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      c = ca;
      c *= cb;
      detail::accumulate_product(acc, ma, mb, c, false);
    }
  }
  return acc.finish();
}

OperatorExpression commutator(const OperatorExpression& a, const OperatorExpression& b) {
  require_same_modes(a.modes(), b.modes());
  detail::TermAccumulator acc(a.modes());
  GaussianRational c;
  GaussianRational neg;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      c = ca;
      c *= cb;
      neg = -c;
      // the uncontracted parts of ab and ba coincide and cancel
      detail::accumulate_product(acc, ma, mb, c, true);
      detail::accumulate_product(acc, mb, ma, neg, true);
    }
  }
  return acc.finish();
}

OperatorExpression adjoint(const OperatorExpression& a) {
  // (a†^m a^n)† = a†^n a^m is already normal-ordered, so no reordering is needed.
  std::vector<OperatorExpression::Term> terms;
  terms.reserve(a.size());
  for (const auto& [m, c] : a.terms()) terms.emplace_back(m.swapped(), c.conj());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return detail::expression_from_canonical(a.modes(), std::move(terms));
}

bool is_hermitian(const OperatorExpression& a) { return adjoint(a) == a; }

// ---------------------------------------------------------------------------
// AlphaSeries

AlphaSeries::AlphaSeries(std::size_t modes, std::size_t order) : coeffs_(order + 1, OperatorExpression(modes)) {}

AlphaSeries::AlphaSeries(std::vector<OperatorExpression> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ArgumentError("AlphaSeries needs at least one coefficient");
  for (const auto& c : coeffs_) require_same_modes(coeffs_.front().modes(), c.modes());
}

OperatorExpression AlphaSeries::at_or_zero(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : OperatorExpression(modes());
}

AlphaSeries AlphaSeries::truncated(std::size_t order) const {
  std::vector<OperatorExpression> c;
  for (std::size_t k = 0; k <= order; ++k) c.push_back(at_or_zero(k));
  return AlphaSeries(std::move(c));
}

std::size_t AlphaSeries::total_terms() const {
  std::size_t n = 0;
  for (const auto& c : coeffs_) n += c.size();
  return n;
}

AlphaSeries& AlphaSeries::operator+=(const AlphaSeries& rhs) {
  require_same_modes(modes(), rhs.modes());
  if (rhs.order() > order()) coeffs_.resize(rhs.coeffs_.size(), OperatorExpression(modes()));
  for (std::size_t k = 0; k <= rhs.order(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

AlphaSeries& AlphaSeries::operator-=(const AlphaSeries& rhs) {
  require_same_modes(modes(), rhs.modes());
  if (rhs.order() > order()) coeffs_.resize(rhs.coeffs_.size(), OperatorExpression(modes()));
  for (std::size_t k = 0; k <= rhs.order(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

// ---------------------------------------------------------------------------
// Phase-space polynomials

std::size_t PhaseSpacePolynomial::max_mode() const {
  std::size_t m = 0;
  for (const auto& t : terms) {
    for (const auto& f : t.word) m = std::max(m, f.mode + 1);
  }
  return m;
}

std::string PhaseSpacePolynomial::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    const bool negative = t.coeff.sign() < 0;
    const Rational mag = negative ? -t.coeff : t.coeff;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (!mag.is_one() || t.word.empty()) {
      os << (mag.is_integer() ? mag.to_string() : "(" + mag.to_string() + ")");
      need_star = true;
    }
    for (const auto& f : t.word) {
      if (need_star) os << '*';
      os << (f.kind == PhaseSpaceFactor::Kind::Position ? 'q' : 'p') << (f.mode + 1);
      if (f.power != 1) os << '^' << f.power;
      need_star = true;
    }
  }
  return os.str();
}

OperatorExpression from_position_momentum(const PhaseSpacePolynomial& poly, std::size_t modes) {
  if (poly.max_mode() > modes) {
    throw DimensionError("polynomial references mode " + std::to_string(poly.max_mode()) + " but the system has " +
                         std::to_string(modes));
  }
  OperatorExpression result(modes);
  for (const auto& term : poly.terms) {
    OperatorExpression product = OperatorExpression::constant(modes, term.coeff);
    for (const auto& f : term.word) {
      // q = √(ℏ/2)(a† + a), p = i√(ℏ/2)(a† - a); e = 1 carries the √(ℏ/2).
      std::vector<int> unit(modes, 0);
      std::vector<int> zero(modes, 0);
      unit[f.mode] = 1;
      const LadderMonomial up(unit, zero, 1);
      const LadderMonomial down(zero, unit, 1);
      OperatorExpression symbol(modes);
      if (f.kind == PhaseSpaceFactor::Kind::Position) {
        symbol = OperatorExpression(modes, {{up, 1}, {down, 1}});
      } else {
        symbol = OperatorExpression(modes, {{up, GaussianRational(0, 1)}, {down, GaussianRational(0, -1)}});
      }
      for (int p = 0; p < f.power; ++p) product = multiply(product, symbol);
    }
    result += product;
  }
  return result;
}

}  // namespace kcpt
