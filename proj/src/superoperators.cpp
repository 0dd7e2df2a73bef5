#include "kcpt/superoperators.hpp"

#include <algorithm>

#include "kcpt/detail/term_accumulator.hpp"

namespace kcpt {

namespace {

void require_system(const OperatorExpression& f, const ModeSystem& sys) {
  if (f.modes() != sys.modes()) {
    throw DimensionError("expression has " + std::to_string(f.modes()) + " modes, system has " +
                         std::to_string(sys.modes()));
  }
}

}  // namespace

ModeSystem::ModeSystem(std::vector<Rational> omega) : omega_(std::move(omega)) {
  if (omega_.empty() || omega_.size() > kMaxModes) {
    throw DimensionError("mode count must be in [1, " + std::to_string(kMaxModes) + "]");
  }
  for (const auto& w : omega_) {
    if (w.sign() <= 0) throw ArgumentError("frequencies must be positive, got " + w.to_string());
  }
}

OperatorExpression ModeSystem::h0() const {
  const std::size_t d = modes();
  std::vector<OperatorExpression::Term> terms;
  Rational zero_point;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<int> unit(d, 0);
    unit[k] = 1;
    terms.emplace_back(LadderMonomial(unit, unit, 2), omega_[k]);
    zero_point += omega_[k] * Rational(1, 2);
  }
  terms.emplace_back(LadderMonomial(d).with_sqrt_hbar(2), zero_point);
  return OperatorExpression(d, std::move(terms));
}

Rational weight(const LadderMonomial& m, const ModeSystem& sys) {
  if (m.modes() != sys.modes()) throw DimensionError("monomial/system mode-count mismatch");
  Rational w;
  for (std::size_t k = 0; k < m.modes(); ++k) {
    const int diff = m.dagger(k) - m.lower(k);
    if (diff != 0) w.add_product(sys.omega()[k], Rational(diff));
  }
  return w;
}

OperatorExpression project(const OperatorExpression& f, const ModeSystem& sys) {
  require_system(f, sys);
  std::vector<OperatorExpression::Term> kept;
  for (const auto& term : f.terms()) {
    if (weight(term.first, sys).is_zero()) kept.push_back(term);
  }
  return detail::expression_from_canonical(f.modes(), std::move(kept));
}

OperatorExpression integrate(const OperatorExpression& f, const ModeSystem& sys) {
  require_system(f, sys);
  // a uniform shift of the ℏ exponent keeps the terms unique and sorted
  std::vector<OperatorExpression::Term> out;
  for (const auto& [m, c] : f.terms()) {
    const Rational w = weight(m, sys);
    if (w.is_zero()) continue;
    GaussianRational coeff = c;
    coeff *= Rational(1) / w;
    out.emplace_back(m.with_sqrt_hbar(m.sqrt_hbar() - 2), std::move(coeff));
  }
  return detail::expression_from_canonical(f.modes(), std::move(out));
}

OperatorExpression integrate_power(const OperatorExpression& f, const ModeSystem& sys, int power) {
  if (power < 0) throw ArgumentError("negative power of S");
  if (power == 0) return -project(f, sys);
  OperatorExpression out = integrate(f, sys);
  for (int j = 1; j < power; ++j) out = integrate(out, sys);
  return out;
}

OperatorExpression liouville_h0(const OperatorExpression& f, const ModeSystem& sys) {
  require_system(f, sys);
  std::vector<OperatorExpression::Term> out;
  for (const auto& [m, c] : f.terms()) {
    const Rational w = weight(m, sys);
    if (w.is_zero()) continue;
    GaussianRational coeff = c;
    coeff *= w;
    out.emplace_back(m.with_sqrt_hbar(m.sqrt_hbar() + 2), std::move(coeff));
  }
  return detail::expression_from_canonical(f.modes(), std::move(out));
}

int kato_weight(KatoKind kind, int n) {
  switch (kind) {
    case KatoKind::Projector:
      return n;
    case KatoKind::Integrator:
      return n + 1;
    case KatoKind::EigenNilpotent:
      return n - 1;
  }
  return n;
}

void for_each_composition(int parts, int total, const std::function<void(std::span<const int>)>& fn) {
  if (parts <= 0 || total < 0) return;
  std::vector<int> p(static_cast<std::size_t>(parts), 0);
  p.back() = total;
  while (true) {
    fn(p);
    if (parts == 1) return;
    // next in lexicographic order: bump the rightmost slot j < parts-1 whose suffix is
    // nonempty, fold the suffix minus one into the last slot
    int suffix = p.back();
    int j = parts - 2;
    while (j >= 0 && suffix == 0) {
      suffix += p[static_cast<std::size_t>(j)];
      p[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) return;
    ++p[static_cast<std::size_t>(j)];
    p.back() = suffix - 1;
  }
}

std::uint64_t composition_count(KatoKind kind, int n) {
  if (n < 0) throw ArgumentError("negative order");
  if (kind == KatoKind::EigenNilpotent && n == 0) return 0;
  std::uint64_t count = 0;
  for_each_composition(n + 1, kato_weight(kind, n), [&](std::span<const int>) { ++count; });
  return count;
}

OperatorExpression kato_apply(KatoKind kind, int n, const OperatorExpression& f, const ModeSystem& sys,
                              const OperatorExpression& h1) {
  require_system(f, sys);
  require_system(h1, sys);
  if (n < 0) throw ArgumentError("negative Kato order");
  if (kind == KatoKind::EigenNilpotent && n == 0) {
    throw ArgumentError("the eigen-nilpotent series starts at order 1");
  }
  const int total = kato_weight(kind, n);
  const bool negate = (kind == KatoKind::Integrator) ? (n % 2 == 1) : (n % 2 == 0);

  // stack[j] = S^(p_{j+1}) L S^(p_j) ... L S^(p_1) f for the current prefix
  std::vector<OperatorExpression> stack;
  std::vector<int> prev;
  detail::TermAccumulator acc(f.modes());
  for_each_composition(n + 1, total, [&](std::span<const int> p) {
    std::size_t shared = 0;
    while (shared < prev.size() && shared < stack.size() && prev[shared] == p[shared]) ++shared;
    while (stack.size() > shared) stack.pop_back();
    for (std::size_t j = shared; j < p.size(); ++j) {
      if (j == 0) {
        stack.push_back(integrate_power(f, sys, p[0]));
      } else if (stack.back().is_zero()) {
        stack.push_back(stack.back());
      } else {
        stack.push_back(integrate_power(commutator(h1, stack.back()), sys, p[j]));
      }
    }
    prev.assign(p.begin(), p.end());
    acc.add_expression(stack.back(), negate ? GaussianRational(-1) : GaussianRational(1));
  });
  return acc.finish();
}

AlphaSeries kato_series(KatoKind kind, std::size_t order, const OperatorExpression& f, const ModeSystem& sys,
                        const OperatorExpression& h1) {
  AlphaSeries out(f.modes(), order);
  for (std::size_t n = 0; n <= order; ++n) {
    if (kind == KatoKind::EigenNilpotent && n == 0) continue;
    out[n] = kato_apply(kind, static_cast<int>(n), f, sys, h1);
  }
  return out;
}

AlphaSeries kato_generator(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order) {
  require_system(h1, sys);
  if (!is_hermitian(h1)) throw ArgumentError("perturbation must be Hermitian");
  const std::size_t width = order + 2;  // columns m = 0 .. order+1

  std::vector<OperatorExpression> row;
  row.reserve(width);
  row.push_back(project(h1, sys));
  OperatorExpression power = h1;
  for (std::size_t m = 1; m < width; ++m) {
    power = integrate(power, sys);
    row.push_back(-power);
  }

  AlphaSeries g(sys.modes(), order);
  const GaussianRational minus_i(0, -1);
  g[0] = row[1] * minus_i;
  for (std::size_t n = 1; n <= order; ++n) {
    // F_n^m = P Y_m - Q_m,  Q_0 = 0,  Q_m = S(Q_{m-1} + Y_{m-1}),  Y_k = L_{H1} F_{n-1}^k
    std::vector<OperatorExpression> next;
    next.reserve(width);
    OperatorExpression q(sys.modes());
    OperatorExpression y_prev(sys.modes());
    for (std::size_t m = 0; m < width; ++m) {
      OperatorExpression y = commutator(h1, row[m]);
      if (m > 0) q = integrate(q + y_prev, sys);
      next.push_back(project(y, sys) - q);
      y_prev = std::move(y);
    }
    g[n] = next[n + 1] * minus_i;
    row = std::move(next);
  }
  return g;
}

}  // namespace kcpt
