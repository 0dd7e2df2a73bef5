#include "kcpt/transforms.hpp"

#include <algorithm>
#include <functional>

namespace kcpt {

namespace {

const GaussianRational kI(0, 1);
const GaussianRational kMinusI(0, -1);

void track(std::size_t* peak, const OperatorExpression& e) {
  if (peak) *peak = std::max(*peak, e.size());
}

void track(std::size_t* peak, const AlphaSeries& s) {
  for (const auto& c : s.coeffs()) track(peak, c);
}

const OperatorExpression* generator_at(const AlphaSeries& g, std::size_t k) {
  return k <= g.order() ? &g[k] : nullptr;
}

void require_hamiltonian(const ModeSystem& sys, const AlphaSeries& h) {
  if (h.modes() != sys.modes()) throw DimensionError("Hamiltonian/system mode-count mismatch");
  if (h[0] != sys.h0()) throw ArgumentError("the α^0 coefficient must equal the harmonic H0 of the system");
  for (std::size_t k = 0; k <= h.order(); ++k) {
    if (!is_hermitian(h[k])) throw ArgumentError("Hamiltonian coefficient " + std::to_string(k) + " is not Hermitian");
  }
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Kato:
      return "kato";
    case Method::VanVleck:
      return "vanvleck";
    case Method::Magnus:
      return "magnus";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "kato") return Method::Kato;
  if (name == "vanvleck") return Method::VanVleck;
  if (name == "magnus") return Method::Magnus;
  throw ArgumentError("unknown method '" + std::string(name) + "'");
}

AlphaSeries perturbed_hamiltonian(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order) {
  if (h1.modes() != sys.modes()) throw DimensionError("perturbation/system mode-count mismatch");
  AlphaSeries h(sys.modes(), std::max<std::size_t>(order, 1));
  h[0] = sys.h0();
  h[1] = h1;
  return h.truncated(order);
}

AlphaSeries deprit_inverse_apply(const AlphaSeries& g, const AlphaSeries& f, std::size_t order) {
  if (g.modes() != f.modes()) throw DimensionError("generator/operand mode-count mismatch");
  // V_n X = -(i/n) Σ_{k<n} V_k (L_{G_{n-k-1}} X)
  std::function<OperatorExpression(std::size_t, const OperatorExpression&)> apply_v =
      [&](std::size_t n, const OperatorExpression& x) -> OperatorExpression {
    if (n == 0) return x;
    OperatorExpression sum(x.modes());
    for (std::size_t k = 0; k < n; ++k) {
      const OperatorExpression* gk = generator_at(g, n - k - 1);
      if (!gk || gk->is_zero()) continue;
      const OperatorExpression lx = commutator(*gk, x);
      if (!lx.is_zero()) sum += apply_v(k, lx);
    }
    return sum * (kMinusI * GaussianRational(Rational(1, static_cast<std::int64_t>(n))));
  };
  AlphaSeries out(f.modes(), order);
  for (std::size_t j = 0; j <= std::min(order, f.order()); ++j) {
    if (f[j].is_zero()) continue;
    for (std::size_t n = 0; n + j <= order; ++n) out[n + j] += apply_v(n, f[j]);
  }
  return out;
}

AlphaSeries deprit_forward_apply(const AlphaSeries& g, const AlphaSeries& f, std::size_t order) {
  if (g.modes() != f.modes()) throw DimensionError("generator/operand mode-count mismatch");
  AlphaSeries out(f.modes(), order);
  for (std::size_t j = 0; j <= std::min(order, f.order()); ++j) {
    // u[n] = U_n F_j, U_n X = (i/n) Σ_{k<n} L_{G_{n-k-1}} U_k X
    std::vector<OperatorExpression> u{f[j]};
    for (std::size_t n = 1; n + j <= order; ++n) {
      OperatorExpression sum(f.modes());
      for (std::size_t k = 0; k < n; ++k) {
        const OperatorExpression* gk = generator_at(g, n - k - 1);
        if (gk && !gk->is_zero() && !u[k].is_zero()) sum += commutator(*gk, u[k]);
      }
      u.push_back(sum * (kI * GaussianRational(Rational(1, static_cast<std::int64_t>(n)))));
    }
    for (std::size_t n = 0; n < u.size(); ++n) out[n + j] += u[n];
  }
  return out;
}

AlphaSeries fast_inverse_transform(const AlphaSeries& g, const AlphaSeries& h, std::size_t order,
                                   std::size_t* peak_terms) {
  if (g.modes() != h.modes()) throw DimensionError("generator/Hamiltonian mode-count mismatch");
  const std::size_t d = h.modes();
  // aux[k][j] = coefficient α^j of F_k; nonzero only for j >= k
  std::vector<AlphaSeries> aux;
  aux.reserve(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    AlphaSeries fk(d, order);
    for (std::size_t j = k; j <= order; ++j) fk[j] = h.at_or_zero(j - k);
    aux.push_back(std::move(fk));
  }
  for (std::size_t n = order; n-- > 0;) {
    const AlphaSeries& top = aux[n + 1];
    const GaussianRational scale = kMinusI * GaussianRational(Rational(1, static_cast<std::int64_t>(n + 1)));
    for (std::size_t k = 0; k <= n; ++k) {
      const OperatorExpression* gk = generator_at(g, n - k);
      if (!gk || gk->is_zero()) continue;
      for (std::size_t j = n + 1; j <= order; ++j) {
        if (top[j].is_zero()) continue;
        OperatorExpression delta = commutator(*gk, top[j]);
        track(peak_terms, delta);
        aux[k][j] += delta * scale;
      }
    }
    track(peak_terms, aux[n]);
  }
  return std::move(aux[0]);
}

BlockDiagonalResult kato_block_diagonalize(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order,
                                           const std::optional<AlphaSeries>& shift) {
  AlphaSeries g = kato_generator(sys, h1, order);
  if (shift) {
    if (shift->modes() != sys.modes()) throw DimensionError("shift/system mode-count mismatch");
    for (std::size_t j = 0; j <= std::min(order, shift->order()); ++j) {
      const OperatorExpression& fj = (*shift)[j];
      if (!is_hermitian(fj)) throw ArgumentError("shift coefficient " + std::to_string(j) + " is not Hermitian");
      if (fj.is_zero()) continue;
      // (P_H F)_n = Σ_j [P_H]_{n-j} F_j
      for (std::size_t n = j; n <= order; ++n) {
        g[n] += kato_apply(KatoKind::Projector, static_cast<int>(n - j), fj, sys, h1);
      }
    }
  }
  std::size_t peak = 0;
  track(&peak, g);
  AlphaSeries h_eff = fast_inverse_transform(g, perturbed_hamiltonian(sys, h1, order), order, &peak);
  return {std::move(h_eff), {std::move(g), GeneratorRole::OrderedExponential}, Method::Kato, order, peak};
}

BlockDiagonalResult van_vleck_block_diagonalize(const ModeSystem& sys, const AlphaSeries& h, std::size_t order) {
  require_hamiltonian(sys, h);
  const std::size_t d = sys.modes();
  AlphaSeries current = h.truncated(order);
  AlphaSeries generators(d, order > 0 ? order - 1 : 0);
  std::size_t peak = 0;
  for (std::size_t n = 1; n <= order; ++n) {
    OperatorExpression gn = integrate(current[n], sys) * kI;
    if (!gn.is_zero()) {
      // exp(-iα^n L_G) is the ordered exponential of the single generator n α^{n-1} G
      AlphaSeries chain(d, n - 1);
      chain[n - 1] = gn * GaussianRational(static_cast<std::int64_t>(n));
      current = fast_inverse_transform(chain, current, order, &peak);
    }
    track(&peak, gn);
    generators[n - 1] = std::move(gn);
  }
  return {std::move(current), {std::move(generators), GeneratorRole::VanVleckChain}, Method::VanVleck, order, peak};
}

BlockDiagonalResult magnus_block_diagonalize(const ModeSystem& sys, const AlphaSeries& h, std::size_t order) {
  require_hamiltonian(sys, h);
  const std::size_t d = sys.modes();
  const OperatorExpression zero(d);
  AlphaSeries generators(d, order > 0 ? order - 1 : 0);
  // t[j][m]: α^m coefficient of T_j = (-i/j) X T_{j-1}, X = Σ_k α^k L_{G_{k-1}}, T_0 = H.
  // exp(-iX) H = Σ_j T_j and T_j starts at α^j.
  std::vector<std::vector<OperatorExpression>> t(order + 1, std::vector<OperatorExpression>(order + 1, zero));
  for (std::size_t m = 0; m <= order; ++m) t[0][m] = h.at_or_zero(m);
  AlphaSeries h_eff(d, order);
  h_eff[0] = t[0][0];
  std::size_t peak = 0;
  for (std::size_t n = 1; n <= order; ++n) {
    // G_{n-1} enters α^n only through -i L_{G_{n-1}} H0 in T_1; evaluate everything else first
    OperatorExpression residual = t[0][n];
    for (std::size_t j = 1; j <= n; ++j) {
      OperatorExpression sum(d);
      for (std::size_t k = 1; k + j - 1 <= n; ++k) {
        if (k == n) continue;  // G_{n-1}, added below
        const OperatorExpression& gk = generators[k - 1];
        const OperatorExpression& prev = t[j - 1][n - k];
        if (gk.is_zero() || prev.is_zero()) continue;
        sum += commutator(gk, prev);
      }
      t[j][n] = sum * (kMinusI * GaussianRational(Rational(1, static_cast<std::int64_t>(j))));
      track(&peak, t[j][n]);
      residual += t[j][n];
    }
    OperatorExpression gn = integrate(residual, sys) * kI;
    if (!gn.is_zero()) {
      OperatorExpression correction = commutator(gn, t[0][0]) * kMinusI;
      t[1][n] += correction;
      residual += correction;
    }
    track(&peak, gn);
    generators[n - 1] = std::move(gn);
    h_eff[n] = std::move(residual);
  }
  return {std::move(h_eff), {std::move(generators), GeneratorRole::MagnusExponent}, Method::Magnus, order, peak};
}

AlphaSeries kato_effective_direct(const ModeSystem& sys, const OperatorExpression& h1, std::size_t order) {
  if (order > 4) throw UnsupportedError("the closed-form effective Hamiltonian is available through α^4 only");
  if (!is_hermitian(h1)) throw ArgumentError("perturbation must be Hermitian");
  const std::size_t d = sys.modes();
  auto P = [&](const OperatorExpression& x) { return project(x, sys); };
  auto S = [&](const OperatorExpression& x, int power = 1) { return integrate_power(x, sys, power); };
  auto L = [&](const OperatorExpression& x) { return commutator(h1, x); };
  auto frac = [](std::int64_t p, std::int64_t q) { return GaussianRational(Rational(p, q)); };

  AlphaSeries out(d, order);
  out[0] = sys.h0();
  if (order >= 1) out[1] = P(h1);
  if (order >= 2) out[2] = P(L(S(h1))) * frac(-1, 2);
  if (order >= 3) {
    out[3] = P(L(S(L(S(h1))))) * frac(1, 3) + P(L(S(L(P(h1)), 2))) * frac(-1, 6);
  }
  if (order >= 4) {
    const OperatorExpression ph1 = P(h1);
    const OperatorExpression sh1 = S(h1);
    const OperatorExpression s2h1 = S(h1, 2);
    const OperatorExpression s3h1 = S(h1, 3);
    OperatorExpression a4(d);
    a4 += P(L(S(L(S(L(ph1), 2))))) * frac(1, 6);
    a4 += P(L(S(L(S(L(sh1)))))) * frac(-1, 4);
    a4 += P(L(S(L(S(L(ph1))), 2))) * frac(1, 12);
    a4 += P(L(S(L(P(L(sh1))), 2))) * frac(1, 8);
    a4 += P(L(P(L(S(L(sh1), 2))))) * frac(1, 4);
    a4 += P(L(P(L(S(L(s2h1)))))) * frac(1, 4);
    a4 += P(L(P(L(S(L(ph1), 3))))) * frac(-1, 6);
    a4 += P(L(P(L(P(L(s3h1)))))) * frac(-1, 4);
    out[4] = std::move(a4);
  }
  return out;
}

}  // namespace kcpt
