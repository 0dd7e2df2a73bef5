#include "kcpt/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace kcpt {

namespace {

constexpr double kBoundaryWeightThreshold = 1e-8;

std::complex<double> to_complex(const GaussianRational& c) { return {c.re().to_double(), c.im().to_double()}; }

double hbar_factor(int sqrt_hbar, double hbar) {
  const double base = std::pow(hbar, 0.5 * sqrt_hbar);
  return (sqrt_hbar & 1) ? base * M_SQRT1_2 : base;
}

void require_basis(const FockMatrix& m, const ModeSystem& sys) {
  if (m.basis.modes() != sys.modes()) throw DimensionError("matrix/system mode-count mismatch");
}

// Σ_k ω_k n_k; the zero-point part cancels in every difference.
Rational excitation_energy(std::span<const int> occupation, const ModeSystem& sys) {
  Rational e;
  for (std::size_t k = 0; k < occupation.size(); ++k) {
    if (occupation[k] != 0) e.add_product(sys.omega()[k], Rational(occupation[k]));
  }
  return e;
}

bool near_boundary(const FockBasis& basis, std::size_t index) {
  for (int n : basis.occupation(index)) {
    if (n >= basis.n_max() - 1) return true;
  }
  return false;
}

}  // namespace

FockBasis::FockBasis(std::size_t modes, int n_max) : modes_(modes), n_max_(n_max), dimension_(1) {
  if (modes == 0 || modes > kMaxModes) throw DimensionError("invalid mode count for a Fock basis");
  if (n_max < 0) throw ArgumentError("n_max must be nonnegative");
  for (std::size_t k = 0; k < modes; ++k) dimension_ *= static_cast<std::size_t>(n_max + 1);
}

std::size_t FockBasis::index(std::span<const int> occupation) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < modes_; ++k) idx = idx * static_cast<std::size_t>(n_max_ + 1) + occupation[k];
  return idx;
}

std::vector<int> FockBasis::occupation(std::size_t index) const {
  std::vector<int> occ(modes_);
  for (std::size_t k = modes_; k-- > 0;) {
    occ[k] = static_cast<int>(index % static_cast<std::size_t>(n_max_ + 1));
    index /= static_cast<std::size_t>(n_max_ + 1);
  }
  return occ;
}

FockMatrix fock_matrix(const OperatorExpression& f, const ModeSystem& sys, int n_max, double hbar) {
  if (f.modes() != sys.modes()) throw DimensionError("expression/system mode-count mismatch");
  FockBasis basis(sys.modes(), n_max);
  const std::size_t dim = basis.dimension();
  FockMatrix out{basis, hbar, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                 f.max_degree() > n_max};
  std::vector<int> image(sys.modes());
  for (std::size_t col = 0; col < dim; ++col) {
    const std::vector<int> occ = basis.occupation(col);
    for (const auto& [m, c] : f.terms()) {
      // a†^m a^n |occ> = Π_k sqrt(occ!/(occ-n)!) sqrt((occ-n+m)!/(occ-n)!) |occ-n+m>
      double amplitude = hbar_factor(m.sqrt_hbar(), hbar);
      bool inside = true;
      for (std::size_t k = 0; k < sys.modes() && inside; ++k) {
        const int lowered = occ[k] - m.lower(k);
        if (lowered < 0) {
          inside = false;
          break;
        }
        for (int j = occ[k]; j > lowered; --j) amplitude *= std::sqrt(static_cast<double>(j));
        image[k] = lowered + m.dagger(k);
        if (image[k] > n_max) {
          inside = false;
          break;
        }
        for (int j = lowered + 1; j <= image[k]; ++j) amplitude *= std::sqrt(static_cast<double>(j));
      }
      if (!inside) continue;
      const auto row = static_cast<Eigen::Index>(basis.index(image));
      out.entries(row, static_cast<Eigen::Index>(col)) += to_complex(c) * amplitude;
    }
  }
  return out;
}

FockMatrix fock_matrix(const AlphaSeries& s, const ModeSystem& sys, int n_max, double hbar, double alpha) {
  FockMatrix out = fock_matrix(s[0], sys, n_max, hbar);
  double power = 1.0;
  for (std::size_t k = 1; k <= s.order(); ++k) {
    power *= alpha;
    if (s[k].is_zero()) continue;
    FockMatrix term = fock_matrix(s[k], sys, n_max, hbar);
    out.entries += power * term.entries;
    out.truncation_warning = out.truncation_warning || term.truncation_warning;
  }
  return out;
}

FockMatrix matrix_project(const FockMatrix& m, const ModeSystem& sys) {
  require_basis(m, sys);
  FockMatrix out = m;
  const std::size_t dim = m.basis.dimension();
  std::vector<Rational> energy;
  energy.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) energy.push_back(excitation_energy(m.basis.occupation(i), sys));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (energy[r] != energy[c]) out.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 0.0;
    }
  }
  return out;
}

FockMatrix matrix_integrate(const FockMatrix& m, const ModeSystem& sys) {
  require_basis(m, sys);
  FockMatrix out = m;
  const std::size_t dim = m.basis.dimension();
  std::vector<Rational> energy;
  energy.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) energy.push_back(excitation_energy(m.basis.occupation(i), sys));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      auto& entry = out.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (energy[r] == energy[c]) {
        entry = 0.0;
      } else {
        entry /= m.hbar * (energy[r] - energy[c]).to_double();
      }
    }
  }
  return out;
}

double relative_commutator_norm(const FockMatrix& a, const FockMatrix& b) {
  const double scale = a.entries.norm() * b.entries.norm();
  if (scale == 0.0) return 0.0;
  return (a.entries * b.entries - b.entries * a.entries).norm() / scale;
}

std::vector<double> lowest_eigenvalues(const FockMatrix& m, std::size_t count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.entries, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < values.size() && out.size() < count; ++i) out.push_back(values[i]);
  return out;
}

EigenvalueReport eigenvalue_check(const AlphaSeries& effective, const AlphaSeries& original, const ModeSystem& sys,
                                  double hbar, double alpha, int n_max, std::size_t k_lowest) {
  if (!(std::abs(alpha) <= 1e-2)) throw ArgumentError("eigenvalue_check expects |alpha| <= 1e-2");
  if (k_lowest == 0) throw ArgumentError("k_lowest must be positive");
  const FockMatrix h_eff = fock_matrix(effective, sys, n_max, hbar, alpha);
  const FockMatrix h_ref = fock_matrix(original, sys, n_max, hbar, alpha);
  if (h_ref.basis.dimension() < k_lowest) throw ArgumentError("basis smaller than the requested eigenvalue count");

  EigenvalueReport report;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref_solver(h_ref.entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eff_solver(h_eff.entries);
  for (std::size_t i = 0; i < k_lowest; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    report.reference.push_back(ref_solver.eigenvalues()[col]);
    report.effective.push_back(eff_solver.eigenvalues()[col]);
    report.max_deviation = std::max(report.max_deviation, std::abs(report.reference[i] - report.effective[i]));
    for (const auto* solver : {&ref_solver, &eff_solver}) {
      double boundary_weight = 0.0;
      for (std::size_t r = 0; r < h_ref.basis.dimension(); ++r) {
        if (near_boundary(h_ref.basis, r)) boundary_weight += std::norm(solver->eigenvectors()(static_cast<Eigen::Index>(r), col));
      }
      report.truncation_warning = report.truncation_warning || boundary_weight > kBoundaryWeightThreshold;
    }
  }
  report.truncation_warning = report.truncation_warning || h_eff.truncation_warning || h_ref.truncation_warning;
  report.alpha_power = std::pow(std::abs(alpha), static_cast<double>(effective.order() + 1));
  report.ratio = report.alpha_power > 0.0 ? report.max_deviation / report.alpha_power : 0.0;
  return report;
}

}  // namespace kcpt
