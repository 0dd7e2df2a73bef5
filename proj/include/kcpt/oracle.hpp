#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "kcpt/ladder_algebra.hpp"
#include "kcpt/superoperators.hpp"

namespace kcpt {

/// Tensor-product occupation basis |n_1 ... n_d>, 0 <= n_k <= n_max, mode 1 most significant.
class FockBasis {
 public:
  FockBasis(std::size_t modes, int n_max);

  std::size_t modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::size_t dimension() const { return dimension_; }

  std::size_t index(std::span<const int> occupation) const;
  std::vector<int> occupation(std::size_t index) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  std::size_t modes_;
  int n_max_;
  std::size_t dimension_;
};

struct FockMatrix {
  FockBasis basis;
  double hbar;
  Eigen::MatrixXcd entries;
  /// Set when n_max is below the ladder degree of the source expression.
  bool truncation_warning = false;
};

/// Matrix of f in the truncated basis with ℏ = hbar; entries leaving the box are dropped.
FockMatrix fock_matrix(const OperatorExpression& f, const ModeSystem& sys, int n_max, double hbar);

/// Σ_k alpha^k fock_matrix(s_k).
FockMatrix fock_matrix(const AlphaSeries& s, const ModeSystem& sys, int n_max, double hbar, double alpha);

/// Energy-representation P: keeps entries between states of equal unperturbed energy.
/// Degeneracy is decided on exact rational energies from the occupations.
FockMatrix matrix_project(const FockMatrix& m, const ModeSystem& sys);

/// Energy-representation S: F_mn / (E_m - E_n) off the degenerate blocks, zero on them.
FockMatrix matrix_integrate(const FockMatrix& m, const ModeSystem& sys);

/// ||AB - BA|| / (||A|| ||B||) in the Frobenius norm; zero when either factor vanishes.
double relative_commutator_norm(const FockMatrix& a, const FockMatrix& b);

struct EigenvalueReport {
  std::vector<double> reference;  // k lowest eigenvalues of the original Hamiltonian
  std::vector<double> effective;  // k lowest eigenvalues of the effective Hamiltonian
  double max_deviation = 0.0;
  double alpha_power = 0.0;  // alpha^(N+1)
  double ratio = 0.0;        // max_deviation / alpha_power
  bool truncation_warning = false;
};

/// Compares the k lowest eigenvalues of the effective series (order N) at `alpha` with
/// those of the original Hamiltonian series, both in the same truncated basis.
EigenvalueReport eigenvalue_check(const AlphaSeries& effective, const AlphaSeries& original, const ModeSystem& sys,
                                  double hbar, double alpha, int n_max, std::size_t k_lowest);

/// Lowest eigenvalues of a Hermitian matrix, ascending.
std::vector<double> lowest_eigenvalues(const FockMatrix& m, std::size_t count);

}  // namespace kcpt
