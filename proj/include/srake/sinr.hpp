#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "srake/signal_model.hpp"

namespace srake {

/// A finger assignment: M distinct 0-based path indices out of L, kept sorted.
/// Every constructed Assignment is feasible; construction throws otherwise.
class Assignment {
 public:
  /// Indices may arrive in any order; they are sorted. Throws
  /// std::invalid_argument on duplicates, an empty set, or out-of-range paths.
  static Assignment from_indices(std::vector<int> indices, int num_paths);
  /// Builds from a 0/1 assignment vector of length L.
  static Assignment from_mask(std::span<const std::uint8_t> mask);
  /// Paths 0..M-1.
  static Assignment first(int num_fingers, int num_paths);

  std::span<const int> indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  int num_paths() const { return num_paths_; }
  bool contains(int path) const;
  std::vector<std::uint8_t> mask() const;

  /// Swaps the selected path `out` for the unselected path `in`.
  Assignment swapped(int out, int in) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment& a, const Assignment& b) { return a.indices_ <=> b.indices_; }

 private:
  Assignment(std::vector<int> indices, int num_paths) : indices_(std::move(indices)), num_paths_(num_paths) {}

  std::vector<int> indices_;
  int num_paths_ = 0;
};

/// Rows of a signature picked by an assignment, in increasing path order.
struct Gathered {
  Eigen::VectorXd alpha;  // M
  Eigen::MatrixXd mai;    // M x K
};

Gathered gather(const Signature& sig, const Assignment& a);

/// R = S_sel diag(E) S_sel^T + noise_var I.
Eigen::MatrixXd noise_correlation(const Eigen::MatrixXd& selected_mai, const Eigen::VectorXd& energies,
                                  double noise_var);

/// MMSE combining weights theta solving R theta = X alpha.
Eigen::VectorXd mmse_weights(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies,
                             double noise_var);

/// Post-combining SINR of the MMSE selective Rake, E_1 (X alpha)^T R^-1 (X alpha).
/// Linear scale.
double overall_sinr(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies, double noise_var);

/// Single-finger SINR of a 0-based path.
double per_path_sinr(const Signature& sig, int path, const Eigen::VectorXd& energies, double noise_var);

struct SinrReport {
  double sinr_linear = 0.0;
  Eigen::VectorXd weights;
};

SinrReport evaluate(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies, double noise_var);

/// Precomputes the full L x L noise correlation of one signature so that each
/// assignment costs a gather plus an M x M Cholesky solve. Read-only after
/// construction and safe to share across threads.
class SinrObjective {
 public:
  SinrObjective(const Signature& sig, const Eigen::VectorXd& energies, double noise_var);

  double operator()(const Assignment& a) const;
  double per_path(int path) const;

  const Signature& signature() const { return *sig_; }
  int num_paths() const { return sig_->num_paths(); }

 private:
  const Signature* sig_;
  Eigen::MatrixXd full_corr_;
  double desired_energy_;
};

}  // namespace srake
