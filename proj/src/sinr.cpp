#include "srake/sinr.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace srake {

Assignment Assignment::from_indices(std::vector<int> indices, int num_paths) {
  if (indices.empty()) throw std::invalid_argument("assignment must select at least one path");
  std::sort(indices.begin(), indices.end());
  if (indices.front() < 0 || indices.back() >= num_paths) throw std::invalid_argument("assignment path out of range");
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("assignment selects a path twice");
  }
  return Assignment(std::move(indices), num_paths);
}

Assignment Assignment::from_mask(std::span<const std::uint8_t> mask) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] > 1) throw std::invalid_argument("assignment vector must be binary");
    if (mask[i]) idx.push_back(static_cast<int>(i));
  }
  return from_indices(std::move(idx), static_cast<int>(mask.size()));
}

Assignment Assignment::first(int num_fingers, int num_paths) {
  if (num_fingers < 1 || num_fingers > num_paths) throw std::invalid_argument("need 1 <= fingers <= paths");
  std::vector<int> idx(num_fingers);
  for (int i = 0; i < num_fingers; ++i) idx[i] = i;
  return Assignment(std::move(idx), num_paths);
}

bool Assignment::contains(int path) const { return std::binary_search(indices_.begin(), indices_.end(), path); }

std::vector<std::uint8_t> Assignment::mask() const {
  std::vector<std::uint8_t> m(num_paths_, 0);
  for (int i : indices_) m[i] = 1;
  return m;
}

Assignment Assignment::swapped(int out, int in) const {
  if (!contains(out) || contains(in) || in < 0 || in >= num_paths_) {
    throw std::invalid_argument("swap must exchange a selected path for an unselected one");
  }
  std::vector<int> idx = indices_;
  *std::find(idx.begin(), idx.end(), out) = in;
  std::sort(idx.begin(), idx.end());
  return Assignment(std::move(idx), num_paths_);
}

Gathered gather(const Signature& sig, const Assignment& a) {
  if (a.num_paths() != sig.num_paths()) throw std::invalid_argument("assignment length does not match signature");
  const auto idx = a.indices();
  Gathered g{Eigen::VectorXd(a.size()), Eigen::MatrixXd(a.size(), sig.mai.cols())};
  for (int i = 0; i < a.size(); ++i) {
    g.alpha[i] = sig.alpha[idx[i]];
    g.mai.row(i) = sig.mai.row(idx[i]);
  }
  return g;
}

Eigen::MatrixXd noise_correlation(const Eigen::MatrixXd& selected_mai, const Eigen::VectorXd& energies,
                                  double noise_var) {
  if (selected_mai.cols() != energies.size()) throw std::invalid_argument("energy vector does not match user count");
  Eigen::MatrixXd r = selected_mai * energies.asDiagonal() * selected_mai.transpose();
  r.diagonal().array() += noise_var;
  return r;
}

Eigen::VectorXd mmse_weights(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies,
                             double noise_var) {
  return evaluate(sig, a, energies, noise_var).weights;
}

SinrReport evaluate(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies, double noise_var) {
  const Gathered g = gather(sig, a);
  const Eigen::LLT<Eigen::MatrixXd> llt(noise_correlation(g.mai, energies, noise_var));
  if (llt.info() != Eigen::Success) throw std::runtime_error("noise correlation is not positive definite");
  SinrReport rep;
  rep.weights = llt.solve(g.alpha);
  rep.sinr_linear = energies[0] * g.alpha.dot(rep.weights);
  return rep;
}

double overall_sinr(const Signature& sig, const Assignment& a, const Eigen::VectorXd& energies, double noise_var) {
  return evaluate(sig, a, energies, noise_var).sinr_linear;
}

double per_path_sinr(const Signature& sig, int path, const Eigen::VectorXd& energies, double noise_var) {
  if (path < 0 || path >= sig.num_paths()) throw std::out_of_range("path index out of range");
  double interference = 0.0;
  for (Eigen::Index k = 0; k < sig.mai.cols(); ++k) interference += energies[k] * sig.mai(path, k) * sig.mai(path, k);
  const double a = sig.alpha[path];
  return energies[0] * a * a / (interference + noise_var);
}

SinrObjective::SinrObjective(const Signature& sig, const Eigen::VectorXd& energies, double noise_var)
    : sig_(&sig), full_corr_(noise_correlation(sig.mai, energies, noise_var)), desired_energy_(energies[0]) {}

double SinrObjective::operator()(const Assignment& a) const {
  const auto idx = a.indices();
  const Eigen::Index m = a.size();
  Eigen::MatrixXd r(m, m);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    y[i] = sig_->alpha[idx[i]];
    for (Eigen::Index j = 0; j <= i; ++j) r(i, j) = full_corr_(idx[i], idx[j]);
  }
  // LLT only reads the lower triangle.
  Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(r);
  if (llt.info() != Eigen::Success) throw std::runtime_error("noise correlation is not positive definite");
  llt.matrixL().solveInPlace(y);
  return desired_energy_ * y.squaredNorm();
}

double SinrObjective::per_path(int path) const {
  if (path < 0 || path >= num_paths()) throw std::out_of_range("path index out of range");
  const double a = sig_->alpha[path];
  return desired_energy_ * a * a / full_corr_(path, path);
}

}  // namespace srake
