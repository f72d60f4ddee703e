#include "wavemom/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "wavemom/errors.hpp"

namespace wavemom {

void QuadratureConfig::validate() const {
  if (nodes_per_axis < 8)
    throw InvalidSpec("quadrature: nodes_per_axis must be >= 8");
  if (derivative_mode == DerivativeMode::CentralDiff &&
      (fd_step < 1e-8 || fd_step > 1e-3))
    throw InvalidSpec("quadrature: central-difference step must lie in [1e-8, 1e-3]");
  if (mc_samples < 1000)
    throw InvalidSpec("quadrature: mc_samples must be >= 1000");
  if (!(tolerance > 0))
    throw InvalidSpec("quadrature: tolerance must be positive");
}

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// orthogonal-polynomial recurrence, weights mu0 * (first eigenvector row)^2.
Rule1D golub_welsch(const Eigen::VectorXd &diag, const Eigen::VectorXd &subdiag,
                    double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw Error("quadrature eigensolve failed");
  const int n = static_cast<int>(diag.size());
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.w[i] = mu0 * v0 * v0;
  }
  return rule;
}

std::mutex cache_mutex;

} // namespace

const Rule1D &gauss_hermite(int n) {
  if (n < 1)
    throw InvalidSpec("gauss_hermite: n must be >= 1");
  static std::map<int, std::unique_ptr<Rule1D>> cache;
  std::scoped_lock lock(cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end())
    return *it->second;

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    sub(k - 1) = std::sqrt(k / 2.0);
  auto rule = std::make_unique<Rule1D>(golub_welsch(diag, sub, std::sqrt(M_PI)));
  auto &ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

const Rule1D &gauss_laguerre_normalized(int n, int alpha) {
  if (n < 1 || alpha < 0)
    throw InvalidSpec("gauss_laguerre: need n >= 1, alpha >= 0");
  static std::map<std::pair<int, int>, std::unique_ptr<Rule1D>> cache;
  std::scoped_lock lock(cache_mutex);
  auto it = cache.find({n, alpha});
  if (it != cache.end())
    return *it->second;

  const double a = alpha;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k)
    diag(k) = 2.0 * k + a + 1.0;
  for (int k = 1; k < n; ++k)
    sub(k - 1) = std::sqrt(k * (k + a));
  // mu0 = 1 instead of Gamma(alpha+1): weights normalized so alpha ~ 10^3 is safe
  auto rule = std::make_unique<Rule1D>(golub_welsch(diag, sub, 1.0));
  auto &ref = *rule;
  cache.emplace(std::make_pair(n, alpha), std::move(rule));
  return ref;
}

} // namespace wavemom
