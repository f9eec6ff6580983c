// SPDX-License-Identifier: Apache-2.0
#include "omx/fit/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace omx::fit {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

double sum_sq(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

bool all_finite(const std::vector<double>& r) {
  return std::all_of(r.begin(), r.end(), [](double v) { return std::isfinite(v); });
}

Mat pseudo_inverse(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const auto& ev = es.eigenvalues();
  const double cutoff = std::max(ev.cwiseAbs().maxCoeff(), 1e-300) * 1e-15 * a.rows();
  Vec inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) inv[i] = ev[i] > cutoff ? 1.0 / ev[i] : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

std::vector<double> numeric_jacobian(const ResidualFn& fn, std::size_t n_residuals,
                                     std::span<const double> params) {
  const std::size_t n = params.size();
  std::vector<double> jac(n_residuals * n, 0.0);
  std::vector<double> p(params.begin(), params.end());
  std::vector<double> plus(n_residuals), minus(n_residuals);
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  for (std::size_t j = 0; j < n; ++j) {
    const double x0 = p[j];
    const double step = base * std::max(std::abs(x0), 1.0);
    p[j] = x0 + step;
    const double hi = p[j];
    fn(p, plus);
    p[j] = x0 - step;
    const double lo = p[j];
    fn(p, minus);
    p[j] = x0;
    const double width = hi - lo;
    for (std::size_t i = 0; i < n_residuals; ++i) jac[i * n + j] = (plus[i] - minus[i]) / width;
  }
  return jac;
}

LmReport levenberg_marquardt(const ResidualFn& fn, std::size_t n_residuals,
                             std::vector<double> start, const LmOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("no parameters to fit");
  if (n_residuals < n) throw std::invalid_argument("fewer residuals than parameters");

  LmReport rep;
  rep.params = std::move(start);
  rep.residuals.assign(n_residuals, 0.0);
  fn(rep.params, rep.residuals);
  if (!all_finite(rep.residuals)) throw std::invalid_argument("residuals not finite at the start");
  rep.ssr = sum_sq(rep.residuals);

  auto jacobian = [&](const std::vector<double>& p) {
    const auto raw = numeric_jacobian(fn, n_residuals, p);
    return Mat(Eigen::Map<const Mat>(raw.data(), static_cast<Eigen::Index>(n_residuals),
                                     static_cast<Eigen::Index>(n)));
  };

  Mat jac = jacobian(rep.params);
  Vec r = Eigen::Map<const Vec>(rep.residuals.data(), static_cast<Eigen::Index>(n_residuals));
  Mat jtj = jac.transpose() * jac;
  Vec grad = jac.transpose() * r;
  rep.initial_gradient_norm = grad.norm();
  double lambda = options.initial_damping;

  std::vector<double> trial(n), trial_res(n_residuals);
  for (rep.iterations = 0; rep.iterations < options.max_iterations; ++rep.iterations) {
    rep.gradient_norm = grad.norm();
    if (rep.ssr == 0.0 || rep.gradient_norm <= options.gradient_tolerance *
                                                   std::max(rep.initial_gradient_norm, 1e-300)) {
      rep.converged = true;
      break;
    }

    bool accepted = false;
    bool small_step = false;
    while (lambda < 1e16) {
      Mat a = jtj;
      for (Eigen::Index k = 0; k < a.rows(); ++k) {
        a(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      }
      const Vec step = a.ldlt().solve(-grad);
      for (std::size_t k = 0; k < n; ++k) trial[k] = rep.params[k] + step[static_cast<Eigen::Index>(k)];
      fn(trial, trial_res);
      const double ssr = all_finite(trial_res) ? sum_sq(trial_res)
                                               : std::numeric_limits<double>::infinity();
      const double pnorm = Eigen::Map<const Vec>(rep.params.data(), static_cast<Eigen::Index>(n)).norm();
      small_step = step.norm() <= options.step_tolerance * (pnorm + options.step_tolerance);
      if (ssr < rep.ssr) {
        rep.params = trial;
        rep.residuals = trial_res;
        rep.ssr = ssr;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      if (small_step) break;
      lambda *= 4.0;
    }

    if (accepted) {
      jac = jacobian(rep.params);
      r = Eigen::Map<const Vec>(rep.residuals.data(), static_cast<Eigen::Index>(n_residuals));
      jtj = jac.transpose() * jac;
      grad = jac.transpose() * r;
    }
    if (small_step || !accepted) {
      rep.gradient_norm = grad.norm();
      rep.converged = small_step;
      ++rep.iterations;
      break;
    }
  }
  rep.gradient_norm = grad.norm();

  const Mat inv = pseudo_inverse(jtj);
  rep.inverse_curvature.assign(inv.data(), inv.data() + inv.size());
  return rep;
}

}  // namespace omx::fit
