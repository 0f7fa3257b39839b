#include "garp/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace garp {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

Eigen::LLT<Eigen::MatrixXd> cholesky_or_throw(const Eigen::MatrixXd& sigma,
                                              const char* what) {
  if (sigma.rows() != sigma.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(std::string(what) + ": matrix not positive-definite");
  return llt;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double log_multigamma(double a, int d) {
  double v = 0.25 * d * (d - 1) * std::log(M_PI);
  for (int j = 1; j <= d; ++j) v += std::lgamma(a + 0.5 * (1 - j));
  return v;
}
}  // namespace

void validate(const NIWParams& params) {
  const int d = params.dim();
  if (d < 1) throw std::invalid_argument("NIW: empty mean");
  if (!(params.kappa0 > 0)) throw std::invalid_argument("NIW: kappa0 must be > 0");
  if (!(params.nu0 > d - 1)) throw std::invalid_argument("NIW: nu0 must exceed d-1");
  if (params.sigma0.rows() != d || params.sigma0.cols() != d)
    throw std::invalid_argument("NIW: Sigma0 dimension mismatch");
  cholesky_or_throw(params.sigma0, "NIW Sigma0");
}

void validate(const EdgeGeometry& geom) {
  if (!(geom.r0 > 0 && geom.r1 > 0))
    throw std::invalid_argument("edge geometry: r0 and r1 must be > 0");
}

VertexParams edge_params(const Eigen::VectorXd& mu_k, const Eigen::VectorXd& mu_kp,
                         const EdgeGeometry& geom) {
  if (mu_k.size() != mu_kp.size()) throw std::invalid_argument("edge_params: dimension mismatch");
  const Eigen::VectorXd delta = mu_k - mu_kp;
  const double dist2 = delta.squaredNorm();
  if (!(dist2 > 0)) throw std::invalid_argument("edge_params: coincident vertex means");
  const int d = static_cast<int>(mu_k.size());
  const Eigen::VectorXd e = delta / std::sqrt(dist2);
  VertexParams out;
  out.mu = 0.5 * (mu_k + mu_kp);
  const double along_var = geom.r0 * geom.r0 * dist2;
  const double ortho_var = geom.r1 * geom.r1;
  out.sigma = ortho_var * Eigen::MatrixXd::Identity(d, d) +
              (along_var - ortho_var) * (e * e.transpose());
  return out;
}

EdgeGeometry default_edge_geometry(double alpha_level, int d) {
  if (d != 2) throw std::invalid_argument("default_edge_geometry: defined for d = 2");
  if (!(alpha_level > 0 && alpha_level < 1))
    throw std::invalid_argument("default_edge_geometry: alpha_level must be in (0,1)");
  // chi^2_2 is Exp(1/2), so the 1-alpha quantile is -2 log(alpha).
  const double q = -2.0 * std::log(alpha_level);
  return EdgeGeometry{std::sqrt(4.0 / q), std::sqrt(1.0 / (2.0 * q))};
}

NIWParams niw_posterior(const NIWParams& prior, const Eigen::MatrixXd& data) {
  const int n = static_cast<int>(data.rows());
  if (n == 0) return prior;
  const int d = prior.dim();
  if (data.cols() != d) throw std::invalid_argument("niw_posterior: data dimension mismatch");

  const Eigen::VectorXd ybar = data.colwise().mean();
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd r = data.row(i).transpose() - ybar;
    scatter.noalias() += r * r.transpose();
  }
  NIWParams post;
  post.kappa0 = prior.kappa0 + n;
  post.nu0 = prior.nu0 + n;
  post.mu0 = (prior.kappa0 * prior.mu0 + n * ybar) / post.kappa0;
  const Eigen::VectorXd diff = ybar - prior.mu0;
  post.sigma0 = prior.sigma0 + scatter +
                (prior.kappa0 * n / post.kappa0) * (diff * diff.transpose());
  return post;
}

VertexParams sample_niw(Rng& rng, const NIWParams& params) {
  const int d = params.dim();
  // Sigma ~ IW(nu0, Sigma0): draw W ~ Wishart(nu0, Sigma0^{-1}) by Bartlett
  // and invert. With Sigma0 = L L^T, the factor F = L^{-T} satisfies
  // F F^T = Sigma0^{-1}, so F A A^T F^T is the Wishart draw.
  const Eigen::LLT<Eigen::MatrixXd> llt_scale = cholesky_or_throw(params.sigma0, "sample_niw");
  const Eigen::MatrixXd l = llt_scale.matrixL();
  const Eigen::MatrixXd l_inv_t =
      l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d)).transpose();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(params.nu0 - i));
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const Eigen::MatrixXd left = l_inv_t * a;  // chol factor of Wishart draw
  const Eigen::MatrixXd w = left * left.transpose();
  VertexParams out;
  out.sigma = w.llt().solve(Eigen::MatrixXd::Identity(d, d));
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose());  // exact symmetry

  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) z(i) = rng.normal();
  const Eigen::LLT<Eigen::MatrixXd> llt_sigma(out.sigma / params.kappa0);
  out.mu = params.mu0 + llt_sigma.matrixL() * z;
  return out;
}

double log_mvt(const Eigen::VectorXd& y, double nu, const Eigen::VectorXd& mu,
               const Eigen::MatrixXd& scale) {
  const int d = static_cast<int>(y.size());
  const Eigen::LLT<Eigen::MatrixXd> llt = cholesky_or_throw(scale, "log_mvt scale");
  const Eigen::VectorXd solved = llt.matrixL().solve(y - mu);
  const double quad = solved.squaredNorm();
  return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
         0.5 * d * std::log(nu * M_PI) - 0.5 * log_det_from_llt(llt) -
         0.5 * (nu + d) * std::log1p(quad / nu);
}

double log_predictive_new_vertex(const Eigen::VectorXd& y, const NIWParams& prior) {
  const int d = prior.dim();
  const double dof = prior.nu0 - d + 1;
  const Eigen::MatrixXd scale = prior.sigma0 * ((prior.kappa0 + 1.0) / (prior.kappa0 * dof));
  return log_mvt(y, dof, prior.mu0, scale);
}

double log_mvn(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
               const Eigen::MatrixXd& sigma) {
  const int d = static_cast<int>(y.size());
  const Eigen::LLT<Eigen::MatrixXd> llt = cholesky_or_throw(sigma, "log_mvn sigma");
  const Eigen::VectorXd solved = llt.matrixL().solve(y - mu);
  return -0.5 * (d * kLog2Pi + log_det_from_llt(llt) + solved.squaredNorm());
}

double log_inv_wishart(const Eigen::MatrixXd& sigma, double nu, const Eigen::MatrixXd& scale) {
  const int d = static_cast<int>(sigma.rows());
  const Eigen::LLT<Eigen::MatrixXd> llt_sigma = cholesky_or_throw(sigma, "log_inv_wishart sigma");
  const Eigen::LLT<Eigen::MatrixXd> llt_scale = cholesky_or_throw(scale, "log_inv_wishart scale");
  const double trace_term = llt_sigma.solve(scale).trace();
  return 0.5 * nu * log_det_from_llt(llt_scale) - 0.5 * nu * d * std::log(2.0) -
         log_multigamma(0.5 * nu, d) - 0.5 * (nu + d + 1) * log_det_from_llt(llt_sigma) -
         0.5 * trace_term;
}

double log_niw_pdf(const VertexParams& theta, const NIWParams& params) {
  return log_mvn(theta.mu, params.mu0, theta.sigma / params.kappa0) +
         log_inv_wishart(theta.sigma, params.nu0, params.sigma0);
}

CachedGaussian::CachedGaussian(Eigen::VectorXd mu, const Eigen::MatrixXd& sigma)
    : mu_(std::move(mu)) {
  const Eigen::LLT<Eigen::MatrixXd> llt = cholesky_or_throw(sigma, "CachedGaussian");
  chol_lower_ = llt.matrixL();
  log_det_ = log_det_from_llt(llt);
}

double CachedGaussian::log_density(const Eigen::VectorXd& y) const {
  const Eigen::VectorXd solved =
      chol_lower_.triangularView<Eigen::Lower>().solve(y - mu_);
  return -0.5 * (mu_.size() * kLog2Pi + log_det_ + solved.squaredNorm());
}

}  // namespace garp
