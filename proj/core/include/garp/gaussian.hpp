#pragma once

#include <Eigen/Dense>
#include <vector>

#include "garp/rng.hpp"

namespace garp {

// Normal-inverse-Wishart hyperparameters: Sigma ~ IW(nu0, Sigma0),
// mu | Sigma ~ N(mu0, Sigma/kappa0). Requires nu0 > d-1 and Sigma0 SPD.
struct NIWParams {
  Eigen::VectorXd mu0;
  double kappa0 = 0.0;
  double nu0 = 0.0;
  Eigen::MatrixXd sigma0;

  int dim() const { return static_cast<int>(mu0.size()); }
};
void validate(const NIWParams& params);

struct VertexParams {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
};

// Relative along-edge standard-deviation factor r0 and orthogonal standard
// deviation r1.
struct EdgeGeometry {
  double r0 = 0.0;
  double r1 = 0.0;
};
void validate(const EdgeGeometry& geom);

// Edge-cluster moments: mean at the midpoint, covariance with along-edge
// variance r0^2 |mu_k - mu_kp|^2 and orthogonal variances r1^2. Implemented
// as the projector form r1^2 (I - e e^T) + r0^2 |d|^2 e e^T, which is
// independent of how the orthonormal completion of e would be chosen.
// Coincident means are an error.
VertexParams edge_params(const Eigen::VectorXd& mu_k, const Eigen::VectorXd& mu_kp,
                         const EdgeGeometry& geom);

// r0^2 = 4 / chisq_{2,1-alpha}, r1^2 = 1 / (2 chisq_{2,1-alpha}); d = 2 only.
EdgeGeometry default_edge_geometry(double alpha_level, int d = 2);

NIWParams niw_posterior(const NIWParams& prior, const Eigen::MatrixXd& data);

VertexParams sample_niw(Rng& rng, const NIWParams& params);

// log of the NIW prior predictive: multivariate Student-T with nu0-d+1
// degrees of freedom, location mu0, scale Sigma0 (kappa0+1)/(kappa0 (nu0-d+1)).
double log_predictive_new_vertex(const Eigen::VectorXd& y, const NIWParams& prior);

double log_mvn(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
               const Eigen::MatrixXd& sigma);

// Multivariate Student-T log density with dof nu, location mu, scale matrix.
double log_mvt(const Eigen::VectorXd& y, double nu, const Eigen::VectorXd& mu,
               const Eigen::MatrixXd& scale);

// log density of IW(nu, scale) at sigma and of the NIW at (mu, sigma).
double log_inv_wishart(const Eigen::MatrixXd& sigma, double nu, const Eigen::MatrixXd& scale);
double log_niw_pdf(const VertexParams& theta, const NIWParams& params);

// Precomputed Cholesky form for repeated density evaluations.
class CachedGaussian {
 public:
  CachedGaussian() = default;
  CachedGaussian(Eigen::VectorXd mu, const Eigen::MatrixXd& sigma);
  double log_density(const Eigen::VectorXd& y) const;
  const Eigen::VectorXd& mean() const { return mu_; }

 private:
  Eigen::VectorXd mu_;
  Eigen::MatrixXd chol_lower_;
  double log_det_ = 0.0;
};

}  // namespace garp
