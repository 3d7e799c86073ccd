#pragma once
// Linear SVM with 0/1 loss: instance construction, training, accuracy.

#include <Eigen/Core>

#include "nm01/solver.hpp"
#include "nm01/types.hpp"

namespace nm01 {

struct SvmDataset {
  Eigen::MatrixXd samples;  // m x (n-1), one raw sample per row
  Eigen::VectorXd labels;   // entries in {-1, +1}
};

// Appends the constant-1 bias feature: row i becomes (samples_i; 1).
Eigen::MatrixXd augment_samples(const Eigen::MatrixXd& samples);

// min ||Dx||^2 + lambda ||(A x + b)_+||_0 with A row i = -c_i * a_i^T over
// augmented samples a_i, b = 1, and D = diag(1, ..., 1, d_last) so the bias
// weight is nearly free.
ProblemInstance build_svm_instance(const SvmDataset& data, double tau = 5.0,
                                   double lambda = 15.0, double d_last = 0.01);

// Acc = 1 - ||sgn(A0 x) - c||_0 / m with sgn(0) = +1; A0 holds the augmented
// samples.
double accuracy(const Eigen::MatrixXd& A0, const Eigen::VectorXd& x,
                const Eigen::VectorXd& labels);

// Four 2-d points (0,0), (0,1), (1,0), (1,a) labeled (+1, +1, -1, -1); for
// any a >= 0 the max-margin vertical separator sits at first coordinate 1/2.
SvmDataset synthetic_outlier(double a);

struct SvmTrainOptions {
  double tau = 5.0;
  double lambda = 15.0;
  double d_last = 0.01;
  SolveOptions solve;
};

struct SvmModel {
  Eigen::VectorXd x;  // length n, last entry is the bias weight
  double train_accuracy = 0.0;
  SolveReport report;
};

// Runs the Newton solver from x = 0, z = 1.
SvmModel train(const SvmDataset& data, const SvmTrainOptions& opts = {});

}  // namespace nm01
