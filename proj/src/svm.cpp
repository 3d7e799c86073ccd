#include "nm01/svm.hpp"

#include <stdexcept>

namespace nm01 {

Eigen::MatrixXd augment_samples(const Eigen::MatrixXd& samples) {
  Eigen::MatrixXd out(samples.rows(), samples.cols() + 1);
  out.leftCols(samples.cols()) = samples;
  out.col(samples.cols()).setOnes();
  return out;
}

ProblemInstance build_svm_instance(const SvmDataset& data, double tau,
                                   double lambda, double d_last) {
  if (data.samples.rows() != data.labels.size()) {
    throw std::invalid_argument("build_svm_instance: sample/label mismatch");
  }
  if (data.samples.rows() < 1) {
    throw std::invalid_argument("build_svm_instance: empty dataset");
  }
  for (Eigen::Index i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] != 1.0 && data.labels[i] != -1.0) {
      throw std::invalid_argument("build_svm_instance: labels must be +-1");
    }
  }

  const Eigen::MatrixXd A0 = augment_samples(data.samples);
  const Eigen::MatrixXd A = (-data.labels).asDiagonal() * A0;
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(A.rows());
  Eigen::VectorXd d = Eigen::VectorXd::Ones(A.cols());
  d[A.cols() - 1] = d_last;
  return ProblemInstance(quadratic_diag_model(d), A, b, lambda, tau);
}

double accuracy(const Eigen::MatrixXd& A0, const Eigen::VectorXd& x,
                const Eigen::VectorXd& labels) {
  if (A0.rows() != labels.size() || A0.cols() != x.size()) {
    throw std::invalid_argument("accuracy: dimension mismatch");
  }
  if (A0.rows() == 0) {
    throw std::invalid_argument("accuracy: empty dataset");
  }
  const Eigen::VectorXd scores = A0 * x;
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const double sign = scores[i] >= 0.0 ? 1.0 : -1.0;
    if (sign != labels[i]) ++wrong;
  }
  return 1.0 - static_cast<double>(wrong) / static_cast<double>(A0.rows());
}

SvmDataset synthetic_outlier(double a) {
  SvmDataset data;
  data.samples.resize(4, 2);
  data.samples << 0, 0, 0, 1, 1, 0, 1, a;
  data.labels.resize(4);
  data.labels << 1, 1, -1, -1;
  return data;
}

SvmModel train(const SvmDataset& data, const SvmTrainOptions& opts) {
  const ProblemInstance inst =
      build_svm_instance(data, opts.tau, opts.lambda, opts.d_last);
  PrimalDualPoint w0;
  w0.x = Eigen::VectorXd::Zero(inst.n());
  w0.z = Eigen::VectorXd::Ones(inst.m());

  SvmModel model;
  model.report = solve(inst, w0, opts.solve);
  model.x = model.report.w.x;
  model.train_accuracy =
      accuracy(augment_samples(data.samples), model.x, data.labels);
  return model;
}

}  // namespace nm01
