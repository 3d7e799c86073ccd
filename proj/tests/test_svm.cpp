#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

#include "nm01/svm.hpp"

TEST_CASE("augment_samples appends the bias feature") {
  Eigen::MatrixXd raw(2, 2);
  raw << 1.0, 2.0, 3.0, 4.0;
  const Eigen::MatrixXd aug = nm01::augment_samples(raw);
  REQUIRE(aug.rows() == 2);
  REQUIRE(aug.cols() == 3);
  CHECK(aug(0, 0) == 1.0);
  CHECK(aug(0, 2) == 1.0);
  CHECK(aug(1, 1) == 4.0);
  CHECK(aug(1, 2) == 1.0);
}

TEST_CASE("build_svm_instance encodes the margin rows") {
  nm01::SvmDataset data;
  data.samples.resize(2, 1);
  data.samples << 2.0, -1.0;
  data.labels.resize(2);
  data.labels << 1.0, -1.0;

  const auto inst = nm01::build_svm_instance(data);
  REQUIRE(inst.m() == 2);
  REQUIRE(inst.n() == 2);
  // Row i is -c_i * (a_i; 1).
  CHECK(inst.A()(0, 0) == -2.0);
  CHECK(inst.A()(0, 1) == -1.0);
  CHECK(inst.A()(1, 0) == -1.0);
  CHECK(inst.A()(1, 1) == 1.0);
  CHECK(inst.b().isApproxToConstant(1.0));
  CHECK(inst.tau() == 5.0);
  CHECK(inst.lambda() == 15.0);

  // f = ||diag(1, 0.01) x||^2.
  Eigen::VectorXd x(2);
  x << 1.0, 10.0;
  CHECK(inst.objective().value(x) == doctest::Approx(1.0 + 0.01));

  data.labels[0] = 2.0;
  CHECK_THROWS_AS(nm01::build_svm_instance(data), std::invalid_argument);
  data.labels.resize(1);
  CHECK_THROWS_AS(nm01::build_svm_instance(data), std::invalid_argument);
}

TEST_CASE("accuracy counts sign agreements with sgn(0) = +1") {
  Eigen::MatrixXd A0(4, 2);
  A0 << 1.0, 1.0, -1.0, 1.0, 0.0, 0.0, 2.0, 1.0;
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  Eigen::VectorXd labels(4);
  labels << 1.0, -1.0, 1.0, -1.0;  // scores 1, -1, 0, 2
  // Rows 0 and 1 agree; row 2 scores 0 -> predicted +1, agrees; row 3 is off.
  CHECK(nm01::accuracy(A0, x, labels) == doctest::Approx(0.75));

  labels[2] = -1.0;  // the zero-score row now disagrees
  CHECK(nm01::accuracy(A0, x, labels) == doctest::Approx(0.5));

  CHECK_THROWS_AS(nm01::accuracy(A0, x, Eigen::VectorXd::Ones(3)),
                  std::invalid_argument);
}

TEST_CASE("synthetic outlier set trains to the vertical separator") {
  for (const double a : {0.0, 1.0, 10.0, 100.0}) {
    const auto data = nm01::synthetic_outlier(a);
    REQUIRE(data.samples.rows() == 4);
    REQUIRE(data.samples.cols() == 2);
    CHECK(data.samples(3, 1) == a);
    CHECK(data.labels[0] == 1.0);
    CHECK(data.labels[3] == -1.0);

    // Large outliers can keep the residual oscillating, so the quality of the
    // returned classifier is what matters, not the termination status.
    const auto model = nm01::train(data);
    CAPTURE(a);
    CHECK(model.train_accuracy == 1.0);

    // Decision boundary along the first coordinate: x1 * t + bias = 0.
    REQUIRE(model.x.size() == 3);
    CHECK(std::abs(model.x[0]) > 1e-8);
    const double threshold = -model.x[2] / model.x[0];
    CHECK(threshold == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("train recovers random separable problems") {
  std::mt19937_64 eng(23);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int converged = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 30;
    const int d = 3;
    Eigen::VectorXd normal(d);
    for (int j = 0; j < d; ++j) normal[j] = gauss(eng);
    normal.normalize();

    nm01::SvmDataset data;
    data.samples.resize(m, d);
    data.labels.resize(m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd p(d);
      for (int j = 0; j < d; ++j) p[j] = gauss(eng);
      const double side = unit(eng) < 0.5 ? 1.0 : -1.0;
      // Push the point one unit off the hyperplane for a clean margin.
      p += (side * (1.0 + unit(eng)) - normal.dot(p)) * normal;
      data.samples.row(i) = p.transpose();
      data.labels[i] = side;
    }

    const auto model = nm01::train(data);
    CAPTURE(rep);
    if (model.report.status == nm01::SolveStatus::Converged) {
      ++converged;
      CHECK(model.train_accuracy == doctest::Approx(1.0));
    }
  }
  // Separable data with unit margins should essentially always train.
  CHECK(converged >= 8);
}
