#pragma once
// Hessian representations accepted by the saddle-point solver.

#include <Eigen/Core>

#include <variant>
#include <vector>

namespace nm01 {

struct DiagonalHessian {
  Eigen::VectorXd d;  // diagonal entries
};

// One dense block acting on coordinates [start, start + block.rows()).
struct HessianBlock {
  int start = 0;
  Eigen::MatrixXd block;
};

struct BlockDiagonalHessian {
  std::vector<HessianBlock> blocks;  // disjoint ranges covering 0..n-1
};

struct DenseHessian {
  Eigen::MatrixXd H;  // symmetric
};

using HessianRep =
    std::variant<DiagonalHessian, BlockDiagonalHessian, DenseHessian>;

int hessian_dim(const HessianRep& rep);
Eigen::MatrixXd hessian_dense(const HessianRep& rep);
Eigen::VectorXd hessian_diagonal(const HessianRep& rep);
double hessian_max_abs(const HessianRep& rep);

// Throws std::invalid_argument on malformed representations: block ranges
// that overlap or fail to cover 0..n-1, or a dense part that is asymmetric
// beyond 1e-12 relative.
void validate_hessian(const HessianRep& rep);

}  // namespace nm01
