#include "nm01/hessian.hpp"

#include <algorithm>
#include <stdexcept>

namespace nm01 {

namespace {

std::vector<const HessianBlock*> sorted_blocks(const BlockDiagonalHessian& h) {
  std::vector<const HessianBlock*> ptrs;
  ptrs.reserve(h.blocks.size());
  for (const auto& b : h.blocks) ptrs.push_back(&b);
  std::sort(ptrs.begin(), ptrs.end(),
            [](const HessianBlock* a, const HessianBlock* b) {
              return a->start < b->start;
            });
  return ptrs;
}

}  // namespace

int hessian_dim(const HessianRep& rep) {
  if (const auto* d = std::get_if<DiagonalHessian>(&rep)) {
    return static_cast<int>(d->d.size());
  }
  if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    int n = 0;
    for (const auto& b : bd->blocks) {
      n = std::max(n, b.start + static_cast<int>(b.block.rows()));
    }
    return n;
  }
  return static_cast<int>(std::get<DenseHessian>(rep).H.rows());
}

Eigen::MatrixXd hessian_dense(const HessianRep& rep) {
  const int n = hessian_dim(rep);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  if (const auto* d = std::get_if<DiagonalHessian>(&rep)) {
    H.diagonal() = d->d;
  } else if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    for (const auto& b : bd->blocks) {
      H.block(b.start, b.start, b.block.rows(), b.block.cols()) = b.block;
    }
  } else {
    H = std::get<DenseHessian>(rep).H;
  }
  return H;
}

Eigen::VectorXd hessian_diagonal(const HessianRep& rep) {
  if (const auto* d = std::get_if<DiagonalHessian>(&rep)) {
    return d->d;
  }
  if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(hessian_dim(rep));
    for (const auto& b : bd->blocks) {
      diag.segment(b.start, b.block.rows()) = b.block.diagonal();
    }
    return diag;
  }
  return std::get<DenseHessian>(rep).H.diagonal();
}

double hessian_max_abs(const HessianRep& rep) {
  if (const auto* d = std::get_if<DiagonalHessian>(&rep)) {
    return d->d.size() == 0 ? 0.0 : d->d.cwiseAbs().maxCoeff();
  }
  if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    double mx = 0.0;
    for (const auto& b : bd->blocks) {
      if (b.block.size() > 0) mx = std::max(mx, b.block.cwiseAbs().maxCoeff());
    }
    return mx;
  }
  const auto& H = std::get<DenseHessian>(rep).H;
  return H.size() == 0 ? 0.0 : H.cwiseAbs().maxCoeff();
}

void validate_hessian(const HessianRep& rep) {
  if (const auto* bd = std::get_if<BlockDiagonalHessian>(&rep)) {
    int expected = 0;
    for (const auto* b : sorted_blocks(*bd)) {
      if (b->block.rows() != b->block.cols()) {
        throw std::invalid_argument("hessian: block is not square");
      }
      if (b->start != expected) {
        throw std::invalid_argument(
            "hessian: block ranges must be disjoint and cover all coordinates");
      }
      expected = b->start + static_cast<int>(b->block.rows());
    }
    if (expected != hessian_dim(rep)) {
      throw std::invalid_argument("hessian: block ranges leave a gap");
    }
    return;
  }
  if (const auto* dh = std::get_if<DenseHessian>(&rep)) {
    const auto& H = dh->H;
    if (H.rows() != H.cols()) {
      throw std::invalid_argument("hessian: dense part is not square");
    }
    if (H.size() > 0) {
      const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
      const double skew = (H - H.transpose()).cwiseAbs().maxCoeff();
      if (skew > 1e-12 * scale) {
        throw std::invalid_argument("hessian: dense part is not symmetric");
      }
    }
  }
}

}  // namespace nm01
