#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace mbeam {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

}  // namespace mbeam
