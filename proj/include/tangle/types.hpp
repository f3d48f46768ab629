#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace tangle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

}  // namespace tangle
