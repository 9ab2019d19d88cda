#ifndef QORD_TYPES_HPP
#define QORD_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace qord {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;

}  // namespace qord

#endif
