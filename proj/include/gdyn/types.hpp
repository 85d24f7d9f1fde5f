#pragma once

#include <Eigen/Dense>

namespace gdyn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace gdyn
