#pragma once

#include <Eigen/Dense>

namespace netfail {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IncidenceMatrix = Eigen::MatrixXi;

}  // namespace netfail
