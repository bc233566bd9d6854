#pragma once

#include <Eigen/Core>

namespace sdis {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace sdis
