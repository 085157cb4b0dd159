#pragma once

#include <Eigen/Dense>

namespace sdn {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixRef = Eigen::Ref<const Matrix>;

}  // namespace sdn
