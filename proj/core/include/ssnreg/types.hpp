#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ssnreg {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<Index>;

}  // namespace ssnreg
