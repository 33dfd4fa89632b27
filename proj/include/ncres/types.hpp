#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ncres {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace ncres
