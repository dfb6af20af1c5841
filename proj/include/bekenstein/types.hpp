#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bk {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

// spectral norm, with the absolute fallback used for zero operators
double opnorm(const cmat& a);
inline double scale_of(const cmat& a) {
    double n = opnorm(a);
    return n > 1e-14 ? n : 1e-14;
}

} // namespace bk
