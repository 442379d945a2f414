#pragma once

// Quad-precision scalars for the numerical oracles. Kept out of the public
// headers: boost's Eigen glue is heavy to compile.

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace maser::detail {

using QuadReal = boost::multiprecision::cpp_bin_float_quad;
using QuadComplex = boost::multiprecision::cpp_complex_quad;
using QuadMatrix = Eigen::Matrix<QuadComplex, Eigen::Dynamic, Eigen::Dynamic>;

inline std::complex<double> to_double(const QuadComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline Eigen::MatrixXcd to_double(const QuadMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    }
    return out;
}

// Monic characteristic polynomial det(z I - a), ascending coefficients,
// by the Faddeev-LeVerrier recursion.
template <class Scalar>
std::vector<Scalar> faddeev_leverrier(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index n = a.rows();
    std::vector<Scalar> coeff(static_cast<std::size_t>(n + 1), Scalar(0));
    coeff[static_cast<std::size_t>(n)] = Scalar(1);
    const Mat identity = Mat::Identity(n, n);
    Mat m = Mat::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + identity * coeff[static_cast<std::size_t>(n - k + 1)];
        const Mat am = a * m;
        coeff[static_cast<std::size_t>(n - k)] = -am.trace() / Scalar(static_cast<double>(k));
    }
    return coeff;
}

}  // namespace maser::detail
