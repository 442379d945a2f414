#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "maser/fcs.hpp"

namespace maser {

// Independent numerical routes to the counting statistics. They never touch
// the closed-form coefficient expressions in fcs.hpp and exist to check them.

struct EigenvalueCumulants {
    double mean = 0.0;
    double variance = 0.0;
    double mean_error = 0.0;      // |Richardson - finest central difference|
    double variance_error = 0.0;
    double step = 0.0;
};

// Eigenvalue of `l` with the largest real part. Throws BranchError when the
// two largest real parts are closer than 1e-10 * max(1, max |l_ij|).
std::complex<double> dominant_eigenvalue(const Eigen::MatrixXcd& l);

// Mean and variance from central differences of the dominant eigenvalue
// zeta(chi_u) of L(chi_u, chi_l = 0) at steps h and h/2, combined by
// Richardson extrapolation. zeta is located in double precision and
// Newton-refined in quad precision, so round-off stays far below the
// O(h^4) truncation error even when var << ||L||.
EigenvalueCumulants cumulants_via_eigenvalue(const EngineParams& p, Model model, double step = 1e-4);

// Ascending coefficients of det(z I - l).
std::vector<std::complex<double>> characteristic_polynomial(const Eigen::MatrixXcd& l);

// Coefficients of det(zeta I - L(chi_u)) expanded numerically (quad
// precision) on eight equispaced chi_u samples and differentiated by
// trigonometric interpolation; exact up to rounding because each
// coefficient is a trigonometric polynomial of degree one in chi_u.
CharPolyCoeffs charpoly_coeffs_numeric(const EngineParams& p, Model model);

}  // namespace maser
