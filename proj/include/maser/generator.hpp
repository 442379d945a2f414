#pragma once

#include <complex>

#include <Eigen/Dense>

#include "maser/params.hpp"

namespace maser {

enum class Model { quantum, classical };

const char* to_string(Model m);

// Real-vector basis shared by all modules. The quantum generator acts on
// (rho_xx, rho_uu, rho_ll, Re rho_ul, Im rho_ul); the classical one on the
// first three entries only.
namespace basis {
inline constexpr int xx = 0;
inline constexpr int uu = 1;
inline constexpr int ll = 2;
inline constexpr int re_ul = 3;
inline constexpr int im_ul = 4;
inline constexpr int quantum_dim = 5;
inline constexpr int classical_dim = 3;
}  // namespace basis

// Liouvillian with counting fields attached to the bath jump terms. A jump
// that emits a quantum into bath l carries exp(-i chi_l), absorption
// exp(+i chi_l).
struct GeneratorMatrix {
    Eigen::MatrixXcd entries;
    double chi_u = 0.0;
    double chi_l = 0.0;
    Model model = Model::quantum;

    int dim() const { return static_cast<int>(entries.rows()); }
};

GeneratorMatrix build_quantum_generator(const EngineParams& p, double chi_u = 0.0, double chi_l = 0.0);

// Classical rate-equation twin with gamma_c replacing the coherent drive.
// Throws DomainError when gamma_c is undefined.
GeneratorMatrix build_classical_generator(const EngineParams& p, double chi_u = 0.0);

GeneratorMatrix build_generator(const EngineParams& p, Model model, double chi_u = 0.0);

namespace detail {

// Scalar-generic builders. The public API instantiates them with double; the
// eigenvalue oracle uses quad precision so that every entry, including the
// trace-preserving diagonal sums, is rounded at the working precision.
template <class Real, class Complex>
Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> quantum_generator(const EngineParams& p,
                                                                         const Real& chi_u,
                                                                         const Real& chi_l) {
    using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    const Real zero(0);
    const Real one(1);
    const Real gu(p.gamma_u), gl(p.gamma_l), nu(p.n_u), nl(p.n_l);
    const Real eps(p.epsilon), det(p.delta);
    const Real decoherence = (gu * nu + gl * nl) / Real(2);
    const Complex up_u = exp(Complex(zero, chi_u));
    const Complex down_u = exp(Complex(zero, Real(-chi_u)));
    const Complex up_l = exp(Complex(zero, chi_l));
    const Complex down_l = exp(Complex(zero, Real(-chi_l)));

    Mat m = Mat::Zero(5, 5);
    m(0, 0) = Complex(-gu * (nu + one) - gl * (nl + one), zero);
    m(0, 1) = Complex(gu * nu, zero) * up_u;
    m(0, 2) = Complex(gl * nl, zero) * up_l;

    m(1, 0) = Complex(gu * (nu + one), zero) * down_u;
    m(1, 1) = Complex(-gu * nu, zero);
    m(1, 4) = Complex(Real(-2) * eps, zero);

    m(2, 0) = Complex(gl * (nl + one), zero) * down_l;
    m(2, 2) = Complex(-gl * nl, zero);
    m(2, 4) = Complex(Real(2) * eps, zero);

    // d/dt rho_ul = (i Delta - Gamma) rho_ul + i eps (rho_uu - rho_ll)
    m(3, 3) = Complex(-decoherence, zero);
    m(3, 4) = Complex(-det, zero);

    m(4, 1) = Complex(eps, zero);
    m(4, 2) = Complex(-eps, zero);
    m(4, 3) = Complex(det, zero);
    m(4, 4) = Complex(-decoherence, zero);
    return m;
}

// Callers must have checked that gamma_c is defined (see derived_rates).
template <class Real, class Complex>
Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> classical_generator(const EngineParams& p,
                                                                           const Real& chi_u) {
    using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    const Real zero(0);
    const Real one(1);
    const Real gu(p.gamma_u), gl(p.gamma_l), nu(p.n_u), nl(p.n_l);
    const Real eps(p.epsilon), det(p.delta);
    const Real decoherence = (gu * nu + gl * nl) / Real(2);
    const Real gc = p.epsilon == 0.0
                        ? zero
                        : Real(Real(2) * eps * eps * decoherence / (det * det + decoherence * decoherence));
    const Complex up_u = exp(Complex(zero, chi_u));
    const Complex down_u = exp(Complex(zero, Real(-chi_u)));

    Mat m = Mat::Zero(3, 3);
    m(0, 0) = Complex(-gl * (nl + one) - gu * (nu + one), zero);
    m(0, 1) = Complex(gu * nu, zero) * up_u;
    m(0, 2) = Complex(gl * nl, zero);

    m(1, 0) = Complex(gu * (nu + one), zero) * down_u;
    m(1, 1) = Complex(-gc - gu * nu, zero);
    m(1, 2) = Complex(gc, zero);

    m(2, 0) = Complex(gl * (nl + one), zero);
    m(2, 1) = Complex(gc, zero);
    m(2, 2) = Complex(-gc - gl * nl, zero);
    return m;
}

}  // namespace detail

}  // namespace maser
