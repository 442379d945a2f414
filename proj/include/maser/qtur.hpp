#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "maser/params.hpp"
#include "maser/steady_state.hpp"

namespace maser {

using Matrix5c = Eigen::Matrix<std::complex<double>, 5, 5>;
using Vector5c = Eigen::Matrix<std::complex<double>, 5, 1>;

// Density matrix in the complete basis (rho_xx, rho_uu, rho_ll, rho_ul, rho_lu).
// Only the quantum-TUR bound works in this basis: the K-maps below do not
// preserve hermiticity individually.
struct FullBasisState {
    Vector5c entries = Vector5c::Zero();
};

FullBasisState to_full_basis(const SteadyState& s);

// Throws DomainError if the vector is not a hermitian state
// (rho_lu != conj(rho_ul) or complex populations beyond 1e-12).
SteadyState from_full_basis(const FullBasisState& v);

// T with v_full = T v_real for the real basis of the quantum generator.
Matrix5c real_to_full_transform();

// T L T^-1 for a 5x5 real-basis generator.
Matrix5c to_full_basis(const Eigen::MatrixXcd& real_generator);

// Collapse channels alpha = (ux), (xu), (lx), (xl): sigma_ij = |i><j| with
// strength Gamma_alpha; `source` is the level the jump leaves.
struct JumpChannel {
    const char* name;
    double strength;
    int source;
};
std::array<JumpChannel, 4> jump_channels(const EngineParams& p);

struct KSupermatrices {
    Matrix5c k1;  // -i H rho + 1/2 sum (s rho s^+ - s^+ s rho)
    Matrix5c k2;  //  i rho H + 1/2 sum (s rho s^+ - rho s^+ s)

    Matrix5c liouvillian() const { return k1 + k2; }
};

KSupermatrices k_supermatrices(const EngineParams& p);

// Upsilon = sum_alpha Gamma_alpha Tr[s_alpha^+ s_alpha rho].
double dynamical_activity(const EngineParams& p, const SteadyState& s);

struct Pseudoinverse {
    Matrix5c matrix;
    int kernel_dimension = 0;  // singular values <= 1e-12 * largest
};

// Moore-Penrose pseudoinverse by SVD with relative cutoff 1e-12.
Pseudoinverse pseudoinverse(const Matrix5c& m);

// P = [rho, rho, rho, 0, 0]: rho times the trace covector. Idempotent for a
// unit-trace rho but not hermitian.
Matrix5c steady_state_projector(const FullBasisState& ss);

// (I - P) L^+ (I - P). Throws RankError if L's kernel is not one-dimensional.
Matrix5c projected_pseudoinverse(const Matrix5c& l_full, const FullBasisState& ss);

// Psi = -4 Tr[K1 L_P^+ K2 rho + K2 L_P^+ K1 rho], with L = K1 + K2. Throws
// NumericalError if the imaginary residue exceeds 1e-8 * max(1, |Re Psi|).
double coherent_contribution(const KSupermatrices& k, const FullBasisState& ss);
double coherent_contribution(const EngineParams& p, const FullBasisState& ss);

struct BoundComponents {
    double upsilon = 0.0;
    double psi = 0.0;
    double h_prime = 1.0;  // slope of the rate scaling function h(theta) = 1 + theta
    double sigma = 0.0;
    double bound = 0.0;    // B = h'(0)^2 sigma / (Upsilon + Psi)
};

// Throws DomainError when Upsilon + Psi <= 0 (B undefined) and propagates the
// singularities of the entropy production.
BoundComponents quantum_bound(const EngineParams& p);

}  // namespace maser
