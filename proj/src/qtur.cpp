#include "maser/qtur.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "maser/errors.hpp"
#include "maser/fcs.hpp"
#include "maser/tur.hpp"

namespace maser {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> trace_of(const Vector5c& v) {
    return v(0) + v(1) + v(2);
}

}  // namespace

FullBasisState to_full_basis(const SteadyState& s) {
    FullBasisState v;
    v.entries << s.rho_xx, s.rho_uu, s.rho_ll, s.rho_ul(), std::conj(s.rho_ul());
    return v;
}

SteadyState from_full_basis(const FullBasisState& v) {
    const Vector5c& e = v.entries;
    const double tol = 1e-12;
    if (std::abs(e(0).imag()) > tol || std::abs(e(1).imag()) > tol || std::abs(e(2).imag()) > tol) {
        throw DomainError("populations must be real");
    }
    if (std::abs(e(4) - std::conj(e(3))) > tol) {
        throw DomainError("rho_lu must equal conj(rho_ul)");
    }
    SteadyState s;
    s.rho_xx = e(0).real();
    s.rho_uu = e(1).real();
    s.rho_ll = e(2).real();
    s.rho_ul_re = e(3).real();
    s.rho_ul_im = e(3).imag();
    return s;
}

Matrix5c real_to_full_transform() {
    Matrix5c t = Matrix5c::Zero();
    t(0, 0) = 1.0;
    t(1, 1) = 1.0;
    t(2, 2) = 1.0;
    t(3, 3) = 1.0;
    t(3, 4) = kI;
    t(4, 3) = 1.0;
    t(4, 4) = -kI;
    return t;
}

Matrix5c to_full_basis(const Eigen::MatrixXcd& real_generator) {
    if (real_generator.rows() != 5 || real_generator.cols() != 5) {
        throw DomainError("expected a 5x5 quantum generator");
    }
    const Matrix5c t = real_to_full_transform();
    const Matrix5c l = real_generator;
    return t * l * t.inverse();
}

std::array<JumpChannel, 4> jump_channels(const EngineParams& p) {
    return {{
        {"ux", p.gamma_u * (p.n_u + 1.0), basis::xx},
        {"xu", p.gamma_u * p.n_u, basis::uu},
        {"lx", p.gamma_l * (p.n_l + 1.0), basis::xx},
        {"xl", p.gamma_l * p.n_l, basis::ll},
    }};
}

KSupermatrices k_supermatrices(const EngineParams& p) {
    validate(p);
    const double gu = p.gamma_u;
    const double gl = p.gamma_l;
    const double nu = p.n_u;
    const double nl = p.n_l;
    const std::complex<double> ie = kI * p.epsilon;
    const std::complex<double> id = kI * p.delta;

    // Dissipative halves shared by both maps.
    Matrix5c common = Matrix5c::Zero();
    common(0, 0) = -0.5 * gl * (nl + 1.0) - 0.5 * gu * (nu + 1.0);
    common(0, 1) = 0.5 * gu * nu;
    common(0, 2) = 0.5 * gl * nl;
    common(1, 0) = 0.5 * gu * (nu + 1.0);
    common(1, 1) = -0.5 * gu * nu;
    common(2, 0) = 0.5 * gl * (nl + 1.0);
    common(2, 2) = -0.5 * gl * nl;

    KSupermatrices k;
    k.k1 = common;
    k.k1(1, 1) += id;
    k.k1(1, 4) = -ie;
    k.k1(2, 3) = -ie;
    k.k1(3, 2) = -ie;
    k.k1(3, 3) = id - 0.5 * gu * nu;
    k.k1(4, 1) = -ie;
    k.k1(4, 4) = -0.5 * gl * nl;

    k.k2 = common;
    k.k2(1, 1) -= id;
    k.k2(1, 3) = ie;
    k.k2(2, 4) = ie;
    k.k2(3, 1) = ie;
    k.k2(3, 3) = -0.5 * gl * nl;
    k.k2(4, 2) = ie;
    k.k2(4, 4) = -id - 0.5 * gu * nu;
    return k;
}

double dynamical_activity(const EngineParams& p, const SteadyState& s) {
    const double populations[3] = {s.rho_xx, s.rho_uu, s.rho_ll};
    double total = 0.0;
    for (const JumpChannel& c : jump_channels(p)) {
        total += c.strength * populations[c.source];
    }
    return total;
}

Pseudoinverse pseudoinverse(const Matrix5c& m) {
    Eigen::JacobiSVD<Matrix5c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * sv(0);
    Eigen::Matrix<double, 5, 1> inv_sv = Eigen::Matrix<double, 5, 1>::Zero();
    Pseudoinverse out;
    for (int i = 0; i < 5; ++i) {
        if (sv(i) > cutoff) {
            inv_sv(i) = 1.0 / sv(i);
        } else {
            ++out.kernel_dimension;
        }
    }
    out.matrix = svd.matrixV() * inv_sv.cast<std::complex<double>>().asDiagonal() * svd.matrixU().adjoint();
    return out;
}

Matrix5c steady_state_projector(const FullBasisState& ss) {
    Matrix5c p = Matrix5c::Zero();
    p.col(0) = ss.entries;
    p.col(1) = ss.entries;
    p.col(2) = ss.entries;
    return p;
}

Matrix5c projected_pseudoinverse(const Matrix5c& l_full, const FullBasisState& ss) {
    const Pseudoinverse pinv = pseudoinverse(l_full);
    if (pinv.kernel_dimension != 1) {
        throw RankError("Liouvillian kernel has dimension " + std::to_string(pinv.kernel_dimension) +
                        ", expected 1");
    }
    const Matrix5c complement = Matrix5c::Identity() - steady_state_projector(ss);
    return complement * pinv.matrix * complement;
}

double coherent_contribution(const KSupermatrices& k, const FullBasisState& ss) {
    const Matrix5c lp = projected_pseudoinverse(k.liouvillian(), ss);
    const Vector5c v = k.k1 * (lp * (k.k2 * ss.entries)) + k.k2 * (lp * (k.k1 * ss.entries));
    const std::complex<double> psi = -4.0 * trace_of(v);
    if (std::abs(psi.imag()) > 1e-8 * std::max(1.0, std::abs(psi.real()))) {
        throw NumericalError("coherent contribution has imaginary residue " + std::to_string(psi.imag()));
    }
    return psi.real();
}

double coherent_contribution(const EngineParams& p, const FullBasisState& ss) {
    return coherent_contribution(k_supermatrices(p), ss);
}

BoundComponents quantum_bound(const EngineParams& p) {
    const double mean = mean_rate(charpoly_coeffs_quantum(p));
    const SteadyState ss = steady_state_closed_form(p);

    BoundComponents b;
    b.sigma = entropy_production(p, mean);
    b.upsilon = dynamical_activity(p, ss);
    b.psi = coherent_contribution(p, to_full_basis(ss));
    const double activity = b.upsilon + b.psi;
    if (!(activity > 0.0)) {
        throw DomainError("quantum TUR bound undefined: Upsilon + Psi <= 0");
    }
    b.bound = b.h_prime * b.h_prime * b.sigma / activity;
    return b;
}

}  // namespace maser
