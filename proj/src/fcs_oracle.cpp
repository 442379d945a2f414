#include "maser/fcs_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <Eigen/Eigenvalues>

#include "maser/detail/quad.hpp"
#include "maser/errors.hpp"

namespace maser {

using detail::QuadComplex;
using detail::QuadMatrix;
using detail::QuadReal;

namespace {

double entry_scale(const Eigen::MatrixXcd& l) {
    return std::max(1e-300, l.cwiseAbs().maxCoeff());
}

QuadMatrix quad_generator(const EngineParams& p, Model model, const QuadReal& chi_u) {
    if (model == Model::quantum) {
        validate(p);
        return detail::quantum_generator<QuadReal, QuadComplex>(p, chi_u, QuadReal(0));
    }
    derived_rates(p);
    return detail::classical_generator<QuadReal, QuadComplex>(p, chi_u);
}

// Newton iteration on det(L - z I): z <- z + 1 / tr((L - z I)^-1).
QuadComplex refine_eigenvalue(const QuadMatrix& l, std::complex<double> guess, double scale) {
    const Eigen::Index n = l.rows();
    const QuadMatrix identity = QuadMatrix::Identity(n, n);
    QuadComplex z(QuadReal(guess.real()), QuadReal(guess.imag()));
    const QuadReal tol = QuadReal(1e-31) * QuadReal(scale);
    for (int it = 0; it < 20; ++it) {
        const QuadMatrix shifted = l - identity * z;
        const QuadComplex tr = shifted.partialPivLu().inverse().trace();
        const QuadComplex step = QuadComplex(1) / tr;
        if (!boost::multiprecision::isfinite(step.real()) || !boost::multiprecision::isfinite(step.imag())) {
            break;  // landed on the eigenvalue exactly
        }
        z += step;
        if (abs(step) <= tol) break;
    }
    const std::complex<double> refined = detail::to_double(z);
    if (std::abs(refined - guess) > 1e-8 * scale) {
        throw BranchError("eigenvalue refinement left the dominant branch");
    }
    return z;
}

QuadComplex dominant_zeta(const EngineParams& p, Model model, double chi) {
    const QuadMatrix l = quad_generator(p, model, QuadReal(chi));
    const Eigen::MatrixXcd ld = detail::to_double(l);
    return refine_eigenvalue(l, dominant_eigenvalue(ld), entry_scale(ld));
}

struct CentralDifferences {
    double mean = 0.0;
    double variance = 0.0;
};

CentralDifferences central_differences(const EngineParams& p, Model model, double h, const QuadComplex& zeta0) {
    const QuadComplex plus = dominant_zeta(p, model, h);
    const QuadComplex minus = dominant_zeta(p, model, -h);
    const QuadReal hq(h);
    const QuadComplex i(QuadReal(0), QuadReal(1));
    const QuadComplex first = i * (plus - minus) / (QuadReal(2) * hq);
    const QuadComplex second = -(plus - QuadReal(2) * zeta0 + minus) / (hq * hq);
    return {static_cast<double>(first.real()), static_cast<double>(second.real())};
}

}  // namespace

std::complex<double> dominant_eigenvalue(const Eigen::MatrixXcd& l) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(l, false);
    if (solver.info() != Eigen::Success) {
        throw BranchError("eigenvalue solver did not converge");
    }
    const Eigen::VectorXcd& ev = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < ev.size(); ++k) {
        if (ev(k).real() > ev(best).real()) best = k;
    }
    double runner_up = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (k != best) runner_up = std::max(runner_up, ev(k).real());
    }
    const double tie = 1e-10 * std::max(1.0, l.cwiseAbs().maxCoeff());
    if (ev(best).real() - runner_up < tie) {
        throw BranchError("dominant eigenvalue is not isolated (real-part gap " +
                          std::to_string(ev(best).real() - runner_up) + ")");
    }
    return ev(best);
}

EigenvalueCumulants cumulants_via_eigenvalue(const EngineParams& p, Model model, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("finite-difference step must be positive");
    }
    const QuadComplex zeta0 = dominant_zeta(p, model, 0.0);
    const CentralDifferences coarse = central_differences(p, model, step, zeta0);
    const CentralDifferences fine = central_differences(p, model, 0.5 * step, zeta0);

    EigenvalueCumulants out;
    out.step = step;
    out.mean = (4.0 * fine.mean - coarse.mean) / 3.0;
    out.variance = (4.0 * fine.variance - coarse.variance) / 3.0;
    out.mean_error = std::abs(out.mean - fine.mean);
    out.variance_error = std::abs(out.variance - fine.variance);

    // h and h/2 must see the same smooth branch. The absolute floor lets
    // vanishing cumulants (no drive: zeta(chi) is identically zero) through.
    const double floor = 1e-14 * entry_scale(detail::to_double(quad_generator(p, model, QuadReal(0))));
    if (std::abs(coarse.mean - fine.mean) > 1e-2 * std::abs(out.mean) + floor ||
        std::abs(coarse.variance - fine.variance) > 1e-2 * std::abs(out.variance) + floor) {
        throw BranchError("finite-difference estimates at h and h/2 disagree");
    }
    return out;
}

std::vector<std::complex<double>> characteristic_polynomial(const Eigen::MatrixXcd& l) {
    return detail::faddeev_leverrier<std::complex<double>>(l);
}

CharPolyCoeffs charpoly_coeffs_numeric(const EngineParams& p, Model model) {
    constexpr int samples = 8;
    const QuadReal two_pi = boost::math::constants::two_pi<QuadReal>();
    std::vector<std::vector<QuadComplex>> coeffs;
    coeffs.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        const QuadReal chi = two_pi * QuadReal(j) / QuadReal(samples);
        coeffs.push_back(detail::faddeev_leverrier<QuadComplex>(quad_generator(p, model, chi)));
    }

    // Fourier modes c_m of a_n(chi) = sum_m c_m exp(i m chi), then
    // a_n(0) = sum c_m, i d/dchi a_n(0) = -sum m c_m, (i d/dchi)^2 a_n(0) = sum m^2 c_m.
    struct Derivs {
        double value, first, second;
    };
    auto derivatives = [&](std::size_t n) {
        QuadComplex value(0), first(0), second(0);
        for (int m = -samples / 2 + 1; m < samples / 2; ++m) {
            QuadComplex mode(0);
            for (int j = 0; j < samples; ++j) {
                const QuadReal phase = -two_pi * QuadReal(m * j) / QuadReal(samples);
                mode += coeffs[static_cast<std::size_t>(j)][n] * QuadComplex(cos(phase), sin(phase));
            }
            mode /= QuadReal(samples);
            value += mode;
            first -= QuadReal(m) * mode;
            second += QuadReal(m * m) * mode;
        }
        return Derivs{static_cast<double>(value.real()), static_cast<double>(first.real()),
                      static_cast<double>(second.real())};
    };

    const Derivs d0 = derivatives(0);
    const Derivs d1 = derivatives(1);
    const Derivs d2 = derivatives(2);
    CharPolyCoeffs c;
    c.model = model;
    c.a0_p = d0.first;
    c.a0_pp = d0.second;
    c.a1 = d1.value;
    c.a1_p = d1.first;
    c.a2 = d2.value;
    return c;
}

}  // namespace maser
