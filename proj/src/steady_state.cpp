#include "maser/steady_state.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "maser/errors.hpp"

namespace maser {

namespace {

// A = 3 n_l n_u + n_l + n_u
double bath_product(const EngineParams& p) {
    return 3.0 * p.n_l * p.n_u + p.n_l + p.n_u;
}

// B = 2 Gamma [(3 n_l + 2) / gamma_u + (3 n_u + 2) / gamma_l]
double saturation_weight(const EngineParams& p, double decoherence) {
    return 2.0 * decoherence * ((3.0 * p.n_l + 2.0) / p.gamma_u + (3.0 * p.n_u + 2.0) / p.gamma_l);
}

}  // namespace

SteadyState steady_state_closed_form(const EngineParams& p) {
    const DerivedRates rates = derived_rates(p);
    const double gc = rates.classical_rate;
    const double gu = p.gamma_u;
    const double gl = p.gamma_l;

    const double denom = (gl * (2.0 * p.n_l + 1.0) + gc) * (gu * (2.0 * p.n_u + 1.0) + gc) -
                         (gl * (p.n_l + 1.0) - gc) * (gu * (p.n_u + 1.0) - gc);
    if (!(denom > 0.0)) {
        throw DomainError("steady state not unique: both baths empty and drive off");
    }
    const double shared = gc * (gl * (p.n_l + 1.0) + gu * (p.n_u + 1.0));

    SteadyState s;
    s.rho_ll = (gl * gu * p.n_u * (p.n_l + 1.0) + shared) / denom;
    s.rho_uu = (gl * gu * p.n_l * (p.n_u + 1.0) + shared) / denom;
    s.rho_xx = 1.0 - s.rho_uu - s.rho_ll;

    const double drive_gap = p.n_l - p.n_u;
    if (p.epsilon == 0.0 || drive_gap == 0.0) {
        return s;
    }
    const double g = rates.decoherence;
    const double coh_denom = (p.delta * p.delta + g * g) * bath_product(p) +
                             p.epsilon * p.epsilon * saturation_weight(p, g);
    if (!(coh_denom > 0.0)) {
        throw DomainError("coherence undefined: vanishing denominator");
    }
    const double scale = p.epsilon * drive_gap / coh_denom;
    s.rho_ul_re = -p.delta * scale + 0.0;  // +0.0 keeps the resonant value unsigned
    s.rho_ul_im = g * scale;
    return s;
}

SteadyState steady_state_numeric(const GeneratorMatrix& g) {
    if (g.chi_u != 0.0 || g.chi_l != 0.0) {
        throw DomainError("steady state requires zero counting fields");
    }
    const Eigen::MatrixXd real = g.entries.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const int n = static_cast<int>(sv.size());
    const double cutoff = 1e-12 * sv(0);
    int kernel = 0;
    for (int i = 0; i < n; ++i) {
        if (sv(i) <= cutoff) ++kernel;
    }
    if (kernel != 1) {
        throw RankError("generator null space has dimension " + std::to_string(kernel) + ", expected 1");
    }
    Eigen::VectorXd v = svd.matrixV().col(n - 1);
    const double norm = v(basis::xx) + v(basis::uu) + v(basis::ll);
    if (std::abs(norm) < 1e-300) {
        throw RankError("null vector carries no population");
    }
    v /= norm;

    SteadyState s;
    s.rho_xx = v(basis::xx);
    s.rho_uu = v(basis::uu);
    s.rho_ll = v(basis::ll);
    if (n == basis::quantum_dim) {
        s.rho_ul_re = v(basis::re_ul);
        s.rho_ul_im = v(basis::im_ul);
    }
    return s;
}

CoherenceRidge coherence_ridge(const EngineParams& p, double delta) {
    const double g = decoherence_rate(p);
    if (p.n_l == p.n_u) {
        throw DomainError("coherence ridge requires n_l != n_u");
    }
    const double a = bath_product(p);
    const double b = saturation_weight(p, g);
    CoherenceRidge r;
    r.epsilon_peak = std::sqrt((delta * delta + g * g) * a / b);
    r.peak = std::abs(p.n_l - p.n_u) / (2.0 * std::sqrt(a * b));
    return r;
}

}  // namespace maser
