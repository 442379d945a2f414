#pragma once

#include <complex>

#include "maser/generator.hpp"
#include "maser/params.hpp"

namespace maser {

struct SteadyState {
    double rho_xx = 0.0;
    double rho_uu = 0.0;
    double rho_ll = 0.0;
    double rho_ul_re = 0.0;
    double rho_ul_im = 0.0;

    std::complex<double> rho_ul() const { return {rho_ul_re, rho_ul_im}; }
    double population_sum() const { return rho_xx + rho_uu + rho_ll; }
};

// Analytic steady state of the quantum maser. The populations coincide with
// those of the classical twin at the same gamma_c. Throws DomainError when
// the steady state is not unique (both baths empty and the drive off).
SteadyState steady_state_closed_form(const EngineParams& p);

// Normalized right null vector of a zero-field generator (quantum 5x5 or
// classical 3x3), taken as the smallest singular direction. Throws
// RankError unless exactly one singular value falls below
// 1e-12 * (largest singular value).
SteadyState steady_state_numeric(const GeneratorMatrix& g);

struct CoherenceRidge {
    double epsilon_peak = 0.0;  // drive strength maximizing |rho_ul| at fixed Delta
    double peak = 0.0;          // |rho_ul| on the ridge, independent of Delta
};

// Requires n_l != n_u (DomainError otherwise). `p.epsilon` and `p.delta` are
// ignored; the ridge is evaluated at `delta`.
CoherenceRidge coherence_ridge(const EngineParams& p, double delta);

}  // namespace maser
