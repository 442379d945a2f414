#pragma once

#include "maser/generator.hpp"
#include "maser/params.hpp"

namespace maser {

// Counting-field derivatives of the characteristic polynomial
// det(zeta I - L(chi_u)) = sum_n a_n(chi_u) zeta^n at chi_u = 0, with
// a' = i d/dchi a and a'' = (i d/dchi)^2 a. For the classical model these are
// the c-coefficients and a1_p vanishes identically.
struct CharPolyCoeffs {
    double a0_p = 0.0;
    double a0_pp = 0.0;
    double a1 = 0.0;
    double a1_p = 0.0;
    double a2 = 0.0;
    Model model = Model::quantum;
};

// Long-time photon emission statistics, counted on bath u.
struct Cumulants {
    double mean = 0.0;      // <dN/dt>
    double variance = 0.0;  // var(dN/dt)
    double fano = 0.0;
    double fano_pop = 0.0;
    double fano_tr = 0.0;
};

// |n_l - n_u| below this is treated as equilibrium by every ratio quantity.
inline constexpr double kEquilibriumGuard = 1e-9;

CharPolyCoeffs charpoly_coeffs_quantum(const EngineParams& p);
CharPolyCoeffs charpoly_coeffs_classical(const EngineParams& p);
CharPolyCoeffs charpoly_coeffs(const EngineParams& p, Model model);

// -a0'/a1. Throws DomainError if a1 = 0.
double mean_rate(const CharPolyCoeffs& c);

// -(a0'' + 2 mean (a1' + a2 mean)) / a1. Throws DomainError if a1 = 0.
double variance_rate(const CharPolyCoeffs& c, double mean);

// Throws DomainError when |n_l - n_u| < kEquilibriumGuard.
void require_off_equilibrium(const EngineParams& p);

// Population part of the Fano factor, (n_l(n_u+1) + n_u(n_l+1)) / (n_l - n_u).
double fano_population(const EngineParams& p);

// Transport coefficient C (quantum) or C^cl (classical) entering
// F = F_pop - 2 <dN/dt> C.
double transport_coefficient(const EngineParams& p, Model model);

// Cumulants with the Fano factor assembled from its population and transport
// parts. Throws DomainError near equilibrium or when the mean rate vanishes.
Cumulants fano(const EngineParams& p, Model model);

}  // namespace maser
