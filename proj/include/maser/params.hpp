#pragma once

namespace maser {

// Physical parameters of the three-level maser in the frame rotating with the
// drive. Rates are in arbitrary inverse-time units, hbar = k_B = 1.
struct EngineParams {
    double gamma_u = 0.0;  // coupling rate to bath u
    double gamma_l = 0.0;  // coupling rate to bath l
    double n_u = 0.0;      // bath u occupation
    double n_l = 0.0;      // bath l occupation
    double epsilon = 0.0;  // drive strength
    double delta = 0.0;    // detuning of the drive from the u-l transition

    bool operator==(const EngineParams&) const = default;
};

struct DerivedRates {
    double decoherence = 0.0;    // Gamma = (gamma_u n_u + gamma_l n_l) / 2
    double classical_rate = 0.0; // gamma_c = 2 eps^2 Gamma / (Delta^2 + Gamma^2)
};

// Throws DomainError if a field is non-finite or out of range.
void validate(const EngineParams& p);

// Decoherence rate Gamma; requires only validity.
double decoherence_rate(const EngineParams& p);

// Throws DomainError when eps > 0 and Gamma = Delta = 0 (gamma_c undefined).
DerivedRates derived_rates(const EngineParams& p);

// Multiplies gamma_u, gamma_l, epsilon and delta by `factor`; the occupations
// are untouched. All rates of the model scale linearly under this map.
EngineParams rescaled(const EngineParams& p, double factor);

}  // namespace maser
