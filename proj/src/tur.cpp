#include "maser/tur.hpp"

#include <cmath>

#include "maser/errors.hpp"

namespace maser {

double log_driving(const EngineParams& p) {
    validate(p);
    if (p.n_u == 0.0 || p.n_l == 0.0) {
        throw DomainError("log driving diverges: a bath occupation is zero");
    }
    require_off_equilibrium(p);
    // n_l (n_u + 1) - n_u (n_l + 1) = n_l - n_u exactly
    return std::log1p((p.n_l - p.n_u) / (p.n_u * (p.n_l + 1.0)));
}

double entropy_production(const EngineParams& p, double mean) {
    return log_driving(p) * mean;
}

double q_pop(const EngineParams& p) {
    return log_driving(p) * fano_population(p);
}

double quantum_advantage(const EngineParams& p) {
    const double log = log_driving(p);
    const DerivedRates r = derived_rates(p);
    const double mean = mean_rate(charpoly_coeffs_quantum(p));
    const double g = r.decoherence;
    const double det2 = p.delta * p.delta;
    const double g2 = g * g;
    const double a = 3.0 * p.n_l * p.n_u + p.n_l + p.n_u;
    const double d = p.gamma_u * p.gamma_l * a + 2.0 * r.classical_rate * (3.0 * g + p.gamma_u + p.gamma_l);
    // C_cl - C, formed directly so its sign is exactly that of Delta^2 - Gamma^2
    const double diff = (det2 - g2) / (det2 + g2) * (p.gamma_u * p.gamma_l / g) * a / d;
    return 2.0 * mean * log * diff;
}

TurReport thermodynamic_uncertainty(const EngineParams& p, Model model) {
    const double log = log_driving(p);
    const Cumulants quantum = fano(p, Model::quantum);
    const Cumulants classical = fano(p, Model::classical);
    const Cumulants& chosen = model == Model::quantum ? quantum : classical;

    TurReport r;
    r.model = model;
    r.mean_rate = chosen.mean;
    r.variance_rate = chosen.variance;
    r.sigma = log * chosen.mean;
    r.q = log * chosen.fano;
    r.q_pop = log * chosen.fano_pop;
    r.q_tr = log * chosen.fano_tr;
    r.q_classical = log * classical.fano;
    r.q_tr_classical = log * classical.fano_tr;
    r.advantage = model == Model::quantum ? quantum_advantage(p) : 0.0;
    return r;
}

}  // namespace maser
