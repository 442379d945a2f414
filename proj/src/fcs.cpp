#include "maser/fcs.hpp"

#include <cmath>

#include "maser/errors.hpp"

namespace maser {

namespace {

double bath_product(const EngineParams& p) {
    return 3.0 * p.n_l * p.n_u + p.n_l + p.n_u;
}

double pair_product(const EngineParams& p) {
    return 2.0 * p.n_l * p.n_u + p.n_l + p.n_u;
}

// D = gamma_u gamma_l A + 2 gamma_c (3 Gamma + gamma_u + gamma_l)
double rate_denominator(const EngineParams& p, const DerivedRates& r) {
    return p.gamma_u * p.gamma_l * bath_product(p) +
           2.0 * r.classical_rate * (3.0 * r.decoherence + p.gamma_u + p.gamma_l);
}

}  // namespace

CharPolyCoeffs charpoly_coeffs_quantum(const EngineParams& p) {
    const double g = decoherence_rate(p);
    const double gu = p.gamma_u;
    const double gl = p.gamma_l;
    const double eps2 = p.epsilon * p.epsilon;
    const double det2 = p.delta * p.delta;
    const double a = bath_product(p);

    CharPolyCoeffs c;
    c.model = Model::quantum;
    c.a0_p = -2.0 * eps2 * gl * gu * (p.n_l - p.n_u) * g;
    c.a0_pp = -2.0 * eps2 * gu * gl * g * pair_product(p);
    c.a1 = gl * gu * (det2 + g * g) * a + 4.0 * eps2 * g * (3.0 * g + gl + gu);
    c.a1_p = -2.0 * eps2 * gu * gl * (p.n_l - p.n_u);
    c.a2 = (det2 + g * g + 4.0 * eps2) * (4.0 * g + gl + gu) + 2.0 * g * gl * gu * a;
    return c;
}

CharPolyCoeffs charpoly_coeffs_classical(const EngineParams& p) {
    const DerivedRates r = derived_rates(p);
    const double gc = r.classical_rate;
    const double g = r.decoherence;
    const double gu = p.gamma_u;
    const double gl = p.gamma_l;

    CharPolyCoeffs c;
    c.model = Model::classical;
    c.a0_p = -gc * gl * gu * (p.n_l - p.n_u);
    c.a0_pp = -gc * gl * gu * pair_product(p);
    c.a1 = 2.0 * gc * (3.0 * g + gl + gu) + gl * gu * bath_product(p);
    c.a1_p = 0.0;
    c.a2 = 2.0 * gc + 4.0 * g + gl + gu;
    return c;
}

CharPolyCoeffs charpoly_coeffs(const EngineParams& p, Model model) {
    return model == Model::quantum ? charpoly_coeffs_quantum(p) : charpoly_coeffs_classical(p);
}

double mean_rate(const CharPolyCoeffs& c) {
    if (c.a1 == 0.0) throw DomainError("mean rate undefined: a1 = 0");
    return -c.a0_p / c.a1;
}

double variance_rate(const CharPolyCoeffs& c, double mean) {
    if (c.a1 == 0.0) throw DomainError("variance rate undefined: a1 = 0");
    return -(c.a0_pp + 2.0 * mean * (c.a1_p + c.a2 * mean)) / c.a1;
}

void require_off_equilibrium(const EngineParams& p) {
    if (std::abs(p.n_l - p.n_u) < kEquilibriumGuard) {
        throw DomainError("equilibrium singularity: n_l - n_u vanishes");
    }
}

double fano_population(const EngineParams& p) {
    validate(p);
    require_off_equilibrium(p);
    return (p.n_l * (p.n_u + 1.0) + p.n_u * (p.n_l + 1.0)) / (p.n_l - p.n_u);
}

double transport_coefficient(const EngineParams& p, Model model) {
    const DerivedRates r = derived_rates(p);
    const double g = r.decoherence;
    const double d = rate_denominator(p, r);
    if (!(d > 0.0)) throw DomainError("transport coefficient undefined: D = 0");
    const double classical = (2.0 * r.classical_rate + 4.0 * g + p.gamma_l + p.gamma_u) / d;
    if (model == Model::classical) return classical;
    if (g == 0.0) throw DomainError("transport coefficient undefined: Gamma = 0");
    const double det2 = p.delta * p.delta;
    const double g2 = g * g;
    return classical + (g2 - det2) / (det2 + g2) * (p.gamma_u * p.gamma_l / g) * bath_product(p) / d;
}

Cumulants fano(const EngineParams& p, Model model) {
    validate(p);
    require_off_equilibrium(p);
    const CharPolyCoeffs c = charpoly_coeffs(p, model);
    Cumulants k;
    k.mean = mean_rate(c);
    if (k.mean == 0.0) throw DomainError("epsilon = 0: mean emission rate vanishes, Fano factor and Q undefined");
    k.variance = variance_rate(c, k.mean);
    k.fano_pop = fano_population(p);
    k.fano_tr = -2.0 * k.mean * transport_coefficient(p, model);
    k.fano = k.fano_pop + k.fano_tr;
    return k;
}

}  // namespace maser
