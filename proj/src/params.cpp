#include "maser/params.hpp"

#include <cmath>
#include <string>

#include "maser/errors.hpp"

namespace maser {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace

void validate(const EngineParams& p) {
    require_finite(p.gamma_u, "gamma_u");
    require_finite(p.gamma_l, "gamma_l");
    require_finite(p.n_u, "n_u");
    require_finite(p.n_l, "n_l");
    require_finite(p.epsilon, "epsilon");
    require_finite(p.delta, "delta");
    if (p.gamma_u <= 0.0) throw DomainError("gamma_u must be > 0");
    if (p.gamma_l <= 0.0) throw DomainError("gamma_l must be > 0");
    if (p.n_u < 0.0) throw DomainError("n_u must be >= 0");
    if (p.n_l < 0.0) throw DomainError("n_l must be >= 0");
    if (p.epsilon < 0.0) throw DomainError("epsilon must be >= 0");
}

double decoherence_rate(const EngineParams& p) {
    validate(p);
    return 0.5 * (p.gamma_u * p.n_u + p.gamma_l * p.n_l);
}

DerivedRates derived_rates(const EngineParams& p) {
    DerivedRates r;
    r.decoherence = decoherence_rate(p);
    if (p.epsilon == 0.0) {
        r.classical_rate = 0.0;
        return r;
    }
    const double denom = p.delta * p.delta + r.decoherence * r.decoherence;
    if (denom == 0.0) {
        throw DomainError("gamma_c undefined: epsilon > 0 with Gamma = Delta = 0");
    }
    r.classical_rate = 2.0 * p.epsilon * p.epsilon * r.decoherence / denom;
    return r;
}

EngineParams rescaled(const EngineParams& p, double factor) {
    EngineParams q = p;
    q.gamma_u *= factor;
    q.gamma_l *= factor;
    q.epsilon *= factor;
    q.delta *= factor;
    return q;
}

}  // namespace maser
