#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "maser/errors.hpp"
#include "maser/params.hpp"

using namespace maser;

namespace {
const EngineParams kBase{2.0, 0.1, 0.027, 5.0, 0.15, 0.0};
}

TEST(Params, AcceptsPhysicalPoint) {
    EXPECT_NO_THROW(validate(kBase));
}

TEST(Params, RejectsNonPositiveCouplings) {
    EngineParams p = kBase;
    p.gamma_u = 0.0;
    EXPECT_THROW(validate(p), DomainError);
    p = kBase;
    p.gamma_l = -1.0;
    EXPECT_THROW(validate(p), DomainError);
}

TEST(Params, RejectsNegativeOccupationAndDrive) {
    EngineParams p = kBase;
    p.n_u = -0.1;
    EXPECT_THROW(validate(p), DomainError);
    p = kBase;
    p.epsilon = -0.1;
    EXPECT_THROW(validate(p), DomainError);
}

TEST(Params, RejectsNonFinite) {
    EngineParams p = kBase;
    p.delta = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(validate(p), DomainError);
    p = kBase;
    p.n_l = std::numeric_limits<double>::infinity();
    EXPECT_THROW(validate(p), DomainError);
}

TEST(Params, DecoherenceIsHalfTheAbsorptionRates) {
    EXPECT_DOUBLE_EQ(decoherence_rate(kBase), (2.0 * 0.027 + 0.1 * 5.0) / 2.0);
}

TEST(Params, ClassicalRateIsLorentzian) {
    EngineParams p = kBase;
    p.delta = 0.3;
    const DerivedRates r = derived_rates(p);
    const double g = r.decoherence;
    EXPECT_NEAR(r.classical_rate, 2.0 * 0.15 * 0.15 * g / (0.09 + g * g), 1e-16);
}

TEST(Params, ClassicalRateSingularWithoutLinewidth) {
    EngineParams p{1.0, 1.0, 0.0, 0.0, 0.2, 0.0};
    EXPECT_THROW(derived_rates(p), DomainError);
    p.epsilon = 0.0;
    EXPECT_EQ(derived_rates(p).classical_rate, 0.0);
}

TEST(Params, RescaleTouchesRatesOnly) {
    const EngineParams s = rescaled(EngineParams{2.0, 0.1, 0.027, 5.0, 0.15, 0.4}, 2.0);
    EXPECT_EQ(s, (EngineParams{4.0, 0.2, 0.027, 5.0, 0.3, 0.8}));
}

TEST(Params, ResonantDerivedRates) {
    const DerivedRates r = derived_rates(kBase);
    EXPECT_NEAR(r.decoherence, 0.277, 1e-16);
    EXPECT_NEAR(r.classical_rate, 0.045 / 0.277, 1e-16);
    EngineParams off = kBase;
    off.epsilon = 0.0;
    EXPECT_EQ(derived_rates(off).classical_rate, 0.0);
}
