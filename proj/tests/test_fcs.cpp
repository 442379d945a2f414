#include <cmath>

#include <gtest/gtest.h>

#include "maser/errors.hpp"
#include "maser/explorer.hpp"
#include "maser/fcs.hpp"
#include "maser/fcs_oracle.hpp"
#include "maser/generator.hpp"
#include "maser/params.hpp"
#include "reference.hpp"

using namespace maser;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

std::vector<EngineParams> random_points(std::uint64_t seed, std::size_t count) {
    McSpec spec;
    spec.seed = seed;
    std::vector<EngineParams> out;
    for (std::uint64_t i = 0; out.size() < count; ++i) {
        const EngineParams p = sample_params(spec, i);
        if (std::abs(p.n_l - p.n_u) >= 1e-3) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(Fcs, ClosedFormMatchesReference) {
    for (const auto& ref : {reference::kResonant, reference::kDetuned, reference::kGeneric}) {
        const CharPolyCoeffs q = charpoly_coeffs_quantum(ref.params);
        const double mq = mean_rate(q);
        EXPECT_LT(rel(mq, ref.mean), 1e-13);
        EXPECT_LT(rel(variance_rate(q, mq), ref.variance), 1e-12);
        const CharPolyCoeffs c = charpoly_coeffs_classical(ref.params);
        const double mc = mean_rate(c);
        EXPECT_LT(rel(mc, ref.mean_cl), 1e-13);
        EXPECT_LT(rel(variance_rate(c, mc), ref.variance_cl), 1e-12);
    }
}

// Coefficients of det(zeta - L) at the resonant point, read off the
// generator numerically in an independent prototype.
TEST(Fcs, ResonantCoefficients) {
    const CharPolyCoeffs q = charpoly_coeffs_quantum(reference::kResonant.params);
    EXPECT_NEAR(q.a0_p, -0.012397689, 1e-9);
    EXPECT_NEAR(q.a0_pp, -0.013205421, 1e-9);
    EXPECT_NEAR(q.a1, 0.1564282156, 1e-10);
    EXPECT_NEAR(q.a1_p, -0.044757, 1e-6);
    EXPECT_NEAR(q.a2, 1.136732232, 1e-9);
    const CharPolyCoeffs c = charpoly_coeffs_classical(reference::kResonant.params);
    EXPECT_NEAR(c.a0_p, -0.16157761732851983, 1e-15);
    EXPECT_NEAR(c.a0_pp, -0.17210469314079418, 1e-15);
    EXPECT_NEAR(c.a1, 2.038710469314079, 1e-14);
    EXPECT_NEAR(c.a2, 3.532909747292419, 1e-14);
}

TEST(Fcs, CoefficientsMatchNumericCharacteristicPolynomial) {
    for (const EngineParams& p : random_points(3, 100)) {
        for (Model m : {Model::quantum, Model::classical}) {
            const CharPolyCoeffs a = charpoly_coeffs(p, m);
            const CharPolyCoeffs n = charpoly_coeffs_numeric(p, m);
            EXPECT_LT(std::abs(a.a0_p - n.a0_p), 1e-12 * std::abs(n.a0_p));
            EXPECT_LT(std::abs(a.a0_pp - n.a0_pp), 1e-12 * std::abs(n.a0_pp));
            EXPECT_LT(std::abs(a.a1 - n.a1), 1e-12 * std::abs(n.a1));
            EXPECT_LT(std::abs(a.a1_p - n.a1_p), 1e-11 * std::max(std::abs(n.a1_p), std::abs(n.a1)));
            EXPECT_LT(std::abs(a.a2 - n.a2), 1e-12 * std::abs(n.a2));
        }
    }
}

TEST(Fcs, EigenvalueOracleAgrees) {
    for (const EngineParams& p : random_points(17, 100)) {
        for (Model m : {Model::quantum, Model::classical}) {
            const CharPolyCoeffs c = charpoly_coeffs(p, m);
            const double mean = mean_rate(c);
            const EigenvalueCumulants o = cumulants_via_eigenvalue(p, m);
            EXPECT_LT(rel(mean, o.mean), 1e-6);
            EXPECT_LT(rel(variance_rate(c, mean), o.variance), 1e-6);
        }
    }
}

TEST(Fcs, EigenvalueOracleMatchesReference) {
    const EigenvalueCumulants o = cumulants_via_eigenvalue(reference::kGeneric.params, Model::quantum);
    EXPECT_LT(rel(o.mean, reference::kGeneric.mean), 1e-10);
    EXPECT_LT(rel(o.variance, reference::kGeneric.variance), 1e-10);
}

TEST(Fcs, DominantEigenvalueRejectsTies) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(2, 2) = -1.0;
    EXPECT_THROW(dominant_eigenvalue(m), BranchError);
    m(1, 1) = -0.5;
    EXPECT_NEAR(std::abs(dominant_eigenvalue(m)), 0.0, 1e-15);
}

TEST(Fcs, CharacteristicPolynomialIsMonic) {
    const auto coeffs = characteristic_polynomial(build_quantum_generator(reference::kGeneric.params).entries);
    ASSERT_EQ(coeffs.size(), 6u);
    EXPECT_NEAR(std::abs(coeffs.back() - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(coeffs.front()), 0.0, 1e-12);  // zero is an eigenvalue
}

TEST(Fcs, MeanRatesOfBothModelsCoincide) {
    for (const EngineParams& p : random_points(23, 10'000)) {
        const double q = mean_rate(charpoly_coeffs_quantum(p));
        const double c = mean_rate(charpoly_coeffs_classical(p));
        ASSERT_LE(std::abs(q - c), 1e-12 * std::abs(q));
    }
}

TEST(Fcs, FanoDecomposition) {
    const Cumulants k = fano(reference::kResonant.params, Model::quantum);
    EXPECT_NEAR(k.fano, k.variance / k.mean, 1e-13);
    EXPECT_NEAR(k.fano, k.fano_pop + k.fano_tr, 1e-15);
}

TEST(Fcs, EquilibriumGuard) {
    EngineParams p = reference::kGeneric.params;
    p.n_u = p.n_l;
    EXPECT_THROW(fano(p, Model::quantum), DomainError);
    EXPECT_THROW(fano_population(p), DomainError);
}

TEST(Fcs, ZeroDriveHasNoMean) {
    EngineParams p = reference::kGeneric.params;
    p.epsilon = 0.0;
    try {
        fano(p, Model::quantum);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("epsilon"), std::string::npos);
    }
}

TEST(Fcs, CoefficientInvariants) {
    for (const EngineParams& p : random_points(31, 2000)) {
        const CharPolyCoeffs q = charpoly_coeffs_quantum(p);
        EXPECT_GT(q.a1, 0.0);
        EXPECT_EQ(q.a0_p < 0.0, p.n_l > p.n_u);
        const double mean = mean_rate(q);
        EXPECT_EQ(mean > 0.0, p.n_l > p.n_u);
        EXPECT_GE(variance_rate(q, mean), 0.0);
        EXPECT_EQ(charpoly_coeffs_classical(p).a1_p, 0.0);
        const Cumulants k = fano(p, Model::quantum);
        EXPECT_NEAR(k.fano, k.fano_pop + k.fano_tr, 1e-12 * std::max(1.0, std::abs(k.fano_pop)));
    }
}

TEST(Fcs, CurrentCoefficientsVanishWithoutDriveOrBias) {
    EngineParams p = reference::kGeneric.params;
    p.epsilon = 0.0;
    EXPECT_EQ(charpoly_coeffs_quantum(p).a0_p, 0.0);
    EXPECT_EQ(charpoly_coeffs_quantum(p).a1_p, 0.0);
    EXPECT_EQ(charpoly_coeffs_classical(p).a0_p, 0.0);
    p = reference::kGeneric.params;
    p.n_u = p.n_l;
    EXPECT_EQ(charpoly_coeffs_quantum(p).a0_p, 0.0);
    EXPECT_EQ(charpoly_coeffs_quantum(p).a1_p, 0.0);
}

TEST(Fcs, EquilibriumStillFluctuates) {
    EngineParams p = reference::kGeneric.params;
    p.n_u = p.n_l;
    const CharPolyCoeffs c = charpoly_coeffs_quantum(p);
    EXPECT_EQ(mean_rate(c), 0.0);
    EXPECT_LT(c.a0_pp, 0.0);
    const double var = variance_rate(c, 0.0);
    EXPECT_NEAR(var, -c.a0_pp / c.a1, 1e-16);
    EXPECT_GT(var, 0.0);
    EXPECT_LT(rel(var, cumulants_via_eigenvalue(p, Model::quantum).variance), 1e-6);
}

TEST(Fcs, OracleSeesNoCurrentWithoutDrive) {
    EngineParams p = reference::kGeneric.params;
    p.epsilon = 0.0;
    EXPECT_LT(std::abs(cumulants_via_eigenvalue(p, Model::quantum).mean), 1e-12);
}

TEST(Fcs, CoherenceReducesVarianceAtResonance) {
    const EngineParams p = reference::kResonant.params;
    const double mean = mean_rate(charpoly_coeffs_quantum(p));
    EXPECT_LT(variance_rate(charpoly_coeffs_quantum(p), mean), variance_rate(charpoly_coeffs_classical(p), mean));
}

TEST(Fcs, TransportCoefficientsAtLinewidth) {
    EngineParams p = reference::kResonant.params;
    p.delta = decoherence_rate(p);
    EXPECT_EQ(transport_coefficient(p, Model::quantum), transport_coefficient(p, Model::classical));
    p.delta = 0.0;
    EXPECT_GT(transport_coefficient(p, Model::quantum), transport_coefficient(p, Model::classical));
}
