#pragma once

#include "maser/fcs.hpp"
#include "maser/params.hpp"

namespace maser {

// Thermodynamic uncertainty Q = sigma var / mean^2 and its pieces, in k_B = 1
// units. For Model::classical, q equals q_classical and advantage is zero.
struct TurReport {
    Model model = Model::quantum;
    double sigma = 0.0;
    double q = 0.0;
    double q_pop = 0.0;
    double q_tr = 0.0;
    double q_classical = 0.0;
    double q_tr_classical = 0.0;
    double advantage = 0.0;  // Q - Q_cl
    double mean_rate = 0.0;
    double variance_rate = 0.0;
};

// ln[n_l (n_u + 1) / (n_u (n_l + 1))], evaluated as log1p((n_l - n_u) / (n_u (n_l + 1))).
// Throws DomainError for n_u = 0, n_l = 0, or near equilibrium.
double log_driving(const EngineParams& p);

// sigma = log_driving * mean.
double entropy_production(const EngineParams& p, double mean);

// Population part of Q; depends only on n_u, n_l and is >= 2.
double q_pop(const EngineParams& p);

// Q - Q_cl = 2 <dN/dt> ln[...] (C_cl - C), negative iff |Delta| < Gamma.
double quantum_advantage(const EngineParams& p);

TurReport thermodynamic_uncertainty(const EngineParams& p, Model model = Model::quantum);

}  // namespace maser
