#include "maser/generator.hpp"

namespace maser {

const char* to_string(Model m) {
    return m == Model::quantum ? "quantum" : "classical";
}

GeneratorMatrix build_quantum_generator(const EngineParams& p, double chi_u, double chi_l) {
    validate(p);
    GeneratorMatrix g;
    g.entries = detail::quantum_generator<double, std::complex<double>>(p, chi_u, chi_l);
    g.chi_u = chi_u;
    g.chi_l = chi_l;
    g.model = Model::quantum;
    return g;
}

GeneratorMatrix build_classical_generator(const EngineParams& p, double chi_u) {
    derived_rates(p);  // validates and rejects undefined gamma_c
    GeneratorMatrix g;
    g.entries = detail::classical_generator<double, std::complex<double>>(p, chi_u);
    g.chi_u = chi_u;
    g.model = Model::classical;
    return g;
}

GeneratorMatrix build_generator(const EngineParams& p, Model model, double chi_u) {
    return model == Model::quantum ? build_quantum_generator(p, chi_u, 0.0)
                                   : build_classical_generator(p, chi_u);
}

}  // namespace maser
