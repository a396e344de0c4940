#include "qlctx/report.hpp"

#include <cmath>

#ifndef QLCTX_VERSION
#define QLCTX_VERSION "0.0.0"
#endif

namespace qlctx {

namespace {

constexpr double kBornTol = 1e-10;
constexpr double kFtpTol = 1e-12;

std::string cell(const std::string& field, std::size_t i, std::size_t j) {
    return field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

const char* library_version() noexcept { return QLCTX_VERSION; }

AnalysisReport analyze(const ContextData& data, const Tolerances& tol, Vec2 a_values, Vec2 b_values,
                       Provenance provenance) {
    tol.check();
    AnalysisReport r;
    r.context_label = data.label;
    r.context = data;
    r.tolerances = tol;
    r.validation = validate_context(data, tol);
    r.nondegeneracy = is_nondegenerate(data, tol);
    r.structure = analyze_structure(data, tol);
    r.classification = classify_context(data, tol);

    const auto add_ftp = [&](Direction dir, const SupplementarityMeasures& m) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (m.lambda[k]) r.interference.push_back({dir, k, interference_ftp(data, dir, k)});
        }
    };
    add_ftp(Direction::BGivenA, r.classification.measures_ba);
    if (r.classification.measures_ab) add_ftp(Direction::AGivenB, *r.classification.measures_ab);

    if (r.classification.context_class == ContextClass::Trigonometric &&
        in_trigonometric_region(r.classification.measures_ba, tol.exact_eps)) {
        r.hilbert = reconstruct(data, tol, a_values, b_values);
    }
    r.provenance = std::move(provenance);
    return r;
}

std::vector<std::string> report_invariant_failures(const AnalysisReport& r) {
    std::vector<std::string> failures;
    if (!r.validation.ok()) return failures;

    const auto& c = r.classification;
    if (std::abs(c.measures_ba.delta[0] + c.measures_ba.delta[1]) > 1e-10) {
        failures.emplace_back("b/a deltas do not sum to zero");
    }
    if (c.measures_ab && std::abs(c.measures_ab->delta[0] + c.measures_ab->delta[1]) > 1e-10) {
        failures.emplace_back("a/b deltas do not sum to zero");
    }
    for (const auto& e : r.interference) {
        if (std::abs(e.decomposition.reconstructed - e.decomposition.stored) > kFtpTol) {
            failures.emplace_back("interference decomposition does not reproduce the stored marginal");
        }
    }
    const auto& s = r.structure;
    if (s.statistically_balanced &&
        *s.statistically_balanced != (s.double_stochastic_ba && s.double_stochastic_ab.value_or(false))) {
        failures.emplace_back("statistical balance disagrees with double stochasticity");
    }
    if (s.kolmogorovian.value_or(false) && !s.joint) failures.emplace_back("kolmogorovian without a joint table");
    if (r.hilbert) {
        const auto& h = *r.hilbert;
        if (h.born_residuals_b[0] > kBornTol || h.born_residuals_b[1] > kBornTol) {
            failures.emplace_back("Born rule for b violated");
        }
        if (h.normalization_residual > kBornTol) failures.emplace_back("amplitude is not normalized");
        if (std::abs(h.expectations.b_quantum - h.expectations.b_classical) > kBornTol) {
            failures.emplace_back("expectation of b differs between representations");
        }
        if (h.born_residuals_a && ((*h.born_residuals_a)[0] > kBornTol || (*h.born_residuals_a)[1] > kBornTol)) {
            failures.emplace_back("Born rule for a violated");
        }
    }
    return failures;
}

SimulationReport build_simulation_report(const ContextData& generating, const SimulatedStreams& streams,
                                         std::uint64_t n, std::uint64_t seed, const Tolerances& tol) {
    SimulationReport r;
    r.n = n;
    r.seed = seed;
    r.generating = generating;
    r.recovered = empirical_context_data(streams, tol);
    const auto& e = r.recovered;
    const auto& d = e.data;

    const auto add = [&r](std::string name, double gen, double rec, double t) {
        r.entries.push_back({std::move(name), gen, rec, t, std::abs(gen - rec) <= t});
    };
    for (std::size_t k = 0; k < 2; ++k) {
        add("p_a[" + std::to_string(k) + "]", generating.p_a[k], d.p_a[k], e.p_a_tol[k]);
        add("p_b[" + std::to_string(k) + "]", generating.p_b[k], d.p_b[k], e.p_b_tol[k]);
    }
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            add(cell("p_b_given_a", i, j), generating.p_b_given_a(i, j), d.p_b_given_a(i, j), e.b_given_a_tol[i][j]);
            if (generating.p_a_given_b && d.p_a_given_b) {
                add(cell("p_a_given_b", i, j), (*generating.p_a_given_b)(i, j), (*d.p_a_given_b)(i, j),
                    (*e.a_given_b_tol)[i][j]);
            }
        }
    }
    const auto add_lambda = [&](Direction dir, const std::string& prefix) {
        for (std::size_t k = 0; k < 2; ++k) {
            const auto gen = lambda_coeff(generating, dir, k);
            const auto rec = lambda_coeff(d, dir, k);
            const auto t = lambda_tolerance(e, dir, k);
            if (gen && rec && t) add(prefix + "[" + std::to_string(k) + "]", *gen, *rec, *t);
        }
    };
    add_lambda(Direction::BGivenA, "lambda_ba");
    if (generating.p_a_given_b && d.p_a_given_b) add_lambda(Direction::AGivenB, "lambda_ab");

    r.all_within = true;
    for (const auto& entry : r.entries) r.all_within = r.all_within && entry.within;
    r.provenance.seed = seed;
    return r;
}

}  // namespace qlctx
