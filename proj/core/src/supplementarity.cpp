#include "qlctx/supplementarity.hpp"

#include <algorithm>
#include <cmath>

#include "qlctx/errors.hpp"

namespace qlctx {

namespace {

// The three ingredients of a direction: the marginal being predicted, the
// marginal of the conditioning observable, and the matrix rows indexed by
// the conditioning outcome.
struct DirectionView {
    const ProbVector& target;
    const ProbVector& source;
    const TransitionMatrix& matrix;
};

DirectionView view(const ContextData& data, Direction dir) {
    if (dir == Direction::BGivenA) return {data.p_b, data.p_a, data.p_b_given_a};
    return {data.p_a, data.p_b, data.reverse()};
}

double classical_part(const DirectionView& v, std::size_t outcome) {
    return v.source[0] * v.matrix(0, outcome) + v.source[1] * v.matrix(1, outcome);
}

double product_of_factors(const DirectionView& v, std::size_t outcome) {
    return v.source[0] * v.matrix(0, outcome) * v.source[1] * v.matrix(1, outcome);
}

bool factors_positive(const DirectionView& v, std::size_t outcome) {
    return v.source[0] > 0.0 && v.source[1] > 0.0 && v.matrix(0, outcome) > 0.0 && v.matrix(1, outcome) > 0.0;
}

}  // namespace

double delta(const ContextData& data, Direction dir, std::size_t outcome) {
    const auto v = view(data, dir);
    return v.target[outcome] - classical_part(v, outcome);
}

double lambda_denominator(const ContextData& data, Direction dir, std::size_t outcome) {
    const auto v = view(data, dir);
    if (!factors_positive(v, outcome)) return 0.0;
    return 2.0 * std::sqrt(product_of_factors(v, outcome));
}

std::optional<double> lambda_coeff(const ContextData& data, Direction dir, std::size_t outcome) {
    const double denom = lambda_denominator(data, dir, outcome);
    if (!(denom > 0.0)) return std::nullopt;
    return delta(data, dir, outcome) / denom;
}

FtpDecomposition interference_ftp(const ContextData& data, Direction dir, std::size_t outcome) {
    const auto lambda = lambda_coeff(data, dir, outcome);
    if (!lambda) {
        throw DegenerateContext(std::string("lambda(") + to_string(dir) + ", outcome " + std::to_string(outcome) +
                                ") is undefined: a contributing probability is zero");
    }
    const auto v = view(data, dir);
    FtpDecomposition d;
    d.classical_part = classical_part(v, outcome);
    d.interference_term = 2.0 * *lambda * std::sqrt(product_of_factors(v, outcome));
    d.reconstructed = d.classical_part + d.interference_term;
    d.stored = v.target[outcome];
    return d;
}

SupplementarityMeasures measure(const ContextData& data, Direction dir) {
    SupplementarityMeasures m;
    m.direction = dir;
    for (std::size_t k = 0; k < 2; ++k) {
        m.delta[k] = delta(data, dir, k);
        m.denom[k] = lambda_denominator(data, dir, k);
        if (m.denom[k] > 0.0) m.lambda[k] = m.delta[k] / m.denom[k];
    }
    return m;
}

const char* to_string(PhaseKind k) noexcept {
    return k == PhaseKind::Trigonometric ? "trigonometric" : "hyperbolic";
}

const char* to_string(ContextClass c) noexcept {
    switch (c) {
        case ContextClass::Nonsupplementary: return "nonsupplementary";
        case ContextClass::Trigonometric: return "trigonometric";
        case ContextClass::Hyperbolic: return "hyperbolic";
        case ContextClass::Mixed: return "mixed";
        case ContextClass::Degenerate: break;
    }
    return "degenerate";
}

PhaseRecord phase_of(double lambda, Direction dir, std::size_t outcome, double slack) {
    PhaseRecord r;
    r.direction = dir;
    r.outcome = outcome;
    if (std::abs(lambda) <= 1.0 + slack) {
        r.kind = PhaseKind::Trigonometric;
        r.theta = std::acos(std::clamp(lambda, -1.0, 1.0));
        r.sign = 1;
    } else {
        r.kind = PhaseKind::Hyperbolic;
        r.theta = std::acosh(std::abs(lambda));
        r.sign = lambda < 0.0 ? -1 : 1;
    }
    return r;
}

std::vector<PhaseRecord> extract_phases(const SupplementarityMeasures& m, double slack) {
    std::vector<PhaseRecord> out;
    for (std::size_t k = 0; k < 2; ++k) {
        if (m.lambda[k]) out.push_back(phase_of(*m.lambda[k], m.direction, k, slack));
    }
    return out;
}

bool in_trigonometric_region(const SupplementarityMeasures& m, double slack) {
    return std::all_of(m.lambda.begin(), m.lambda.end(),
                       [slack](const std::optional<double>& l) { return l && std::abs(*l) <= 1.0 + slack; });
}

ClassificationReport classify_context(const ContextData& data, const Tolerances& tol) {
    return classify_context(data, tol, tol.exact_eps);
}

ClassificationReport classify_context(const ContextData& data, const Tolerances& tol, double delta_threshold) {
    ClassificationReport r;
    r.delta_threshold = delta_threshold;

    const auto supplementary = [delta_threshold](const SupplementarityMeasures& m) {
        return std::abs(m.delta[0]) > delta_threshold || std::abs(m.delta[1]) > delta_threshold;
    };
    const auto any_undefined = [](const SupplementarityMeasures& m) { return !m.lambda[0] || !m.lambda[1]; };

    r.measures_ba = measure(data, Direction::BGivenA);
    r.supplementary_ba = supplementary(r.measures_ba);
    r.lambda_degenerate = any_undefined(r.measures_ba);
    r.phases = extract_phases(r.measures_ba, tol.exact_eps);
    if (data.has_reverse()) {
        r.measures_ab = measure(data, Direction::AGivenB);
        r.supplementary_ab = supplementary(*r.measures_ab);
        r.lambda_degenerate = r.lambda_degenerate || any_undefined(*r.measures_ab);
        auto more = extract_phases(*r.measures_ab, tol.exact_eps);
        r.phases.insert(r.phases.end(), more.begin(), more.end());
    }

    if (!r.supplementary()) {
        r.context_class = ContextClass::Nonsupplementary;
        return r;
    }

    // Only supplementary directions decide the class; a direction with
    // delta == 0 contributes lambda == 0 and carries no interference.
    std::vector<const SupplementarityMeasures*> deciding;
    if (r.supplementary_ba) deciding.push_back(&r.measures_ba);
    if (r.supplementary_ab.value_or(false)) deciding.push_back(&*r.measures_ab);

    bool some_trig = false;
    bool some_hyp = false;
    for (const auto* m : deciding) {
        if (any_undefined(*m)) {
            r.context_class = ContextClass::Degenerate;
            return r;
        }
        for (const auto& l : m->lambda) {
            (std::abs(*l) <= 1.0 + tol.exact_eps ? some_trig : some_hyp) = true;
        }
    }
    if (some_trig && some_hyp) {
        r.context_class = ContextClass::Mixed;
    } else if (some_hyp) {
        r.context_class = ContextClass::Hyperbolic;
    } else {
        r.context_class = ContextClass::Trigonometric;
    }
    return r;
}

}  // namespace qlctx
