#include "qlctx/frequency.hpp"

#include <algorithm>
#include <cmath>

#include "qlctx/errors.hpp"
#include "qlctx/rng.hpp"
#include "qlctx/supplementarity.hpp"

namespace qlctx {

namespace {

struct StreamSpec {
    StreamTag tag;
    const Observable* observable;
    Vec2 distribution;
};

std::vector<StreamSpec> stream_specs(const ContextData& data) {
    std::vector<StreamSpec> specs{
        {StreamTag::X, &data.b, data.p_b.p},
        {StreamTag::Y, &data.a, data.p_a.p},
        {StreamTag::XAlpha1, &data.b, data.p_b_given_a.rows[0]},
        {StreamTag::XAlpha2, &data.b, data.p_b_given_a.rows[1]},
    };
    if (data.p_a_given_b) {
        specs.push_back({StreamTag::YBeta1, &data.a, data.p_a_given_b->rows[0]});
        specs.push_back({StreamTag::YBeta2, &data.a, data.p_a_given_b->rows[1]});
    }
    return specs;
}

const SSequence& require(const SimulatedStreams& s, StreamTag t) {
    const auto& seq = s[t];
    if (!seq) throw MissingStream(std::string("stream ") + to_string(t) + " is missing");
    if (seq->outcomes.empty()) throw MissingStream(std::string("stream ") + to_string(t) + " is empty");
    return *seq;
}

// Quantities entering delta and lambda for one direction and outcome, each
// paired with its tolerance.
struct Ingredients {
    double target, target_tol;
    double s1, s1_tol;
    double s2;
    double p1, p1_tol;
    double p2, p2_tol;
};

Ingredients ingredients(const EmpiricalContext& e, Direction dir, std::size_t k) {
    const auto& d = e.data;
    if (dir == Direction::BGivenA) {
        return {d.p_b[k],      e.p_b_tol[k], d.p_a[0], e.p_a_tol[0], d.p_a[1], d.p_b_given_a(0, k),
                e.b_given_a_tol[0][k], d.p_b_given_a(1, k), e.b_given_a_tol[1][k]};
    }
    if (!d.p_a_given_b || !e.a_given_b_tol) throw MissingReverseMatrix();
    const auto& m = *d.p_a_given_b;
    const auto& t = *e.a_given_b_tol;
    return {d.p_a[k], e.p_a_tol[k], d.p_b[0], e.p_b_tol[0], d.p_b[1], m(0, k), t[0][k], m(1, k), t[1][k]};
}

}  // namespace

const char* to_string(StreamTag t) noexcept {
    switch (t) {
        case StreamTag::X: return "x";
        case StreamTag::Y: return "y";
        case StreamTag::XAlpha1: return "x_alpha1";
        case StreamTag::XAlpha2: return "x_alpha2";
        case StreamTag::YBeta1: return "y_beta1";
        case StreamTag::YBeta2: break;
    }
    return "y_beta2";
}

StreamTag stream_tag_from_string(const std::string& name) {
    for (auto t : kAllStreams) {
        if (name == to_string(t)) return t;
    }
    throw Error("unknown stream tag '" + name + "'");
}

SimulatedStreams simulate_context(const ContextData& data, std::size_t n, std::uint64_t seed) {
    SimulatedStreams out;
    for (const auto& spec : stream_specs(data)) {
        SSequence s;
        s.alphabet = spec.observable->spectrum;
        s.observable = spec.observable->name;
        s.source = spec.tag;
        s.seed = seed;
        s.outcomes.resize(n);
        const double p0 = spec.distribution[0];
        for (std::size_t start = 0, chunk = 0; start < n; start += kSimulationChunk, ++chunk) {
            rng::Stream gen(seed, to_string(spec.tag), chunk);
            const std::size_t end = std::min(n, start + kSimulationChunk);
            for (std::size_t i = start; i < end; ++i) s.outcomes[i] = gen.bernoulli(p0) ? 0 : 1;
        }
        out[spec.tag] = std::move(s);
    }
    return out;
}

Vec2 estimate_frequencies(std::span<const std::uint8_t> outcomes) {
    if (outcomes.empty()) throw Error("cannot estimate frequencies of an empty sequence");
    const auto zeros = static_cast<std::uint64_t>(std::count(outcomes.begin(), outcomes.end(), std::uint8_t{0}));
    const auto n = static_cast<std::uint64_t>(outcomes.size());
    return {static_cast<double>(zeros) / static_cast<double>(n), static_cast<double>(n - zeros) / static_cast<double>(n)};
}

Vec2 estimate_frequencies(const SSequence& s) { return estimate_frequencies(std::span<const std::uint8_t>(s.outcomes)); }

double stabilization_gap_tol(std::uint64_t n_min, double stat_z) {
    return stat_z * std::sqrt(0.25 / static_cast<double>(n_min));
}

StabilizationDiagnostic stabilization_diagnostic(std::span<const std::uint8_t> outcomes, std::uint64_t n_min,
                                                 double stat_z) {
    if (n_min == 0) throw Error("n_min must be positive");
    if (outcomes.size() < 2 * n_min) {
        throw SequenceTooShort("sequence of length " + std::to_string(outcomes.size()) + " is shorter than 2*n_min = " +
                               std::to_string(2 * n_min));
    }
    std::vector<Checkpoint> cps;
    std::uint64_t zeros = 0;
    std::uint64_t next = 1;
    const std::uint64_t len = outcomes.size();
    for (std::uint64_t i = 0; i < len; ++i) {
        zeros += outcomes[i] == 0 ? 1 : 0;
        const std::uint64_t n = i + 1;
        if (n == next || n == len) {
            cps.push_back({n, static_cast<double>(zeros) / static_cast<double>(n)});
            if (n == next) next *= 2;
        }
    }
    return stabilization_from_checkpoints(std::move(cps), n_min, stat_z);
}

StabilizationDiagnostic stabilization_from_checkpoints(std::vector<Checkpoint> checkpoints, std::uint64_t n_min,
                                                       double stat_z) {
    StabilizationDiagnostic d;
    d.checkpoints = std::move(checkpoints);
    d.n_min = n_min;
    d.gap_tol = stabilization_gap_tol(n_min, stat_z);
    double lo = 1.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& c : d.checkpoints) {
        if (c.n < n_min) continue;
        lo = std::min(lo, c.frequency);
        hi = std::max(hi, c.frequency);
        any = true;
    }
    d.max_late_gap = any ? hi - lo : 0.0;
    d.stabilized = any && d.max_late_gap <= d.gap_tol;
    return d;
}

double entry_tolerance(double p_hat, std::uint64_t n, double stat_z) {
    const double nn = static_cast<double>(n);
    const double v = std::max(p_hat * (1.0 - p_hat), 1.0 / nn);
    return stat_z * std::sqrt(v / nn);
}

EmpiricalContext empirical_context_data(const SimulatedStreams& streams, const Tolerances& tol) {
    const auto& x = require(streams, StreamTag::X);
    const auto& y = require(streams, StreamTag::Y);
    const auto& xa1 = require(streams, StreamTag::XAlpha1);
    const auto& xa2 = require(streams, StreamTag::XAlpha2);
    const bool has_y1 = streams[StreamTag::YBeta1].has_value();
    const bool has_y2 = streams[StreamTag::YBeta2].has_value();
    if (has_y1 != has_y2) throw MissingStream("only one of the y_beta streams is present");

    EmpiricalContext e;
    auto& d = e.data;
    d.a = {y.observable, y.alphabet};
    d.b = {x.observable, x.alphabet};
    d.label = "empirical";

    const auto fill_vec = [&](const SSequence& s, ProbVector& p, Vec2& t) {
        p.p = estimate_frequencies(s);
        const auto n = static_cast<std::uint64_t>(s.outcomes.size());
        e.sample_sizes[static_cast<std::size_t>(s.source)] = n;
        for (std::size_t k = 0; k < 2; ++k) t[k] = entry_tolerance(p[k], n, tol.stat_z);
    };
    const auto fill_row = [&](const SSequence& s, Vec2& row, Vec2& t) {
        ProbVector p;
        fill_vec(s, p, t);
        row = p.p;
    };

    fill_vec(x, d.p_b, e.p_b_tol);
    fill_vec(y, d.p_a, e.p_a_tol);
    d.p_b_given_a.orientation = Direction::BGivenA;
    fill_row(xa1, d.p_b_given_a.rows[0], e.b_given_a_tol[0]);
    fill_row(xa2, d.p_b_given_a.rows[1], e.b_given_a_tol[1]);
    if (has_y1) {
        TransitionMatrix m;
        m.orientation = Direction::AGivenB;
        Mat2 t{};
        fill_row(require(streams, StreamTag::YBeta1), m.rows[0], t[0]);
        fill_row(require(streams, StreamTag::YBeta2), m.rows[1], t[1]);
        d.p_a_given_b = m;
        e.a_given_b_tol = t;
    }
    return e;
}

double delta_tolerance(const EmpiricalContext& e, Direction dir, std::size_t outcome) {
    const auto g = ingredients(e, dir, outcome);
    return g.target_tol + std::abs(g.p1 - g.p2) * g.s1_tol + g.s1 * g.p1_tol + g.s2 * g.p2_tol;
}

std::optional<double> lambda_tolerance(const EmpiricalContext& e, Direction dir, std::size_t outcome) {
    const auto lambda = lambda_coeff(e.data, dir, outcome);
    if (!lambda) return std::nullopt;
    const auto g = ingredients(e, dir, outcome);
    const double l = *lambda;
    const double denom = lambda_denominator(e.data, dir, outcome);
    const double d_target = 1.0 / denom;
    const double d_s1 = -(g.p1 - g.p2) / denom - l * (g.s2 - g.s1) / (2.0 * g.s1 * g.s2);
    const double d_p1 = -g.s1 / denom - l / (2.0 * g.p1);
    const double d_p2 = -g.s2 / denom - l / (2.0 * g.p2);
    return std::abs(d_target) * g.target_tol + std::abs(d_s1) * g.s1_tol + std::abs(d_p1) * g.p1_tol +
           std::abs(d_p2) * g.p2_tol;
}

}  // namespace qlctx
