#pragma once

// Seeded random generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "qlctx/context.hpp"
#include "qlctx/kolmogorov.hpp"

namespace qlctx::support {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    bool coin(double p = 0.5) { return uniform() < p; }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

    /// Probability in (0, 1), kept away from the ends by `margin`.
    double interior(double margin = 1e-3) { return uniform(margin, 1.0 - margin); }

    /// Probability that is exactly 0 or 1 with chance `edge`, interior otherwise.
    double probability(double edge) {
        if (coin(edge)) return coin() ? 0.0 : 1.0;
        return interior();
    }

    Vec2 prob_vector(double edge = 0.0) {
        const double p = probability(edge);
        return {p, 1.0 - p};
    }

    Mat2 stochastic(double edge = 0.0) { return {prob_vector(edge), prob_vector(edge)}; }

    Mat2 double_stochastic(double margin = 1e-3) {
        const double q = interior(margin);
        return {{{q, 1.0 - q}, {1.0 - q, q}}};
    }

    /// Stochastic matrix whose first column sum differs from 1 by at least `gap`.
    Mat2 not_double_stochastic(double gap) {
        for (;;) {
            const Mat2 m = stochastic();
            if (std::abs(m[0][0] + m[1][0] - 1.0) >= gap) return m;
        }
    }

    JointTable joint(double margin = 1e-3) {
        for (;;) {
            JointTable j{};
            double total = 0.0;
            for (auto& row : j) {
                for (auto& v : row) {
                    v = uniform(margin, 1.0);
                    total += v;
                }
            }
            for (auto& row : j) {
                for (auto& v : row) v /= total;
            }
            if (j[0][0] + j[0][1] > margin && j[1][0] + j[1][1] > margin && j[0][0] + j[1][0] > margin &&
                j[0][1] + j[1][1] > margin)
                return j;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Any validated context: independent marginals and matrices, with some exact zeros and ones.
inline ContextData random_context(Gen& g, bool with_reverse = true, double edge = 0.1) {
    const Vec2 pa = g.prob_vector(edge);
    const Vec2 pb = g.prob_vector(edge);
    std::optional<Mat2> rev;
    if (with_reverse) rev = g.stochastic(edge);
    return make_context(pa, pb, g.stochastic(edge), rev);
}

/// Marginal p_b obtained from p_a and the matrix by the interference formula with the given coefficient.
inline double p_b_first(const Vec2& pa, const Mat2& m, double coeff) {
    return pa[0] * m[0][0] + pa[1] * m[1][0] + 2.0 * coeff * std::sqrt(pa[0] * m[0][0] * pa[1] * m[1][0]);
}

/// Nondegenerate context with |lambda| <= 1 for both b-outcomes (b/a direction).
/// The a/b matrix is filled with an arbitrary stochastic matrix.
inline ContextData random_trig_context(Gen& g, bool double_stochastic, double column_gap = 0.05) {
    for (;;) {
        const Vec2 pa = g.prob_vector();
        const Mat2 m = double_stochastic ? g.double_stochastic(0.01) : g.not_double_stochastic(column_gap);
        if (m[0][0] < 1e-3 || m[0][1] < 1e-3 || m[1][0] < 1e-3 || m[1][1] < 1e-3) continue;
        const double coeff = g.uniform(-1.0, 1.0);
        const double pb0 = p_b_first(pa, m, coeff);
        if (pb0 <= 1e-3 || pb0 >= 1.0 - 1e-3) continue;
        const Vec2 pb{pb0, 1.0 - pb0};
        const double d1 = pb[1] - (pa[0] * m[0][1] + pa[1] * m[1][1]);
        const double l1 = d1 / (2.0 * std::sqrt(pa[0] * m[0][1] * pa[1] * m[1][1]));
        if (std::abs(l1) > 1.0) continue;
        return make_context(pa, pb, m, g.stochastic());
    }
}

/// Symmetrically conditioned context: the a/b matrix is the transpose of the
/// b/a one, which must then be double stochastic. Marginals are drawn from a
/// mix of arbitrary, uniform, and one-directional Bayes-mixture cases.
inline ContextData random_symmetric_context(Gen& g) {
    const Mat2 m = g.double_stochastic(1e-3);
    const Mat2 t{{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}};
    Vec2 pa{};
    Vec2 pb{};
    switch (g.pick(3)) {
        case 0:
            pa = g.prob_vector();
            pb = g.prob_vector();
            break;
        case 1:
            pa = {0.5, 0.5};
            pb = {0.5, 0.5};
            break;
        default:
            pa = g.prob_vector();
            pb = {pa[0] * m[0][0] + pa[1] * m[1][0], 0.0};
            pb[1] = 1.0 - pb[0];
            break;
    }
    return make_context(pa, pb, m, t);
}

}  // namespace qlctx::support
