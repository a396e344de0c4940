#include "qlctx/kolmogorov.hpp"

#include <algorithm>
#include <cmath>

#include "qlctx/errors.hpp"
#include "qlctx/supplementarity.hpp"

namespace qlctx {

namespace {

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

}  // namespace

bool is_double_stochastic(const TransitionMatrix& m, double tol) {
    return near(m.column_sum(0), 1.0, tol) && near(m.column_sum(1), 1.0, tol);
}

bool is_symmetrically_conditioned(const ContextData& data, double tol) {
    const auto& ab = data.reverse();
    const auto& ba = data.p_b_given_a;
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        for (std::size_t beta = 0; beta < 2; ++beta) {
            if (!near(ab(beta, alpha), ba(alpha, beta), tol)) return false;
        }
    }
    return true;
}

KolmogorovResult kolmogorov_test(const ContextData& data, double tol) {
    const auto& ab = data.reverse();
    const auto& ba = data.p_b_given_a;
    KolmogorovResult r;
    JointTable joint{};
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        for (std::size_t beta = 0; beta < 2; ++beta) {
            const double via_a = data.p_a[alpha] * ba(alpha, beta);
            const double via_b = data.p_b[beta] * ab(beta, alpha);
            r.max_residual = std::max(r.max_residual, std::abs(via_a - via_b));
            joint[alpha][beta] = via_a;
        }
    }
    r.degenerate_marginal = !(data.p_a[0] > tol && data.p_a[1] > tol && data.p_b[0] > tol && data.p_b[1] > tol);
    r.kolmogorovian = r.max_residual <= tol;
    if (r.kolmogorovian) r.joint = joint;
    return r;
}

bool brute_force_joint_oracle(const ContextData& data, JointSearchOptions opts) {
    const auto& ab = data.reverse();
    const auto& ba = data.p_b_given_a;
    const double pa = data.p_a[0];
    const double pb = data.p_b[0];
    const double ctol = opts.constraint_tol;
    const auto steps = static_cast<long>(std::ceil(1.0 / opts.grid_step));

    // Every table with row sums p_a and column sums p_b is
    //   [[t, pa - t], [pb - t, 1 - pa - pb + t]]
    // for a single free parameter t.
    for (long i = 0; i <= steps; ++i) {
        const double t = std::min(1.0, static_cast<double>(i) * opts.grid_step);
        const JointTable j{{{t, pa - t}, {pb - t, 1.0 - pa - pb + t}}};
        bool ok = true;
        for (std::size_t alpha = 0; alpha < 2 && ok; ++alpha) {
            for (std::size_t beta = 0; beta < 2 && ok; ++beta) {
                const double cell = j[alpha][beta];
                // conditionals are compared in product form so that zero
                // marginals (undefined conditionals) impose no constraint
                ok = cell >= -ctol && std::abs(cell - data.p_a[alpha] * ba(alpha, beta)) <= ctol &&
                     std::abs(cell - data.p_b[beta] * ab(beta, alpha)) <= ctol;
            }
        }
        if (ok) return true;
    }
    return false;
}

SymmetricEquivalence check_symmetric_equivalence(const ContextData& data, double tol) {
    SymmetricEquivalence r;
    if (!data.has_reverse() || !is_symmetrically_conditioned(data, tol)) return r;
    r.applies = true;
    r.kolmogorovian = kolmogorov_test(data, tol).kolmogorovian;
    const auto ba = measure(data, Direction::BGivenA);
    const auto ab = measure(data, Direction::AGivenB);
    r.nonsupplementary = std::abs(ba.delta[0]) <= tol && std::abs(ba.delta[1]) <= tol &&
                         std::abs(ab.delta[0]) <= tol && std::abs(ab.delta[1]) <= tol;
    r.equivalence_holds = r.kolmogorovian == r.nonsupplementary;
    if (r.nonsupplementary) {
        r.forced_uniform = near(data.p_a[0], 0.5, tol) && near(data.p_a[1], 0.5, tol) &&
                           near(data.p_b[0], 0.5, tol) && near(data.p_b[1], 0.5, tol);
    }
    return r;
}

ContextData context_from_joint(const JointTable& joint, std::string label) {
    const Vec2 pa{joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
    const Vec2 pb{joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};
    if (!(pa[0] > 0.0 && pa[1] > 0.0 && pb[0] > 0.0 && pb[1] > 0.0)) {
        throw ZeroMarginal("joint table has a zero marginal; conditionals are undefined");
    }
    Mat2 ba{}, ab{};
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        for (std::size_t beta = 0; beta < 2; ++beta) {
            ba[alpha][beta] = joint[alpha][beta] / pa[alpha];
            ab[beta][alpha] = joint[alpha][beta] / pb[beta];
        }
    }
    return make_context(pa, pb, ba, ab, std::move(label));
}

JointBalance joint_balance_equivalences(const JointTable& joint, double tol) {
    const auto d = context_from_joint(joint);
    JointBalance r;
    r.double_stochastic_both = is_double_stochastic(d.p_b_given_a, tol) && is_double_stochastic(*d.p_a_given_b, tol);
    r.uniform_marginals = near(d.p_a[0], 0.5, tol) && near(d.p_a[1], 0.5, tol) && near(d.p_b[0], 0.5, tol) &&
                          near(d.p_b[1], 0.5, tol);
    r.symmetric_conditioning = is_symmetrically_conditioned(d, tol);
    r.all_equivalent =
        r.double_stochastic_both == r.uniform_marginals && r.uniform_marginals == r.symmetric_conditioning;
    return r;
}

JointTable product_measure(const ProbVector& p_a, const ProbVector& p_b) {
    JointTable j{};
    for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        for (std::size_t beta = 0; beta < 2; ++beta) j[alpha][beta] = p_a[alpha] * p_b[beta];
    }
    return j;
}

StructureReport analyze_structure(const ContextData& data, const Tolerances& tol) {
    const double eps = tol.exact_eps;
    StructureReport r;
    r.stochastic_ba = near(data.p_b_given_a.row_sum(0), 1.0, eps) && near(data.p_b_given_a.row_sum(1), 1.0, eps);
    r.double_stochastic_ba = is_double_stochastic(data.p_b_given_a, eps);
    if (data.has_reverse()) {
        const auto& ab = *data.p_a_given_b;
        r.stochastic_ab = near(ab.row_sum(0), 1.0, eps) && near(ab.row_sum(1), 1.0, eps);
        r.double_stochastic_ab = is_double_stochastic(ab, eps);
        r.statistically_balanced = r.double_stochastic_ba && *r.double_stochastic_ab;
        r.symmetrically_conditioned = is_symmetrically_conditioned(data, eps);
        auto k = kolmogorov_test(data, eps);
        r.kolmogorovian = k.kolmogorovian;
        r.max_ax_residual = k.max_residual;
        r.joint = k.joint;
        r.degenerate_marginal = k.degenerate_marginal;
    }
    return r;
}

}  // namespace qlctx
