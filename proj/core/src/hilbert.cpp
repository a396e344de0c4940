#include "qlctx/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlctx/errors.hpp"
#include "qlctx/kolmogorov.hpp"
#include "qlctx/supplementarity.hpp"

namespace qlctx {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance of x from the nearest multiple of 2 pi.
double wrapped_distance(double x) {
    const double r = std::remainder(x, 2.0 * kPi);
    return std::abs(r);
}

}  // namespace

PhaseChoice choose_phases(const ContextData& data, const Tolerances& tol) {
    const auto m = measure(data, Direction::BGivenA);
    for (std::size_t k = 0; k < 2; ++k) {
        if (!m.lambda[k]) {
            throw DegenerateContext("lambda(b/a, outcome " + std::to_string(k) +
                                    ") is undefined; no amplitude can be built");
        }
        if (std::abs(*m.lambda[k]) > 1.0 + tol.exact_eps) {
            throw NotTrigonometric("|lambda(b/a, outcome " + std::to_string(k) + ")| = " +
                                   std::to_string(std::abs(*m.lambda[k])) + " exceeds 1");
        }
    }
    PhaseChoice p;
    p.theta[0] = std::acos(std::clamp(*m.lambda[0], -1.0, 1.0));
    if (is_double_stochastic(data.p_b_given_a, tol.exact_eps)) {
        p.theta[1] = p.theta[0] - kPi;
        p.sign[1] = -1;
        p.shifted = true;
    } else {
        p.theta[1] = std::acos(std::clamp(*m.lambda[1], -1.0, 1.0));
    }
    return p;
}

PhaseChoice conjugate(const PhaseChoice& p) {
    PhaseChoice c = p;
    for (std::size_t k = 0; k < 2; ++k) {
        c.theta[k] = -p.theta[k];
        c.sign[k] = -p.sign[k];
    }
    return c;
}

ComplexAmplitude build_amplitude(const ContextData& data, const Tolerances& tol) {
    return build_amplitude(data, choose_phases(data, tol));
}

ComplexAmplitude build_amplitude(const ContextData& data, const PhaseChoice& phases) {
    ComplexAmplitude psi;
    psi.phases = phases;
    for (std::size_t beta = 0; beta < 2; ++beta) {
        const double first = std::sqrt(data.p_a[0] * data.p_b_given_a(0, beta));
        const double second = std::sqrt(data.p_a[1] * data.p_b_given_a(1, beta));
        psi.values[beta] = first + std::polar(second, phases.theta[beta]);
    }
    return psi;
}

Complex inner_product(const CVec2& u, const CVec2& v) {
    return u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]);
}

double norm(const CVec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

ABasis build_a_basis(const ContextData& data, const PhaseChoice& phases, const Tolerances& tol) {
    const auto& m = data.p_b_given_a;
    ABasis b;
    b.e1 = {Complex(std::sqrt(m(0, 0))), Complex(std::sqrt(m(0, 1)))};
    b.e2 = {std::polar(std::sqrt(m(1, 0)), phases.theta[0]), std::polar(std::sqrt(m(1, 1)), phases.theta[1])};

    const std::array<CVec2, 2> e{b.e1, b.e2};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            b.gram_deviation = std::max(b.gram_deviation, std::abs(inner_product(e[i], e[j]) - expected));
        }
    }

    // The cross term of (e1, e2) carries weight sqrt(p11 p21) = sqrt(p12 p22)
    // under double stochasticity; when that weight is zero the phases are free.
    const bool phase_constraint = wrapped_distance(phases.theta[1] - phases.theta[0] - kPi) <= kPhaseConstraintTol;
    const bool cross_terms_vanish = m(0, 0) * m(1, 0) <= tol.exact_eps && m(0, 1) * m(1, 1) <= tol.exact_eps;
    b.orthonormal = is_double_stochastic(m, tol.exact_eps) && (phase_constraint || cross_terms_vanish);
    return b;
}

double decompose_in_a_basis(const CVec2& psi, const ABasis& basis, const ProbVector& p_a) {
    const double u1 = std::sqrt(p_a[0]);
    const double u2 = std::sqrt(p_a[1]);
    const CVec2 diff{psi[0] - (u1 * basis.e1[0] + u2 * basis.e2[0]), psi[1] - (u1 * basis.e1[1] + u2 * basis.e2[1])};
    return norm(diff);
}

Vec2 born_check_a(const CVec2& psi, const ABasis& basis, const ProbVector& p_a) {
    if (!basis.orthonormal) throw BasisNotOrthonormal();
    return {std::abs(std::norm(inner_product(psi, basis.e1)) - p_a[0]),
            std::abs(std::norm(inner_product(psi, basis.e2)) - p_a[1])};
}

Vec2 born_check_b(const CVec2& psi, const ProbVector& p_b) {
    return {std::abs(std::norm(psi[0]) - p_b[0]), std::abs(std::norm(psi[1]) - p_b[1])};
}

CVec2 multiply(const CMat2& m, const CVec2& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

double self_adjoint_residual(const CMat2& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) r = std::max(r, std::abs(m[i][j] - std::conj(m[j][i])));
    }
    return r;
}

void build_operators(HilbertRep& rep, const ProbVector& p_a, const ProbVector& p_b, Vec2 a_values, Vec2 b_values,
                     bool require_a) {
    rep.a_values = a_values;
    rep.b_values = b_values;
    rep.op_b = CMat2{{{Complex(b_values[0]), Complex(0.0)}, {Complex(0.0), Complex(b_values[1])}}};

    const auto& psi = rep.psi.values;
    rep.expectations = {};
    rep.expectations.b_classical = b_values[0] * p_b[0] + b_values[1] * p_b[1];
    rep.expectations.b_quantum = inner_product(multiply(rep.op_b, psi), psi).real();

    rep.op_a.reset();
    rep.op_a_self_adjoint_residual.reset();
    if (!rep.a_basis.orthonormal) {
        if (require_a) throw BasisNotOrthonormal();
        return;
    }
    CMat2 a{};
    const std::array<const CVec2*, 2> e{&rep.a_basis.e1, &rep.a_basis.e2};
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) a[i][j] += a_values[k] * (*e[k])[i] * std::conj((*e[k])[j]);
        }
    }
    rep.op_a = a;
    rep.op_a_self_adjoint_residual = self_adjoint_residual(a);
    rep.expectations.a_classical = a_values[0] * p_a[0] + a_values[1] * p_a[1];
    rep.expectations.a_quantum = inner_product(multiply(a, psi), psi).real();
}

HilbertRep reconstruct(const ContextData& data, const Tolerances& tol, Vec2 a_values, Vec2 b_values) {
    HilbertRep rep;
    rep.psi = build_amplitude(data, tol);
    rep.b_basis = {CVec2{Complex(1.0), Complex(0.0)}, CVec2{Complex(0.0), Complex(1.0)}};
    rep.a_basis = build_a_basis(data, rep.psi.phases, tol);
    rep.born_residuals_b = born_check_b(rep.psi.values, data.p_b);
    rep.normalization_residual = std::abs(std::norm(rep.psi.values[0]) + std::norm(rep.psi.values[1]) - 1.0);
    rep.decomposition_residual = decompose_in_a_basis(rep.psi.values, rep.a_basis, data.p_a);
    if (rep.a_basis.orthonormal) rep.born_residuals_a = born_check_a(rep.psi.values, rep.a_basis, data.p_a);
    build_operators(rep, data.p_a, data.p_b, a_values, b_values);
    return rep;
}

}  // namespace qlctx
