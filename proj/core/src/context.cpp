#include "qlctx/context.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qlctx/errors.hpp"

namespace qlctx {

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Collector {
public:
    explicit Collector(double eps) : eps_(eps) {}

    void probability(const std::string& id, double v) {
        if (!std::isfinite(v)) {
            add(id, v, id + " is not finite");
        } else if (v < -eps_) {
            add(id, -v, id + " is negative (" + fmt_num(v) + ")");
        } else if (v > 1.0 + eps_) {
            add(id, v - 1.0, id + " exceeds 1 (" + fmt_num(v) + ")");
        }
    }

    void unit_sum(const std::string& id, const std::string& what, double sum) {
        const double residual = std::abs(sum - 1.0);
        if (!(residual <= eps_)) {
            add(id, residual, what + " sums to " + fmt_num(sum) + " (residual " + fmt_num(residual) + ")");
        }
    }

    void add(std::string id, double residual, std::string message) {
        report_.violations.push_back({std::move(id), residual, std::move(message)});
    }

    ValidationReport finish() && {
        std::sort(report_.violations.begin(), report_.violations.end(),
                  [](const Violation& l, const Violation& r) { return l.constraint < r.constraint; });
        return std::move(report_);
    }

private:
    double eps_;
    ValidationReport report_;
};

void check_observable(Collector& c, const std::string& field, const Observable& o) {
    if (o.spectrum[0] == o.spectrum[1]) {
        c.add(field + ".spectrum", 0.0,
              "observable " + field + " has repeated outcome label '" + o.spectrum[0] + "'");
    }
}

void check_vector(Collector& c, const std::string& field, const ProbVector& v) {
    for (std::size_t i = 0; i < 2; ++i) c.probability(field + "[" + std::to_string(i) + "]", v[i]);
    c.unit_sum(field + ".sum", field, v.sum());
}

void check_matrix(Collector& c, const std::string& field, const TransitionMatrix& m, Direction expected) {
    if (m.orientation != expected) {
        c.add(field + ".orientation", 0.0,
              field + " is tagged " + std::string(to_string(m.orientation)) + ", expected " + to_string(expected));
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string row = field + ".row[" + std::to_string(i) + "]";
        for (std::size_t j = 0; j < 2; ++j) c.probability(row + "[" + std::to_string(j) + "]", m(i, j));
        c.unit_sum(row + ".sum", field + " row " + std::to_string(i), m.row_sum(i));
    }
}

}  // namespace

const char* to_string(Direction d) noexcept {
    return d == Direction::BGivenA ? "b/a" : "a/b";
}

const char* to_string(Tristate t) noexcept {
    switch (t) {
        case Tristate::True: return "true";
        case Tristate::False: return "false";
        case Tristate::Unknown: break;
    }
    return "unknown";
}

const TransitionMatrix& ContextData::reverse() const {
    if (!p_a_given_b) throw MissingReverseMatrix();
    return *p_a_given_b;
}

ContextData make_context(Vec2 p_a, Vec2 p_b, Mat2 p_b_given_a, std::optional<Mat2> p_a_given_b, std::string label) {
    ContextData d;
    d.a = {"a", {"1", "2"}};
    d.b = {"b", {"1", "2"}};
    d.p_a = {p_a};
    d.p_b = {p_b};
    d.p_b_given_a = {p_b_given_a, Direction::BGivenA};
    if (p_a_given_b) d.p_a_given_b = TransitionMatrix{*p_a_given_b, Direction::AGivenB};
    d.label = std::move(label);
    return d;
}

void Tolerances::check() const {
    if (!(exact_eps > 0.0) || !std::isfinite(exact_eps)) throw Error("tolerance exact_eps must be positive");
    if (!(stat_z > 0.0) || !std::isfinite(stat_z)) throw Error("tolerance stat_z must be positive");
}

bool ValidationReport::mentions(const std::string& constraint) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.constraint == constraint; });
}

ValidationReport validate_context(const ContextData& data, const Tolerances& tol) {
    Collector c(tol.exact_eps);
    check_observable(c, "a", data.a);
    check_observable(c, "b", data.b);
    check_vector(c, "p_a", data.p_a);
    check_vector(c, "p_b", data.p_b);
    check_matrix(c, "p_b_given_a", data.p_b_given_a, Direction::BGivenA);
    if (data.p_a_given_b) check_matrix(c, "p_a_given_b", *data.p_a_given_b, Direction::AGivenB);
    return std::move(c).finish();
}

NondegeneracyFlags is_nondegenerate(const ContextData& data, const Tolerances& tol) {
    const double eps = tol.exact_eps;
    const auto positive_vec = [eps](const ProbVector& v) { return v[0] > eps && v[1] > eps; };
    const auto positive_mat = [eps](const TransitionMatrix& m) {
        return m(0, 0) > eps && m(0, 1) > eps && m(1, 0) > eps && m(1, 1) > eps;
    };
    NondegeneracyFlags f;
    f.a_marginal = positive_vec(data.p_a);
    f.b_marginal = positive_vec(data.p_b);
    f.b_given_a = positive_mat(data.p_b_given_a);
    if (data.p_a_given_b) f.a_given_b = positive_mat(*data.p_a_given_b) ? Tristate::True : Tristate::False;
    return f;
}

}  // namespace qlctx
