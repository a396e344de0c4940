// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "qlctx/density.hpp"
#include "qlctx/frequency.hpp"
#include "qlctx/hilbert.hpp"
#include "qlctx/io.hpp"
#include "qlctx/kolmogorov.hpp"
#include "qlctx/report.hpp"
#include "qlctx/supplementarity.hpp"

using namespace qlctx;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const Mat2 kUniform{{{0.5, 0.5}, {0.5, 0.5}}};

ContextData interference_fixture() { return make_context({0.5, 0.5}, {0.7, 0.3}, kUniform, kUniform); }

std::vector<ContextData> trig_population(std::size_t count, std::uint64_t seed) {
    support::Gen g(seed);
    std::vector<ContextData> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(support::random_trig_context(g, g.coin()));
    return out;
}

std::vector<ContextData> general_population(std::size_t count, std::uint64_t seed) {
    support::Gen g(seed);
    std::vector<ContextData> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(support::random_context(g, true, 0.1));
    return out;
}

Verdict delta_sums_vanish() {
    double worst = 0.0;
    for (const auto& d : general_population(10000, 101)) {
        for (const auto dir : {Direction::BGivenA, Direction::AGivenB}) {
            worst = std::max(worst, std::abs(delta(d, dir, 0) + delta(d, dir, 1)));
        }
    }
    return {worst < 1e-10, "max |sum delta| = " + fmt("%.3g", worst) + " over 10000 contexts"};
}

Verdict born_rule() {
    double born = 0.0;
    double norm = 0.0;
    for (const auto& d : trig_population(10000, 102)) {
        const auto rep = reconstruct(d);
        born = std::max({born, rep.born_residuals_b[0], rep.born_residuals_b[1]});
        norm = std::max(norm, rep.normalization_residual);
    }
    return {born < 1e-10 && norm < 1e-10,
            "max Born residual " + fmt("%.3g", born) + ", max norm residual " + fmt("%.3g", norm)};
}

Verdict ftp_identity() {
    double worst = 0.0;
    std::size_t checked = 0;
    auto pop = trig_population(10000, 102);
    const auto more = general_population(10000, 101);
    pop.insert(pop.end(), more.begin(), more.end());
    for (const auto& d : pop) {
        for (const auto dir : {Direction::BGivenA, Direction::AGivenB}) {
            for (std::size_t k = 0; k < 2; ++k) {
                if (!lambda_coeff(d, dir, k)) continue;
                const auto f = interference_ftp(d, dir, k);
                worst = std::max(worst, std::abs(f.reconstructed - f.stored));
                ++checked;
            }
        }
    }
    return {worst < 1e-12, "max |reconstructed - stored| = " + fmt("%.3g", worst) + " over " +
                               std::to_string(checked) + " defined coefficients"};
}

Verdict oracle_equivalence() {
    support::Gen g(104);
    int agree = 0;
    int from_joint = 0;
    int joint_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        ContextData d;
        const bool joint = i % 2 == 0;
        if (joint) {
            d = context_from_joint(g.joint());
            ++from_joint;
        } else {
            d = support::random_context(g, true, 0.1);
        }
        const bool closed = kolmogorov_test(d, 1e-9).kolmogorovian;
        agree += closed == brute_force_joint_oracle(d) ? 1 : 0;
        if (joint) joint_ok += closed ? 1 : 0;
    }
    return {agree == 1000 && joint_ok == from_joint, std::to_string(agree) + "/1000 agree, " +
                                                         std::to_string(joint_ok) + "/" + std::to_string(from_joint) +
                                                         " joint-built contexts Kolmogorovian"};
}

Verdict balanced_without_joint() {
    const Mat2 ba{{{0.7, 0.3}, {0.3, 0.7}}};
    const Mat2 ab{{{0.6, 0.4}, {0.4, 0.6}}};
    const auto d = make_context({0.5, 0.5}, {0.5, 0.5}, ba, ab);
    double dmax = 0.0;
    for (const auto dir : {Direction::BGivenA, Direction::AGivenB}) {
        for (std::size_t k = 0; k < 2; ++k) dmax = std::max(dmax, std::abs(delta(d, dir, k)));
    }
    const auto r = kolmogorov_test(d, 1e-9);
    return {dmax == 0.0 && !r.kolmogorovian && std::abs(r.max_residual - 0.05) <= 1e-12,
            "max |delta| = " + fmt("%.3g", dmax) + ", kolmogorovian=" + (r.kolmogorovian ? "true" : "false") +
                ", residual = " + fmt("%.17g", r.max_residual)};
}

Verdict symmetric_equivalence() {
    support::Gen g(106);
    int holds = 0;
    int nonsupp = 0;
    double worst_marginal = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto d = support::random_symmetric_context(g);
        const auto r = check_symmetric_equivalence(d, 1e-9);
        holds += r.applies && r.equivalence_holds ? 1 : 0;
        if (r.nonsupplementary) {
            ++nonsupp;
            for (std::size_t k = 0; k < 2; ++k) {
                worst_marginal = std::max({worst_marginal, std::abs(d.p_a[k] - 0.5), std::abs(d.p_b[k] - 0.5)});
            }
        }
    }
    return {holds == 1000 && worst_marginal <= 1e-9,
            std::to_string(holds) + "/1000 equivalences hold, " + std::to_string(nonsupp) +
                " nonsupplementary with max |p - 1/2| = " + fmt("%.3g", worst_marginal)};
}

Verdict orthonormality() {
    support::Gen g(107);
    int correct = 0;
    double worst_true = 0.0;
    double least_false = 1e300;
    const int total = 4000;
    for (int i = 0; i < total; ++i) {
        const bool ds = i % 2 == 0;
        const auto d = support::random_trig_context(g, ds);
        const auto b = build_a_basis(d, choose_phases(d));
        const bool truth = is_double_stochastic(d.p_b_given_a, 1e-9);
        correct += b.orthonormal == truth ? 1 : 0;
        if (b.orthonormal) {
            worst_true = std::max(worst_true, b.gram_deviation);
        } else {
            least_false = std::min(least_false, b.gram_deviation);
        }
    }
    return {correct == total && worst_true < 1e-10 && least_false > 1e-3,
            std::to_string(correct) + "/" + std::to_string(total) + " verdicts match, max deviation (orthonormal) " +
                fmt("%.3g", worst_true) + ", min deviation (not) " + fmt("%.3g", least_false)};
}

Verdict expectations() {
    double worst_b = 0.0;
    double worst_a = 0.0;
    int with_a = 0;
    for (const auto& d : trig_population(10000, 102)) {
        const auto rep = reconstruct(d);
        worst_b = std::max(worst_b, std::abs(rep.expectations.b_quantum - (d.p_b[0] - d.p_b[1])));
        if (rep.expectations.a_quantum) {
            ++with_a;
            worst_a = std::max(worst_a, std::abs(*rep.expectations.a_quantum - (d.p_a[0] - d.p_a[1])));
        }
    }
    return {worst_b < 1e-10 && worst_a < 1e-10 && with_a > 0,
            "max b deviation " + fmt("%.3g", worst_b) + ", max a deviation " + fmt("%.3g", worst_a) + " over " +
                std::to_string(with_a) + " orthonormal cases"};
}

Verdict simulation_round_trip() {
    const auto d = interference_fixture();
    const std::size_t n = 1000000;
    int passes = 0;
    double widest = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto e = empirical_context_data(simulate_context(d, n, seed));
        const auto l = lambda_coeff(e.data, Direction::BGivenA, 0);
        const auto tol = lambda_tolerance(e, Direction::BGivenA, 0);
        if (!l || !tol) continue;
        widest = std::max(widest, *tol);
        passes += std::abs(*l - 0.4) <= *tol ? 1 : 0;
    }
    return {passes >= 99, std::to_string(passes) + "/100 seeds recover lambda = 0.4, widest tolerance " +
                              fmt("%.4f", widest)};
}

/// Late gap of the joint frequency at dyadic checkpoints, counted directly.
double scanned_joint_late_gap(std::uint64_t max_n, std::uint64_t n_min) {
    std::uint64_t count = 0;
    std::uint64_t next = 1;
    double lo = 1.0;
    double hi = 0.0;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        count += n % 2 == 0 && support::oracle_in_paired(n) ? 1 : 0;
        if (n == next) {
            if (n >= n_min) {
                const double f = static_cast<double>(count) / static_cast<double>(n);
                lo = std::min(lo, f);
                hi = std::max(hi, f);
            }
            next *= 2;
        }
    }
    return hi - lo;
}

Verdict counterexample() {
    const std::uint64_t max_n = std::uint64_t{1} << 22;
    const auto r = incompatibility_counterexample(max_n);
    const double scanned = scanned_joint_late_gap(max_n, kDefaultNMin);
    const bool pass = r.marginal_max_deviation <= 0.01 && r.joint.max_late_gap >= 0.05 && !r.joint.stabilized &&
                      std::abs(r.joint.max_late_gap - scanned) < 1e-15 && r.joint.gap_tol < scanned;
    return {pass, "marginal deviation " + fmt("%.3g", r.marginal_max_deviation) + ", joint late gap " +
                      fmt("%.6f", r.joint.max_late_gap) + " (scan " + fmt("%.6f", scanned) + ", threshold " +
                      fmt("%.6f", r.joint.gap_tol) + "), stabilized=" + (r.joint.stabilized ? "true" : "false")};
}

Verdict density_algebra() {
    const auto r = density_algebra_check(multiples_of(2), multiples_of(3), 10000000);
    const double err = std::abs(r.d_union - 2.0 / 3.0);
    const double ie = std::abs(r.d1 + r.d2 - r.d_intersection - 2.0 / 3.0);
    return {err <= 1e-3 && ie <= 1e-3 && r.formulas_hold,
            "d(union) = " + fmt("%.9f", r.d_union) + ", d1 + d2 - d(intersection) = " +
                fmt("%.9f", r.d1 + r.d2 - r.d_intersection)};
}

std::string slurp_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += f.filename().string() + "\n" + io::read_file(f);
    return all;
}

Verdict determinism() {
    const fs::path base = fs::temp_directory_path() / "qlctx_acceptance_determinism";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string ctx = (fs::path(QLCTX_DATA_DIR) / "interference.json").string();
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
        const fs::path dir = base / ("run" + std::to_string(run));
        const fs::path stdout_file = base / ("stdout" + std::to_string(run));
        const std::string cmd = std::string("\"") + QLCTX_CLI_PATH + "\" --out \"" + dir.string() +
                                "\" simulate --context \"" + ctx + "\" --n 200000 --seed 42 > \"" +
                                stdout_file.string() + "\"";
        if (std::system(cmd.c_str()) != 0) return {false, "simulate exited with an error"};
        outputs.push_back(slurp_dir(dir) + io::read_file(stdout_file));
    }
    fs::remove_all(base);
    const bool same = outputs[0] == outputs[1];
    return {same, std::string(same ? "identical" : "different") + " outputs over two runs, " +
                      std::to_string(outputs[0].size()) + " bytes"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"delta sums vanish", delta_sums_vanish},
        {"Born rule reconstruction", born_rule},
        {"interference formula identity", ftp_identity},
        {"joint existence oracle agreement", oracle_equivalence},
        {"balanced nonsupplementary data without a joint", balanced_without_joint},
        {"symmetric conditioning equivalence", symmetric_equivalence},
        {"a-basis orthonormality", orthonormality},
        {"expectation identity", expectations},
        {"simulation round trip", simulation_round_trip},
        {"density counterexample", counterexample},
        {"density algebra", density_algebra},
        {"simulate determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
