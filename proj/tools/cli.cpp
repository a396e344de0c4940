#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qlctx/density.hpp"
#include "qlctx/errors.hpp"
#include "qlctx/frequency.hpp"
#include "qlctx/io.hpp"
#include "qlctx/report.hpp"

namespace qlctx::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    std::string format = "json";
    double tol = Tolerances{}.exact_eps;
    double stat_z = Tolerances{}.stat_z;
    std::string out;

    Tolerances tolerances() const {
        Tolerances t{tol, stat_z};
        t.check();
        return t;
    }
};

void emit(const std::string& json_text, const GlobalOptions& g, std::ostream& out) {
    const std::string rendered = g.format == "text" ? io::json_to_text(json_text) : json_text + "\n";
    if (g.out.empty()) {
        out << rendered;
    } else {
        io::write_file(g.out, rendered);
    }
}

Vec2 eigenvalues(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

int cmd_analyze(const std::string& context_file, const std::vector<double>& a_values,
                const std::vector<double>& b_values, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
    const std::string bytes = io::read_file(context_file);
    const ContextData data = io::parse_context(bytes);
    Provenance prov;
    prov.input_sha256 = io::sha256_hex(bytes);
    const auto report = analyze(data, g.tolerances(), eigenvalues(a_values), eigenvalues(b_values), prov);
    const auto failures = report_invariant_failures(report);
    if (!failures.empty()) {
        for (const auto& f : failures) err << "internal invariant violated: " << f << "\n";
        return kInternalError;
    }
    for (const auto& v : report.validation.violations) err << "warning: " << v.message << "\n";
    emit(io::report_to_json(report), g, out);
    return kOk;
}

int cmd_simulate(const std::string& context_file, long long n, std::uint64_t seed, const GlobalOptions& g,
                 std::ostream& out, std::ostream& err) {
    if (n < 1) throw Error("--n must be at least 1");
    if (g.out.empty()) throw Error("simulate requires --out <dir>");
    const std::string bytes = io::read_file(context_file);
    const ContextData data = io::parse_context(bytes);
    const Tolerances tol = g.tolerances();
    const auto validation = validate_context(data, tol);
    if (!validation.ok()) {
        for (const auto& v : validation.violations) err << "error: " << v.message << "\n";
        throw SchemaError("$", "context does not satisfy the probability constraints");
    }

    const fs::path dir = g.out;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

    const auto streams = simulate_context(data, static_cast<std::size_t>(n), seed);
    auto report = build_simulation_report(data, streams, static_cast<std::uint64_t>(n), seed, tol);
    report.provenance.input_sha256 = io::sha256_hex(bytes);
    for (const auto& s : streams.streams) {
        if (!s) continue;
        const std::string name = std::string(to_string(s->source)) + ".csv";
        std::ostringstream csv;
        io::write_sequence_csv(*s, csv);
        io::write_file(dir / name, csv.str());
        report.stream_files.push_back(name);
    }
    const std::string json_text = io::simulation_report_to_json(report);
    io::write_file(dir / "report.json", json_text + "\n");
    const std::string rendered = g.format == "text" ? io::json_to_text(json_text) : json_text + "\n";
    out << rendered;
    return kOk;
}

int cmd_demo_density(std::uint64_t max_n, std::uint64_t n_min, const GlobalOptions& g, std::ostream& out) {
    const auto report = incompatibility_counterexample(max_n, n_min, g.tolerances().stat_z);
    emit(io::counterexample_to_json(report, Provenance{}), g, out);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contextual probability analysis for pairs of dichotomous observables", "qlctx"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol", g.tol, "Absolute tolerance for exact structural checks")->check(CLI::PositiveNumber);
    app.add_option("--stat-z", g.stat_z, "z-multiplier for statistical tolerances")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output file (analyze, demo) or directory (simulate)");

    std::string context_file;
    std::vector<double> a_values{1.0, -1.0};
    std::vector<double> b_values{1.0, -1.0};
    auto* analyze_cmd = app.add_subcommand("analyze", "Classify a context and reconstruct its Hilbert representation");
    analyze_cmd->add_option("context", context_file, "Context JSON file")->required();
    analyze_cmd->add_option("--a-values", a_values, "Eigenvalues for the outcomes of a, e.g. 1,-1")
        ->delimiter(',')
        ->expected(2);
    analyze_cmd->add_option("--b-values", b_values, "Eigenvalues for the outcomes of b, e.g. 1,-1")
        ->delimiter(',')
        ->expected(2);

    long long n = 0;
    std::uint64_t seed = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the six observation streams of a context");
    simulate_cmd->add_option("--context", context_file, "Context JSON file")->required();
    simulate_cmd->add_option("--n", n, "Length of every stream")->required();
    simulate_cmd->add_option("--seed", seed, "RNG seed")->required();

    std::uint64_t max_n = std::uint64_t{1} << 22;
    std::uint64_t n_min = kDefaultNMin;
    auto* demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
    demo_cmd->require_subcommand(1);
    demo_cmd->fallthrough();
    auto* density_cmd =
        demo_cmd->add_subcommand("density", "Compatible observables on the naturals without a joint frequency");
    density_cmd->add_option("--max-n", max_n, "Largest prefix length");
    density_cmd->add_option("--n-min", n_min, "Smallest checkpoint counted as late");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(context_file, a_values, b_values, g, out, err);
        if (*simulate_cmd) return cmd_simulate(context_file, n, seed, g, out, err);
        if (*density_cmd) return cmd_demo_density(max_n, n_min, g, out);
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    } catch (const SchemaError& e) {
        err << "schema error at " << e.path() << ": " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInputError;
}

}  // namespace qlctx::cli
