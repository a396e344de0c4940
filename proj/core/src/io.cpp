#include "qlctx/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qlctx/errors.hpp"

namespace qlctx {

using nlohmann::json;

// ---------------------------------------------------------------------------
// primitives

namespace {

json vec(const Vec2& v) { return json::array({v[0], v[1]}); }
json mat(const Mat2& m) { return json::array({vec(m[0]), vec(m[1])}); }
json cplx(const Complex& c) { return json::array({c.real(), c.imag()}); }
json cvec(const CVec2& v) { return json::array({cplx(v[0]), cplx(v[1])}); }
json cmat(const CMat2& m) { return json::array({cvec(m[0]), cvec(m[1])}); }

Vec2 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
Mat2 mat_from(const json& j) { return {vec_from(j.at(0)), vec_from(j.at(1))}; }
Complex cplx_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
CVec2 cvec_from(const json& j) { return {cplx_from(j.at(0)), cplx_from(j.at(1))}; }
CMat2 cmat_from(const json& j) { return {cvec_from(j.at(0)), cvec_from(j.at(1))}; }

template <class T, class F>
json opt(const std::optional<T>& v, F&& f) {
    return v ? f(*v) : json(nullptr);
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T, class F>
std::optional<T> opt_from(const json& j, const char* key, F&& f) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return f(j.at(key));
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

Direction direction_from(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "b/a") return Direction::BGivenA;
    if (s == "a/b") return Direction::AGivenB;
    throw SchemaError("direction", "unknown direction '" + s + "'");
}

ContextClass class_from(const json& j) {
    const auto s = j.get<std::string>();
    for (auto c : {ContextClass::Nonsupplementary, ContextClass::Trigonometric, ContextClass::Hyperbolic,
                   ContextClass::Mixed, ContextClass::Degenerate}) {
        if (s == to_string(c)) return c;
    }
    throw SchemaError("context_class", "unknown class '" + s + "'");
}

PhaseKind kind_from(const json& j) {
    const auto s = j.get<std::string>();
    if (s == to_string(PhaseKind::Trigonometric)) return PhaseKind::Trigonometric;
    if (s == to_string(PhaseKind::Hyperbolic)) return PhaseKind::Hyperbolic;
    throw SchemaError("kind", "unknown phase kind '" + s + "'");
}

Tristate tristate_from(const json& j) {
    if (j.is_boolean()) return j.get<bool>() ? Tristate::True : Tristate::False;
    if (j.is_string() && j.get<std::string>() == "unknown") return Tristate::Unknown;
    throw SchemaError("a_given_b", "expected true, false or \"unknown\"");
}

json tristate(Tristate t) {
    if (t == Tristate::Unknown) return "unknown";
    return t == Tristate::True;
}

// ---------------------------------------------------------------------------
// schema-checked context parsing

class ContextParser {
public:
    ContextData parse(const json& root, const std::string& path) {
        if (!root.is_object()) throw SchemaError(path, "expected an object");
        static const std::array<const char*, 7> known{"label", "a", "b", "p_a", "p_b", "p_b_given_a", "p_a_given_b"};
        for (const auto& [key, _] : root.items()) {
            if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
                throw SchemaError(path + "." + key, "unknown key");
            }
        }
        ContextData d;
        d.a = observable(required(root, "a", path), path + ".a", "a");
        d.b = observable(required(root, "b", path), path + ".b", "b");
        d.p_a = {vector2(required(root, "p_a", path), path + ".p_a")};
        d.p_b = {vector2(required(root, "p_b", path), path + ".p_b")};
        d.p_b_given_a = {matrix2(required(root, "p_b_given_a", path), path + ".p_b_given_a"), Direction::BGivenA};
        if (root.contains("p_a_given_b") && !root.at("p_a_given_b").is_null()) {
            d.p_a_given_b =
                TransitionMatrix{matrix2(root.at("p_a_given_b"), path + ".p_a_given_b"), Direction::AGivenB};
        }
        if (root.contains("label")) {
            const auto& l = root.at("label");
            if (!l.is_string()) throw SchemaError(path + ".label", "expected a string");
            d.label = l.get<std::string>();
        }
        return d;
    }

private:
    static const json& required(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) throw SchemaError(path + "." + key, "missing required key");
        return obj.at(key);
    }

    static Observable observable(const json& j, const std::string& path, const char* fallback) {
        if (!j.is_object()) throw SchemaError(path, "expected an object with 'name' and optional 'spectrum'");
        Observable o;
        const auto& name = required(j, "name", path);
        if (!name.is_string()) throw SchemaError(path + ".name", "expected a string");
        o.name = name.get<std::string>();
        if (o.name.empty()) o.name = fallback;
        o.spectrum = {"1", "2"};
        if (j.contains("spectrum")) {
            const auto& s = j.at("spectrum");
            if (!s.is_array() || s.size() != 2) throw SchemaError(path + ".spectrum", "expected an array of 2 labels");
            for (std::size_t k = 0; k < 2; ++k) {
                const auto& label = s.at(k);
                const auto p = path + ".spectrum[" + std::to_string(k) + "]";
                if (label.is_string()) {
                    o.spectrum[k] = label.get<std::string>();
                } else if (label.is_number()) {
                    o.spectrum[k] = label.dump();
                } else {
                    throw SchemaError(p, "expected a string or number label");
                }
            }
        }
        for (const auto& [key, _] : j.items()) {
            if (key != "name" && key != "spectrum") throw SchemaError(path + "." + key, "unknown key");
        }
        return o;
    }

    static double number(const json& j, const std::string& path) {
        if (!j.is_number()) throw SchemaError(path, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
        return v;
    }

    static Vec2 vector2(const json& j, const std::string& path) {
        if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected an array of 2 numbers");
        return {number(j.at(0), path + "[0]"), number(j.at(1), path + "[1]")};
    }

    static Mat2 matrix2(const json& j, const std::string& path) {
        if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a 2x2 array (row = conditioning outcome)");
        return {vector2(j.at(0), path + "[0]"), vector2(j.at(1), path + "[1]")};
    }
};

json context_json(const ContextData& d) {
    json j;
    j["label"] = d.label;
    j["a"] = {{"name", d.a.name}, {"spectrum", d.a.spectrum}};
    j["b"] = {{"name", d.b.name}, {"spectrum", d.b.spectrum}};
    j["p_a"] = vec(d.p_a.p);
    j["p_b"] = vec(d.p_b.p);
    j["p_b_given_a"] = mat(d.p_b_given_a.rows);
    if (d.p_a_given_b) j["p_a_given_b"] = mat(d.p_a_given_b->rows);
    return j;
}

ContextData context_from(const json& j, const std::string& path) { return ContextParser{}.parse(j, path); }

}  // namespace

// ---------------------------------------------------------------------------
// report pieces (ADL hooks for nlohmann)

void to_json(json& j, const Tolerances& t) { j = {{"exact_eps", t.exact_eps}, {"stat_z", t.stat_z}}; }
void from_json(const json& j, Tolerances& t) {
    t.exact_eps = j.at("exact_eps").get<double>();
    t.stat_z = j.at("stat_z").get<double>();
}

void to_json(json& j, const Violation& v) {
    j = {{"constraint", v.constraint}, {"residual", v.residual}, {"message", v.message}};
}
void from_json(const json& j, Violation& v) {
    v.constraint = j.at("constraint").get<std::string>();
    v.residual = j.at("residual").get<double>();
    v.message = j.at("message").get<std::string>();
}

void to_json(json& j, const ValidationReport& v) { j = {{"ok", v.ok()}, {"violations", v.violations}}; }
void from_json(const json& j, ValidationReport& v) { v.violations = j.at("violations").get<std::vector<Violation>>(); }

void to_json(json& j, const NondegeneracyFlags& f) {
    j = {{"a_marginal", f.a_marginal},
         {"b_marginal", f.b_marginal},
         {"b_given_a", f.b_given_a},
         {"a_given_b", tristate(f.a_given_b)}};
}
void from_json(const json& j, NondegeneracyFlags& f) {
    f.a_marginal = j.at("a_marginal").get<bool>();
    f.b_marginal = j.at("b_marginal").get<bool>();
    f.b_given_a = j.at("b_given_a").get<bool>();
    f.a_given_b = tristate_from(j.at("a_given_b"));
}

void to_json(json& j, const StructureReport& s) {
    j = {{"stochastic_ba", s.stochastic_ba},
         {"stochastic_ab", opt(s.stochastic_ab)},
         {"double_stochastic_ba", s.double_stochastic_ba},
         {"double_stochastic_ab", opt(s.double_stochastic_ab)},
         {"statistically_balanced", opt(s.statistically_balanced)},
         {"symmetrically_conditioned", opt(s.symmetrically_conditioned)},
         {"kolmogorovian", opt(s.kolmogorovian)},
         {"max_ax_residual", opt(s.max_ax_residual)},
         {"joint", opt(s.joint, mat)},
         {"degenerate_marginal", s.degenerate_marginal}};
}
void from_json(const json& j, StructureReport& s) {
    s.stochastic_ba = j.at("stochastic_ba").get<bool>();
    s.stochastic_ab = opt_from<bool>(j, "stochastic_ab");
    s.double_stochastic_ba = j.at("double_stochastic_ba").get<bool>();
    s.double_stochastic_ab = opt_from<bool>(j, "double_stochastic_ab");
    s.statistically_balanced = opt_from<bool>(j, "statistically_balanced");
    s.symmetrically_conditioned = opt_from<bool>(j, "symmetrically_conditioned");
    s.kolmogorovian = opt_from<bool>(j, "kolmogorovian");
    s.max_ax_residual = opt_from<double>(j, "max_ax_residual");
    s.joint = opt_from<Mat2>(j, "joint", mat_from);
    s.degenerate_marginal = j.at("degenerate_marginal").get<bool>();
}

void to_json(json& j, const SupplementarityMeasures& m) {
    j = {{"direction", to_string(m.direction)},
         {"delta", vec(m.delta)},
         {"lambda", json::array({opt(m.lambda[0]), opt(m.lambda[1])})},
         {"denom", vec(m.denom)}};
}
void from_json(const json& j, SupplementarityMeasures& m) {
    m.direction = direction_from(j.at("direction"));
    m.delta = vec_from(j.at("delta"));
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& l = j.at("lambda").at(k);
        m.lambda[k] = l.is_null() ? std::nullopt : std::optional<double>(l.get<double>());
    }
    m.denom = vec_from(j.at("denom"));
}

void to_json(json& j, const PhaseRecord& p) {
    j = {{"direction", to_string(p.direction)},
         {"outcome", p.outcome},
         {"kind", to_string(p.kind)},
         {"theta", p.theta},
         {"sign", p.sign}};
}
void from_json(const json& j, PhaseRecord& p) {
    p.direction = direction_from(j.at("direction"));
    p.outcome = j.at("outcome").get<std::size_t>();
    p.kind = kind_from(j.at("kind"));
    p.theta = j.at("theta").get<double>();
    p.sign = j.at("sign").get<int>();
}

void to_json(json& j, const ClassificationReport& c) {
    j = {{"context_class", to_string(c.context_class)},
         {"supplementary_ba", c.supplementary_ba},
         {"supplementary_ab", opt(c.supplementary_ab)},
         {"lambda_degenerate", c.lambda_degenerate},
         {"delta_threshold", c.delta_threshold},
         {"measures_ba", c.measures_ba},
         {"measures_ab", opt(c.measures_ab)},
         {"phases", c.phases}};
}
void from_json(const json& j, ClassificationReport& c) {
    c.context_class = class_from(j.at("context_class"));
    c.supplementary_ba = j.at("supplementary_ba").get<bool>();
    c.supplementary_ab = opt_from<bool>(j, "supplementary_ab");
    c.lambda_degenerate = j.at("lambda_degenerate").get<bool>();
    c.delta_threshold = j.at("delta_threshold").get<double>();
    c.measures_ba = j.at("measures_ba").get<SupplementarityMeasures>();
    c.measures_ab = opt_from<SupplementarityMeasures>(j, "measures_ab");
    c.phases = j.at("phases").get<std::vector<PhaseRecord>>();
}

void to_json(json& j, const FtpEntry& e) {
    j = {{"direction", to_string(e.direction)},
         {"outcome", e.outcome},
         {"classical_part", e.decomposition.classical_part},
         {"interference_term", e.decomposition.interference_term},
         {"reconstructed", e.decomposition.reconstructed},
         {"stored", e.decomposition.stored}};
}
void from_json(const json& j, FtpEntry& e) {
    e.direction = direction_from(j.at("direction"));
    e.outcome = j.at("outcome").get<std::size_t>();
    e.decomposition.classical_part = j.at("classical_part").get<double>();
    e.decomposition.interference_term = j.at("interference_term").get<double>();
    e.decomposition.reconstructed = j.at("reconstructed").get<double>();
    e.decomposition.stored = j.at("stored").get<double>();
}

void to_json(json& j, const HilbertRep& h) {
    const auto& ph = h.psi.phases;
    j = {{"psi", cvec(h.psi.values)},
         {"phases", {{"theta", vec(ph.theta)}, {"sign", ph.sign}, {"shifted", ph.shifted}}},
         {"b_basis", json::array({cvec(h.b_basis[0]), cvec(h.b_basis[1])})},
         {"a_basis",
          {{"e1", cvec(h.a_basis.e1)},
           {"e2", cvec(h.a_basis.e2)},
           {"orthonormal", h.a_basis.orthonormal},
           {"gram_deviation", h.a_basis.gram_deviation}}},
         {"b_values", vec(h.b_values)},
         {"a_values", vec(h.a_values)},
         {"op_b", cmat(h.op_b)},
         {"op_a", opt(h.op_a, cmat)},
         {"born_residuals_b", vec(h.born_residuals_b)},
         {"born_residuals_a", opt(h.born_residuals_a, vec)},
         {"normalization_residual", h.normalization_residual},
         {"decomposition_residual", h.decomposition_residual},
         {"op_a_self_adjoint_residual", opt(h.op_a_self_adjoint_residual)},
         {"expectations",
          {{"b_classical", h.expectations.b_classical},
           {"b_quantum", h.expectations.b_quantum},
           {"a_classical", opt(h.expectations.a_classical)},
           {"a_quantum", opt(h.expectations.a_quantum)}}}};
}
void from_json(const json& j, HilbertRep& h) {
    h.psi.values = cvec_from(j.at("psi"));
    const auto& ph = j.at("phases");
    h.psi.phases.theta = vec_from(ph.at("theta"));
    h.psi.phases.sign = ph.at("sign").get<std::array<int, 2>>();
    h.psi.phases.shifted = ph.at("shifted").get<bool>();
    h.b_basis = {cvec_from(j.at("b_basis").at(0)), cvec_from(j.at("b_basis").at(1))};
    const auto& ab = j.at("a_basis");
    h.a_basis.e1 = cvec_from(ab.at("e1"));
    h.a_basis.e2 = cvec_from(ab.at("e2"));
    h.a_basis.orthonormal = ab.at("orthonormal").get<bool>();
    h.a_basis.gram_deviation = ab.at("gram_deviation").get<double>();
    h.b_values = vec_from(j.at("b_values"));
    h.a_values = vec_from(j.at("a_values"));
    h.op_b = cmat_from(j.at("op_b"));
    h.op_a = opt_from<CMat2>(j, "op_a", cmat_from);
    h.born_residuals_b = vec_from(j.at("born_residuals_b"));
    h.born_residuals_a = opt_from<Vec2>(j, "born_residuals_a", vec_from);
    h.normalization_residual = j.at("normalization_residual").get<double>();
    h.decomposition_residual = j.at("decomposition_residual").get<double>();
    h.op_a_self_adjoint_residual = opt_from<double>(j, "op_a_self_adjoint_residual");
    const auto& e = j.at("expectations");
    h.expectations.b_classical = e.at("b_classical").get<double>();
    h.expectations.b_quantum = e.at("b_quantum").get<double>();
    h.expectations.a_classical = opt_from<double>(e, "a_classical");
    h.expectations.a_quantum = opt_from<double>(e, "a_quantum");
}

void to_json(json& j, const Provenance& p) {
    j = {{"tool", p.tool}, {"version", p.version}, {"input_sha256", p.input_sha256}, {"seed", opt(p.seed)}};
}
void from_json(const json& j, Provenance& p) {
    p.tool = j.at("tool").get<std::string>();
    p.version = j.at("version").get<std::string>();
    p.input_sha256 = j.at("input_sha256").get<std::string>();
    p.seed = opt_from<std::uint64_t>(j, "seed");
}

void to_json(json& j, const RecoveryEntry& e) {
    j = {{"quantity", e.quantity},
         {"generating", e.generating},
         {"recovered", e.recovered},
         {"tolerance", e.tolerance},
         {"within", e.within}};
}
void from_json(const json& j, RecoveryEntry& e) {
    e.quantity = j.at("quantity").get<std::string>();
    e.generating = j.at("generating").get<double>();
    e.recovered = j.at("recovered").get<double>();
    e.tolerance = j.at("tolerance").get<double>();
    e.within = j.at("within").get<bool>();
}

void to_json(json& j, const StabilizationDiagnostic& d) {
    json cps = json::array();
    for (const auto& c : d.checkpoints) cps.push_back({c.n, c.frequency});
    j = {{"n_min", d.n_min},
         {"max_late_gap", d.max_late_gap},
         {"gap_tol", d.gap_tol},
         {"stabilized", d.stabilized},
         {"checkpoints", cps}};
}

// ---------------------------------------------------------------------------

namespace io {

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("malformed JSON (byte ") + std::to_string(e.byte) + ")");
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const json::exception& e) {
        throw SchemaError("$", e.what());
    }
}

void render(const json& j, const std::string& indent, std::ostringstream& out);

bool is_flat_array(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j) {
        if (e.is_object()) return false;
        if (e.is_array() && !is_flat_array(e)) return false;
    }
    return true;
}

void render(const json& j, const std::string& indent, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || (value.is_array() && !is_flat_array(value))) {
                out << indent << key << ":\n";
                render(value, indent + "  ", out);
            } else {
                out << indent << key << ": " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& e : j) {
            if (e.is_object() || (e.is_array() && !is_flat_array(e))) {
                out << indent << "- [" << i << "]\n";
                render(e, indent + "  ", out);
            } else {
                out << indent << "- " << e.dump() << "\n";
            }
            ++i;
        }
    } else {
        out << indent << j.dump() << "\n";
    }
}

}  // namespace

ContextData parse_context(std::string_view json_text) { return context_from(parse_json(json_text), "$"); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

ContextData load_context(const std::filesystem::path& path) { return parse_context(read_file(path)); }

std::string context_to_json(const ContextData& data, int indent) { return context_json(data).dump(indent); }

std::string report_to_json(const AnalysisReport& r, int indent) {
    json j;
    j["context_label"] = r.context_label;
    j["context"] = context_json(r.context);
    j["tolerances"] = r.tolerances;
    j["validation"] = r.validation;
    j["nondegeneracy"] = r.nondegeneracy;
    j["structure"] = r.structure;
    j["classification"] = r.classification;
    j["interference"] = r.interference;
    j["hilbert"] = opt(r.hilbert);
    j["provenance"] = r.provenance;
    return j.dump(indent);
}

AnalysisReport report_from_json(std::string_view json_text) {
    const json j = parse_json(json_text);
    return guarded([&] {
        AnalysisReport r;
        r.context_label = j.at("context_label").get<std::string>();
        r.context = context_from(j.at("context"), "$.context");
        r.tolerances = j.at("tolerances").get<Tolerances>();
        r.validation = j.at("validation").get<ValidationReport>();
        r.nondegeneracy = j.at("nondegeneracy").get<NondegeneracyFlags>();
        r.structure = j.at("structure").get<StructureReport>();
        r.classification = j.at("classification").get<ClassificationReport>();
        r.interference = j.at("interference").get<std::vector<FtpEntry>>();
        r.hilbert = opt_from<HilbertRep>(j, "hilbert");
        r.provenance = j.at("provenance").get<Provenance>();
        return r;
    });
}

std::string simulation_report_to_json(const SimulationReport& r, int indent) {
    const auto& e = r.recovered;
    json rec;
    rec["context"] = context_json(e.data);
    rec["tolerances"] = {{"p_a", vec(e.p_a_tol)},
                         {"p_b", vec(e.p_b_tol)},
                         {"p_b_given_a", mat(e.b_given_a_tol)},
                         {"p_a_given_b", opt(e.a_given_b_tol, mat)}};
    json sizes = json::object();
    for (auto t : kAllStreams) sizes[to_string(t)] = e.sample_sizes[static_cast<std::size_t>(t)];
    rec["sample_sizes"] = sizes;

    json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["generating"] = context_json(r.generating);
    j["recovered"] = rec;
    j["entries"] = r.entries;
    j["all_within"] = r.all_within;
    j["stream_files"] = r.stream_files;
    j["provenance"] = r.provenance;
    return j.dump(indent);
}

SimulationReport simulation_report_from_json(std::string_view json_text) {
    const json j = parse_json(json_text);
    return guarded([&] {
        SimulationReport r;
        r.n = j.at("n").get<std::uint64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.generating = context_from(j.at("generating"), "$.generating");
        const auto& rec = j.at("recovered");
        r.recovered.data = context_from(rec.at("context"), "$.recovered.context");
        const auto& t = rec.at("tolerances");
        r.recovered.p_a_tol = vec_from(t.at("p_a"));
        r.recovered.p_b_tol = vec_from(t.at("p_b"));
        r.recovered.b_given_a_tol = mat_from(t.at("p_b_given_a"));
        r.recovered.a_given_b_tol = opt_from<Mat2>(t, "p_a_given_b", mat_from);
        for (auto tag : kAllStreams) {
            r.recovered.sample_sizes[static_cast<std::size_t>(tag)] =
                rec.at("sample_sizes").at(to_string(tag)).get<std::uint64_t>();
        }
        r.entries = j.at("entries").get<std::vector<RecoveryEntry>>();
        r.all_within = j.at("all_within").get<bool>();
        r.stream_files = j.at("stream_files").get<std::vector<std::string>>();
        r.provenance = j.at("provenance").get<Provenance>();
        return r;
    });
}

std::string counterexample_to_json(const CounterexampleReport& r, const Provenance& p, int indent) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"nu_a", row.nu_a}, {"nu_b", row.nu_b}, {"nu_joint", row.nu_joint}});
    }
    const auto verdict = [](const StabilizationDiagnostic& d) {
        return json{{"n_min", d.n_min},
                    {"max_late_gap", d.max_late_gap},
                    {"gap_tol", d.gap_tol},
                    {"stabilized", d.stabilized}};
    };
    json j;
    j["max_n"] = r.max_n;
    j["checkpoints"] = rows;
    j["stabilization"] = {{"a", verdict(r.a)}, {"b", verdict(r.b)}, {"joint", verdict(r.joint)}};
    j["joint_liminf"] = r.joint_liminf;
    j["joint_limsup"] = r.joint_limsup;
    j["marginal_max_deviation"] = r.marginal_max_deviation;
    j["provenance"] = p;
    return j.dump(indent);
}

std::string json_to_text(std::string_view json_text) {
    std::ostringstream out;
    render(parse_json(json_text), "", out);
    return out.str();
}

void write_sequence_csv(const SSequence& s, std::ostream& out) {
    out << s.observable << ',' << to_string(s.source) << '\n';
    for (auto o : s.outcomes) out << s.alphabet[o] << '\n';
}

SSequence read_sequence_csv(std::istream& in, const std::array<std::string, 2>* alphabet) {
    SSequence s;
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("line 1", "missing header row");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw SchemaError("line 1", "header must be '<observable>,<stream>'");
    s.observable = line.substr(0, comma);
    try {
        s.source = stream_tag_from_string(line.substr(comma + 1));
    } catch (const Error& e) {
        throw SchemaError("line 1", e.what());
    }
    std::size_t seen = 0;
    if (alphabet) {
        s.alphabet = *alphabet;
        seen = 2;
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t idx = 0;
        while (idx < seen && s.alphabet[idx] != line) ++idx;
        if (idx == seen) {
            if (seen == 2) throw SchemaError("line " + std::to_string(lineno), "third distinct label '" + line + "'");
            s.alphabet[seen++] = line;
        }
        s.outcomes.push_back(static_cast<std::uint8_t>(idx));
    }
    return s;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

}  // namespace io

}  // namespace qlctx
