#pragma once

// Report structures emitted by the command-line tool. Every intermediate
// quantity is carried so that a report alone is enough to audit a result.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlctx/context.hpp"
#include "qlctx/density.hpp"
#include "qlctx/frequency.hpp"
#include "qlctx/hilbert.hpp"
#include "qlctx/kolmogorov.hpp"
#include "qlctx/supplementarity.hpp"

namespace qlctx {

const char* library_version() noexcept;

struct Provenance {
    std::string tool = "qlctx";
    std::string version = library_version();
    std::string input_sha256;  ///< empty when no input file is involved
    std::optional<std::uint64_t> seed;

    bool operator==(const Provenance&) const = default;
};

struct FtpEntry {
    Direction direction = Direction::BGivenA;
    std::size_t outcome = 0;
    FtpDecomposition decomposition;

    bool operator==(const FtpEntry&) const = default;
};

struct AnalysisReport {
    std::string context_label;
    ContextData context;
    Tolerances tolerances;
    ValidationReport validation;
    NondegeneracyFlags nondegeneracy;
    StructureReport structure;
    ClassificationReport classification;
    std::vector<FtpEntry> interference;  ///< one per outcome and direction with lambda defined
    std::optional<HilbertRep> hilbert;   ///< present iff trigonometric and b/a-nondegenerate
    Provenance provenance;

    bool operator==(const AnalysisReport&) const = default;
};

/// validate -> structure -> classification -> Hilbert reconstruction.
AnalysisReport analyze(const ContextData& data, const Tolerances& tol, Vec2 a_values = {1.0, -1.0},
                       Vec2 b_values = {1.0, -1.0}, Provenance provenance = {});

/// Invariants a report of a valid context must satisfy. Returns the list of
/// broken ones (empty when consistent).
std::vector<std::string> report_invariant_failures(const AnalysisReport& r);

struct RecoveryEntry {
    std::string quantity;  ///< e.g. "p_b[0]", "p_b_given_a[1][0]", "lambda_ba[0]"
    double generating = 0.0;
    double recovered = 0.0;
    double tolerance = 0.0;
    bool within = false;

    bool operator==(const RecoveryEntry&) const = default;
};

struct SimulationReport {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    ContextData generating;
    EmpiricalContext recovered;
    std::vector<RecoveryEntry> entries;
    std::vector<std::string> stream_files;
    bool all_within = false;
    Provenance provenance;

    bool operator==(const SimulationReport&) const = default;
};

/// Compares the empirical context against the generating one, entry by entry,
/// and lambda by lambda (using propagated tolerances).
SimulationReport build_simulation_report(const ContextData& generating, const SimulatedStreams& streams,
                                         std::uint64_t n, std::uint64_t seed, const Tolerances& tol);

}  // namespace qlctx
