#pragma once

// Frequency-probability machinery: the six observation streams of a context,
// relative frequencies, statistical stabilization, and reassembly of
// empirical contextual data.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlctx/context.hpp"

namespace qlctx {

/// The six streams of a context:
///   x        b observed under C             ~ p_b
///   y        a observed under C             ~ p_a
///   x_alpha  b observed under the a=alpha filtration ~ row alpha of p_b_given_a
///   y_beta   a observed under the b=beta filtration  ~ row beta of p_a_given_b
enum class StreamTag : std::uint8_t { X, Y, XAlpha1, XAlpha2, YBeta1, YBeta2 };

inline constexpr std::array<StreamTag, 6> kAllStreams{StreamTag::X,       StreamTag::Y,      StreamTag::XAlpha1,
                                                      StreamTag::XAlpha2, StreamTag::YBeta1, StreamTag::YBeta2};

const char* to_string(StreamTag t) noexcept;

/// Throws qlctx::Error for an unknown name.
StreamTag stream_tag_from_string(const std::string& name);

/// A finite realization of an observation sequence; outcomes are spectrum indices 0/1.
struct SSequence {
    std::vector<std::uint8_t> outcomes;
    std::array<std::string, 2> alphabet;
    std::string observable;
    StreamTag source = StreamTag::X;
    std::optional<std::uint64_t> seed;

    bool operator==(const SSequence&) const = default;
};

struct SimulatedStreams {
    std::array<std::optional<SSequence>, 6> streams;

    const std::optional<SSequence>& operator[](StreamTag t) const { return streams[static_cast<std::size_t>(t)]; }
    std::optional<SSequence>& operator[](StreamTag t) { return streams[static_cast<std::size_t>(t)]; }
};

/// Draws within one stream are generated in chunks of this many outcomes,
/// each chunk from its own sub-seed.
inline constexpr std::size_t kSimulationChunk = std::size_t{1} << 16;

/// i.i.d. sampling of every stream the context supports; y_beta streams are
/// absent without p_a_given_b. Deterministic in (data, n, seed).
SimulatedStreams simulate_context(const ContextData& data, std::size_t n, std::uint64_t seed);

/// Relative frequency of each outcome. Throws qlctx::Error on an empty sequence.
Vec2 estimate_frequencies(const SSequence& s);
Vec2 estimate_frequencies(std::span<const std::uint8_t> outcomes);

struct Checkpoint {
    std::uint64_t n = 0;
    double frequency = 0.0;  ///< relative frequency of outcome 0 among the first n

    bool operator==(const Checkpoint&) const = default;
};

struct StabilizationDiagnostic {
    std::vector<Checkpoint> checkpoints;  ///< dyadic n, plus the full length when it is not dyadic
    std::uint64_t n_min = 0;
    double max_late_gap = 0.0;  ///< max |nu_N - nu_M| over checkpoints with N, M >= n_min
    double gap_tol = 0.0;       ///< stat_z * sqrt(0.25 / n_min)
    bool stabilized = false;

    bool operator==(const StabilizationDiagnostic&) const = default;
};

inline constexpr std::uint64_t kDefaultNMin = std::uint64_t{1} << 14;

double stabilization_gap_tol(std::uint64_t n_min, double stat_z);

/// Throws SequenceTooShort when fewer than 2 * n_min outcomes are given.
StabilizationDiagnostic stabilization_diagnostic(std::span<const std::uint8_t> outcomes,
                                                 std::uint64_t n_min = kDefaultNMin, double stat_z = 4.0);

/// Same criterion for precomputed checkpoints (e.g. prefix counts of an integer set).
StabilizationDiagnostic stabilization_from_checkpoints(std::vector<Checkpoint> checkpoints, std::uint64_t n_min,
                                                       double stat_z);

/// stat_z * sqrt(v / n) with v = max(p(1-p), 1/n): the Wald half-width,
/// floored so that p in {0, 1} on few samples still yields a wide interval.
double entry_tolerance(double p_hat, std::uint64_t n, double stat_z);

struct EmpiricalContext {
    ContextData data;
    Vec2 p_a_tol{};
    Vec2 p_b_tol{};
    Mat2 b_given_a_tol{};
    std::optional<Mat2> a_given_b_tol;
    std::array<std::uint64_t, 6> sample_sizes{};

    bool operator==(const EmpiricalContext&) const = default;
};

/// Frequencies of x, y and both x_alpha streams (and the y_beta pair when
/// present) assembled into ContextData with per-entry tolerances. Throws
/// MissingStream when x, y or an x_alpha stream is absent, or only one
/// y_beta stream is present.
EmpiricalContext empirical_context_data(const SimulatedStreams& streams, const Tolerances& tol = {});

/// First-order worst-case propagation of the per-entry tolerances into delta.
double delta_tolerance(const EmpiricalContext& e, Direction dir, std::size_t outcome);

/// First-order worst-case propagation into lambda; empty when lambda is undefined.
std::optional<double> lambda_tolerance(const EmpiricalContext& e, Direction dir, std::size_t outcome);

}  // namespace qlctx
