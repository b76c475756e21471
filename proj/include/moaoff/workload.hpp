#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "moaoff/perception.hpp"
#include "moaoff/sim.hpp"

namespace moaoff {

struct ComplexityDist {
    enum class Kind { Uniform, Beta };
    Kind kind = Kind::Uniform;
    double a = 0.0;  // uniform: lower bound; beta: alpha shape
    double b = 1.0;  // uniform: upper bound; beta: beta shape
};

/// Log-uniform payload size range, inclusive bounds.
struct PayloadRange {
    std::uint64_t lo_bytes = 0;
    std::uint64_t hi_bytes = 0;
};

/// Shares of the three request shapes; must sum to 1.
struct RequestMix {
    double both = 0.30;
    double image_only = 0.45;
    double text_only = 0.25;
};

struct SyntheticSpec {
    std::uint64_t request_count = 5000;
    double arrival_rate_hz = 15.0;  // Poisson arrivals
    RequestMix mix;
    ComplexityDist image_complexity{ComplexityDist::Kind::Uniform, 0.15, 1.0};
    ComplexityDist text_complexity{ComplexityDist::Kind::Uniform, 0.15, 0.55};
    PayloadRange image_payload{300'000, 6'000'000};
    PayloadRange text_payload{120, 2'000};
    std::uint64_t seed = 7;
};

void validate(const SyntheticSpec& spec);

/// Seeded deterministic generation: exponential arrival gaps, complexity and
/// payload draws per spec. Multimodal requests carry the image task first.
std::vector<Request> synthesize_workload(const SyntheticSpec& spec);

/// Reads a line-delimited workload: one JSON object per line with schema
/// {"id": int, "t": seconds, "mods": [{"kind": "text"|"image",
/// "content"?: str, "path"?: str, "c"?: float, "bytes"?: int}]}.
/// Entries without "c" are scored with the given perception config (text via
/// "content", images loaded from "path" relative to the workload file).
/// Missing "bytes" defaults to the image file size or the content length.
/// Returns requests stably sorted by arrival time. Errors carry the 1-based
/// line number.
std::vector<Request> load_workload(const std::filesystem::path& path, const PerceptionConfig& cfg);

/// Writes requests as pre-scored workload lines (the same schema with every
/// entry carrying "c" and "bytes").
void write_workload(const std::filesystem::path& path, std::span<const Request> workload);

/// Scores each image (PGM, or PPM converted to gray) and fits the P5/P95
/// normalization constants. Unreadable files are skipped and reported
/// through `skipped`; fewer than two readable images is an error.
Calibration collect_calibration(const std::vector<std::filesystem::path>& image_paths,
                                double epsilon = 1e-6,
                                std::vector<std::string>* skipped = nullptr);

} // namespace moaoff
