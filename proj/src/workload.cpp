#include "moaoff/workload.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "moaoff/pnm.hpp"
#include "moaoff/rng.hpp"

namespace moaoff {

namespace {

using json = nlohmann::ordered_json;

void validate_dist(const ComplexityDist& d, const char* label) {
    if (d.kind == ComplexityDist::Kind::Uniform) {
        if (d.a < 0 || d.b > 1 || d.a > d.b) {
            throw DomainError(std::string(label) + ": uniform bounds must satisfy 0 <= a <= b <= 1");
        }
    } else {
        if (!(d.a > 0) || !(d.b > 0)) {
            throw DomainError(std::string(label) + ": beta shapes must be positive");
        }
    }
}

void validate_payload(const PayloadRange& p, const char* label) {
    if (p.hi_bytes < p.lo_bytes) {
        throw DomainError(std::string(label) + ": payload range inverted");
    }
    if (p.lo_bytes == 0 && p.hi_bytes != 0) {
        throw DomainError(std::string(label) + ": log-uniform payload needs lo >= 1");
    }
}

double sample_complexity(SplitMix64& rng, const ComplexityDist& d) {
    if (d.kind == ComplexityDist::Kind::Uniform) {
        return d.a + rng.next_double() * (d.b - d.a);
    }
    // Johnk's beta sampler: only uniforms and pow, no special functions.
    for (;;) {
        const double x = std::pow(rng.next_double(), 1.0 / d.a);
        const double y = std::pow(rng.next_double(), 1.0 / d.b);
        const double s = x + y;
        if (s > 0.0 && s <= 1.0) {
            return x / s;
        }
    }
}

std::uint64_t sample_payload(SplitMix64& rng, const PayloadRange& p) {
    if (p.lo_bytes == p.hi_bytes) {
        return p.lo_bytes;
    }
    const double lo = std::log(static_cast<double>(p.lo_bytes));
    const double hi = std::log(static_cast<double>(p.hi_bytes));
    const double v = std::exp(lo + rng.next_double() * (hi - lo));
    const auto bytes = static_cast<std::uint64_t>(v);
    return std::clamp(bytes, p.lo_bytes, p.hi_bytes);
}

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

} // namespace

void validate(const SyntheticSpec& spec) {
    if (spec.request_count > 0 && !(spec.arrival_rate_hz > 0)) {
        throw DomainError("synthetic: arrival_rate_hz must be positive");
    }
    const double mix_sum = spec.mix.both + spec.mix.image_only + spec.mix.text_only;
    if (spec.mix.both < 0 || spec.mix.image_only < 0 || spec.mix.text_only < 0 ||
        std::abs(mix_sum - 1.0) > 1e-9) {
        throw DomainError("synthetic: request mix shares must be non-negative and sum to 1");
    }
    validate_dist(spec.image_complexity, "synthetic image complexity");
    validate_dist(spec.text_complexity, "synthetic text complexity");
    validate_payload(spec.image_payload, "synthetic image payload");
    validate_payload(spec.text_payload, "synthetic text payload");
}

std::vector<Request> synthesize_workload(const SyntheticSpec& spec) {
    validate(spec);
    std::vector<Request> workload;
    workload.reserve(spec.request_count);
    SplitMix64 rng(spec.seed);
    double clock = 0.0;
    // Fixed draw order per request: arrival gap, shape, then per task
    // (image before text) complexity and payload.
    for (std::uint64_t id = 0; id < spec.request_count; ++id) {
        clock += -std::log(1.0 - rng.next_double()) / spec.arrival_rate_hz;
        Request request;
        request.id = id;
        request.arrival_time_s = clock;

        const double shape = rng.next_double();
        const bool has_image = shape < spec.mix.both + spec.mix.image_only;
        const bool has_text = shape < spec.mix.both || !has_image;
        if (has_image) {
            ModalityTask task;
            task.modality = Modality::Image;
            task.complexity = sample_complexity(rng, spec.image_complexity);
            task.payload_bytes = sample_payload(rng, spec.image_payload);
            request.tasks.push_back(task);
        }
        if (has_text) {
            ModalityTask task;
            task.modality = Modality::Text;
            task.complexity = sample_complexity(rng, spec.text_complexity);
            task.payload_bytes = sample_payload(rng, spec.text_payload);
            request.tasks.push_back(task);
        }
        workload.push_back(std::move(request));
    }
    return workload;
}

std::vector<Request> load_workload(const std::filesystem::path& path, const PerceptionConfig& cfg) {
    validate(cfg);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open workload file: " + path.string());
    }
    const std::filesystem::path base = path.parent_path();

    std::vector<Request> workload;
    std::unordered_set<std::uint64_t> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            line_error(path, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) {
            line_error(path, line_no, "record must be a JSON object");
        }
        for (const auto& [key, _] : record.items()) {
            if (key != "id" && key != "t" && key != "mods") {
                line_error(path, line_no, "unknown key '" + key + "'");
            }
        }
        if (!record.contains("id") || !record["id"].is_number_integer()) {
            line_error(path, line_no, "missing or non-integer 'id'");
        }
        if (!record.contains("t") || !record["t"].is_number()) {
            line_error(path, line_no, "missing or non-numeric 't'");
        }
        if (!record.contains("mods") || !record["mods"].is_array() || record["mods"].empty()) {
            line_error(path, line_no, "'mods' must be a non-empty array");
        }

        Request request;
        request.id = record["id"].get<std::uint64_t>();
        request.arrival_time_s = record["t"].get<double>();
        if (request.arrival_time_s < 0) {
            line_error(path, line_no, "'t' must be non-negative");
        }
        if (!seen_ids.insert(request.id).second) {
            line_error(path, line_no, "duplicate request id " + std::to_string(request.id));
        }

        for (const auto& mod : record["mods"]) {
            if (!mod.is_object()) {
                line_error(path, line_no, "modality entry must be an object");
            }
            for (const auto& [key, _] : mod.items()) {
                if (key != "kind" && key != "content" && key != "path" && key != "c" && key != "bytes") {
                    line_error(path, line_no, "unknown modality key '" + key + "'");
                }
            }
            if (!mod.contains("kind") || !mod["kind"].is_string()) {
                line_error(path, line_no, "modality entry missing 'kind'");
            }
            const std::string kind = mod["kind"].get<std::string>();
            ModalityTask task;
            if (kind == "text") {
                task.modality = Modality::Text;
            } else if (kind == "image") {
                task.modality = Modality::Image;
            } else {
                line_error(path, line_no, "unknown modality kind '" + kind + "'");
            }

            const std::filesystem::path image_path =
                mod.contains("path") ? base / mod["path"].get<std::string>() : std::filesystem::path();

            if (mod.contains("c")) {
                task.complexity = mod["c"].get<double>();
                if (task.complexity < 0 || task.complexity > 1) {
                    line_error(path, line_no, "'c' must lie in [0,1]");
                }
            } else if (task.modality == Modality::Text) {
                if (!mod.contains("content") || !mod["content"].is_string()) {
                    line_error(path, line_no, "unscored text entry needs 'content'");
                }
                task.complexity = score_text(mod["content"].get<std::string>(), cfg).total;
            } else {
                if (image_path.empty()) {
                    line_error(path, line_no, "unscored image entry needs 'path'");
                }
                try {
                    task.complexity = score_image(load_image_auto(image_path), cfg).total;
                } catch (const IoError& e) {
                    line_error(path, line_no, e.what());
                }
            }

            if (mod.contains("bytes")) {
                task.payload_bytes = mod["bytes"].get<std::uint64_t>();
            } else if (!image_path.empty()) {
                std::error_code ec;
                const auto size = std::filesystem::file_size(image_path, ec);
                if (ec) {
                    line_error(path, line_no, "cannot stat image file: " + image_path.string());
                }
                task.payload_bytes = size;
            } else if (mod.contains("content")) {
                task.payload_bytes = mod["content"].get<std::string>().size();
            }
            request.tasks.push_back(std::move(task));
        }
        workload.push_back(std::move(request));
    }

    std::stable_sort(workload.begin(), workload.end(),
                     [](const Request& a, const Request& b) { return a.arrival_time_s < b.arrival_time_s; });
    return workload;
}

void write_workload(const std::filesystem::path& path, std::span<const Request> workload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    for (const Request& request : workload) {
        json record;
        record["id"] = request.id;
        record["t"] = request.arrival_time_s;
        json mods = json::array();
        for (const ModalityTask& task : request.tasks) {
            json mod;
            mod["kind"] = to_string(task.modality);
            mod["c"] = task.complexity;
            mod["bytes"] = task.payload_bytes;
            mods.push_back(std::move(mod));
        }
        record["mods"] = std::move(mods);
        out << record.dump() << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

Calibration collect_calibration(const std::vector<std::filesystem::path>& image_paths,
                                double epsilon, std::vector<std::string>* skipped) {
    std::vector<double> gradient_means;
    std::vector<double> laplacian_variances;
    for (const auto& p : image_paths) {
        try {
            const GrayImage img = load_image_auto(p);
            gradient_means.push_back(mean_sobel_gradient(img));
            laplacian_variances.push_back(laplacian_variance(img));
        } catch (const IoError& e) {
            if (skipped) {
                skipped->push_back(e.what());
            }
        }
    }
    return fit_calibration(gradient_means, laplacian_variances, epsilon);
}

} // namespace moaoff
