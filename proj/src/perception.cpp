#include "moaoff/perception.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "moaoff/stats.hpp"

namespace moaoff {

void validate(const ImageWeights& w) {
    if (w.w_res < 0 || w.w_edge < 0 || w.w_ent < 0 || w.w_lap < 0) {
        throw DomainError("image weights must be non-negative");
    }
    const double sum = w.w_res + w.w_edge + w.w_ent + w.w_lap;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("image weights must sum to 1");
    }
}

ImageWeights normalized_weights(double w_res, double w_edge, double w_ent, double w_lap) {
    if (w_res < 0 || w_edge < 0 || w_ent < 0 || w_lap < 0) {
        throw DomainError("image weights must be non-negative");
    }
    const double sum = w_res + w_edge + w_ent + w_lap;
    if (sum <= 0) {
        throw DomainError("image weights must have a positive sum");
    }
    return ImageWeights{w_res / sum, w_edge / sum, w_ent / sum, w_lap / sum};
}

void validate(const Calibration& cal) {
    if (cal.grad_p5 > cal.grad_p95) {
        throw DomainError("calibration: grad_p5 must not exceed grad_p95");
    }
    if (cal.lap_p5 > cal.lap_p95) {
        throw DomainError("calibration: lap_p5 must not exceed lap_p95");
    }
    if (!(cal.epsilon > 0)) {
        throw DomainError("calibration: epsilon must be positive");
    }
}

double Calibration::normalize_gradient(double g) const {
    return clip01((g - grad_p5) / (grad_p95 - grad_p5 + epsilon));
}

double Calibration::normalize_laplacian(double v) const {
    return clip01((v - lap_p5) / (lap_p95 - lap_p5 + epsilon));
}

double resolution_scale(const GrayImage& img, int h0, int w0) {
    const double ref = static_cast<double>(h0) * static_cast<double>(w0);
    return std::min(1.0, static_cast<double>(img.pixel_count()) / ref);
}

double mean_sobel_gradient(const GrayImage& img) {
    if (img.height < 3 || img.width < 3) {
        return 0.0;
    }
    const int w = img.width;
    const std::uint8_t* p = img.pixels.data();
    double sum = 0.0;
    for (int r = 1; r + 1 < img.height; ++r) {
        const std::uint8_t* up = p + static_cast<std::size_t>(r - 1) * w;
        const std::uint8_t* mid = p + static_cast<std::size_t>(r) * w;
        const std::uint8_t* dn = p + static_cast<std::size_t>(r + 1) * w;
        for (int c = 1; c + 1 < w; ++c) {
            const int gx = (up[c + 1] - up[c - 1]) + 2 * (mid[c + 1] - mid[c - 1]) + (dn[c + 1] - dn[c - 1]);
            const int gy = (dn[c - 1] - up[c - 1]) + 2 * (dn[c] - up[c]) + (dn[c + 1] - up[c + 1]);
            sum += std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy);
        }
    }
    const auto interior = static_cast<double>(img.height - 2) * static_cast<double>(w - 2);
    return sum / interior;
}

double edge_density(const GrayImage& img, const Calibration& cal) {
    return cal.normalize_gradient(mean_sobel_gradient(img));
}

double gray_entropy(const GrayImage& img) {
    std::array<std::size_t, 256> histogram{};
    for (std::uint8_t px : img.pixels) {
        ++histogram[px];
    }
    const double n = static_cast<double>(img.pixel_count());
    double entropy = 0.0;
    for (std::size_t count : histogram) {
        if (count == 0) {
            continue;
        }
        const double p = static_cast<double>(count) / n;
        entropy -= p * std::log(p);
    }
    return entropy / std::log(256.0);
}

double laplacian_variance(const GrayImage& img) {
    if (img.height < 3 || img.width < 3) {
        return 0.0;
    }
    const int w = img.width;
    const std::uint8_t* p = img.pixels.data();
    std::vector<double> responses;
    responses.reserve(static_cast<std::size_t>(img.height - 2) * static_cast<std::size_t>(w - 2));
    double sum = 0.0;
    for (int r = 1; r + 1 < img.height; ++r) {
        const std::uint8_t* up = p + static_cast<std::size_t>(r - 1) * w;
        const std::uint8_t* mid = p + static_cast<std::size_t>(r) * w;
        const std::uint8_t* dn = p + static_cast<std::size_t>(r + 1) * w;
        for (int c = 1; c + 1 < w; ++c) {
            const int resp = up[c] + dn[c] + mid[c - 1] + mid[c + 1] - 4 * mid[c];
            responses.push_back(static_cast<double>(resp));
            sum += resp;
        }
    }
    const double mean = sum / static_cast<double>(responses.size());
    double var = 0.0;
    for (double v : responses) {
        var += (v - mean) * (v - mean);
    }
    return var / static_cast<double>(responses.size());
}

double sharpness(const GrayImage& img, const Calibration& cal) {
    return cal.normalize_laplacian(laplacian_variance(img));
}

ImageComplexity image_complexity(const GrayImage& img, const ImageWeights& weights,
                                 const Calibration& cal, int h0, int w0) {
    validate(weights);
    validate(cal);
    if (h0 < 1 || w0 < 1) {
        throw DomainError("reference resolution must be at least 1x1");
    }
    ImageComplexity out;
    out.c_res = resolution_scale(img, h0, w0);
    out.c_edge = edge_density(img, cal);
    out.c_ent = gray_entropy(img);
    out.c_lap = sharpness(img, cal);
    out.total = weights.w_res * out.c_res + weights.w_edge * out.c_edge +
                weights.w_ent * out.c_ent + weights.w_lap * out.c_lap;
    return out;
}

namespace {

double fitted_percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return percentile_sorted(values, p);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

} // namespace

Calibration fit_calibration(std::span<const double> gradient_means,
                            std::span<const double> laplacian_variances,
                            double epsilon) {
    if (gradient_means.size() < 2 || laplacian_variances.size() < 2) {
        throw DomainError("calibration failed: need at least 2 samples per statistic");
    }
    if (!(epsilon > 0)) {
        throw DomainError("calibration failed: epsilon must be positive");
    }
    Calibration cal;
    cal.grad_p5 = fitted_percentile({gradient_means.begin(), gradient_means.end()}, 5.0);
    cal.grad_p95 = fitted_percentile({gradient_means.begin(), gradient_means.end()}, 95.0);
    cal.lap_p5 = fitted_percentile({laplacian_variances.begin(), laplacian_variances.end()}, 5.0);
    cal.lap_p95 = fitted_percentile({laplacian_variances.begin(), laplacian_variances.end()}, 95.0);
    cal.epsilon = epsilon;
    return cal;
}

std::string calibration_to_text(const Calibration& cal) {
    std::string out;
    out += "grad_p5=" + format_double(cal.grad_p5) + "\n";
    out += "grad_p95=" + format_double(cal.grad_p95) + "\n";
    out += "lap_p5=" + format_double(cal.lap_p5) + "\n";
    out += "lap_p95=" + format_double(cal.lap_p95) + "\n";
    out += "epsilon=" + format_double(cal.epsilon) + "\n";
    return out;
}

Calibration calibration_from_text(const std::string& text) {
    Calibration cal;
    bool seen_grad_p5 = false, seen_grad_p95 = false, seen_lap_p5 = false,
         seen_lap_p95 = false, seen_epsilon = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("calibration line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const std::string value_str = line.substr(eq + 1);
        double value = 0.0;
        const char* first = value_str.data();
        const char* last = value_str.data() + value_str.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("calibration line " + std::to_string(line_no) + ": bad number '" + value_str + "'");
        }
        if (key == "grad_p5" && !seen_grad_p5) {
            cal.grad_p5 = value;
            seen_grad_p5 = true;
        } else if (key == "grad_p95" && !seen_grad_p95) {
            cal.grad_p95 = value;
            seen_grad_p95 = true;
        } else if (key == "lap_p5" && !seen_lap_p5) {
            cal.lap_p5 = value;
            seen_lap_p5 = true;
        } else if (key == "lap_p95" && !seen_lap_p95) {
            cal.lap_p95 = value;
            seen_lap_p95 = true;
        } else if (key == "epsilon" && !seen_epsilon) {
            cal.epsilon = value;
            seen_epsilon = true;
        } else {
            throw ParseError("calibration line " + std::to_string(line_no) + ": unexpected key '" + key + "'");
        }
    }
    if (!(seen_grad_p5 && seen_grad_p95 && seen_lap_p5 && seen_lap_p95 && seen_epsilon)) {
        throw ParseError("calibration document is missing required keys");
    }
    validate(cal);
    return cal;
}

void save_calibration(const std::filesystem::path& path, const Calibration& cal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << calibration_to_text(cal);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

Calibration load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open calibration file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return calibration_from_text(buffer.str());
}

void validate(const PerceptionConfig& cfg) {
    if (cfg.reference_height < 1 || cfg.reference_width < 1) {
        throw DomainError("perception: reference resolution must be at least 1x1");
    }
    validate(cfg.weights);
    validate(cfg.text);
    validate(cfg.calibration);
}

ImageComplexity score_image(const GrayImage& img, const PerceptionConfig& cfg) {
    return image_complexity(img, cfg.weights, cfg.calibration, cfg.reference_height,
                            cfg.reference_width);
}

TextComplexity score_text(std::string_view text, const PerceptionConfig& cfg) {
    return text_complexity(text, cfg.text);
}

} // namespace moaoff
