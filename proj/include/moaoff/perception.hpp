#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "moaoff/image.hpp"
#include "moaoff/text.hpp"

namespace moaoff {

/// Weights of the four image indicators. Non-negative, sum to 1.
struct ImageWeights {
    double w_res = 0.25;
    double w_edge = 0.25;
    double w_ent = 0.25;
    double w_lap = 0.25;
};

/// Throws DomainError unless weights are non-negative and sum to 1 within 1e-9.
void validate(const ImageWeights& w);

/// Rescales non-negative weights with a positive sum so they sum to 1.
ImageWeights normalized_weights(double w_res, double w_edge, double w_ent, double w_lap);

/// P5/P95 normalization constants fitted over a calibration corpus.
/// grad_* are percentiles of the per-image mean Sobel gradient magnitude,
/// lap_* percentiles of the per-image Laplacian variance.
struct Calibration {
    double grad_p5 = 2.0;
    double grad_p95 = 60.0;
    double lap_p5 = 10.0;
    double lap_p95 = 2000.0;
    double epsilon = 1e-6;

    /// clip((g - grad_p5) / (grad_p95 - grad_p5 + epsilon), 0, 1)
    double normalize_gradient(double g) const;
    /// clip((v - lap_p5) / (lap_p95 - lap_p5 + epsilon), 0, 1)
    double normalize_laplacian(double v) const;
};

void validate(const Calibration& cal);

/// Component breakdown of an image score. total is the weighted sum.
struct ImageComplexity {
    double c_res = 0.0;
    double c_edge = 0.0;
    double c_ent = 0.0;
    double c_lap = 0.0;
    double total = 0.0;
};

/// min(1, H*W / (h0*w0))
double resolution_scale(const GrayImage& img, int h0, int w0);

/// Mean Sobel gradient magnitude over interior pixels (1-pixel border
/// excluded, no padding). Images smaller than 3x3 have no interior and
/// score 0.
double mean_sobel_gradient(const GrayImage& img);

double edge_density(const GrayImage& img, const Calibration& cal);

/// Normalized gray-level histogram entropy, in [0,1]. Natural log; the
/// log(256) normalizer cancels the base.
double gray_entropy(const GrayImage& img);

/// Population variance of the 4-neighbor Laplacian response over interior
/// pixels. Sub-3x3 images score 0.
double laplacian_variance(const GrayImage& img);

double sharpness(const GrayImage& img, const Calibration& cal);

ImageComplexity image_complexity(const GrayImage& img, const ImageWeights& weights,
                                 const Calibration& cal, int h0, int w0);

/// Fits P5/P95 of both statistics lists (linear-interpolation percentiles).
/// Each list needs at least two entries.
Calibration fit_calibration(std::span<const double> gradient_means,
                            std::span<const double> laplacian_variances,
                            double epsilon);

// Calibration persists as a flat key=value document with exactly the keys
// grad_p5, grad_p95, lap_p5, lap_p95, epsilon.
std::string calibration_to_text(const Calibration& cal);
Calibration calibration_from_text(const std::string& text);
void save_calibration(const std::filesystem::path& path, const Calibration& cal);
Calibration load_calibration(const std::filesystem::path& path);

/// Everything scoring needs, for both modalities.
struct PerceptionConfig {
    int reference_height = 1024;
    int reference_width = 1024;
    ImageWeights weights;
    TextParams text;
    Calibration calibration;
};

void validate(const PerceptionConfig& cfg);

ImageComplexity score_image(const GrayImage& img, const PerceptionConfig& cfg);
TextComplexity score_text(std::string_view text, const PerceptionConfig& cfg);

} // namespace moaoff
