#pragma once

#include <string>

#include "sbc/rng.hpp"

namespace sbc {

/// Mean-zero univariate noise with a density evaluator.
struct NoiseDist {
    enum class Kind { Normal, UniformBox };

    Kind kind = Kind::Normal;
    double scale = 1.0; // sigma for Normal, half-width for UniformBox

    double sample(RandomStream& rs) const;
    double pdf(double x) const;
    double cdf(double x) const;
    double sd() const;

    static NoiseDist normal(double sigma) { return {Kind::Normal, sigma}; }
    static NoiseDist uniform_box(double half_width) { return {Kind::UniformBox, half_width}; }
};

/// Fiscal shock epsilon plus audit noise eta. The shock may be degenerate
/// (scale 0); the audit noise must have a proper density since f_eta enters
/// the effort FOC and the default-margin estimator.
struct NoiseModel {
    NoiseDist epsilon;
    NoiseDist eta;
};

std::string noise_kind_name(NoiseDist::Kind k);

} // namespace sbc
