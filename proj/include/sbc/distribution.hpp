#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace sbc {

/// Distribution of the fiscal-need type theta. Density, CDF, survivor and
/// hazard evaluators plus the analytic hazard supremum each family admits.
///
/// Families:
///   uniform                 on [lo, hi]
///   truncated-exponential   on [lo, hi], rate > 0
///   exponential-unbounded   on [lo, +inf), rate > 0 (constant hazard)
///   log-logistic            on [0, +inf), scale > 0, shape > 0
///   tabulated               piecewise-linear density from (theta, density)
///                           nodes, trapezoid-normalized
///
/// The survivor is defined as 1 - F per evaluator, so F + survivor == 1
/// exactly in floating point.
class TypeDistribution {
public:
    enum class Family { Uniform, TruncatedExponential, ExponentialUnbounded, LogLogistic, Tabulated };

    static TypeDistribution uniform(double lo, double hi, bool ifr_claimed = true);
    static TypeDistribution truncated_exponential(double lo, double hi, double rate,
                                                  bool ifr_claimed = true);
    static TypeDistribution exponential_unbounded(double lo, double rate,
                                                  bool ifr_claimed = true);
    static TypeDistribution log_logistic(double scale, double shape, bool ifr_claimed);
    static TypeDistribution tabulated(std::vector<double> thetas, std::vector<double> densities,
                                      bool ifr_claimed);
    /// Two-column CSV (theta, density); header row optional.
    static TypeDistribution tabulated_from_csv(const std::string& path, bool ifr_claimed);

    Family family() const { return family_; }
    std::string family_name() const;
    double theta_lo() const { return lo_; }
    double theta_hi() const { return hi_; } // +inf for unbounded families
    bool ifr_claimed() const { return ifr_claimed_; }
    bool has_finite_support() const { return std::isfinite(hi_); }

    double pdf(double theta) const;
    double cdf(double theta) const;
    double survivor(double theta) const;

    /// f(theta) / survivor(theta). Throws std::domain_error when the
    /// survivor is zero or theta lies outside the support.
    double hazard(double theta) const;
    double hazard_derivative(double theta) const;

    /// Supremum of the hazard over the support; +inf when the hazard
    /// diverges at a finite upper endpoint.
    double sup_hazard() const;

    double quantile(double q) const;

    /// Upper end for evaluation grids: theta_hi when finite, else the
    /// 0.995 quantile.
    double grid_hi() const;

private:
    TypeDistribution() = default;
    void check_ifr_claim() const;

    Family family_ = Family::Uniform;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double rate_ = 1.0;  // exponential families
    double scale_ = 1.0; // log-logistic
    double shape_ = 1.0; // log-logistic
    bool ifr_claimed_ = true;

    // tabulated data (normalized density and its cumulative trapezoid)
    std::vector<double> tab_x_, tab_f_, tab_F_;
};

/// Maximum of a finite list of evaluated hazard values; the grid kernel
/// behind sup_hazard for tabulated inputs.
double sup_hazard_grid(const std::vector<double>& hazard_values);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace sbc
