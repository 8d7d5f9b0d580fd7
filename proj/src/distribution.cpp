#include "sbc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sbc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }
} // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("linspace: n must be >= 2");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    out.back() = hi;
    return out;
}

double sup_hazard_grid(const std::vector<double>& hazard_values) {
    if (hazard_values.empty()) throw std::invalid_argument("sup_hazard_grid: empty grid");
    return *std::max_element(hazard_values.begin(), hazard_values.end());
}

TypeDistribution TypeDistribution::uniform(double lo, double hi, bool ifr_claimed) {
    if (!(hi > lo)) throw std::invalid_argument("uniform: need hi > lo");
    TypeDistribution d;
    d.family_ = Family::Uniform;
    d.lo_ = lo;
    d.hi_ = hi;
    d.ifr_claimed_ = ifr_claimed;
    d.check_ifr_claim();
    return d;
}

TypeDistribution TypeDistribution::truncated_exponential(double lo, double hi, double rate,
                                                         bool ifr_claimed) {
    if (!(hi > lo)) throw std::invalid_argument("truncated_exponential: need hi > lo");
    if (!(rate > 0.0)) throw std::invalid_argument("truncated_exponential: rate must be > 0");
    TypeDistribution d;
    d.family_ = Family::TruncatedExponential;
    d.lo_ = lo;
    d.hi_ = hi;
    d.rate_ = rate;
    d.ifr_claimed_ = ifr_claimed;
    d.check_ifr_claim();
    return d;
}

TypeDistribution TypeDistribution::exponential_unbounded(double lo, double rate, bool ifr_claimed) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential_unbounded: rate must be > 0");
    TypeDistribution d;
    d.family_ = Family::ExponentialUnbounded;
    d.lo_ = lo;
    d.hi_ = kInf;
    d.rate_ = rate;
    d.ifr_claimed_ = ifr_claimed;
    d.check_ifr_claim();
    return d;
}

TypeDistribution TypeDistribution::log_logistic(double scale, double shape, bool ifr_claimed) {
    if (!(scale > 0.0) || !(shape > 0.0))
        throw std::invalid_argument("log_logistic: scale and shape must be > 0");
    TypeDistribution d;
    d.family_ = Family::LogLogistic;
    d.lo_ = 0.0;
    d.hi_ = kInf;
    d.scale_ = scale;
    d.shape_ = shape;
    d.ifr_claimed_ = ifr_claimed;
    d.check_ifr_claim();
    return d;
}

TypeDistribution TypeDistribution::tabulated(std::vector<double> thetas,
                                             std::vector<double> densities, bool ifr_claimed) {
    if (thetas.size() != densities.size() || thetas.size() < 2)
        throw std::invalid_argument("tabulated: need >= 2 matching (theta, density) nodes");
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (!(thetas[i] > thetas[i - 1]))
            throw std::invalid_argument("tabulated: theta nodes must be strictly increasing");
    for (std::size_t i = 0; i < densities.size(); ++i) {
        bool interior = i > 0 && i + 1 < densities.size();
        if (densities[i] < 0.0 || (interior && !(densities[i] > 0.0)))
            throw std::invalid_argument("tabulated: density must be > 0 on the interior");
    }

    // Trapezoid normalization.
    double z = 0.0;
    for (std::size_t i = 1; i < thetas.size(); ++i)
        z += 0.5 * (densities[i] + densities[i - 1]) * (thetas[i] - thetas[i - 1]);
    if (!(z > 0.0)) throw std::invalid_argument("tabulated: density integrates to zero");
    for (auto& f : densities) f /= z;

    TypeDistribution d;
    d.family_ = Family::Tabulated;
    d.lo_ = thetas.front();
    d.hi_ = thetas.back();
    d.tab_x_ = std::move(thetas);
    d.tab_f_ = std::move(densities);
    d.tab_F_.assign(d.tab_x_.size(), 0.0);
    for (std::size_t i = 1; i < d.tab_x_.size(); ++i)
        d.tab_F_[i] = d.tab_F_[i - 1] +
                      0.5 * (d.tab_f_[i] + d.tab_f_[i - 1]) * (d.tab_x_[i] - d.tab_x_[i - 1]);
    d.tab_F_.back() = 1.0;
    d.ifr_claimed_ = ifr_claimed;
    d.check_ifr_claim();
    return d;
}

TypeDistribution TypeDistribution::tabulated_from_csv(const std::string& path, bool ifr_claimed) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("tabulated_from_csv: cannot open " + path);
    std::vector<double> xs, fs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, f;
        if (ss >> x >> f) {
            xs.push_back(x);
            fs.push_back(f);
        }
        // non-numeric rows (headers) are skipped
    }
    return tabulated(std::move(xs), std::move(fs), ifr_claimed);
}

std::string TypeDistribution::family_name() const {
    switch (family_) {
        case Family::Uniform: return "uniform";
        case Family::TruncatedExponential: return "truncated-exponential";
        case Family::ExponentialUnbounded: return "exponential-unbounded";
        case Family::LogLogistic: return "log-logistic";
        case Family::Tabulated: return "tabulated";
    }
    return "?";
}

double TypeDistribution::pdf(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    switch (family_) {
        case Family::Uniform:
            return 1.0 / (hi_ - lo_);
        case Family::TruncatedExponential: {
            double z = 1.0 - std::exp(-rate_ * (hi_ - lo_));
            return rate_ * std::exp(-rate_ * (x - lo_)) / z;
        }
        case Family::ExponentialUnbounded:
            return rate_ * std::exp(-rate_ * (x - lo_));
        case Family::LogLogistic: {
            if (x == 0.0) return shape_ > 1.0 ? 0.0 : (shape_ == 1.0 ? 1.0 / scale_ : kInf);
            double u = std::pow(x / scale_, shape_);
            return shape_ / x * u / ((1.0 + u) * (1.0 + u));
        }
        case Family::Tabulated: {
            auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                1, std::min<std::ptrdiff_t>(it - tab_x_.begin(),
                                            static_cast<std::ptrdiff_t>(tab_x_.size()) - 1)));
            double t = (x - tab_x_[i - 1]) / (tab_x_[i] - tab_x_[i - 1]);
            return tab_f_[i - 1] + t * (tab_f_[i] - tab_f_[i - 1]);
        }
    }
    return 0.0;
}

double TypeDistribution::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    switch (family_) {
        case Family::Uniform:
            return (x - lo_) / (hi_ - lo_);
        case Family::TruncatedExponential: {
            double z = 1.0 - std::exp(-rate_ * (hi_ - lo_));
            return (1.0 - std::exp(-rate_ * (x - lo_))) / z;
        }
        case Family::ExponentialUnbounded:
            return 1.0 - survivor(x);
        case Family::LogLogistic: {
            double u = std::pow(x / scale_, shape_);
            return u / (1.0 + u);
        }
        case Family::Tabulated: {
            auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
            std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                1, std::min<std::ptrdiff_t>(it - tab_x_.begin(),
                                            static_cast<std::ptrdiff_t>(tab_x_.size()) - 1)));
            double w = x - tab_x_[i - 1];
            double fx = pdf(x);
            return clamp01(tab_F_[i - 1] + 0.5 * (tab_f_[i - 1] + fx) * w);
        }
    }
    return 0.0;
}

double TypeDistribution::survivor(double x) const {
    if (family_ == Family::ExponentialUnbounded) {
        if (x <= lo_) return 1.0;
        return std::exp(-rate_ * (x - lo_)); // primitive; cdf derives from it
    }
    return 1.0 - cdf(x);
}

double TypeDistribution::hazard(double x) const {
    if (x < lo_ || x > hi_)
        throw std::domain_error("hazard: theta outside the support");
    double sbar = survivor(x);
    if (!(sbar > 0.0))
        throw std::domain_error("hazard: survivor is zero at theta");
    return pdf(x) / sbar;
}

double TypeDistribution::hazard_derivative(double x) const {
    switch (family_) {
        case Family::Uniform: {
            double d = hi_ - x;
            return 1.0 / (d * d);
        }
        case Family::TruncatedExponential: {
            double u = std::exp(-rate_ * (hi_ - x));
            double one_minus = 1.0 - u;
            return rate_ * rate_ * u / (one_minus * one_minus);
        }
        case Family::ExponentialUnbounded:
            return 0.0;
        case Family::LogLogistic: {
            // h(x) = c x^{c-1} / (a^c + x^c)
            double ac = std::pow(scale_, shape_);
            double xc = std::pow(x, shape_);
            double denom = ac + xc;
            return shape_ * std::pow(x, shape_ - 2.0) * ((shape_ - 1.0) * ac - xc) /
                   (denom * denom);
        }
        case Family::Tabulated: {
            double span = hi_ - lo_;
            double h = span * 1e-6;
            double a = std::max(lo_, x - h), b = std::min(hi_ - span * 1e-12, x + h);
            return (hazard(b) - hazard(a)) / (b - a);
        }
    }
    return 0.0;
}

double TypeDistribution::sup_hazard() const {
    switch (family_) {
        case Family::Uniform:
        case Family::TruncatedExponential:
            // density positive at the finite upper endpoint: h diverges there
            return kInf;
        case Family::ExponentialUnbounded:
            return rate_; // constant hazard
        case Family::LogLogistic: {
            if (shape_ < 1.0) return kInf; // diverges at 0
            if (shape_ == 1.0) return 1.0 / scale_;
            return std::pow(shape_ - 1.0, (shape_ - 1.0) / shape_) / scale_;
        }
        case Family::Tabulated:
            // A normalized density on a finite support drives the survivor to
            // zero at theta_hi faster than the density vanishes, so the
            // hazard always diverges there (as for the uniform family).
            return kInf;
    }
    return kInf;
}

double TypeDistribution::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q outside [0,1]");
    switch (family_) {
        case Family::Uniform:
            return lo_ + q * (hi_ - lo_);
        case Family::TruncatedExponential: {
            double z = 1.0 - std::exp(-rate_ * (hi_ - lo_));
            return lo_ - std::log(1.0 - q * z) / rate_;
        }
        case Family::ExponentialUnbounded:
            if (q == 1.0) return kInf;
            return lo_ - std::log(1.0 - q) / rate_;
        case Family::LogLogistic:
            if (q == 1.0) return kInf;
            if (q == 0.0) return 0.0;
            return scale_ * std::pow(q / (1.0 - q), 1.0 / shape_);
        case Family::Tabulated: {
            double a = lo_, b = hi_;
            for (int it = 0; it < 200 && (b - a) > (hi_ - lo_) * 1e-14; ++it) {
                double m = 0.5 * (a + b);
                (cdf(m) < q ? a : b) = m;
            }
            return 0.5 * (a + b);
        }
    }
    return lo_;
}

double TypeDistribution::grid_hi() const {
    return has_finite_support() ? hi_ : quantile(0.995);
}

void TypeDistribution::check_ifr_claim() const {
    if (!ifr_claimed_) return;
    double top = has_finite_support() ? hi_ - (hi_ - lo_) * 1e-9 : quantile(0.999);
    auto xs = linspace(lo_, top, 512);
    double prev = hazard(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double h = hazard(xs[i]);
        if (h < prev - 1e-9 * std::max(1.0, std::abs(prev)))
            throw std::invalid_argument(
                "ifr_claimed, but the hazard decreases on the validation grid near theta=" +
                std::to_string(xs[i]));
        prev = h;
    }
}

} // namespace sbc
