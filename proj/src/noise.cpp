#include "sbc/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace sbc {

double NoiseDist::sample(RandomStream& rs) const {
    if (scale == 0.0) {
        // degenerate point mass; still consumes one uniform so draw
        // alignment does not depend on the scale
        rs.uniform01();
        return 0.0;
    }
    switch (kind) {
        case Kind::Normal: return scale * rs.normal();
        case Kind::UniformBox: return scale * (2.0 * rs.uniform01() - 1.0);
    }
    return 0.0;
}

double NoiseDist::pdf(double x) const {
    if (!(scale > 0.0))
        throw std::domain_error("NoiseDist::pdf: degenerate distribution has no density");
    switch (kind) {
        case Kind::Normal: return normal_pdf(x / scale) / scale;
        case Kind::UniformBox: return (x >= -scale && x <= scale) ? 0.5 / scale : 0.0;
    }
    return 0.0;
}

double NoiseDist::cdf(double x) const {
    if (!(scale > 0.0)) return x < 0.0 ? 0.0 : 1.0;
    switch (kind) {
        case Kind::Normal: return normal_cdf(x / scale);
        case Kind::UniformBox: {
            if (x <= -scale) return 0.0;
            if (x >= scale) return 1.0;
            return 0.5 * (x / scale + 1.0);
        }
    }
    return 0.0;
}

double NoiseDist::sd() const {
    switch (kind) {
        case Kind::Normal: return scale;
        case Kind::UniformBox: return scale / std::sqrt(3.0);
    }
    return 0.0;
}

std::string noise_kind_name(NoiseDist::Kind k) {
    return k == NoiseDist::Kind::Normal ? "normal" : "uniform";
}

} // namespace sbc
