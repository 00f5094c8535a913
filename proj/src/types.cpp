#include "gamow/types.hpp"

#include <algorithm>
#include <cmath>

namespace gamow {

double RadialPoint::max_coordinate() const {
    return *std::max_element(r.begin(), r.end());
}

void RadialPoint::validate() const {
    if (r.empty()) throw domain_error("RadialPoint: needs at least one coordinate");
    bool any_positive = false;
    for (double x : r) {
        if (!std::isfinite(x) || x < 0.0)
            throw domain_error("RadialPoint: coordinates must be finite and >= 0");
        any_positive = any_positive || x > 0.0;
    }
    if (!any_positive) throw domain_error("RadialPoint: at least one coordinate must be > 0");
}

}  // namespace gamow
