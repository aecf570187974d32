#include <cmath>

namespace geom {

/** Euclidean norm of a 2-vector. */
double norm(double x, double y) {
    return std::sqrt(x * x + y * y);
}

// Clamp v into [lo, hi].
double clamp(double v, double lo, double hi) {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return v;
}

}  // namespace geom
