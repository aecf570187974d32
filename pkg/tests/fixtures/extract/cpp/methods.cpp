#include "point.h"

/** Distance between two points. */
double Point::dist(const Point& o) const {
    double dx = x - o.x;
    double dy = y - o.y;
    return std::sqrt(dx * dx + dy * dy);
}

Point::~Point() {
    release();
}

class Circle {
public:
    /** Area of the circle. */
    double area() const {
        return 3.14159 * r_ * r_;
    }

private:
    double r_ = 1.0;
};
