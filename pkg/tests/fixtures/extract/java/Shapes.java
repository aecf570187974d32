package demo;

interface Shape {
    /** Area in square units. */
    double area();

    default String describe() {
        return "shape with area " + area();
    }
}

enum Color {
    RED, GREEN;

    /** Lowercase label. */
    String label() {
        return name().toLowerCase();
    }
}

record Point(double x, double y) {
    /** Distance from origin. */
    double norm() {
        return Math.sqrt(x * x + y * y);
    }
}
