pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Construct from coordinates.
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance from origin.
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    // plain comment, not a doc
    fn scaled(&self, k: f64) -> Point {
        Point { x: self.x * k, y: self.y * k }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
