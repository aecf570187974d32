package mathx

import "math"

// Hypot returns the hypotenuse of a right triangle.
func Hypot(a, b float64) float64 {
	return math.Sqrt(a*a + b*b)
}

// Abs returns the absolute value.
// Works for the zero value too.
func Abs(x float64) float64 {
	if x < 0 {
		return -x
	}
	return x
}

func unexported(n int) int {
	return n + 1
}
