package spacing

// TooFar has a blank line between doc and func.

func TooFar() {}

// Close is adjacent and attaches.
func Close() error {
	return nil
}

func Multi(
	a int,
	b int,
) int {
	return a + b
}
