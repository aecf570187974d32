package lit

var handler = func() {
	println("anonymous, skipped")
}

// Raw returns a raw string with braces.
func Raw() string {
	return `func fake() { not code }`
}

func init() {
	go func() {
		work()
	}()
}

// Build constructs a config literal.
func Build() Config {
	return Config{
		Name: "x",
		Tags: []string{"a", "b"},
	}
}
