#include <string>

/** Braces in string literals are ignored. */
std::string braces() {
    return "fn fake() { nope }";
}

// Char literals with escapes.
char pick(int i) {
    return i == 0 ? '{' : '\\';
}
