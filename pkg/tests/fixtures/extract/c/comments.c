/* Too far from the function below. */

int orphan(void) {
    return 0;
}

// Adjacent line run, part one.
// Part two.
int documented(void) {
    return 1;
}

int trailing(void) { return 2; } /* trailing, not a doc */

int last(void) {
    return 3;
}
