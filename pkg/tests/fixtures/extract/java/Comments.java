package demo;

public class Comments {
    // Single line run, first part.
    // Second part of the run.
    public void documented() {
    }

    // Too far away from the method.

    public void orphaned() {
    }

    public int before() { return 1; }  // trailing note, not a doc

    public int after() { return 2; }

    /* plain block used as doc */
    public void blockDoc() {
    }
}
