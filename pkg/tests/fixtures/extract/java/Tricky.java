package demo;

import java.util.function.Supplier;

public class Tricky {
    private Runnable r = () -> {
        System.out.println("not a method");
    };

    static {
        System.setProperty("k", "v");
    }

    /** Builds a supplier via an anonymous class. */
    public Supplier<String> supplier() {
        return new Supplier<String>() {
            @Override
            public String get() {
                return "{ brace in string }";
            }
        };
    }

    @Deprecated
    @SuppressWarnings("unchecked")
    public void annotated(int[] xs) {
        int[] copy = new int[]{1, 2, 3};
    }
}
