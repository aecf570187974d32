/// Compute the nth Fibonacci number iteratively.
pub fn fib(n: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let t = a + b;
        a = b;
        b = t;
    }
    a
}

/// First doc line.
/// Second doc line of the same block.
fn doubled(x: i32) -> i32 {
    x * 2
}

fn undocumented(v: &[i32]) -> i32 {
    v.iter().sum()
}
