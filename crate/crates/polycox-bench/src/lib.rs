//! Fixtures shared by the benchmarks.

use polycox::coxeter::{enumerate, CoxeterGroup, CoxeterMatrix, DEFAULT_COSET_CAP};
use polycox::{Polygraph2, TerminationOrder};

/// The braid monoid B₃⁺ on `(s, t, a)` with `ta ⇒ as` and `st ⇒ a`, and the
/// order `t > s > a` that completes it.
pub fn b3_plus() -> (Polygraph2, TerminationOrder) {
    let mut p = Polygraph2::new(["s", "t", "a"]).expect("distinct generators");
    p.add_labelled_rule("alpha", vec![1, 2], vec![2, 0], "α").expect("valid rule");
    p.add_labelled_rule("beta", vec![0, 1], vec![2], "β").expect("valid rule");
    let order = TerminationOrder::deglex(&p, &["t", "s", "a"]).expect("valid precedence");
    (p, order)
}

/// A finite Coxeter group by type name (`A3`, `B3`, `H3`, ...).
pub fn group(name: &str) -> CoxeterGroup {
    enumerate(&matrix(name), DEFAULT_COSET_CAP).expect("finite type")
}

pub fn matrix(name: &str) -> CoxeterMatrix {
    CoxeterMatrix::from_type(name).expect("known type")
}

/// A deterministic pseudo-random word over `n` letters (xorshift).
pub fn word(n: u32, len: usize, seed: u64) -> Vec<u32> {
    let mut x = seed.max(1);
    (0..len)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            (x % n as u64) as u32
        })
        .collect()
}
