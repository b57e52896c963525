//! Exact binomial coefficients for the desk-scale ranges used here.

/// Returns `C(n, k)` exactly.
///
/// With `n <= 62` (the universe cap) every value fits in a `u64`; the
/// intermediate products run in `u128` so no step overflows. Out-of-range
/// `k` yields 0, matching the combinatorial convention.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(2, 5), 0);
    }

    #[test]
    fn symmetry_and_pascal() {
        for n in 0..=30u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
                if k >= 1 && n >= 1 {
                    assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn largest_supported_universe() {
        // Central coefficient of the 62-row still fits in u64.
        assert_eq!(binomial(62, 31), 465428353255261088);
    }
}
