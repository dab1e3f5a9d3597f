use std::sync::{Arc, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

/// Exact rational; rug keeps it canonical (lowest terms, positive denominator).
pub type ExactRational = Rational;

/// Bernoulli numbers `B_0..B_N` under the `B_1 = -1/2` convention, extended on
/// demand. Values already handed out never change when the table grows.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    computed: RwLock<Vec<Rational>>,
    corrupted: Option<(usize, Rational)>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache shared by every default [`crate::Context`].
    pub fn global() -> Arc<BernoulliCache> {
        static GLOBAL: OnceLock<Arc<BernoulliCache>> = OnceLock::new();
        GLOBAL.get_or_init(|| Arc::new(BernoulliCache::new())).clone()
    }

    /// A cache that reports `value` for `B_n`. Only meant for fault-injection
    /// runs of the self-test.
    pub fn with_corrupted(n: usize, value: Rational) -> Self {
        Self {
            computed: RwLock::default(),
            corrupted: Some((n, value)),
        }
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupted.is_some()
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some((bad, value)) = &self.corrupted {
            if *bad == n {
                return value.clone();
            }
        }
        {
            let table = self.computed.read().expect("bernoulli cache poisoned");
            if let Some(b) = table.get(n) {
                return b.clone();
            }
        }
        self.extend_to(n);
        self.computed.read().expect("bernoulli cache poisoned")[n].clone()
    }

    /// `B_0..=B_n`.
    pub fn range(&self, n: usize) -> Vec<Rational> {
        (0..=n).map(|i| self.get(i)).collect()
    }

    fn extend_to(&self, n: usize) {
        let mut table = self.computed.write().expect("bernoulli cache poisoned");
        while table.len() <= n {
            let m = table.len();
            let next = match m {
                0 => Rational::from(1),
                1 => Rational::from((-1, 2)),
                _ if m % 2 == 1 => Rational::new(),
                _ => {
                    // sum_{j<m} C(m+1, j) B_j = -(m+1) B_m; odd j > 1 vanish
                    let mut acc = Rational::new();
                    for j in (0..m).filter(|&j| j < 2 || j % 2 == 0) {
                        let c = Integer::from(Integer::binomial_u(m as u32 + 1, j as u32));
                        acc += Rational::from(&table[j] * c);
                    }
                    -acc / Rational::from(m as u64 + 1)
                }
            };
            table.push(next);
        }
    }

    /// Coefficients of `B_n(x)` in ascending powers of `x`.
    pub fn poly_coefficients(&self, n: usize) -> Vec<Rational> {
        let mut coeffs = vec![Rational::new(); n + 1];
        for j in 0..=n {
            let c = Integer::from(Integer::binomial_u(n as u32, j as u32));
            coeffs[n - j] = Rational::from(self.get(j) * c);
        }
        coeffs
    }

    pub fn poly_exact(&self, n: usize, x: &Rational) -> Rational {
        horner_exact(&self.poly_coefficients(n), x)
    }

    pub fn poly(&self, n: usize, x: &Float) -> Float {
        horner(&self.poly_coefficients(n), x)
    }

    /// `phi_n(x) = (B_{n+1}(x) - B_{n+1}) / (n+1)`, the sum of `i^n` for `i < x`.
    pub fn phi_exact(&self, n: usize, x: &Rational) -> Rational {
        (self.poly_exact(n + 1, x) - self.get(n + 1)) / Rational::from(n as u64 + 1)
    }

    pub fn phi(&self, n: usize, x: &Float) -> Float {
        let mut coeffs = self.poly_coefficients(n + 1);
        coeffs[0] -= self.get(n + 1);
        let scale = Rational::from((1, n as u64 + 1));
        for c in coeffs.iter_mut() {
            *c *= &scale;
        }
        horner(&coeffs, x)
    }
}

pub fn horner_exact(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn horner(coeffs: &[Rational], x: &Float) -> Float {
    let mut acc = Float::new(x.prec());
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn bernoulli(n: usize) -> Rational {
    BernoulliCache::global().get(n)
}

pub fn bernoulli_poly(n: usize, x: &Float) -> Float {
    BernoulliCache::global().poly(n, x)
}

pub fn phi(n: usize, x: &Float) -> Float {
    BernoulliCache::global().phi(n, x)
}

pub fn phi_exact(n: usize, x: &Rational) -> Rational {
    BernoulliCache::global().phi_exact(n, x)
}

/// `H_n`, with `H_0 = 0`.
pub fn harmonic(n: u32) -> Rational {
    (1..=n).fold(Rational::new(), |acc, i| acc + Rational::from((1, i)))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    // Akiyama-Tanigawa; yields B_1 = +1/2, so flip that one entry.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a = vec![Rational::new(); n + 1];
        for m in 0..=n {
            a[m] = q(1, m as i64 + 1);
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * Rational::from(j as i64);
            }
        }
        let b = a[0].clone();
        if n == 1 {
            -b
        } else {
            b
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn agrees_with_akiyama_tanigawa() {
        for n in 0..=30 {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn recurrence_and_odd_zeros() {
        for n in 1..=40usize {
            let mut s = Rational::new();
            for j in 0..=n {
                s += bernoulli(j) * binomial(n as u32 + 1, j as u32);
            }
            assert_eq!(s, 0, "n = {n}");
        }
        for m in 1..=20 {
            assert_eq!(bernoulli(2 * m + 1), 0);
        }
    }

    #[test]
    fn corrupted_cache_only_changes_one_entry() {
        let c = BernoulliCache::with_corrupted(4, q(1, 7));
        assert_eq!(c.get(4), q(1, 7));
        assert_eq!(c.get(6), q(1, 42));
        assert!(c.is_corrupted());
    }

    #[test]
    fn polynomial_examples() {
        let c = BernoulliCache::global();
        assert_eq!(c.poly_exact(1, &q(0, 1)), q(-1, 2));
        assert_eq!(c.poly_exact(2, &q(1, 1)), q(1, 6));
        assert_eq!(c.poly_exact(3, &q(2, 1)), 3);
        let x = Float::with_val(128, 2);
        assert_eq!(c.poly(3, &x), 3);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_exact(1, &q(4, 1)), 6);
        assert_eq!(phi_exact(2, &q(4, 1)), 14);
        // phi_1(x) = x(x-1)/2
        let x = q(7, 3);
        assert_eq!(phi_exact(1, &x), (Rational::from(&x * &x) - &x) / 2);
        let xf = Float::with_val(200, 2.5);
        assert_eq!(phi(1, &xf), 2.5 * 1.5 / 2.0);
    }

    #[test]
    fn phi_matches_power_sums() {
        for n in 1..=12u32 {
            let mut brute = Integer::new();
            for w in 1..=50u32 {
                brute += Integer::from(Integer::u_pow_u(w, n));
                assert_eq!(phi_exact(n as usize, &q(w as i64 + 1, 1)), brute, "n={n} w={w}");
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0), 0);
        assert_eq!(harmonic(2), q(3, 2));
        assert_eq!(harmonic(4), q(25, 12));
    }

    #[test]
    fn concurrent_readers_see_consistent_values() {
        let cache = Arc::new(BernoulliCache::new());
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let c = cache.clone();
                std::thread::spawn(move || (0..60).map(|n| c.get((n * 7 + t) % 60)).count())
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(cache.get(12), q(-691, 2730));
    }
}
