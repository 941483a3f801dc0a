use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, pow2, powi, ratio, Rational};

/// Memoized `(a_n, b_n)` for the path `P_n`: the forced-0 and both-values
/// probabilities of an end vertex.
pub struct PathSequences {
    terms: RwLock<Vec<(Rational, Rational)>>,
}

impl PathSequences {
    fn new() -> Self {
        PathSequences {
            terms: RwLock::new(vec![(ratio(3, 16), ratio(9, 16))]),
        }
    }

    pub fn global() -> &'static PathSequences {
        static SEQ: OnceLock<PathSequences> = OnceLock::new();
        SEQ.get_or_init(PathSequences::new)
    }

    /// `(a_n, b_n)` for `n >= 1`.
    pub fn get(&self, n: usize) -> (Rational, Rational) {
        assert!(n >= 1, "path sequences start at n = 1");
        {
            let t = self.terms.read().unwrap();
            if let Some(v) = t.get(n - 1) {
                return v.clone();
            }
        }
        let mut t = self.terms.write().unwrap();
        while t.len() < n {
            let (a, b) = t.last().unwrap().clone();
            let half_a = ratio(1, 2) * &a;
            let next = (&half_a + ratio(3, 16) * &b, half_a + ratio(9, 16) * &b);
            t.push(next);
        }
        t[n - 1].clone()
    }

    pub fn a(&self, n: usize) -> Rational {
        self.get(n).0
    }

    pub fn b(&self, n: usize) -> Rational {
        self.get(n).1
    }
}

pub fn path_a(n: usize) -> Rational {
    PathSequences::global().a(n)
}

pub fn path_b(n: usize) -> Rational {
    PathSequences::global().b(n)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::InvalidArgument(format!(
            "{what} needs n >= {min}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Exact `q(P_n) = 2 a_n + b_n`.
pub fn path_q(n: usize) -> Result<Rational> {
    need(n, 1, "path_q")?;
    let (a, b) = PathSequences::global().get(n);
    Ok(int(2) * a + b)
}

/// Roots `s > t` of `x^2 = 17/16 x - 3/16`.
#[derive(Debug, Clone, Copy)]
pub struct CharacteristicRoots {
    pub s: f64,
    pub t: f64,
}

impl CharacteristicRoots {
    pub fn get() -> Self {
        let r = 97f64.sqrt();
        CharacteristicRoots {
            s: (17.0 + r) / 32.0,
            t: (17.0 - r) / 32.0,
        }
    }

    /// Exact `s + t`.
    pub fn trace() -> Rational {
        ratio(17, 16)
    }

    /// Exact `s * t`.
    pub fn product() -> Rational {
        ratio(3, 16)
    }

    /// Coefficient `c` in `q(P_n) = c s^n + (1 - c) t^n`.
    pub fn path_coefficient(&self) -> f64 {
        let (s, t) = (self.s, self.t);
        (207.0 / 256.0 - 15.0 / 16.0 * t) / (s * (s - t))
    }

    /// Second coefficient as given by the general two-term solution; sums
    /// with [`Self::path_coefficient`] to 1.
    pub fn path_coefficient_t(&self) -> f64 {
        let (s, t) = (self.s, self.t);
        (-207.0 / 256.0 + 15.0 / 16.0 * s) / (t * (s - t))
    }
}

/// `q(P_n)` from the root form `c s^n + (1 - c) t^n`.
pub fn path_q_closed(n: usize) -> Result<f64> {
    need(n, 1, "path_q_closed")?;
    let r = CharacteristicRoots::get();
    let c = r.path_coefficient();
    Ok(c * r.s.powi(n as i32) + (1.0 - c) * r.t.powi(n as i32))
}

/// Exact `q(S_n) = 2 (3/4)^n - (3/4)^{2n}`.
pub fn star_q(n: usize) -> Result<Rational> {
    need(n, 1, "star_q")?;
    let x = powi(&ratio(3, 4), n as u64);
    Ok(int(2) * &x - &x * &x)
}

/// Both-values probability of the star center, `(9/16)^n`.
pub fn star_center_p01(n: usize) -> Rational {
    powi(&ratio(9, 16), n as u64)
}

/// Exact power sum `s^n + t^n` by Newton's recurrence.
pub fn root_power_sum(n: usize) -> Rational {
    let trace = CharacteristicRoots::trace();
    let prod = CharacteristicRoots::product();
    let (mut prev, mut cur) = (int(2), trace.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &trace * &cur - &prod * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Conjectured cycle value `q(C_n) = s^n + t^n - 4^{-n} - 2^{-(3n+1)}`, exact.
///
/// The last term matches exhaustive enumeration for n = 3..=7. The variant
/// with `8^{-(n-1)}` is kept as [`cycle_q_conjecture_printed`]; it is off by
/// `15 / 2^{3n+1}`.
pub fn cycle_q_conjecture(n: usize) -> Result<Rational> {
    need(n, 3, "cycle_q_conjecture")?;
    let quarter = powi(&ratio(1, 4), n as u64);
    let eighth = pow2(-(3 * n as i64 + 1));
    Ok(root_power_sum(n) - quarter - eighth)
}

/// `s^n + t^n - 4^{-n} - 8^{-(n-1)}`. Disagrees with enumeration; see
/// [`cycle_q_conjecture`].
pub fn cycle_q_conjecture_printed(n: usize) -> Result<Rational> {
    need(n, 3, "cycle_q_conjecture_printed")?;
    let quarter = powi(&ratio(1, 4), n as u64);
    let eighth = powi(&ratio(1, 8), n as u64 - 1);
    Ok(root_power_sum(n) - quarter - eighth)
}

/// `p` when every one of the `m` equations involves all `n` variables:
/// `(1 - 2^{-m})^{2^n}`.
pub fn all_vars_inconsistency(n: usize, m: usize) -> Result<Rational> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "all_vars_inconsistency needs n, m >= 1".into(),
        ));
    }
    if n > 24 {
        return Err(Error::cap("exponent 2^n", format!("n = {n}"), "n <= 24"));
    }
    let base = Rational::one() - pow2(-(m as i64));
    Ok(powi(&base, 1u64 << n))
}
