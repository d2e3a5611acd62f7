use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A polynomial in `nvars` variables with integer coefficients, stored as a
/// sorted map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { nvars, terms: map })
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly { nvars, terms: BTreeMap::from([(e, BigInt::from(1))]) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = MultiPoly::new(self.nvars, [(vec![0; self.nvars], BigInt::from(1))]).expect("constant");
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn mul(&self, o: &MultiPoly) -> Self {
        let terms = self.terms.iter().flat_map(|(a, c)| {
            o.terms.iter().map(move |(b, d)| (a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d))
        });
        MultiPoly::new(self.nvars, terms.collect::<Vec<_>>()).expect("same arity")
    }

    /// Value at an integer point, in `i128` when nothing overflows.
    pub(crate) fn eval_i128(&self, x: &[i64]) -> Option<i128> {
        let mut acc = 0i128;
        for (e, c) in &self.terms {
            let mut t = c.to_i128()?;
            for (&xi, &ei) in x.iter().zip(e) {
                t = t.checked_mul((xi as i128).checked_pow(ei)?)?;
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    pub fn eval(&self, x: &[i64]) -> BigInt {
        if let Some(v) = self.eval_i128(x) {
            return BigInt::from(v);
        }
        self.terms
            .iter()
            .map(|(e, c)| x.iter().zip(e).fold(c.clone(), |t, (&xi, &ei)| t * BigInt::from(xi).pow(ei)))
            .sum()
    }

    /// Value at a point of `F_p^n`.
    pub fn eval_mod(&self, x: &[u64], p: u64) -> u64 {
        use crate::arith::{mul_mod, pow_mod};
        let pb = BigInt::from(p);
        self.terms.iter().fold(0u64, |acc, (e, c)| {
            let c = c.mod_floor(&pb).to_u64().expect("below p");
            let t = x.iter().zip(e).fold(c, |t, (&xi, &ei)| mul_mod(t, pow_mod(xi, ei as u64, p), p));
            (acc + t) % p
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(i, &d)| if d == 1 { format!("x{}", i + 1) } else { format!("x{}^{d}", i + 1) })
                    .collect();
                if mono.is_empty() { c.to_string() } else { format!("{c}*{}", mono.join("*")) }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
