//! Laurent polynomials in `t` (Maslov) and `q` (Alexander).
//!
//! Poincaré polynomials of the homology live here: integer coefficients,
//! integer powers of `t`, and *half-integer* powers of `q` (multi-component
//! links have genuinely half-integral Alexander gradings). The `q`-exponent
//! is stored doubled so all arithmetic is exact integer arithmetic.
//!
//! Beyond ring operations the module provides the two domain-specific
//! manipulations the homology needs: dividing out powers of
//! `1 + t^-1 q^-1` (the free factor relating the full and stabilized
//! homology flavors), and the specializations used by the verification
//! suite (Euler characteristic at `t = -1`, mirror substitution
//! `t^i q^j -> t^(i-2j) q^-j`).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A Laurent polynomial in `t` and `q` with integer coefficients; the `q`
/// exponent is half-integral, stored doubled.
///
/// Keys are `(m, a2)`: the `t`-exponent and twice the `q`-exponent. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentTQ {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentTQ {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::from_terms(&[(0, 0, 1)])
    }

    /// Builds a polynomial from `(t-exponent, doubled q-exponent,
    /// coefficient)` triples.
    pub fn from_terms(terms: &[(i32, i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(m, a2, c) in terms {
            p.add_term(m, a2, c);
        }
        p
    }

    /// Adds `c * t^m q^(a2/2)`.
    pub fn add_term(&mut self, m: i32, a2: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((m, a2)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(m, a2));
        }
    }

    /// True if the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `t^m q^(a2/2)`.
    pub fn coeff(&self, m: i32, a2: i32) -> i64 {
        self.terms.get(&(m, a2)).copied().unwrap_or(0)
    }

    /// Iterates terms as `((m, a2), coefficient)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Sum of the coefficients (the rank total for a Poincaré polynomial).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Adds `other` into `self`.
    pub fn add_assign(&mut self, other: &LaurentTQ) {
        for ((m, a2), c) in other.iter() {
            self.add_term(m, a2, c);
        }
    }

    /// The product of two polynomials.
    pub fn mul(&self, other: &LaurentTQ) -> LaurentTQ {
        let mut out = LaurentTQ::zero();
        for ((m1, a1), c1) in self.iter() {
            for ((m2, a2), c2) in other.iter() {
                out.add_term(m1 + m2, a1 + a2, c1 * c2);
            }
        }
        out
    }

    /// Substitutes `t = -1`, leaving a polynomial in `q` alone (returned
    /// with all `t`-exponents zero): the graded Euler characteristic.
    pub fn euler(&self) -> LaurentTQ {
        let mut out = LaurentTQ::zero();
        for ((m, a2), c) in self.iter() {
            out.add_term(0, a2, if m.rem_euclid(2) == 0 { c } else { -c });
        }
        out
    }

    /// Applies the mirror substitution `t^i q^j -> t^(i - 2j) q^-j`.
    pub fn mirror_subst(&self) -> LaurentTQ {
        let mut out = LaurentTQ::zero();
        for ((m, a2), c) in self.iter() {
            out.add_term(m - a2, -a2, c);
        }
        out
    }

    /// Substitutes `t -> t^-1, q -> q^-1`.
    pub fn invert_vars(&self) -> LaurentTQ {
        let mut out = LaurentTQ::zero();
        for ((m, a2), c) in self.iter() {
            out.add_term(-m, -a2, c);
        }
        out
    }

    /// Multiplies by the monomial `t^dm q^(da2 / 2)`.
    pub fn mul_monomial(&self, dm: i32, da2: i32) -> LaurentTQ {
        let mut out = LaurentTQ::zero();
        for ((m, a2), c) in self.iter() {
            out.add_term(m + dm, a2 + da2, c);
        }
        out
    }

    /// Divides by `(1 + t^-1 q^-1)^power` exactly.
    ///
    /// Division removes the lexicographically greatest `(m, a2)` term each
    /// round; correction terms only appear strictly below it, so a true
    /// multiple terminates with remainder zero. A non-multiple would descend
    /// forever, which is cut off (and reported as [`Error::NonDivisible`])
    /// as soon as the working leading term drops below the least `t`-degree
    /// a quotient term could have.
    pub fn deconvolve(&self, power: usize) -> Result<LaurentTQ> {
        let mut p = self.clone();
        for _ in 0..power {
            if p.is_zero() {
                break;
            }
            let floor_m = p.iter().map(|((m, _), _)| m).min().expect("nonzero") + 1;
            let mut quotient = LaurentTQ::zero();
            while let Some((&(m, a2), &c)) = p.terms.last_key_value() {
                if m < floor_m {
                    return Err(Error::NonDivisible(format!(
                        "{self} is not a multiple of (1 + t^-1*q^-1)^{power}"
                    )));
                }
                quotient.add_term(m, a2, c);
                p.add_term(m, a2, -c);
                p.add_term(m - 1, a2 - 2, -c);
            }
            p = quotient;
        }
        Ok(p)
    }
}

/// Formats one exponent that may be half-integral (stored doubled).
fn fmt_exp(doubled: i32) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("{doubled}/2")
    }
}

impl fmt::Display for LaurentTQ {
    /// Terms are printed in ascending `(q-exponent, t-exponent)` order, in
    /// the form `c*t^m*q^a` with unit coefficients and zero exponents
    /// omitted, e.g. `q^-1 + 2*t + t^2*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<((i32, i32), i64)> = self.iter().collect();
        keys.sort_by_key(|&((m, a2), _)| (a2, m));
        for (i, ((m, a2), c)) in keys.into_iter().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m == 1 {
                factors.push("t".into());
            } else if m != 0 {
                factors.push(format!("t^{m}"));
            }
            if a2 == 2 {
                factors.push("q".into());
            } else if a2 != 0 {
                factors.push(format!("q^{}", fmt_exp(a2)));
            }
            let abs = c.unsigned_abs();
            if abs != 1 || factors.is_empty() {
                factors.insert(0, format!("{abs}"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_conventions() {
        let p = LaurentTQ::from_terms(&[(0, -2, 1), (1, 0, 2), (2, 2, 1)]);
        assert_eq!(p.to_string(), "q^-1 + 2*t + t^2*q");
        assert_eq!(LaurentTQ::zero().to_string(), "0");
        let half = LaurentTQ::from_terms(&[(0, 1, 1), (-1, -1, 1)]);
        assert_eq!(half.to_string(), "t^-1*q^-1/2 + q^1/2");
        let signs = LaurentTQ::from_terms(&[(0, 0, 1), (0, -2, -1)]);
        assert_eq!(signs.to_string(), "-q^-1 + 1");
    }

    #[test]
    fn deconvolve_roundtrip() {
        let hat = LaurentTQ::from_terms(&[(0, -2, 1), (1, 0, 2), (2, 2, 1)]);
        let factor = LaurentTQ::from_terms(&[(0, 0, 1), (-1, -2, 1)]);
        let tilde = hat.mul(&factor).mul(&factor);
        assert_eq!(tilde.deconvolve(2).unwrap(), hat);
        assert!(LaurentTQ::one().deconvolve(1).is_err());
    }

    #[test]
    fn euler_and_mirror() {
        let p = LaurentTQ::from_terms(&[(0, -2, 1), (1, 0, 2), (2, 2, 1)]);
        // t = -1: q^-1 - 2 + q
        assert_eq!(
            p.euler(),
            LaurentTQ::from_terms(&[(0, -2, 1), (0, 0, -2), (0, 2, 1)])
        );
        // This polynomial is invariant under the mirror substitution.
        assert_eq!(p.mirror_subst(), p);
    }
}
