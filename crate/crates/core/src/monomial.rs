//! Exponent vectors shared by ring monomials, PBW monomials and symmetric
//! algebra monomials.

use std::cmp::Ordering;
use std::fmt;

/// A vector of non-negative exponents.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with the first coordinate most significant (so `x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn zero(len: usize) -> Self {
        Exponents(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Exponents(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        debug_assert_eq!(self.len(), other.len());
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if every coordinate stays non-negative.
    pub fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn with(&self, i: usize, value: u32) -> Exponents {
        let mut e = self.0.clone();
        e[i] = value;
        Exponents(e)
    }

    pub fn incremented(&self, i: usize) -> Exponents {
        let mut e = self.0.clone();
        e[i] += 1;
        Exponents(e)
    }

    /// First index with a nonzero exponent.
    pub fn first_index(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// All exponent vectors of length `len` with total degree exactly `degree`,
    /// in descending graded-lex order.
    pub fn of_degree(len: usize, degree: u32) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut current = vec![0; len];
        fill(&mut out, &mut current, 0, degree);
        out
    }

    /// All exponent vectors of length `len` with total degree in `lo..=hi`,
    /// ascending by degree.
    pub fn up_to_degree(len: usize, lo: u32, hi: u32) -> Vec<Exponents> {
        (lo..=hi)
            .flat_map(|d| Exponents::of_degree(len, d))
            .collect()
    }

    /// Exponent vectors componentwise bounded by `self`.
    pub fn divisors(&self) -> Vec<Exponents> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Exponents).collect()
    }
}

fn fill(out: &mut Vec<Exponents>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(Exponents(Vec::new()));
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Exponents(current.clone()));
        current[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        fill(out, current, pos + 1, remaining - k);
    }
    current[pos] = 0;
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for Exponents {
    fn from(v: Vec<u32>) -> Self {
        Exponents(v)
    }
}

/// Writes `a^2*b` style products; returns false if nothing was written.
pub(crate) fn write_power_product(
    f: &mut impl fmt::Write,
    exps: &Exponents,
    names: &[String],
) -> fmt::Result {
    let mut first = true;
    for (name, &e) in names.iter().zip(exps.as_slice()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Exponents::new(vec![1, 0]);
        let y = Exponents::new(vec![0, 1]);
        let x2 = Exponents::new(vec![2, 0]);
        let xy = Exponents::new(vec![1, 1]);
        assert!(x > y);
        assert!(y > Exponents::zero(2));
        assert!(xy > x);
        assert!(x2 > xy);
    }

    #[test]
    fn enumerate_by_degree() {
        let d2 = Exponents::of_degree(3, 2);
        assert_eq!(d2.len(), 6);
        assert!(d2.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Exponents::up_to_degree(2, 1, 3).len(), 2 + 3 + 4);
        assert_eq!(Exponents::of_degree(0, 0), vec![Exponents::new(vec![])]);
        assert!(Exponents::of_degree(0, 1).is_empty());
    }

    #[test]
    fn divisors_enumerated() {
        let a = Exponents::new(vec![2, 1]);
        assert_eq!(a.divisors().len(), 6);
    }
}
