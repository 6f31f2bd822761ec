use std::fmt;

use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A quotient of polynomials in lowest terms.
///
/// Normal form: `gcd(numerator, denominator) = 1` and the denominator has
/// graded-lex leading coefficient 1. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch(format!(
                "numerator has {} variables, denominator {}",
                num.nvars(),
                den.nvars()
            )));
        }
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(n),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this equals, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::from_polynomial(Polynomial::zero(self.nvars()));
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Quotient rule: `(n/d)' = (n' d - n d') / d^2`.
    pub fn derive(&self, var: usize) -> Self {
        if self.den.is_constant() {
            return RationalFunction {
                num: self.num.derive(var),
                den: self.den.clone(),
            };
        }
        let top = &(&self.num.derive(var) * &self.den) - &(&self.num * &self.den.derive(var));
        Self::normalized(top, &self.den * &self.den)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RatFuncDisplay<'a> {
        RatFuncDisplay { f: self, names }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

pub struct RatFuncDisplay<'a> {
    f: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let RationalFunction { num, den } = self.f;
        if den.is_one() {
            return write!(f, "{}", num.display(self.names));
        }
        write!(
            f,
            "({})/({})",
            num.display(self.names),
            den.display(self.names)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(1, 0)
    }
    fn one() -> Polynomial {
        Polynomial::one(1)
    }

    #[test]
    fn reduces_by_gcd() {
        // (x^2 - 1)/(x - 1) = x + 1
        let f = RationalFunction::new(&x().pow(2) - &one(), &x() - &one()).unwrap();
        assert_eq!(f.as_polynomial(), Some(&(&x() + &one())));
    }

    #[test]
    fn denominator_is_monic() {
        let two = Polynomial::from_int(1, 2);
        let f = RationalFunction::new(one(), &two * &x()).unwrap();
        assert_eq!(f.denominator(), &x());
        assert_eq!(
            f.numerator(),
            &Polynomial::constant(1, Rational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn quotient_rule() {
        // d/dx x^{-1} = -x^{-2}
        let inv = RationalFunction::new(one(), x()).unwrap();
        let expected = RationalFunction::new(-&one(), x().pow(2)).unwrap();
        assert_eq!(inv.derive(0), expected);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(one(), Polynomial::zero(1)),
            Err(Error::ZeroDivisor)
        );
    }
}
