//! Exact scalars: big rationals and sparse multivariate polynomials over them.
//!
//! Every weight and moment in the crate is a [`Poly`]. A plain rational is the
//! constant polynomial, so numeric families (Hermite, Laguerre at a fixed α)
//! and symbolic families share the same code paths.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`, reduced.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// An indeterminate of the coefficient ring.
///
/// `B(i)` is b_i, `L(i)` is λ_i, `G(i)` is γ_i, `S(i)` is √λ_i and `Alpha`
/// is the Laguerre parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indet {
    B(usize),
    L(usize),
    G(usize),
    S(usize),
    Alpha,
}

impl Indet {
    /// λ_0 = 0, so λ_0 and its square root annihilate any monomial.
    fn is_null(self) -> bool {
        matches!(self, Indet::L(0) | Indet::S(0))
    }
}

impl fmt::Display for Indet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indet::B(i) => write!(f, "b{i}"),
            Indet::L(i) => write!(f, "l{i}"),
            Indet::G(i) => write!(f, "g{i}"),
            Indet::S(i) => write!(f, "s{i}"),
            Indet::Alpha => f.write_str("alpha"),
        }
    }
}

/// A power product of indeterminates: sorted by indeterminate, exponents > 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Indet, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: Indet) -> Self {
        Monomial(vec![(x, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, x: Indet) -> u32 {
        self.0
            .binary_search_by(|(y, _)| y.cmp(&x))
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Indet, u32)> + '_ {
        self.0.iter().copied()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(x, e)), Some(&&(y, f))) => match x.cmp(&y) {
                    Ordering::Less => {
                        out.push((x, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((y, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((x, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&&t)) => {
                    out.push(t);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }
}

/// Graded lexicographic order with b_0 > b_1 > ... > λ_0 > ... > α.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        loop {
            match (a.next(), b.next()) {
                (Some(&(x, e)), Some(&(y, f))) => {
                    if x != y {
                        // The side holding the earlier indeterminate is larger.
                        return if x < y { Ordering::Greater } else { Ordering::Less };
                    }
                    if e != f {
                        return e.cmp(&f);
                    }
                }
                (None, None) => return Ordering::Equal,
                // Equal degree makes a length mismatch impossible here.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, &(x, e)) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients. No zero coefficients are
/// stored, so two polynomials are equal iff they are structurally equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    pub fn var(x: Indet) -> Self {
        if x.is_null() {
            return Poly::zero();
        }
        Poly::term(Rat::one(), Monomial::var(x))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && !m.factors().any(|(x, _)| x.is_null()) {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn indeterminates(&self) -> Vec<Indet> {
        let mut xs: Vec<Indet> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().map(|(x, _)| x))
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Substitutes a rational value for every indeterminate.
    pub fn eval(&self, assignment: &dyn Fn(Indet) -> Option<Rat>) -> Result<Rat, Error> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in m.factors() {
                let val = assignment(x).ok_or(Error::MissingAssignment(x))?;
                v *= num_traits::pow(val, e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Replaces each indeterminate for which `f` returns a polynomial; other
    /// indeterminates are kept.
    pub fn substitute(&self, f: &dyn Fn(Indet) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for (x, e) in m.factors() {
                let factor = f(x).unwrap_or_else(|| Poly::var(x));
                acc = &acc * &factor.pow(e);
            }
            out += &acc;
        }
        out
    }

    /// Rewrites s_i^{2e} as λ_i^e. Fails if some s_i carries an odd exponent.
    pub fn reduce_sqrt(&self) -> Result<Poly, Error> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut reduced = Vec::with_capacity(m.0.len());
            for (x, e) in m.factors() {
                match x {
                    Indet::S(i) => {
                        if e % 2 == 1 {
                            return Err(Error::OddSqrtExponent(i));
                        }
                        reduced.push((Indet::L(i), e / 2));
                    }
                    _ => reduced.push((x, e)),
                }
            }
            // L(i) may now sit next to an existing L(i) factor; multiply to merge.
            let mono = reduced
                .into_iter()
                .fold(Monomial::one(), |acc, (x, e)| acc.mul(&Monomial(vec![(x, e)])));
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if pos > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(i: usize) -> Poly {
        Poly::var(Indet::B(i))
    }
    fn l(i: usize) -> Poly {
        Poly::var(Indet::L(i))
    }
    fn s(i: usize) -> Poly {
        Poly::var(Indet::S(i))
    }

    #[test]
    fn rational_sum() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        let p = Poly::constant(rat(1, 2)) + Poly::constant(rat(1, 3));
        assert_eq!(p.as_constant(), Some(rat(5, 6)));
    }

    #[test]
    fn like_terms_collect() {
        let t = &b(0) * &b(1);
        assert_eq!(&t + &t, t.scale(&int(2)));
        assert_eq!(&t + &Poly::zero(), t);
    }

    #[test]
    fn binomial_square() {
        let x = &b(0) + &b(1);
        let expect = b(0).pow(2) + (&b(0) * &b(1)).scale(&int(2)) + b(1).pow(2);
        assert_eq!(&x * &x, expect);
        assert_eq!(&x * &Poly::one(), x);
    }

    #[test]
    fn sqrt_product_unreduced() {
        let p = &s(1) * &s(1);
        assert_eq!(p.to_string(), "s1^2");
        assert_eq!(p.reduce_sqrt().unwrap(), l(1));
        assert_eq!((&p * &s(2).pow(2)).reduce_sqrt().unwrap(), &l(1) * &l(2));
        assert!(matches!(s(1).reduce_sqrt(), Err(Error::OddSqrtExponent(1))));
    }

    #[test]
    fn reduce_sqrt_merges_with_lambda() {
        let p = &l(1) * &s(1).pow(2);
        assert_eq!(p.reduce_sqrt().unwrap(), l(1).pow(2));
    }

    #[test]
    fn null_lambda_vanishes() {
        assert!(l(0).is_zero());
        assert!(s(0).is_zero());
        assert!((&b(1) * &l(0)).is_zero());
    }

    #[test]
    fn display_order() {
        let p = b(0).pow(2) + &b(0) * &b(1) + b(1).pow(2) + l(1) + l(2);
        assert_eq!(p.to_string(), "b0^2+b0*b1+b1^2+l1+l2");
        let q = Poly::var(Indet::Alpha).scale(&int(3)) - Poly::int(6) + Poly::var(Indet::G(2)).scale(&rat(-1, 2));
        assert_eq!(q.to_string(), "-1/2*g2+3*alpha-6");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn eval_hermite_fig1() {
        let p = b(0).pow(2) + &b(0) * &b(1) + b(1).pow(2) + l(1) + l(2);
        let herm = |x: Indet| match x {
            Indet::B(_) => Some(int(0)),
            Indet::L(j) => Some(int(j as i64)),
            _ => None,
        };
        assert_eq!(p.eval(&herm).unwrap(), int(3));
        assert_eq!(l(1).eval(&|_| Some(int(2))).unwrap(), int(2));
        assert!(matches!(
            Poly::var(Indet::Alpha).eval(&herm),
            Err(Error::MissingAssignment(Indet::Alpha))
        ));
    }

    #[test]
    fn eval_gamma_sum() {
        let p = Poly::var(Indet::G(0)) + Poly::var(Indet::G(1));
        // γ_0 = α, γ_1 = 1, then α = 1.
        let sub = p.substitute(&|x| match x {
            Indet::G(0) => Some(Poly::var(Indet::Alpha)),
            Indet::G(1) => Some(Poly::one()),
            _ => None,
        });
        assert_eq!(sub.eval(&|_| Some(int(1))).unwrap(), int(2));
    }

    fn arb_indet() -> impl Strategy<Value = Indet> {
        prop_oneof![
            (0usize..3).prop_map(Indet::B),
            (0usize..3).prop_map(Indet::L),
            (0usize..3).prop_map(Indet::S),
            Just(Indet::Alpha),
        ]
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(
            ((-4i64..5), (1i64..4), prop::collection::vec((arb_indet(), 1u32..3), 0..3)),
            0..4,
        )
        .prop_map(|terms| {
            terms
                .into_iter()
                .map(|(n, d, factors)| {
                    let m = factors
                        .into_iter()
                        .map(|(x, e)| Poly::var(x).pow(e))
                        .product::<Poly>();
                    m.scale(&rat(n, d))
                })
                .sum()
        })
    }

    fn assign(x: Indet) -> Option<Rat> {
        Some(match x {
            Indet::B(i) => rat(i as i64 + 2, 3),
            Indet::L(i) => int(i as i64 * 2 - 1),
            Indet::G(i) => int(i as i64),
            Indet::S(i) => rat(1, i as i64 + 1),
            Indet::Alpha => rat(-5, 7),
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(p in arb_poly(), q in arb_poly()) {
            let ep = p.eval(&assign).unwrap();
            let eq = q.eval(&assign).unwrap();
            prop_assert_eq!((&p * &q).eval(&assign).unwrap(), &ep * &eq);
            prop_assert_eq!((&p + &q).eval(&assign).unwrap(), ep + eq);
        }

        #[test]
        fn reduce_sqrt_multiplicative(e1 in 0u32..3, e2 in 0u32..3, c in -3i64..4) {
            // Disjoint supports: s1, b0 on one side, s2, alpha on the other.
            let p = (&s(1).pow(2 * e1) * &b(0)).scale(&int(c));
            let q = &s(2).pow(2 * e2) + &Poly::var(Indet::Alpha);
            let lhs = (&p * &q).reduce_sqrt().unwrap();
            let rhs = &p.reduce_sqrt().unwrap() * &q.reduce_sqrt().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
