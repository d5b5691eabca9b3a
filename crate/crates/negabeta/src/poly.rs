use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;

/// A univariate polynomial with integer coefficients, stored highest degree
/// first with a nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from coefficients, highest degree first.
    /// Leading zeros are rejected rather than trimmed so that the textual
    /// form written by the caller is what the library works with.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPolynomial("empty coefficient list".into()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::InvalidPolynomial(
                "leading coefficient must be nonzero".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses "1,-3,-3,-3" (highest degree first).
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^k, zero when k exceeds the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        if k > self.degree() {
            BigInt::zero()
        } else {
            self.coeffs[self.degree() - k].clone()
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in &self.coeffs {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub(crate) fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = d - i;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Internal rational polynomial: highest degree first, always trimmed, the
/// zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        let nz = coeffs.iter().position(|c| !c.is_zero());
        match nz {
            Some(i) => {
                coeffs.drain(..i);
            }
            None => coeffs.clear(),
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval extension of Horner evaluation; exact rational endpoints.
    pub fn eval_interval(&self, x: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::point(BigRational::zero());
        for c in &self.coeffs {
            acc = acc.mul(x).add_scalar(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let d = self.coeffs.len() - 1;
        let coeffs = self
            .coeffs
            .iter()
            .take(d)
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from((d - i) as u64)))
            .collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.coeffs[0].clone();
        Self {
            coeffs: self.coeffs.iter().map(|c| c / &lead).collect(),
        }
    }

    /// Euclidean division; returns (quotient, remainder).
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.coeffs.len();
        if self.coeffs.len() < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd + 1];
        let lead = &div.coeffs[0];
        for i in 0..quot.len() {
            let q = &rem[i] / lead;
            if !q.is_zero() {
                for (j, c) in div.coeffs.iter().enumerate() {
                    let t = &q * c;
                    rem[i + j] = &rem[i + j] - t;
                }
            }
            quot[i] = q;
        }
        let rem_tail = rem.split_off(quot.len());
        (Self::new(quot), Self::new(rem_tail))
    }

    /// Exact division; panics if the divisor does not divide self.
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "div_exact with nonzero remainder");
        q
    }

    /// Monic gcd via the Euclidean algorithm with per-step normalization.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic
    /// (or zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::new(vec![BigRational::one()]);
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::new(vec![BigRational::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.coeffs[0].clone();
        let scale = |p: &Self| Self::new(p.coeffs.iter().map(|c| c / &lead).collect());
        (scale(&r0), scale(&s0), scale(&t0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[n - self.coeffs.len() + i] = a.clone();
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            let k = n - other.coeffs.len() + i;
            out[k] = &out[k] - b;
        }
        Self::new(out)
    }

    /// Squarefree part self / gcd(self, self'), monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    /// x - r as a polynomial.
    pub fn linear(r: &BigRational) -> Self {
        Self::new(vec![BigRational::one(), -r.clone()])
    }
}

/// A Sturm chain of a squarefree polynomial, used for exact root counting.
#[derive(Debug, Clone)]
pub(crate) struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn build(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Self { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if let Some(l) = last {
                if l != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in (a, b]. Requires p(a) != 0.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a <= b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Cauchy bound: all real roots of p lie in [-B, B].
pub(crate) fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.coeffs()[0].abs();
    let mut m = BigInt::zero();
    for c in &p.coeffs()[1..] {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    // ceil(m/lead) + 1 over-approximates 1 + m/lead
    let (q, r) = num::Integer::div_rem(&m, &lead);
    let q = if r.is_zero() { q } else { q + 1 };
    BigRational::from_integer(q + 1)
}
