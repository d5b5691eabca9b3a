use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::base::{same_base, PisotBase, ISOLATION_WIDTH_EXP};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::poly::RatPoly;

/// The three ring operations exposed by the checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An exact element of Q(beta): a rational coefficient vector in the power
/// basis 1, beta, ..., beta^(d-1), with `coeffs[i]` the coefficient of
/// beta^i. All arithmetic reduces modulo the minimal polynomial of the base.
#[derive(Debug, Clone)]
pub struct FieldElement {
    base: Arc<PisotBase>,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(base: &Arc<PisotBase>) -> Self {
        Self {
            base: base.clone(),
            coeffs: vec![BigRational::zero(); base.degree()],
        }
    }

    pub fn one(base: &Arc<PisotBase>) -> Self {
        Self::from_rational(base, BigRational::one())
    }

    /// The base root itself as an element.
    pub fn beta(base: &Arc<PisotBase>) -> Self {
        let mut coeffs = vec![BigRational::zero(); base.degree() + 1];
        coeffs[1] = BigRational::one();
        Self::from_coeffs(base, coeffs)
    }

    pub fn from_rational(base: &Arc<PisotBase>, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); base.degree()];
        coeffs[0] = q;
        // degree-1 bases reduce constants in the usual way only when the
        // vector is longer than the degree, so nothing more to do here
        Self {
            base: base.clone(),
            coeffs,
        }
    }

    pub fn from_int(base: &Arc<PisotBase>, n: i64) -> Self {
        Self::from_rational(base, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(base: &Arc<PisotBase>, n: BigInt) -> Self {
        Self::from_rational(base, BigRational::from_integer(n))
    }

    /// Builds an element from a coefficient vector of any length (lowest
    /// power first), reducing modulo the minimal polynomial.
    pub fn from_coeffs(base: &Arc<PisotBase>, mut coeffs: Vec<BigRational>) -> Self {
        let d = base.degree();
        // minpoly is monic: beta^d = -(m_1 beta^(d-1) + ... + m_d)
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = coeffs.len(); // the popped term was beta^k
            for i in 1..=d {
                let m = base.minpoly().coeffs()[i].clone(); // coeff of x^(d-i)
                if !m.is_zero() {
                    let idx = k - i;
                    coeffs[idx] = &coeffs[idx] - &top * BigRational::from_integer(m);
                }
            }
        }
        coeffs.resize(d, BigRational::zero());
        Self {
            base: base.clone(),
            coeffs,
        }
    }

    pub fn base(&self) -> &Arc<PisotBase> {
        &self.base
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Canonical key for hashing in state sets; coefficient vectors are the
    /// canonical representation (degree < d, normalized rationals).
    pub fn coeff_key(&self) -> Vec<BigRational> {
        self.coeffs.clone()
    }

    pub(crate) fn to_rat_poly(&self) -> RatPoly {
        let mut v: Vec<BigRational> = self.coeffs.clone();
        v.reverse();
        RatPoly::new(v)
    }

    /// Checked ring operation; fails on mismatched bases.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        })
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        Self {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale_rat(&BigRational::from_integer(c.clone()))
    }

    /// Exact test for the represented real number being zero. Decided by the
    /// gcd of the coefficient polynomial with the minimal polynomial, so it
    /// is correct even over a reducible defining polynomial.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.base.is_zero_at_root(&self.to_rat_poly())
    }

    /// Exact sign of the real number this element evaluates to at beta.
    pub fn sign(&self) -> i32 {
        if self.coeffs.iter().all(Zero::is_zero) {
            return 0;
        }
        if let Some(r) = self.base.known_rational_root() {
            let v = self.to_rat_poly().eval(&r);
            return if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
        }
        let poly = self.to_rat_poly();
        let mut exp = ISOLATION_WIDTH_EXP;
        let mut zero_checked = false;
        loop {
            let iv = self.base.refine_to(exp);
            if let Some(s) = poly.eval_interval(&iv).definite_sign() {
                return s;
            }
            if !zero_checked && exp >= 2 * ISOLATION_WIDTH_EXP {
                if self.base.is_zero_at_root(&poly) {
                    return 0;
                }
                zero_checked = true;
            }
            exp *= 2;
        }
    }

    /// The unique integer n with n <= value < n + 1, decided by interval
    /// refinement with an exact equality test on integer straddles.
    pub fn floor(&self) -> BigInt {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return self.coeffs[0].floor().to_integer();
        }
        if let Some(r) = self.base.known_rational_root() {
            return self.to_rat_poly().eval(&r).floor().to_integer();
        }
        let poly = self.to_rat_poly();
        let mut exp = ISOLATION_WIDTH_EXP;
        let mut tested: Option<BigInt> = None;
        loop {
            let iv = self.base.refine_to(exp);
            let e = poly.eval_interval(&iv);
            let fa = e.lo().floor().to_integer();
            let fb = e.hi().floor().to_integer();
            if fa == fb {
                return fa;
            }
            if &fb - &fa == BigInt::one() && tested.as_ref() != Some(&fb) {
                let diff = self - &Self::from_bigint(&self.base, fb.clone());
                if diff.is_zero() {
                    return fb;
                }
                tested = Some(fb);
            }
            exp *= 2;
        }
    }

    /// ceil(value), from floor and the exact integrality test.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        let diff = self - &Self::from_bigint(&self.base, f.clone());
        if diff.is_zero() {
            f
        } else {
            f + 1
        }
    }

    /// Multiplicative inverse of a nonzero element. Factors of the defining
    /// polynomial sharing a root with this element are stripped before the
    /// Bezout step, so the inverse exists whenever the represented real
    /// number is nonzero, reducible defining polynomials included.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.to_rat_poly();
        let mut p1 = self.base.minpoly().to_rat();
        loop {
            let g = p1.gcd(&q);
            if g.degree().map_or(true, |d| d == 0) {
                break;
            }
            p1 = p1.div_exact(&g);
        }
        let (g, u, _v) = q.ext_gcd(&p1);
        debug_assert_eq!(g.degree(), Some(0));
        // ext_gcd normalizes g to be monic, i.e. the constant 1, so u is
        // already the inverse of q modulo p1
        let mut coeffs: Vec<BigRational> = u.coeffs().to_vec();
        coeffs.reverse();
        Ok(Self::from_coeffs(&self.base, coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one(&self.base);
        let mut sq = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Encloses the value in an exact rational interval after refining the
    /// base enclosure to width 2^-width_exp. Independent of the adaptive
    /// logic of `sign`/`floor`, which makes it usable as a test oracle.
    pub fn eval_interval(&self, width_exp: u32) -> RationalInterval {
        let iv = self.base.refine_to(width_exp);
        self.to_rat_poly().eval_interval(&iv)
    }

    /// Midpoint of the current enclosure; diagnostic only.
    pub fn approx_rational(&self, width_exp: u32) -> BigRational {
        self.eval_interval(width_exp).midpoint()
    }

    /// Parses the textual form "c0 + c1*b + c2*b^2" with exact rational
    /// coefficients "p/q".
    pub fn parse(base: &Arc<PisotBase>, s: &str) -> Result<Self> {
        parse_element(base, s)
    }
}

impl PartialEq for FieldElement {
    /// Semantic equality: equal iff the difference vanishes at beta. For an
    /// irreducible defining polynomial this is coefficient-wise equality,
    /// which is the fast path.
    fn eq(&self, other: &Self) -> bool {
        if !same_base(&self.base, &other.base) {
            return false;
        }
        if self.coeffs == other.coeffs {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(
            same_base(&self.base, &rhs.base),
            "field elements over different bases"
        );
        FieldElement {
            base: self.base.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(
            same_base(&self.base, &rhs.base),
            "field elements over different bases"
        );
        FieldElement {
            base: self.base.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(
            same_base(&self.base, &rhs.base),
            "field elements over different bases"
        );
        let d = self.base.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + a * b;
            }
        }
        FieldElement::from_coeffs(&self.base, prod)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "b")?;
                } else {
                    write!(f, "b^{i}")?;
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_element(base: &Arc<PisotBase>, s: &str) -> Result<FieldElement> {
    let d = base.degree();
    let mut coeffs: Vec<BigRational> = Vec::new();
    let add_term = |coeffs: &mut Vec<BigRational>, pow: usize, c: BigRational| {
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, BigRational::zero());
        }
        coeffs[pow] = &coeffs[pow] + c;
    };
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            if first {
                return Err(Error::Parse("empty element expression".into()));
            }
            break;
        }
        let mut neg = false;
        if bytes[i] == '+' || bytes[i] == '-' {
            neg = bytes[i] == '-';
            i += 1;
        } else if !first {
            return Err(Error::Parse(format!(
                "expected '+' or '-' at position {i} of {s:?}"
            )));
        }
        skip_ws(&mut i);
        // optional rational literal
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
            i += 1;
        }
        let mut coef = if start == i {
            None
        } else {
            let lit: String = bytes[start..i].iter().collect();
            let (num, den) = match lit.split_once('/') {
                Some((n, d)) => (n.to_string(), d.to_string()),
                None => (lit, "1".to_string()),
            };
            let n = num
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad numerator in {s:?}: {e}")))?;
            let den = den
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad denominator in {s:?}: {e}")))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Some(BigRational::new(n, den))
        };
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
            skip_ws(&mut i);
        }
        let mut pow = 0usize;
        if i < bytes.len() && (bytes[i] == 'b' || bytes[i] == 'B') {
            i += 1;
            pow = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ps == i {
                    return Err(Error::Parse("missing exponent after '^'".into()));
                }
                let lit: String = bytes[ps..i].iter().collect();
                pow = lit
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
            }
        } else if coef.is_none() {
            return Err(Error::Parse(format!(
                "expected coefficient or 'b' at position {i} of {s:?}"
            )));
        }
        let mut c = coef.take().unwrap_or_else(BigRational::one);
        if neg {
            c = -c;
        }
        add_term(&mut coeffs, pow, c);
        first = false;
    }
    if coeffs.is_empty() {
        coeffs.push(BigRational::zero());
    }
    let _ = d;
    Ok(FieldElement::from_coeffs(base, coeffs))
}

/// Pisot certification: every root of the defining polynomial other than
/// beta has modulus strictly below one.
///
/// The cofactor p(x)/(x - beta) has coefficients in Z[beta], computed
/// exactly by synthetic division. Its roots all lie in the open unit disk
/// iff the Moebius substitute W(y) = (1-y)^n q((1+y)/(1-y)) is strictly
/// Hurwitz, which the Routh table decides using exact sign tests in Q(beta).
/// Roots at z = 1 or z = -1 would degenerate the substitution; they are
/// ruled out first by two integer evaluations (and either one already
/// refutes the Pisot property).
pub(crate) fn certify_pisot(base: &Arc<PisotBase>) -> bool {
    let p = base.minpoly();
    if p.eval_int(&BigInt::one()).is_zero() || p.eval_int(&BigInt::from(-1)).is_zero() {
        return false;
    }
    let d = base.degree();
    if d == 1 {
        return true;
    }
    let beta = FieldElement::beta(base);
    // synthetic division: q_0 = 1, q_i = p_i + beta * q_{i-1}
    let mut q: Vec<FieldElement> = vec![FieldElement::one(base)];
    for i in 1..d {
        let c = FieldElement::from_bigint(base, p.coeffs()[i].clone());
        q.push(&c + &(&beta * q.last().unwrap()));
    }
    debug_assert!({
        let rem =
            &FieldElement::from_bigint(base, p.coeffs()[d].clone()) + &(&beta * q.last().unwrap());
        rem.is_zero()
    });
    let n = d - 1;
    // W coefficients, lowest power first
    let mut w = vec![FieldElement::zero(base); n + 1];
    for i in 0..=n {
        let c = &q[n - i]; // coefficient of z^i in the cofactor
        let expansion = binomial_product(i, n - i);
        for (k, e) in expansion.iter().enumerate() {
            if !e.is_zero() {
                w[k] = &w[k] + &c.scale_int(e);
            }
        }
    }
    w.reverse();
    match w[0].sign() {
        0 => return false,
        s if s < 0 => {
            for c in &mut w {
                *c = -&*c;
            }
        }
        _ => {}
    }
    routh_strictly_stable(&w)
}

/// Coefficients of (1+y)^a (1-y)^b, lowest power first.
fn binomial_product(a: usize, b: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..a {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        acc = next;
    }
    for _ in 0..b {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        acc = next;
    }
    acc
}

/// Routh test for all roots in the open left half plane, coefficients
/// highest power first with positive leading coefficient. A zero or
/// negative first-column entry refutes strict stability exactly.
fn routh_strictly_stable(w: &[FieldElement]) -> bool {
    let n = w.len() - 1;
    if n == 0 {
        return true;
    }
    let base = w[0].base().clone();
    let zero = FieldElement::zero(&base);
    let mut prev: Vec<FieldElement> = w.iter().step_by(2).cloned().collect();
    let mut cur: Vec<FieldElement> = w.iter().skip(1).step_by(2).cloned().collect();
    for k in 1..=n {
        if cur[0].sign() <= 0 {
            return false;
        }
        if k == n {
            break;
        }
        let factor = prev[0].div(&cur[0]).expect("nonzero pivot");
        let len = (prev.len().max(cur.len() + 1) - 1).max(1);
        let mut next = Vec::with_capacity(len);
        for i in 0..len {
            let a = prev.get(i + 1).unwrap_or(&zero);
            let b = cur.get(i + 1).unwrap_or(&zero);
            next.push(a - &(&factor * b));
        }
        prev = cur;
        cur = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::isolate_pisot_base;
    use crate::poly::IntPolynomial;

    fn mk(coeffs: &[i64]) -> Arc<PisotBase> {
        isolate_pisot_base(&IntPolynomial::from_i64(coeffs).unwrap(), true).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cubic_pisot_check_matches_known_cases() {
        // x^3 - 2x^2 - x - 1, i.e. a=2, b=-1, c=1 in x^3 - a x^2 + b x - c
        let b = mk(&[1, -2, -1, -1]);
        assert!(b.pisot_certified());
        // x^3 - x^2 - x - 1 (m = 1)
        assert!(mk(&[1, -1, -1, -1]).pisot_certified());
        // x^2 - 2 is not Pisot: conjugate -sqrt(2)
        assert!(!mk(&[1, 0, -2]).pisot_certified());
        // smallest quartic Salem number: conjugates on the unit circle
        assert!(!mk(&[1, -1, -1, -1, 1]).pisot_certified());
        // (x - 2)(x^2 + x + 1): conjugates of modulus exactly 1
        assert!(!mk(&[1, -1, -1, -2]).pisot_certified());
        // x^2 - 3x + 1: conjugate (3 - sqrt(5))/2 < 1
        assert!(mk(&[1, -3, 1]).pisot_certified());
    }

    #[test]
    fn reduction_by_minpoly() {
        // beta * beta^2 = beta^3 = 1 + beta + beta^2 over the tribonacci base
        let base = mk(&[1, -1, -1, -1]);
        let beta = FieldElement::beta(&base);
        let b2 = &beta * &beta;
        let b3 = &beta * &b2;
        assert_eq!(b3.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn additive_identity() {
        let base = mk(&[1, -1, -1, -1]);
        let x = FieldElement::parse(&base, "3/2 - b + 2*b^2").unwrap();
        let z = FieldElement::zero(&base);
        assert_eq!(&z + &x, x);
    }

    #[test]
    fn beta_inverse_via_reduction() {
        // beta * (beta^2 - beta - 1) = 1 over the tribonacci base
        let base = mk(&[1, -1, -1, -1]);
        let beta = FieldElement::beta(&base);
        let cand = FieldElement::parse(&base, "-1 - b + b^2").unwrap();
        let prod = &beta * &cand;
        assert_eq!(prod, FieldElement::one(&base));
        // and inv agrees
        assert_eq!(beta.inv().unwrap(), cand);
    }

    #[test]
    fn sign_examples() {
        let base = mk(&[1, -1, -1, -1]);
        assert_eq!(FieldElement::zero(&base).sign(), 0);
        // l_beta = -beta/(beta+1) < 0
        let beta = FieldElement::beta(&base);
        let one = FieldElement::one(&base);
        let ell = (-&beta).div(&(&beta + &one)).unwrap();
        assert_eq!(ell.sign(), -1);
        // r_1 = b/beta - 1/beta^2 for a=2, b=-1, c=1 is about -0.55
        let base2 = mk(&[1, -2, -1, -1]);
        let beta2 = FieldElement::beta(&base2);
        let r1 = &(-&FieldElement::one(&base2)).div(&beta2).unwrap() - &beta2.pow(-2).unwrap();
        assert_eq!(r1.sign(), -1);
        let mid = r1.approx_rational(100);
        assert!(mid > rat(-56, 100) && mid < rat(-54, 100));
    }

    #[test]
    fn floor_examples() {
        let base = mk(&[1, -1, -1, -1]);
        // constant
        assert_eq!(FieldElement::from_int(&base, 7).floor(), BigInt::from(7));
        // floor(l_beta) = -1 with l_beta ~ -0.6478 at 100-bit precision
        let beta = FieldElement::beta(&base);
        let one = FieldElement::one(&base);
        let ell = (-&beta).div(&(&beta + &one)).unwrap();
        assert_eq!(ell.floor(), BigInt::from(-1));
        let e = ell.eval_interval(100);
        assert!(e.lo() > &rat(-6479, 10000) && e.hi() < &rat(-6477, 10000));
        // a=2, b=-1, c=1: floor(r0 + alpha) = 1
        let base2 = mk(&[1, -2, -1, -1]);
        let beta2 = FieldElement::beta(&base2);
        let one2 = FieldElement::one(&base2);
        let r0 = beta2.inv().unwrap();
        let alpha = beta2.div(&(&beta2 + &one2)).unwrap();
        assert_eq!((&r0 + &alpha).floor(), BigInt::from(1));
    }

    #[test]
    fn floor_of_exact_integer_value() {
        // beta + (1 - beta) = 1: a value that is exactly an integer while no
        // single coefficient is
        let base = mk(&[1, -1, -1, -1]);
        let beta = FieldElement::beta(&base);
        let x = FieldElement::parse(&base, "1 - b").unwrap();
        let y = &beta + &x;
        assert_eq!(y.floor(), BigInt::from(1));
        assert_eq!(y.sign(), 1);
    }

    #[test]
    fn zero_test_over_reducible_polynomial() {
        // (x^2 - x - 1)(x^2 - 2) = x^4 - x^3 - 3x^2 + 2x + 2; the root above
        // one is the golden ratio, so beta^2 - beta - 1 vanishes without
        // being the zero vector
        let base = mk(&[1, -1, -3, 2, 2]);
        let e = FieldElement::parse(&base, "-1 - b + b^2").unwrap();
        assert!(e.is_zero());
        assert_eq!(e.sign(), 0);
        // while beta^2 - 2 does not vanish (beta = phi, not sqrt(2))
        let f = FieldElement::parse(&base, "-2 + b^2").unwrap();
        assert!(!f.is_zero());
        assert_eq!(f.sign(), 1);
    }

    #[test]
    fn parse_display_roundtrip() {
        let base = mk(&[1, -1, -1, -1]);
        let x = FieldElement::parse(&base, "-3/2 + b - 7/3*b^2").unwrap();
        let shown = x.to_string();
        let back = FieldElement::parse(&base, &shown).unwrap();
        assert_eq!(x, back);
        assert_eq!(shown, "-3/2 + b - 7/3*b^2");
        assert_eq!(FieldElement::zero(&base).to_string(), "0");
    }

    #[test]
    fn base_mismatch_is_reported() {
        let a = mk(&[1, -1, -1]);
        let b = mk(&[1, -1, -1, -1]);
        let x = FieldElement::one(&a);
        let y = FieldElement::one(&b);
        assert!(matches!(
            x.arith(&y, ArithOp::Add),
            Err(Error::BaseMismatch)
        ));
    }
}
