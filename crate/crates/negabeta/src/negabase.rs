use std::collections::HashMap;
use std::sync::Arc;

use num::{BigInt, BigRational, ToPrimitive};
use serde_json::json;

use crate::base::PisotBase;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Default iteration budget for orbit computations; a safety valve only,
/// since orbits of Z[1/beta] points under a Pisot base are eventually
/// periodic. Overridable through the CLI environment variable.
pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// l_beta = -beta/(beta+1), the left endpoint of the transformation domain.
pub fn ell_beta(base: &Arc<PisotBase>) -> FieldElement {
    let beta = FieldElement::beta(base);
    let denom = &beta + &FieldElement::one(base);
    (-&beta)
        .div(&denom)
        .expect("beta + 1 is nonzero for beta > 1")
}

/// Shared per-base data for orbit computations.
pub(crate) struct NegaBetaCtx {
    pub base: Arc<PisotBase>,
    pub neg_beta: FieldElement,
    pub inv_neg_beta: FieldElement,
    pub ell: FieldElement,
    pub ell_plus_one: FieldElement,
    pub digit_max: i64,
}

impl NegaBetaCtx {
    pub fn new(base: &Arc<PisotBase>) -> Self {
        let beta = FieldElement::beta(base);
        let neg_beta = -&beta;
        let inv_neg_beta = neg_beta.inv().expect("beta is nonzero");
        let ell = ell_beta(base);
        let ell_plus_one = &ell + &FieldElement::one(base);
        let digit_max = beta
            .floor()
            .to_i64()
            .expect("digit alphabet exceeds i64 range");
        Self {
            base: base.clone(),
            neg_beta,
            inv_neg_beta,
            ell,
            ell_plus_one,
            digit_max,
        }
    }

    /// Exact membership in the half-open domain [l, l+1).
    pub fn in_domain(&self, x: &FieldElement) -> bool {
        (x - &self.ell).sign() >= 0 && (x - &self.ell_plus_one).sign() < 0
    }

    /// Exact membership in the open interval (l, l+1) used by expansions.
    pub fn in_open_interval(&self, x: &FieldElement) -> bool {
        (x - &self.ell).sign() > 0 && (x - &self.ell_plus_one).sign() < 0
    }

    pub fn step(&self, x: &FieldElement) -> Result<(FieldElement, i64)> {
        if !self.in_domain(x) {
            return Err(Error::OutOfDomain);
        }
        let y = &self.neg_beta * x;
        let digit_big = (&y - &self.ell).floor();
        let digit = digit_big.to_i64().expect("digit exceeds i64 range");
        debug_assert!((0..=self.digit_max).contains(&digit));
        let next = &y - &FieldElement::from_bigint(&self.base, digit_big);
        debug_assert!(self.in_domain(&next));
        Ok((next, digit))
    }
}

/// One application of the transformation x -> -beta x - floor(-beta x - l),
/// returning the new state and the emitted digit.
pub fn t_step(x: &FieldElement) -> Result<(FieldElement, i64)> {
    NegaBetaCtx::new(x.base()).step(x)
}

/// An eventually periodic digit sequence with a radix point position.
/// `radix_k` digits of the stream lie left of the point. An empty period
/// encodes an eventually zero tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitWord {
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
    pub radix_k: usize,
}

impl DigitWord {
    /// Reduces the period to its primitive root and collapses an all-zero
    /// period to the empty one.
    fn canonicalize(mut self) -> Self {
        if self.period.iter().all(|&d| d == 0) {
            self.period.clear();
            return self;
        }
        let n = self.period.len();
        'outer: for q in 1..n {
            if n % q != 0 {
                continue;
            }
            for i in q..n {
                if self.period[i] != self.period[i % q] {
                    continue 'outer;
                }
            }
            self.period.truncate(q);
            break;
        }
        self
    }

    /// Digit at stream position i (0-based), following the period forever.
    pub fn digit_at(&self, i: usize) -> i64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Renders "d1 .. dk • f1 f2 ... (per: p1 ...)" with "0^ω" marking an
    /// eventually zero tail.
    pub fn text(&self) -> String {
        let mut int_digits: Vec<String> = Vec::new();
        if self.radix_k == 0 {
            int_digits.push("0".into());
        } else {
            for i in 0..self.radix_k {
                int_digits.push(self.digit_at(i).to_string());
            }
        }
        let mut out = format!("{} •", int_digits.join(" "));
        // fractional part: positions radix_k.. of the stream
        let (frac_pre, frac_per) = self.split_at_radix();
        for d in &frac_pre {
            out.push_str(&format!(" {d}"));
        }
        if frac_per.is_empty() {
            out.push_str(" 0^ω");
        } else {
            out.push_str(&format!(
                " (per: {})",
                frac_per
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        out
    }

    /// Fractional tail as (preperiodic digits, periodic digits).
    fn split_at_radix(&self) -> (Vec<i64>, Vec<i64>) {
        let k = self.radix_k;
        if k <= self.preperiod.len() {
            (self.preperiod[k..].to_vec(), self.period.clone())
        } else if self.period.is_empty() {
            (vec![], vec![])
        } else {
            let over = (k - self.preperiod.len()) % self.period.len();
            let mut per = self.period.clone();
            per.rotate_left(over);
            (vec![], per)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "preperiod": self.preperiod,
            "period": self.period,
            "radix": self.radix_k,
        })
    }
}

/// The visited states of an orbit computation. States before `cycle_start`
/// are pairwise distinct; `open` flags a truncated computation whose cycle
/// was not reached within the step budget.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub states: Vec<FieldElement>,
    pub cycle_start: Option<usize>,
    pub open: bool,
}

/// Iterates the transformation from x (which must lie in the domain),
/// detecting the cycle by exact state equality on canonical coefficient
/// vectors. Exceeding `max_steps` yields a truncated word flagged as open.
pub fn digit_sequence(x: &FieldElement, max_steps: usize) -> Result<(DigitWord, OrbitRecord)> {
    let ctx = NegaBetaCtx::new(x.base());
    digit_sequence_with(&ctx, x, max_steps)
}

pub(crate) fn digit_sequence_with(
    ctx: &NegaBetaCtx,
    x: &FieldElement,
    max_steps: usize,
) -> Result<(DigitWord, OrbitRecord)> {
    if !ctx.in_domain(x) {
        return Err(Error::OutOfDomain);
    }
    let mut states = vec![x.clone()];
    let mut digits: Vec<i64> = Vec::new();
    let mut seen: HashMap<Vec<BigRational>, usize> = HashMap::new();
    seen.insert(x.coeff_key(), 0);
    for i in 0..max_steps {
        let (next, d) = ctx.step(&states[i])?;
        digits.push(d);
        if let Some(&j) = seen.get(&next.coeff_key()) {
            let word = DigitWord {
                preperiod: digits[..j].to_vec(),
                period: digits[j..].to_vec(),
                radix_k: 0,
            }
            .canonicalize();
            let orbit = OrbitRecord {
                states,
                cycle_start: Some(j),
                open: false,
            };
            return Ok((word, orbit));
        }
        seen.insert(next.coeff_key(), i + 1);
        states.push(next);
    }
    Ok((
        DigitWord {
            preperiod: digits,
            period: vec![],
            radix_k: 0,
        },
        OrbitRecord {
            states,
            cycle_start: None,
            open: true,
        },
    ))
}

/// The expansion of an arbitrary element of Q(beta): finds the minimal
/// k >= 0 with x/(-beta)^k inside the open interval (l, l+1) — exact
/// boundary tests, so a boundary hit forces a larger k — then emits the
/// digit stream of the scaled point with the radix mark at k.
pub fn expansion(x: &FieldElement, max_steps: usize) -> Result<DigitWord> {
    let ctx = NegaBetaCtx::new(x.base());
    let (word, _, _) = expansion_with(&ctx, x, max_steps)?;
    Ok(word)
}

pub(crate) fn expansion_with(
    ctx: &NegaBetaCtx,
    x: &FieldElement,
    max_steps: usize,
) -> Result<(DigitWord, OrbitRecord, usize)> {
    let mut k = 0usize;
    let mut cur = x.clone();
    while !ctx.in_open_interval(&cur) {
        cur = &cur * &ctx.inv_neg_beta;
        k += 1;
        if k > max_steps {
            return Err(Error::StepBudgetExceeded(max_steps));
        }
    }
    let (mut word, orbit) = digit_sequence_with(ctx, &cur, max_steps)?;
    if orbit.open {
        return Err(Error::StepBudgetExceeded(max_steps));
    }
    word.radix_k = k;
    Ok((word, orbit, k))
}

/// Length of the fractional part of the expansion of x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrLength {
    Finite(usize),
    /// The expansion never reaches the zero tail; carries the periodic
    /// digit cycle it falls into instead.
    NotFinite {
        period: Vec<i64>,
    },
}

/// fr(x): the minimal n such that all digits beyond position radix+n are
/// zero, or the periodic obstruction.
pub fn fr_length(x: &FieldElement, max_steps: usize) -> Result<FrLength> {
    let ctx = NegaBetaCtx::new(x.base());
    fr_length_with(&ctx, x, max_steps)
}

pub(crate) fn fr_length_with(
    ctx: &NegaBetaCtx,
    x: &FieldElement,
    max_steps: usize,
) -> Result<FrLength> {
    let (word, _, k) = expansion_with(ctx, x, max_steps)?;
    if !word.period.is_empty() {
        return Ok(FrLength::NotFinite {
            period: word.period,
        });
    }
    let p = word.preperiod.len();
    Ok(FrLength::Finite(p.saturating_sub(k)))
}

/// The k-th backward set S_k = T^{-k}(0), built breadth-first from
/// S_0 = {0}: a point y pulls back to -(y+a)/beta for each digit a, kept
/// when it lands in the domain. Scaling S_k by (-beta)^k yields exactly the
/// (-beta)-integers of length at most k. Returned sorted by coefficient
/// vector for determinism.
pub fn enumerate_zmb(base: &Arc<PisotBase>, depth: usize) -> Vec<FieldElement> {
    let ctx = NegaBetaCtx::new(base);
    enumerate_zmb_with(&ctx, depth)
}

pub(crate) fn enumerate_zmb_with(ctx: &NegaBetaCtx, depth: usize) -> Vec<FieldElement> {
    let mut cur: HashMap<Vec<BigRational>, FieldElement> = HashMap::new();
    let zero = FieldElement::zero(&ctx.base);
    cur.insert(zero.coeff_key(), zero);
    for _ in 0..depth {
        let mut next: HashMap<Vec<BigRational>, FieldElement> = HashMap::new();
        for y in cur.values() {
            for a in 0..=ctx.digit_max {
                let cand = &(y + &FieldElement::from_int(&ctx.base, a)) * &ctx.inv_neg_beta;
                if ctx.in_domain(&cand) {
                    next.entry(cand.coeff_key()).or_insert(cand);
                }
            }
        }
        cur = next;
    }
    let mut out: Vec<FieldElement> = cur.into_values().collect();
    out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    out
}

/// The (-beta)-integers representable with at most `depth` digits:
/// (-beta)^depth * S_depth.
pub fn zmb_integers(base: &Arc<PisotBase>, depth: usize) -> Vec<FieldElement> {
    let ctx = NegaBetaCtx::new(base);
    let scale = ctx
        .neg_beta
        .pow(depth as i64)
        .expect("positive power cannot fail");
    enumerate_zmb_with(&ctx, depth)
        .into_iter()
        .map(|s| &s * &scale)
        .collect()
}

/// Conservation check: x equals the partial digit sum plus the scaled
/// remainder after n steps. Exposed for tests and diagnostics.
pub fn conservation_holds(x: &FieldElement, n: usize) -> Result<bool> {
    let ctx = NegaBetaCtx::new(x.base());
    let mut state = x.clone();
    let mut digits = Vec::new();
    for _ in 0..n {
        let (next, d) = ctx.step(&state)?;
        digits.push(d);
        state = next;
    }
    // sum_{i<=n} x_i / (-beta)^i + T^n(x)/(-beta)^n
    let mut acc = FieldElement::zero(&ctx.base);
    let mut scale = FieldElement::one(&ctx.base);
    for d in &digits {
        scale = &scale * &ctx.inv_neg_beta;
        acc = &acc + &scale.scale_int(&BigInt::from(*d));
    }
    acc = &acc + &(&state * &scale);
    Ok(acc == *x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::isolate_pisot_base;
    use crate::poly::IntPolynomial;

    fn mk(coeffs: &[i64]) -> Arc<PisotBase> {
        isolate_pisot_base(&IntPolynomial::from_i64(coeffs).unwrap(), false).unwrap()
    }

    fn neg_inv_beta_plus_one(base: &Arc<PisotBase>) -> FieldElement {
        // -1/(beta+1)
        let one = FieldElement::one(base);
        let beta = FieldElement::beta(base);
        (-&one).div(&(&beta + &one)).unwrap()
    }

    #[test]
    fn ell_beta_examples() {
        let golden = mk(&[1, -1, -1]);
        let ell = ell_beta(&golden);
        assert_eq!(ell.sign(), -1);
        assert_eq!(ell.floor(), BigInt::from(-1));
        // domain endpoints: l < 0 < l + 1
        let trib = mk(&[1, -1, -1, -1]);
        let ell3 = ell_beta(&trib);
        assert_eq!(ell3.sign(), -1);
        assert_eq!((&ell3 + &FieldElement::one(&trib)).sign(), 1);
    }

    #[test]
    fn t_step_fixed_points() {
        let trib = mk(&[1, -1, -1, -1]);
        let zero = FieldElement::zero(&trib);
        let (next, d) = t_step(&zero).unwrap();
        assert_eq!(d, 0);
        assert!(next.is_zero());
        // -1/(beta+1) is fixed with digit 1
        let fp = neg_inv_beta_plus_one(&trib);
        let (next, d) = t_step(&fp).unwrap();
        assert_eq!(d, 1);
        assert_eq!(next, fp);
    }

    #[test]
    fn t_step_rejects_out_of_domain() {
        let trib = mk(&[1, -1, -1, -1]);
        let one = FieldElement::one(&trib);
        assert!(matches!(t_step(&one), Err(Error::OutOfDomain)));
    }

    #[test]
    fn ell_orbit_of_cubic_family() {
        // d(l_beta) = m 0 m^w for x^3 - m x^2 - m x - m
        for m in [1i64, 2, 3] {
            let base = mk(&[1, -m, -m, -m]);
            let ell = ell_beta(&base);
            let (word, orbit) = digit_sequence(&ell, 100).unwrap();
            assert_eq!(word.preperiod, vec![m, 0]);
            assert_eq!(word.period, vec![m]);
            assert_eq!(orbit.cycle_start, Some(2));
        }
    }

    #[test]
    fn digit_sequence_of_zero_and_fixed_point() {
        let trib = mk(&[1, -1, -1, -1]);
        let zero = FieldElement::zero(&trib);
        let (word, _) = digit_sequence(&zero, 50).unwrap();
        assert!(word.preperiod.is_empty() && word.period.is_empty());
        let fp = neg_inv_beta_plus_one(&trib);
        let (word, _) = digit_sequence(&fp, 50).unwrap();
        assert!(word.preperiod.is_empty());
        assert_eq!(word.period, vec![1]);
    }

    #[test]
    fn expansion_of_zero_and_text() {
        let trib = mk(&[1, -1, -1, -1]);
        let zero = FieldElement::zero(&trib);
        let word = expansion(&zero, 50).unwrap();
        assert_eq!(word.radix_k, 0);
        assert_eq!(word.text(), "0 • 0^ω");
    }

    #[test]
    fn expansion_minimal_k_with_exact_boundary_tests() {
        // golden base, x = 1: the scalings hit both boundaries exactly
        let golden = mk(&[1, -1, -1]);
        let ctx = NegaBetaCtx::new(&golden);
        let one = FieldElement::one(&golden);
        // k = 1: 1/(-beta) equals l_beta exactly
        let s1 = &one * &ctx.inv_neg_beta;
        assert!((&s1 - &ctx.ell).is_zero());
        assert!(!ctx.in_open_interval(&s1));
        // k = 2: 1/beta^2 equals l_beta + 1 exactly
        let s2 = &s1 * &ctx.inv_neg_beta;
        assert!((&s2 - &ctx.ell_plus_one).is_zero());
        assert!(!ctx.in_open_interval(&s2));
        // k = 3 is interior, so the minimal k is 3
        let s3 = &s2 * &ctx.inv_neg_beta;
        assert!(ctx.in_open_interval(&s3));
        let word = expansion(&one, 100).unwrap();
        assert_eq!(word.radix_k, 3);
        // and the chosen k is minimal: k - 1 fails the open test
        assert!(!ctx.in_open_interval(&s2));
    }

    #[test]
    fn fr_length_examples() {
        let trib = mk(&[1, -1, -1, -1]);
        let zero = FieldElement::zero(&trib);
        assert_eq!(fr_length(&zero, 100).unwrap(), FrLength::Finite(0));
        // m = 1 witness pair difference: fr((1 - b) - (b^4 - b^3)) = 6
        let x = FieldElement::parse(&trib, "1 - b").unwrap();
        let beta = FieldElement::beta(&trib);
        let y = &beta.pow(4).unwrap() - &beta.pow(3).unwrap();
        let diff = &x - &y;
        assert_eq!(fr_length(&diff, 200).unwrap(), FrLength::Finite(6));
        // the fixed point is not finite, cycle length 1
        let fp = neg_inv_beta_plus_one(&trib);
        assert_eq!(
            fr_length(&fp, 100).unwrap(),
            FrLength::NotFinite { period: vec![1] }
        );
    }

    #[test]
    fn witness_is_neg_beta_integer() {
        let trib = mk(&[1, -1, -1, -1]);
        let x = FieldElement::parse(&trib, "1 - b").unwrap();
        assert_eq!(fr_length(&x, 200).unwrap(), FrLength::Finite(0));
        // and it shows up in the scaled backward set
        let ints = zmb_integers(&trib, 2);
        assert!(ints.iter().any(|e| e == &x));
    }

    #[test]
    fn enumerate_zmb_examples() {
        let trib = mk(&[1, -1, -1, -1]);
        let s0 = enumerate_zmb(&trib, 0);
        assert_eq!(s0.len(), 1);
        assert!(s0[0].is_zero());
        // k = 1 with alphabet {0, 1}: {0, -1/beta}
        let s1 = enumerate_zmb(&trib, 1);
        assert_eq!(s1.len(), 2);
        let minus_inv = -&FieldElement::beta(&trib).inv().unwrap();
        assert!(s1.iter().any(|e| e.is_zero()));
        assert!(s1.iter().any(|e| e == &minus_inv));
    }

    #[test]
    fn enumerate_zmb_is_monotone_and_steps_back() {
        let trib = mk(&[1, -1, -1, -1]);
        let ctx = NegaBetaCtx::new(&trib);
        let mut prev_len = 0;
        for k in 0..=5 {
            let sk = enumerate_zmb(&trib, k);
            assert!(sk.len() >= prev_len);
            prev_len = sk.len();
            if k > 0 {
                let prev: Vec<_> = enumerate_zmb(&trib, k - 1);
                for x in &sk {
                    let (img, _) = ctx.step(x).unwrap();
                    assert!(prev.iter().any(|e| e == &img));
                }
            }
        }
    }

    #[test]
    fn conservation_identity() {
        let trib = mk(&[1, -1, -1, -1]);
        let ell = ell_beta(&trib);
        assert!(conservation_holds(&ell, 20).unwrap());
        let fp = neg_inv_beta_plus_one(&trib);
        assert!(conservation_holds(&fp, 12).unwrap());
    }

    #[test]
    fn digit_word_rendering() {
        let w = DigitWord {
            preperiod: vec![1, 0, 2],
            period: vec![2, 1],
            radix_k: 1,
        };
        assert_eq!(w.text(), "1 • 0 2 (per: 2 1)");
        let w2 = DigitWord {
            preperiod: vec![1, 0, 2],
            period: vec![],
            radix_k: 2,
        };
        assert_eq!(w2.text(), "1 0 • 2 0^ω");
        // radix point inside the periodic part rotates the period
        let w3 = DigitWord {
            preperiod: vec![],
            period: vec![1, 2],
            radix_k: 3,
        };
        assert_eq!(w3.text(), "1 2 1 • (per: 2 1)");
        let json = w.to_json();
        assert_eq!(json["radix"], 1);
    }

    #[test]
    fn orbit_budget_flags_truncation() {
        // d(l_beta) needs three steps to close its cycle; a budget of two
        // yields a truncated open record instead of an error
        let base = mk(&[1, -1, -1, -1]);
        let ell = ell_beta(&base);
        let (word, orbit) = digit_sequence(&ell, 2).unwrap();
        assert!(orbit.open);
        assert!(orbit.cycle_start.is_none());
        assert_eq!(word.preperiod, vec![1, 0]);
        assert!(word.period.is_empty());
    }

    #[test]
    fn period_canonicalization() {
        let w = DigitWord {
            preperiod: vec![],
            period: vec![2, 1, 2, 1],
            radix_k: 0,
        }
        .canonicalize();
        assert_eq!(w.period, vec![2, 1]);
        let z = DigitWord {
            preperiod: vec![3],
            period: vec![0, 0],
            radix_k: 0,
        }
        .canonicalize();
        assert!(z.period.is_empty());
    }
}
