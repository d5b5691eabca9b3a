use std::fmt;
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field;
use crate::interval::{pow2_inv, RationalInterval};
use crate::poly::{cauchy_bound, IntPolynomial, RatPoly, SturmChain};

/// Width of the isolating interval guaranteed at construction: 2^-64.
pub const ISOLATION_WIDTH_EXP: u32 = 64;

#[derive(Debug, Clone)]
struct CacheState {
    interval: RationalInterval,
    /// Set once the root is discovered to be an exact rational (this happens
    /// when a bisection midpoint lands on it).
    exact: Option<BigRational>,
}

/// A monic integer polynomial together with a certified isolating interval
/// for its largest real root `beta > 1`, and the result of the Pisot check
/// (all other roots, real and complex, of modulus strictly below one).
///
/// The isolating interval only ever narrows; all queries against it go
/// through a locked cache, so a base can be shared freely across threads.
#[derive(Debug)]
pub struct PisotBase {
    minpoly: IntPolynomial,
    degree: usize,
    pisot_certified: bool,
    /// Squarefree polynomial vanishing at beta whose sign changes over every
    /// cached interval; its endpoints are never roots.
    refine_poly: RatPoly,
    cache: Mutex<CacheState>,
}

impl Clone for PisotBase {
    fn clone(&self) -> Self {
        let state = self.cache.lock().unwrap().clone();
        Self {
            minpoly: self.minpoly.clone(),
            degree: self.degree,
            pisot_certified: self.pisot_certified,
            refine_poly: self.refine_poly.clone(),
            cache: Mutex::new(state),
        }
    }
}

impl fmt::Display for PisotBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root > 1 of {}", self.minpoly)
    }
}

enum RootLocation {
    Rational(BigRational),
    Isolated {
        lo: BigRational,
        hi: BigRational,
        deflated: RatPoly,
    },
}

/// Isolates the largest real root `beta > 1` of a monic integer polynomial
/// and, when requested, certifies the Pisot property of that root.
///
/// The returned interval has width at most 2^-64 and contains exactly one
/// root of `p`. `pisot_certified` is only set when `want_pisot_check` is
/// true and every root other than beta has modulus strictly below one.
pub fn isolate_pisot_base(p: &IntPolynomial, want_pisot_check: bool) -> Result<Arc<PisotBase>> {
    if !p.is_monic() {
        return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
    }
    let loc = rightmost_root_above_one(p)?;
    let (interval, exact, refine_poly) = match loc {
        RootLocation::Rational(r) => {
            let interval = shrink_around_rational(p, &r);
            // the sign-change invariant is not used in exact mode
            (interval, Some(r.clone()), RatPoly::linear(&r))
        }
        RootLocation::Isolated { lo, hi, deflated } => {
            (RationalInterval::new(lo, hi), None, deflated)
        }
    };
    let base = PisotBase {
        minpoly: p.clone(),
        degree: p.degree(),
        pisot_certified: false,
        refine_poly,
        cache: Mutex::new(CacheState { interval, exact }),
    };
    if !want_pisot_check {
        return Ok(Arc::new(base));
    }
    let probe = Arc::new(base.clone());
    let certified = field::certify_pisot(&probe);
    let mut done = (*probe).clone();
    done.pisot_certified = certified;
    Ok(Arc::new(done))
}

/// Locates the rightmost real root strictly above 1, deflating rational
/// roots as bisection midpoints expose them. Monic input keeps every
/// rational root an algebraic integer, so nothing is lost by only ever
/// deflating at exact midpoint hits.
fn rightmost_root_above_one(p: &IntPolynomial) -> Result<RootLocation> {
    let one = BigRational::one();
    let mut s = p.to_rat().squarefree_part();
    if s.eval(&one).is_zero() {
        s = s.div_exact(&RatPoly::linear(&one));
    }
    let bound = cauchy_bound(p);
    if s.eval(&bound).is_zero() {
        // nothing can lie beyond the Cauchy bound
        return Ok(RootLocation::Rational(bound));
    }
    let mut chain = SturmChain::build(&s);
    if chain.count_roots(&one, &bound) == 0 {
        return Err(Error::NoRootAboveOne);
    }
    let target = pow2_inv(ISOLATION_WIDTH_EXP);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = one;
    let mut hi = bound;
    // invariant: the rightmost root of s in (1, bound] lies in (lo, hi],
    // s(lo) != 0, s(hi) != 0
    loop {
        let mid = (&lo + &hi) / &two;
        if s.eval(&mid).is_zero() {
            s = s.div_exact(&RatPoly::linear(&mid));
            chain = SturmChain::build(&s);
            if chain.count_roots(&mid, &hi) >= 1 {
                // move strictly past the deflated root
                let mut step = (&hi - &mid) / &two;
                loop {
                    let cand = &mid + &step;
                    if !s.eval(&cand).is_zero()
                        && chain.count_roots(&cand, &hi) == chain.count_roots(&mid, &hi)
                    {
                        lo = cand;
                        break;
                    }
                    step = &step / &two;
                }
            } else {
                return Ok(RootLocation::Rational(mid));
            }
        } else if chain.count_roots(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        if &hi - &lo <= target && chain.count_roots(&lo, &hi) == 1 {
            debug_assert!(!p.eval_rat(&lo).is_zero() && !p.eval_rat(&hi).is_zero());
            return Ok(RootLocation::Isolated {
                lo,
                hi,
                deflated: s,
            });
        }
    }
}

/// Shrinks a window around an exact rational root until it contains no other
/// root of p.
fn shrink_around_rational(p: &IntPolynomial, r: &BigRational) -> RationalInterval {
    let s0 = p.to_rat().squarefree_part();
    let chain = SturmChain::build(&s0);
    let mut w = pow2_inv(ISOLATION_WIDTH_EXP + 1);
    let two = BigRational::from_integer(BigInt::from(2));
    loop {
        let lo = r - &w;
        let hi = r + &w;
        if !s0.eval(&lo).is_zero() && !s0.eval(&hi).is_zero() && chain.count_roots(&lo, &hi) == 1 {
            return RationalInterval::new(lo, hi);
        }
        w = &w / &two;
    }
}

impl PisotBase {
    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    /// Degree of the defining polynomial (dimension of the coefficient
    /// vectors of field elements over this base).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pisot_certified(&self) -> bool {
        self.pisot_certified
    }

    /// Snapshot of the current isolating interval.
    pub fn interval(&self) -> RationalInterval {
        self.cache.lock().unwrap().interval.clone()
    }

    /// The root as an exact rational, when it is one and bisection has
    /// already pinned it.
    pub fn known_rational_root(&self) -> Option<BigRational> {
        self.cache.lock().unwrap().exact.clone()
    }

    /// Narrows the cached isolating interval to width at most 2^-width_exp
    /// and returns a snapshot. The cache only ever narrows.
    pub fn refine_to(&self, width_exp: u32) -> RationalInterval {
        let target = pow2_inv(width_exp);
        let two = BigRational::from_integer(BigInt::from(2));
        let four = BigRational::from_integer(BigInt::from(4));
        let mut state = self.cache.lock().unwrap();
        while state.interval.width() > target {
            if let Some(r) = state.exact.clone() {
                let w = state.interval.width() / &four;
                let lo = state.interval.lo().max(&(&r - &w)).clone();
                let hi = state.interval.hi().min(&(&r + &w)).clone();
                state.interval = RationalInterval::new(lo, hi);
                continue;
            }
            let mid = state.interval.midpoint();
            let v_mid = self.refine_poly.eval(&mid);
            if v_mid.is_zero() {
                state.exact = Some(mid);
                continue;
            }
            let v_lo = self.refine_poly.eval(state.interval.lo());
            debug_assert!(!v_lo.is_zero());
            if v_lo.is_positive() != v_mid.is_positive() {
                state.interval = RationalInterval::new(state.interval.lo().clone(), mid);
            } else {
                state.interval = RationalInterval::new(mid, state.interval.hi().clone());
            }
            let _ = &two;
        }
        state.interval.clone()
    }

    /// Exact test for q(beta) == 0.
    ///
    /// When the root is a known rational the test is a direct evaluation.
    /// Otherwise q vanishes at beta iff gcd(q, refine_poly) does, which in
    /// turn holds iff that (squarefree) gcd changes sign over the isolating
    /// interval: the interval contains no other root of the minimal
    /// polynomial, and the gcd divides it.
    pub(crate) fn is_zero_at_root(&self, q: &RatPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        if q.degree() == Some(0) {
            return false;
        }
        if let Some(r) = self.known_rational_root() {
            return q.eval(&r).is_zero();
        }
        let g = q.gcd(&self.refine_poly);
        if g.degree().map_or(true, |d| d == 0) {
            return false;
        }
        let iv = self.interval();
        let va = g.eval(iv.lo());
        let vb = g.eval(iv.hi());
        debug_assert!(!va.is_zero() && !vb.is_zero());
        va.is_positive() != vb.is_positive()
    }
}

/// Two elements may be combined only over the same base: either literally
/// shared or defined by the same polynomial.
pub(crate) fn same_base(a: &Arc<PisotBase>, b: &Arc<PisotBase>) -> bool {
    Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
}
