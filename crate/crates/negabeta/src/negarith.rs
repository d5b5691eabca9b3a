use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num::{BigInt, BigRational, ToPrimitive};

use crate::alphasrs::{srs_from_base, SrsParams};
use crate::base::{isolate_pisot_base, PisotBase};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::negabase::{
    enumerate_zmb_with, expansion_with, fr_length_with, FrLength, NegaBetaCtx, DEFAULT_STEP_BUDGET,
};
use crate::poly::IntPolynomial;

/// Label of the lattice partition used by the invariant-set analysis.
/// The six wedge families together with the origin and (-1,-1) partition
/// the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    A(i64),
    B(i64),
    C(i64),
    D(i64),
    E(i64),
    F(i64),
    Origin,
    MinusOneMinusOne,
}

/// Classifies a lattice point:
///   A_k = {(j,k)   : -1 <= j < k}      B_k = {(k,j)   : 1 <= j <= k}
///   C_k = {(j,j-k) : 1 <= j <= k}      D_k = {(-j,-k) : 0 <= j < k}
///   E_k = {(-k,-j) : 2 <= j <= k}      F_k = {(-j,k-j): 2 <= j <= k+1}
pub fn region_classify(z: (i64, i64)) -> RegionLabel {
    let (z0, z1) = z;
    if z == (0, 0) {
        return RegionLabel::Origin;
    }
    if z == (-1, -1) {
        return RegionLabel::MinusOneMinusOne;
    }
    if z1 >= 0 && z0 >= -1 && z0 < z1 {
        return RegionLabel::A(z1);
    }
    if z0 >= 1 && (1..=z0).contains(&z1) {
        return RegionLabel::B(z0);
    }
    if z0 >= 1 && z1 <= 0 {
        return RegionLabel::C(z0 - z1);
    }
    if z1 <= -1 && z1 < z0 && z0 <= 0 {
        return RegionLabel::D(-z1);
    }
    if z0 <= -2 && z0 <= z1 && z1 <= -2 {
        return RegionLabel::E(-z0);
    }
    debug_assert!(z0 <= -2 && z1 >= -1, "partition gap at {z:?}");
    RegionLabel::F(z1 - z0)
}

/// A state of the extended system: a lattice pair plus a defect h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtState {
    pub z: (i64, i64),
    pub h: i8,
}

impl ExtState {
    pub fn new(z0: i64, z1: i64, h: i8) -> Self {
        assert!((-1..=1).contains(&h));
        Self { z: (z0, z1), h }
    }
}

/// The finite invariant set of the extended system for the family
/// x^3 - m x^2 - m x - m.
#[derive(Debug, Clone)]
pub struct VSet {
    pub m: i64,
    members: HashSet<(i64, i64, i8)>,
}

/// Builds V exactly: the wedge union over k <= m in all three defect
/// levels, minus two points; the listed k = m+1 slices; and, for m = 1,
/// one extra point (-2, 0, -1).
pub fn build_v(m: i64) -> VSet {
    assert!(m >= 1);
    let mut members: HashSet<(i64, i64, i8)> = HashSet::new();
    let lo = -(m + 2);
    let hi = m + 1;
    for z0 in lo..=hi {
        for z1 in lo..=hi {
            let z = (z0, z1);
            match region_classify(z) {
                RegionLabel::Origin | RegionLabel::MinusOneMinusOne => {
                    for h in -1..=1i8 {
                        members.insert((z0, z1, h));
                    }
                }
                RegionLabel::A(k)
                | RegionLabel::B(k)
                | RegionLabel::C(k)
                | RegionLabel::D(k)
                | RegionLabel::E(k)
                | RegionLabel::F(k)
                    if k <= m =>
                {
                    for h in -1..=1i8 {
                        members.insert((z0, z1, h));
                    }
                }
                RegionLabel::C(k) if k == m + 1 => {
                    if z != (m + 1, 0) {
                        members.insert((z0, z1, 1));
                    }
                }
                RegionLabel::D(k) if k == m + 1 => {
                    members.insert((z0, z1, 1));
                    if z != (0, -m - 1) {
                        members.insert((z0, z1, 0));
                    }
                    if z != (0, -m - 1) && z != (-1, -m - 1) && z != (-2, -m - 1) {
                        members.insert((z0, z1, -1));
                    }
                }
                RegionLabel::E(k) if k == m + 1 => {
                    if z != (-m - 1, -m - 1) {
                        for h in -1..=1i8 {
                            members.insert((z0, z1, h));
                        }
                    }
                }
                RegionLabel::F(k) if k == m + 1 => {
                    if z != (-m - 2, -1) && z != (-m - 1, 0) {
                        members.insert((z0, z1, -1));
                        members.insert((z0, z1, 0));
                    }
                }
                _ => {}
            }
        }
    }
    members.remove(&(-1, m, 1));
    members.remove(&(0, m, 1));
    if m == 1 {
        members.insert((-2, 0, -1));
    }
    VSet { m, members }
}

impl VSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &ExtState) -> bool {
        self.members.contains(&(s.z.0, s.z.1, s.h))
    }

    pub fn members(&self) -> impl Iterator<Item = ExtState> + '_ {
        self.members
            .iter()
            .map(|&(z0, z1, h)| ExtState { z: (z0, z1), h })
    }

    /// All defect levels present at a lattice point, sorted.
    pub fn levels_at(&self, z: (i64, i64)) -> Vec<i8> {
        let mut out: Vec<i8> = (-1..=1)
            .filter(|&h| self.members.contains(&(z.0, z.1, h)))
            .collect();
        out.sort_unstable();
        out
    }

    /// A point is full when all three defect levels belong to the set.
    pub fn is_full(&self, z: (i64, i64)) -> bool {
        self.levels_at(z).len() == 3
    }

    /// The lattice points whose defect-0 lift belongs to the set, sorted.
    pub fn zero_slice(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = self
            .members
            .iter()
            .filter(|&&(_, _, h)| h == 0)
            .map(|&(z0, z1, _)| (z0, z1))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn remove(&mut self, s: &ExtState) -> bool {
        self.members.remove(&(s.z.0, s.z.1, s.h))
    }
}

/// Choice of operation for the fractional-length analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrOp {
    Add,
    Sub,
}

/// The base x^3 - m x^2 - m x - m together with its shift radix system and
/// shared orbit context; everything the fractional-length analysis needs.
pub struct CubicFamily {
    pub m: i64,
    pub base: Arc<PisotBase>,
    pub params: SrsParams,
    ctx: NegaBetaCtx,
}

impl CubicFamily {
    pub fn new(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let poly = IntPolynomial::from_i64(&[1, -m, -m, -m])?;
        let base = isolate_pisot_base(&poly, true)?;
        let params = srs_from_base(&base)?;
        let ctx = NegaBetaCtx::new(&base);
        Ok(Self {
            m,
            base,
            params,
            ctx,
        })
    }

    /// floor(r.z + alpha) by the closed form
    ///   z0 - z1 + (0 if z0 >= 0 or z1 <= z0 = -1, else 1)
    /// on the box -m-1 <= z0 <= m, |z1| <= m+1, |z0 - z1| <= m+1, and by
    /// exact evaluation outside it.
    pub fn floor_rz_alpha(&self, z: (i64, i64)) -> i64 {
        let m = self.m;
        let (z0, z1) = z;
        if -m - 1 <= z0 && z0 <= m && z1.abs() <= m + 1 && (z0 - z1).abs() <= m + 1 {
            let corr = if z0 >= 0 || (z0 == -1 && z1 <= -1) {
                0
            } else {
                1
            };
            z0 - z1 + corr
        } else {
            self.floor_rz_alpha_exact(z)
        }
    }

    /// The exact floor, bypassing the closed form (test oracle and
    /// out-of-box fallback).
    pub fn floor_rz_alpha_exact(&self, z: (i64, i64)) -> i64 {
        let state = vec![BigInt::from(z.0), BigInt::from(z.1)];
        self.params
            .floor_rz(&state, None)
            .to_i64()
            .expect("floor exceeds i64")
    }

    /// The closed form alone; callers must stay on the box.
    pub fn floor_rz_alpha_closed(&self, z: (i64, i64)) -> i64 {
        let (z0, z1) = z;
        let corr = if z0 >= 0 || (z0 == -1 && z1 <= -1) {
            0
        } else {
            1
        };
        z0 - z1 + corr
    }

    /// tau on machine-size pairs.
    pub fn tau(&self, z: (i64, i64)) -> (i64, i64) {
        (z.1, -self.floor_rz_alpha(z))
    }

    /// phi(z) as an exact field element.
    pub fn phi(&self, z: (i64, i64)) -> FieldElement {
        self.params.phi(&[BigInt::from(z.0), BigInt::from(z.1)])
    }

    /// Phi(z, h) = phi(z) + h.
    pub fn phi_ext(&self, s: &ExtState) -> FieldElement {
        &self.phi(s.z) + &FieldElement::from_int(&self.base, s.h as i64)
    }

    /// One transition of the extended system under carry b, when the
    /// resulting defect stays in {-1,0,1}.
    pub fn ext_step(&self, s: &ExtState, b: i64) -> Option<ExtState> {
        let f = self.floor_rz_alpha(s.z);
        let new_z = (s.z.1, s.h as i64 - f);
        let inner = self.floor_rz_alpha(new_z);
        let base_h = (s.z.1 - s.z.0 - s.h as i64 + f) * self.m + inner;
        let h2 = base_h + b;
        if (-1..=1).contains(&h2) {
            Some(ExtState {
                z: new_z,
                h: h2 as i8,
            })
        } else {
            None
        }
    }

    /// The set-valued transition: all successors over carries in
    /// B = {-2m, ..., m}, sorted for determinism.
    pub fn tilde_tau(&self, s: &ExtState) -> Vec<ExtState> {
        let f = self.floor_rz_alpha(s.z);
        let new_z = (s.z.1, s.h as i64 - f);
        let inner = self.floor_rz_alpha(new_z);
        let base_h = (s.z.1 - s.z.0 - s.h as i64 + f) * self.m + inner;
        let mut out = Vec::new();
        for h2 in -1i64..=1 {
            let b = h2 - base_h;
            if -2 * self.m <= b && b <= self.m {
                out.push(ExtState {
                    z: new_z,
                    h: h2 as i8,
                });
            }
        }
        out
    }

    /// Exhaustive forward-invariance check of V under the set-valued
    /// transition; returns any violating (state, successor) pairs.
    pub fn verify_v_invariant(&self, v: &VSet) -> (bool, Vec<(ExtState, ExtState)>) {
        let mut violations = Vec::new();
        let mut states: Vec<ExtState> = v.members().collect();
        states.sort_unstable();
        for s in states {
            for t in self.tilde_tau(&s) {
                if !v.contains(&t) {
                    violations.push((s, t));
                }
            }
        }
        (violations.is_empty(), violations)
    }

    /// Exact number of tau steps from z to the origin, memoized.
    pub fn steps_to_zero(
        &self,
        z: (i64, i64),
        memo: &mut HashMap<(i64, i64), usize>,
        budget: usize,
    ) -> Result<usize> {
        let mut path: Vec<(i64, i64)> = Vec::new();
        let mut cur = z;
        while cur != (0, 0) && !memo.contains_key(&cur) {
            path.push(cur);
            cur = self.tau(cur);
            if path.len() > budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
        }
        let mut k = if cur == (0, 0) { 0 } else { memo[&cur] };
        for s in path.iter().rev() {
            k += 1;
            memo.insert(*s, k);
        }
        Ok(*memo.get(&z).unwrap_or(&0))
    }

    /// Certified maximum of fr(x - y): the longest exact tau path to the
    /// origin over the defect-0 slice of V, which contains every state a
    /// difference of two (-beta)-integers can land on.
    pub fn frmax_sub(&self, v: &VSet) -> Result<usize> {
        let mut memo = HashMap::new();
        let budget = 64 * (self.m as usize + 2);
        let mut best = 0;
        for z in v.zero_slice() {
            best = best.max(self.steps_to_zero(z, &mut memo, budget)?);
        }
        Ok(best)
    }

    /// Start states of the addition analysis: z whose value phi(z) can be
    /// written as -Phi(-z, h) for some admissible lift, decided exactly by
    /// the interval membership of -Phi(-z, h). Returns the states together
    /// with the lattice points that carried a lift in V but failed the
    /// interval test (the excluded ones).
    pub fn add_start_states(&self, v: &VSet) -> (Vec<(i64, i64)>, Vec<(i64, i64, i8)>) {
        let mut included: HashSet<(i64, i64)> = HashSet::new();
        let mut excluded: Vec<(i64, i64, i8)> = Vec::new();
        let mut points: Vec<ExtState> = v.members().collect();
        points.sort_unstable();
        for s in points {
            if s.h < 0 {
                continue;
            }
            let z = (-s.z.0, -s.z.1);
            if included.contains(&z) {
                continue;
            }
            let val = -&self.phi_ext(&s);
            let in_dom =
                (&val - &self.ctx.ell).sign() >= 0 && (&val - &self.ctx.ell_plus_one).sign() < 0;
            if in_dom {
                included.insert(z);
            } else {
                excluded.push((z.0, z.1, s.h));
            }
        }
        let mut inc: Vec<(i64, i64)> = included.into_iter().collect();
        inc.sort_unstable();
        excluded.retain(|&(z0, z1, _)| !inc.contains(&(z0, z1)));
        excluded.sort_unstable();
        excluded.dedup();
        (inc, excluded)
    }

    /// Certified maximum of fr(x + y): longest exact tau path to the
    /// origin over the addition start states.
    pub fn frmax_add(&self, v: &VSet) -> Result<usize> {
        let (starts, _) = self.add_start_states(v);
        let mut memo = HashMap::new();
        let budget = 64 * (self.m as usize + 2);
        let mut best = 0;
        for z in starts {
            best = best.max(self.steps_to_zero(z, &mut memo, budget)?);
        }
        Ok(best)
    }

    /// Value of a digit string, leftmost digit carrying the highest power
    /// of -beta.
    pub fn digits_value(&self, digits: &[i64]) -> FieldElement {
        let mut acc = FieldElement::zero(&self.base);
        for &d in digits {
            acc = &(&acc * &self.ctx.neg_beta) + &FieldElement::from_int(&self.base, d);
        }
        acc
    }

    /// The explicit witness pair attaining the subtraction maximum:
    /// x = 1 - beta, y = beta^4 - beta^3 for m = 1, and the block digit
    /// strings for larger m. Both членs are verified to be
    /// (-beta)-integers and the difference to attain the certified value.
    pub fn sub_witness(&self) -> Result<SubWitness> {
        let m = self.m;
        let (x, y) = if m == 1 {
            let beta = FieldElement::beta(&self.base);
            let x = &FieldElement::one(&self.base) - &beta;
            let y = &beta.pow(4)? - &beta.pow(3)?;
            (x, y)
        } else if m % 2 == 0 {
            let mut xd: Vec<i64> = Vec::new();
            let mut yd: Vec<i64> = Vec::new();
            let mut k = 2;
            while k <= m {
                xd.extend_from_slice(&[0, 0, 0, 0, k, k]);
                yd.extend_from_slice(&[0, k, k, 0, 0, 0]);
                k += 2;
            }
            xd.extend_from_slice(&[0, 0, 0, 0]);
            yd.extend_from_slice(&[0, 0, 1, 2]);
            (self.digits_value(&xd), self.digits_value(&yd))
        } else {
            let mut xd: Vec<i64> = Vec::new();
            let mut yd: Vec<i64> = Vec::new();
            let mut k = 2;
            while k <= m - 1 {
                xd.extend_from_slice(&[0, 0, 0, 0, k, k]);
                yd.extend_from_slice(&[0, k, k, 0, 0, 0]);
                k += 2;
            }
            xd.extend_from_slice(&[0, 0, 0, 0, m, m]);
            xd.extend_from_slice(&[0, 0, 0, 0, 0, m]);
            yd.extend_from_slice(&[0, m, 0, 0, 0, 0]);
            yd.extend_from_slice(&[0, 0, 1, 2, 0, 0]);
            (self.digits_value(&xd), self.digits_value(&yd))
        };
        let budget = DEFAULT_STEP_BUDGET;
        let fr_x = fr_length_with(&self.ctx, &x, budget)?;
        if fr_x != FrLength::Finite(0) {
            return Err(Error::WitnessMismatch(format!(
                "x is not a (-beta)-integer: {fr_x:?}"
            )));
        }
        let fr_y = fr_length_with(&self.ctx, &y, budget)?;
        if fr_y != FrLength::Finite(0) {
            return Err(Error::WitnessMismatch(format!(
                "y is not a (-beta)-integer: {fr_y:?}"
            )));
        }
        let diff = &x - &y;
        let fr = match fr_length_with(&self.ctx, &diff, budget)? {
            FrLength::Finite(n) => n,
            other => {
                return Err(Error::WitnessMismatch(format!(
                    "difference is not finite: {other:?}"
                )))
            }
        };
        let v = build_v(m);
        let certified = self.frmax_sub(&v)?;
        if fr != certified {
            return Err(Error::WitnessMismatch(format!(
                "witness reaches {fr}, certified maximum is {certified}"
            )));
        }
        let (x_word, _, _) = expansion_with(&self.ctx, &x, budget)?;
        let (y_word, _, _) = expansion_with(&self.ctx, &y, budget)?;
        Ok(SubWitness {
            x,
            y,
            fr,
            x_text: x_word.text(),
            y_text: y_word.text(),
        })
    }

    /// Independent brute-force search: the maximum fr(x op y) over all
    /// pairs of (-beta)-integers of length at most `depth`, computed by the
    /// common-scale definition (one k bringing x, y and x op y all into the
    /// open interval). Never exceeds the certified value and reaches it
    /// once the depth covers the witness.
    pub fn frmax_oracle(&self, depth: usize, op: FrOp) -> Result<usize> {
        let scale = self.ctx.neg_beta.pow(depth as i64)?;
        let ints: Vec<FieldElement> = enumerate_zmb_with(&self.ctx, depth)
            .into_iter()
            .map(|s| &s * &scale)
            .collect();
        let budget = DEFAULT_STEP_BUDGET;
        let mut seen: HashSet<Vec<BigRational>> = HashSet::new();
        let mut best = 0usize;
        for (i, x) in ints.iter().enumerate() {
            let j_start = if op == FrOp::Add { i } else { 0 };
            for y in &ints[j_start..] {
                let v = match op {
                    FrOp::Add => x + y,
                    FrOp::Sub => x - y,
                };
                if !seen.insert(v.coeff_key()) {
                    continue;
                }
                best = best.max(self.fr_common_scale(x, y, &v, budget)?);
            }
        }
        Ok(best)
    }

    /// fr via the common rescale: minimal k with x, y, v all scaled into
    /// the open interval, then the number of steps past k needed to reach
    /// zero.
    fn fr_common_scale(
        &self,
        x: &FieldElement,
        y: &FieldElement,
        v: &FieldElement,
        budget: usize,
    ) -> Result<usize> {
        let mut sx = x.clone();
        let mut sy = y.clone();
        let mut sv = v.clone();
        let mut k = 0usize;
        while !(self.ctx.in_open_interval(&sx)
            && self.ctx.in_open_interval(&sy)
            && self.ctx.in_open_interval(&sv))
        {
            sx = &sx * &self.ctx.inv_neg_beta;
            sy = &sy * &self.ctx.inv_neg_beta;
            sv = &sv * &self.ctx.inv_neg_beta;
            k += 1;
            if k > budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
        }
        let mut cur = sv;
        let mut j = 0usize;
        while !cur.is_zero() {
            let (next, _) = self.ctx.step(&cur)?;
            cur = next;
            j += 1;
            if j > budget {
                return Err(Error::StepBudgetExceeded(budget));
            }
        }
        Ok(j.saturating_sub(k))
    }
}

/// Witness pair report for the subtraction maximum.
#[derive(Debug, Clone)]
pub struct SubWitness {
    pub x: FieldElement,
    pub y: FieldElement,
    pub fr: usize,
    pub x_text: String,
    pub y_text: String,
}

/// Convenience wrappers constructing the family per call.
pub fn verify_v_invariant(m: i64) -> Result<(bool, Vec<(ExtState, ExtState)>)> {
    let fam = CubicFamily::new(m)?;
    let v = build_v(m);
    Ok(fam.verify_v_invariant(&v))
}

pub fn frmax_sub(m: i64) -> Result<usize> {
    let fam = CubicFamily::new(m)?;
    let v = build_v(m);
    fam.frmax_sub(&v)
}

pub fn frmax_add(m: i64) -> Result<usize> {
    let fam = CubicFamily::new(m)?;
    let v = build_v(m);
    fam.frmax_add(&v)
}

pub fn frmax_sub_witness(m: i64) -> Result<SubWitness> {
    CubicFamily::new(m)?.sub_witness()
}

pub fn frmax_oracle(m: i64, depth: usize, op: FrOp) -> Result<usize> {
    CubicFamily::new(m)?.frmax_oracle(depth, op)
}

/// Textual map of the invariant set on [-radius, radius]^2, top row first:
/// '@' full, '^' defects {0,1}, 'v' defects {-1,0}, 'o' defect {1} only,
/// '-' defect {-1} only, '+' defect {0} only, '.' absent.
pub fn region_map(m: i64, radius: i64) -> String {
    let v = build_v(m);
    let mut out = String::new();
    out.push_str(&format!(
        "V for m = {m} on [{lo}, {hi}]^2 (rows z1 = {hi} down to {lo})\n",
        lo = -radius,
        hi = radius
    ));
    for z1 in (-radius..=radius).rev() {
        for z0 in -radius..=radius {
            let c = match v.levels_at((z0, z1)).as_slice() {
                [-1, 0, 1] => '@',
                [0, 1] => '^',
                [-1, 0] => 'v',
                [1] => 'o',
                [-1] => '-',
                [0] => '+',
                [] => '.',
                other => unreachable!("unexpected defect set {other:?}"),
            };
            out.push(c);
        }
        out.push('\n');
    }
    out.push_str("legend: @ full  ^ {0,1}  v {-1,0}  o {1}  - {-1}  + {0}  . outside\n");
    out
}
