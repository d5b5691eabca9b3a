use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num::{BigInt, One, Zero};

use crate::base::PisotBase;
use crate::error::Result;
use crate::field::FieldElement;
use crate::negabase::ell_beta;

/// A lattice state of the shift radix system.
pub type SrsState = Vec<BigInt>;

/// Parameters of the alpha-shift-radix system conjugate to the
/// (-beta)-transformation: the vector r of the cofactor coefficients and
/// alpha = beta/(beta+1).
#[derive(Debug, Clone)]
pub struct SrsParams {
    dim: usize,
    r: Vec<FieldElement>,
    alpha: FieldElement,
    base: Arc<PisotBase>,
}

/// alpha = beta/(beta+1) = -l_beta.
pub fn alpha(base: &Arc<PisotBase>) -> FieldElement {
    -&ell_beta(base)
}

/// Derives the system of a base of degree d: dimension d-1, with
///   x^d - a_1 x^(d-1) + a_2 x^(d-2) - ... = (x + beta)(x^(d-1) + r_(d-2) x^(d-2) + ... + r_0)
/// i.e. r_i the alternating partial sums of trailing coefficients over
/// powers of beta. The factorization identity and the recurrence
/// -beta r_i = r_(i-1) + c_i with integer c_i are both re-verified exactly.
pub fn srs_from_base(base: &Arc<PisotBase>) -> Result<SrsParams> {
    let d = base.degree();
    let dim = d - 1;
    let inv_beta = FieldElement::beta(base).inv()?;
    let mut r: Vec<FieldElement> = Vec::with_capacity(dim);
    for i in 0..dim {
        // r_i = (-1)^(d-i) * sum_{j=1..=i+1} a_(d-i-1+j) / beta^j
        let mut acc = FieldElement::zero(base);
        let mut pw = FieldElement::one(base);
        for j in 1..=(i + 1) {
            pw = &pw * &inv_beta;
            let a = base.minpoly().coeffs()[d - i - 1 + j].clone();
            acc = &acc + &pw.scale_int(&a);
        }
        if (d - i) % 2 == 1 {
            acc = -&acc;
        }
        r.push(acc);
    }
    let params = SrsParams {
        dim,
        r,
        alpha: alpha(base),
        base: base.clone(),
    };
    params.verify_factorization();
    params.verify_recurrence();
    Ok(params)
}

impl SrsParams {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> &[FieldElement] {
        &self.r
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn base(&self) -> &Arc<PisotBase> {
        &self.base
    }

    /// Expands (x + beta)(x^(d-1) + r_(d-2) x^(d-2) + ... + r_0) and checks
    /// it against the sign-alternated defining polynomial.
    fn verify_factorization(&self) {
        let base = &self.base;
        let d = base.degree();
        let beta = FieldElement::beta(base);
        // cofactor coefficients, highest power first: 1, r_(d-2), ..., r_0
        let mut cof: Vec<FieldElement> = vec![FieldElement::one(base)];
        for i in (0..self.dim).rev() {
            cof.push(self.r[i].clone());
        }
        // multiply by (x + beta)
        let mut prod: Vec<FieldElement> = vec![FieldElement::zero(base); d + 1];
        for (k, c) in cof.iter().enumerate() {
            prod[k] = &prod[k] + c;
            prod[k + 1] = &prod[k + 1] + &(c * &beta);
        }
        for (i, p) in prod.iter().enumerate() {
            let mut a = base.minpoly().coeffs()[i].clone();
            if i % 2 == 1 {
                a = -a;
            }
            let expected = FieldElement::from_bigint(base, a);
            assert!(
                (p - &expected).is_zero(),
                "cofactor factorization identity failed at position {i}"
            );
        }
    }

    /// -beta r_i = r_(i-1) + c_i with integer c_i, r_(-1) = 0.
    fn verify_recurrence(&self) {
        let base = &self.base;
        let neg_beta = -&FieldElement::beta(base);
        for i in 0..self.dim {
            let lhs = &neg_beta * &self.r[i];
            let prev = if i == 0 {
                FieldElement::zero(base)
            } else {
                self.r[i - 1].clone()
            };
            let c = &lhs - &prev;
            // c must be an exact integer
            let f = c.floor();
            let diff = &c - &FieldElement::from_bigint(base, f);
            assert!(
                diff.is_zero(),
                "recurrence defect at index {i} is not an integer"
            );
        }
    }

    /// r . z as an exact field element.
    pub fn dot(&self, z: &[BigInt]) -> FieldElement {
        assert_eq!(z.len(), self.dim, "state dimension mismatch");
        let mut acc = FieldElement::zero(&self.base);
        for (ri, zi) in self.r.iter().zip(z) {
            if !zi.is_zero() {
                acc = &acc + &ri.scale_int(zi);
            }
        }
        acc
    }

    /// floor(r . z + alpha), or with an override in place of alpha (the
    /// closure construction runs the system at alpha = 0).
    pub fn floor_rz(&self, z: &[BigInt], alpha_override: Option<&FieldElement>) -> BigInt {
        let a = alpha_override.unwrap_or(&self.alpha);
        (&self.dot(z) + a).floor()
    }

    /// One application: shift left and append -floor(r.z + alpha).
    pub fn tau_step(&self, z: &[BigInt], alpha_override: Option<&FieldElement>) -> SrsState {
        let f = self.floor_rz(z, alpha_override);
        let mut out: SrsState = Vec::with_capacity(self.dim);
        if self.dim > 0 {
            out.extend_from_slice(&z[1..]);
            out.push(-f);
        }
        out
    }

    /// The conjugacy map z -> r.z - floor(r.z + alpha), landing in
    /// Z[beta] intersected with [l_beta, l_beta + 1).
    pub fn phi(&self, z: &[BigInt]) -> FieldElement {
        let rz = self.dot(z);
        let f = (&rz + &self.alpha).floor();
        &rz - &FieldElement::from_bigint(&self.base, f)
    }

    /// Minimal closure of the unit vectors under z -> tau_(r,0)(z) and
    /// z -> -tau_(r,0)(-z), then all cycles of tau_(r,alpha) inside it.
    pub fn witness_closure(&self, cap: usize) -> WitnessClosure {
        let zero_state: SrsState = vec![BigInt::zero(); self.dim];
        let mut states: HashSet<SrsState> = HashSet::new();
        let mut frontier: Vec<SrsState> = Vec::new();
        for i in 0..self.dim {
            for sign in [1i64, -1] {
                let mut e = vec![BigInt::zero(); self.dim];
                e[i] = BigInt::from(sign);
                if states.insert(e.clone()) {
                    frontier.push(e);
                }
            }
        }
        let mut saturated = true;
        while let Some(z) = frontier.pop() {
            if states.len() > cap {
                saturated = false;
                break;
            }
            let neg: SrsState = z.iter().map(|c| -c).collect();
            let img1 = self.tau_step(&z, Some(&FieldElement::zero(&self.base)));
            let img2: SrsState = self
                .tau_step(&neg, Some(&FieldElement::zero(&self.base)))
                .iter()
                .map(|c| -c)
                .collect();
            for img in [img1, img2] {
                if !states.contains(&img) {
                    states.insert(img.clone());
                    frontier.push(img);
                }
            }
        }
        if !saturated {
            return WitnessClosure {
                states,
                saturated,
                cycles: vec![],
                max_steps_to_zero: None,
            };
        }
        let (cycles, max_steps) = self.cycles_within(&states, &zero_state);
        WitnessClosure {
            states,
            saturated,
            cycles,
            max_steps_to_zero: max_steps,
        }
    }

    /// Walks tau_(r,alpha) from every state of a forward-invariant set,
    /// classifying each as reaching zero or falling into a nonzero cycle.
    fn cycles_within(
        &self,
        states: &HashSet<SrsState>,
        zero_state: &SrsState,
    ) -> (Vec<Vec<SrsState>>, Option<usize>) {
        #[derive(Clone)]
        enum Res {
            Zero(usize),
            Cycle(usize),
        }
        let mut memo: HashMap<SrsState, Res> = HashMap::new();
        let mut succ: HashMap<SrsState, SrsState> = HashMap::new();
        let mut cycles: Vec<Vec<SrsState>> = Vec::new();
        let mut ordered: Vec<&SrsState> = states.iter().collect();
        ordered.sort();
        let mut max_steps: Option<usize> = if states.is_empty() { Some(0) } else { None };
        for start in ordered {
            if memo.contains_key(start) {
                continue;
            }
            let mut path: Vec<SrsState> = Vec::new();
            let mut index: HashMap<SrsState, usize> = HashMap::new();
            let mut cur = start.clone();
            let res: Res = loop {
                if cur == *zero_state {
                    break Res::Zero(0);
                }
                if let Some(r) = memo.get(&cur) {
                    break r.clone();
                }
                if let Some(&at) = index.get(&cur) {
                    // new cycle: path[at..]
                    let mut cyc = path[at..].to_vec();
                    canonical_rotate(&mut cyc);
                    let id = cycles.len();
                    cycles.push(cyc);
                    for s in &path[at..] {
                        memo.insert(s.clone(), Res::Cycle(id));
                    }
                    path.truncate(at);
                    break Res::Cycle(id);
                }
                index.insert(cur.clone(), path.len());
                path.push(cur.clone());
                let next = succ
                    .entry(cur.clone())
                    .or_insert_with(|| self.tau_step(&cur, None))
                    .clone();
                debug_assert!(
                    next == *zero_state || states.contains(&next),
                    "tau escaped the witness closure"
                );
                cur = next;
            };
            // resolve the remaining path suffix-first
            match res {
                Res::Zero(k0) => {
                    let mut k = k0;
                    for s in path.iter().rev() {
                        k += 1;
                        memo.insert(s.clone(), Res::Zero(k));
                        max_steps = Some(max_steps.map_or(k, |m: usize| m.max(k)));
                    }
                    if path.is_empty() {
                        max_steps = Some(max_steps.map_or(k0, |m| m.max(k0)));
                    }
                }
                Res::Cycle(id) => {
                    for s in path.iter().rev() {
                        memo.insert(s.clone(), Res::Cycle(id));
                    }
                }
            }
        }
        cycles.sort();
        (cycles, max_steps)
    }

    /// Decision procedure for membership of r in the finiteness region: the
    /// minimal closure is contained in every witness set, so a nonzero
    /// tau_(r,alpha)-cycle inside it defeats all witness sets, and when no
    /// cycle exists the closure itself is a witness set without nonzero
    /// periodic points.
    pub fn decide_d0(&self, cap: usize) -> D0Decision {
        if self.dim == 0 {
            return D0Decision::InD0 {
                closure_states: 0,
                max_steps_to_zero: 0,
            };
        }
        let wc = self.witness_closure(cap);
        if !wc.saturated {
            return D0Decision::Inconclusive;
        }
        if wc.cycles.is_empty() {
            D0Decision::InD0 {
                closure_states: wc.states.len(),
                max_steps_to_zero: wc.max_steps_to_zero.unwrap_or(0),
            }
        } else {
            D0Decision::NotInD0 {
                cycle: wc.cycles[0].clone(),
            }
        }
    }

    /// Replays a claimed cycle: every listed transition must hold and the
    /// last state must map back to the first.
    pub fn replay_cycle(&self, cycle: &[SrsState]) -> bool {
        if cycle.is_empty() {
            return false;
        }
        let zero_state: SrsState = vec![BigInt::zero(); self.dim];
        if cycle.iter().any(|s| *s == zero_state) {
            return false;
        }
        for (i, s) in cycle.iter().enumerate() {
            let next = self.tau_step(s, None);
            if next != cycle[(i + 1) % cycle.len()] {
                return false;
            }
        }
        true
    }
}

/// Rotates a cycle so that it starts at its lexicographically minimal state.
fn canonical_rotate(cycle: &mut Vec<SrsState>) {
    if cycle.is_empty() {
        return;
    }
    let min_idx = cycle
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_idx);
}

/// Result of the witness-set construction.
#[derive(Debug, Clone)]
pub struct WitnessClosure {
    pub states: HashSet<SrsState>,
    pub saturated: bool,
    /// Nonzero cycles of tau_(r,alpha) inside the closure, each in minimal
    /// rotation, sorted.
    pub cycles: Vec<Vec<SrsState>>,
    /// Longest path to the zero state over the closure, when every state
    /// reaches it.
    pub max_steps_to_zero: Option<usize>,
}

/// Outcome of the finiteness decision for the shift radix system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum D0Decision {
    InD0 {
        closure_states: usize,
        max_steps_to_zero: usize,
    },
    NotInD0 {
        cycle: Vec<SrsState>,
    },
    Inconclusive,
}

/// Formats a state as "(z0,z1,...)".
pub fn state_string(z: &[BigInt]) -> String {
    let inner = z
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("({inner})")
}

/// Builds the defining polynomial of the d-bonacci family
/// x^d - m x^(d-1) - ... - m x - m.
pub fn dbonacci_poly(d: usize, m: i64) -> crate::poly::IntPolynomial {
    let mut coeffs = vec![BigInt::one()];
    coeffs.extend(std::iter::repeat(BigInt::from(-m)).take(d));
    crate::poly::IntPolynomial::new(coeffs).expect("valid d-bonacci polynomial")
}
