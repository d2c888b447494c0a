//! Signed-permutation Weyl groups, minimal coset representatives, and
//! symmetrization.
//!
//! Blocks come in three kinds: plain symmetric groups (general linear), full
//! hyperoctahedral groups (types B/C: all sign vectors), and the even-sign
//! subgroup (type D). Shuffle sums run over minimal representatives of
//! `W_{GL_a} x W_b \ W_{a+b}`; the full-group sum is retained as an
//! independent oracle equal to the coset sum times the subgroup orders on
//! invariant inputs.

use crate::symbolic::{FactoredRational, Polynomial, Variable};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Weyl-group kind of one torus block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Symmetric group only (general linear block, and non-fixed orbits).
    Gl,
    /// Hyperoctahedral `(Z/2)^n ⋊ S_n` (types B and C: Sp and odd orthogonal).
    BC,
    /// Even-sign subgroup `(Z/2)^{n-1} ⋊ S_n` (even orthogonal).
    D,
}

/// A signed permutation of `{0, .., n-1}`: slot `k` maps to slot `perm[k]`,
/// negated when `signs[k]` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<u32>,
    signs: Vec<bool>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n as u32).collect(),
            signs: vec![false; n],
        }
    }

    pub fn new(perm: Vec<u32>, signs: Vec<bool>) -> Self {
        assert_eq!(perm.len(), signs.len());
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(!seen[p as usize], "not a permutation");
            seen[p as usize] = true;
        }
        SignedPermutation { perm, signs }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// Image of slot `k`: target slot and whether the sign flips.
    pub fn image(&self, k: usize) -> (usize, bool) {
        (self.perm[k] as usize, self.signs[k])
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|s| **s).count()
    }

    pub fn satisfies(&self, kind: BlockKind) -> bool {
        match kind {
            BlockKind::Gl => self.minus_count() == 0,
            BlockKind::BC => true,
            BlockKind::D => self.minus_count() % 2 == 0,
        }
    }

    pub fn key(&self) -> (Vec<u32>, Vec<bool>) {
        (self.perm.clone(), self.signs.clone())
    }

    /// Group law compatible with `apply(w1, apply(w2, p)) = apply(w1*w2, p)`
    /// where `apply` substitutes `x_k -> sign_k * x_{perm[k]}`.
    pub fn compose(&self, inner: &SignedPermutation) -> SignedPermutation {
        let n = self.rank();
        assert_eq!(n, inner.rank());
        let mut perm = vec![0u32; n];
        let mut signs = vec![false; n];
        for k in 0..n {
            let (j, s2) = inner.image(k);
            let (i, s1) = self.image(j);
            perm[k] = i as u32;
            signs[k] = s1 ^ s2;
        }
        SignedPermutation { perm, signs }
    }

    /// Substitution fragment on the given slot variables.
    pub fn substitution(&self, slots: &[Variable]) -> BTreeMap<Variable, Polynomial> {
        assert_eq!(slots.len(), self.rank());
        let mut map = BTreeMap::new();
        for (k, v) in slots.iter().enumerate() {
            let (j, neg) = self.image(k);
            let img = Polynomial::var(slots[j]);
            map.insert(*v, if neg { -&img } else { img });
        }
        map
    }
}

fn permutations_lex(n: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u32);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every element of the block Weyl group, in a deterministic order
/// (permutation words lexicographically, then sign vectors as binary words).
pub fn enumerate_full(kind: BlockKind, n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for perm in permutations_lex(n) {
        match kind {
            BlockKind::Gl => out.push(SignedPermutation {
                perm: perm.clone(),
                signs: vec![false; n],
            }),
            BlockKind::BC | BlockKind::D => {
                for mask in 0..(1u32 << n) {
                    let signs: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
                    let w = SignedPermutation {
                        perm: perm.clone(),
                        signs,
                    };
                    if w.satisfies(kind) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

pub fn group_order(kind: BlockKind, n: usize) -> u64 {
    let fact: u64 = (1..=n as u64).product();
    match kind {
        BlockKind::Gl => fact,
        BlockKind::BC => fact << n,
        BlockKind::D => {
            if n == 0 {
                1
            } else {
                fact << (n - 1)
            }
        }
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Minimal representatives of `(W_{GL_a} x W_{kind, b}) \ W_{kind, a+b}`.
///
/// The first `a` slots form the general-linear (sub) block, the last `b`
/// slots the `kind`-block. Representatives: target positions for the sub
/// block (order-preserving) and, for the signed kinds, one sign per chosen
/// slot; the complement fills the remaining slots in ascending order. For
/// type D the total sign count is kept even by flipping the last complement
/// slot when `b >= 1`; when `b = 0` only even sign vectors occur.
pub fn coset_reps(kind: BlockKind, a: usize, b: usize) -> Vec<SignedPermutation> {
    let n = a + b;
    let mut out = Vec::new();
    for subset in subsets_of_size(n, a) {
        let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let sign_range = match kind {
            BlockKind::Gl => 0..1u32,
            BlockKind::BC | BlockKind::D => 0..(1u32 << a),
        };
        for mask in sign_range {
            let signs_sub: Vec<bool> = (0..a).map(|k| mask >> k & 1 == 1).collect();
            let parity = signs_sub.iter().filter(|s| **s).count() % 2;
            let mut perm = vec![0u32; n];
            let mut signs = vec![false; n];
            for (k, &tgt) in subset.iter().enumerate() {
                perm[k] = tgt as u32;
                signs[k] = signs_sub[k];
            }
            for (k, &tgt) in complement.iter().enumerate() {
                perm[a + k] = tgt as u32;
            }
            if kind == BlockKind::D && parity == 1 {
                if b == 0 {
                    continue;
                }
                signs[n - 1] = true;
            }
            out.push(SignedPermutation { perm, signs });
        }
    }
    out
}

/// Order-preserving shuffles of three blocks of sizes `a`, `b`, `c` inside
/// `S_{a+b+c}` (minimal representatives of the parabolic quotient).
pub fn shuffles3(a: usize, b: usize, c: usize) -> Vec<SignedPermutation> {
    let n = a + b + c;
    let mut out = Vec::new();
    for sa in subsets_of_size(n, a) {
        let rest: Vec<usize> = (0..n).filter(|i| !sa.contains(i)).collect();
        for sb_idx in subsets_of_size(rest.len(), b) {
            let sb: Vec<usize> = sb_idx.iter().map(|&i| rest[i]).collect();
            let sc: Vec<usize> = rest.iter().copied().filter(|i| !sb.contains(i)).collect();
            let mut perm = vec![0u32; n];
            for (k, &t) in sa.iter().enumerate() {
                perm[k] = t as u32;
            }
            for (k, &t) in sb.iter().enumerate() {
                perm[a + k] = t as u32;
            }
            for (k, &t) in sc.iter().enumerate() {
                perm[a + b + k] = t as u32;
            }
            out.push(SignedPermutation {
                perm,
                signs: vec![false; n],
            });
        }
    }
    out
}

/// Generating set: adjacent transpositions, plus one sign generator for BC
/// (flip the first slot) or the double sign flip for D.
pub fn generators(kind: BlockKind, n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.swap(i, i + 1);
        out.push(SignedPermutation {
            perm,
            signs: vec![false; n],
        });
    }
    match kind {
        BlockKind::Gl => {}
        BlockKind::BC => {
            if n >= 1 {
                let mut signs = vec![false; n];
                signs[0] = true;
                out.push(SignedPermutation {
                    perm: (0..n as u32).collect(),
                    signs,
                });
            }
        }
        BlockKind::D => {
            if n >= 2 {
                let mut signs = vec![false; n];
                signs[0] = true;
                signs[1] = true;
                out.push(SignedPermutation {
                    perm: (0..n as u32).collect(),
                    signs,
                });
            }
        }
    }
    out
}

/// A Weyl element of a product group: one signed permutation per orbit.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub blocks: BTreeMap<u32, SignedPermutation>,
}

impl WeylElement {
    pub fn substitution(
        &self,
        slots: &BTreeMap<u32, Vec<Variable>>,
    ) -> BTreeMap<Variable, Polynomial> {
        let mut map = BTreeMap::new();
        for (orbit, w) in &self.blocks {
            let vars = slots.get(orbit).expect("orbit slots missing");
            map.extend(w.substitution(vars));
        }
        map
    }
}

/// All elements of the product group over the given `(orbit, kind, rank)`
/// blocks, in deterministic order.
pub fn enumerate_weyl(blocks: &[(u32, BlockKind, usize)]) -> Vec<WeylElement> {
    let mut out = vec![WeylElement {
        blocks: BTreeMap::new(),
    }];
    for (orbit, kind, rank) in blocks {
        let elems = enumerate_full(*kind, *rank);
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for partial in &out {
            for e in &elems {
                let mut blocks = partial.blocks.clone();
                blocks.insert(*orbit, e.clone());
                next.push(WeylElement { blocks });
            }
        }
        out = next;
    }
    out
}

/// Apply one signed permutation to a rational function through its slot variables.
pub fn apply(
    w: &SignedPermutation,
    slots: &[Variable],
    value: &FactoredRational,
) -> FactoredRational {
    value
        .substitute(&w.substitution(slots))
        .expect("signed permutation images are affine")
}

/// Is `value` invariant under the block group generated on `slots`?
pub fn is_invariant(value: &FactoredRational, kind: BlockKind, slots: &[Variable]) -> bool {
    generators(kind, slots.len())
        .iter()
        .all(|g| apply(g, slots, value).eq_exact(value))
}

/// Deterministic parallel sum of `term(w)` over representatives.
///
/// Terms combine through one exact common-denominator sum, so the result is
/// independent of chunking and schedule.
pub fn symmetrize<F>(reps: &[SignedPermutation], term: F) -> FactoredRational
where
    F: Fn(&SignedPermutation) -> FactoredRational + Sync,
{
    let terms: Vec<FactoredRational> = reps.par_iter().map(|w| term(w)).collect();
    FactoredRational::sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::int;

    fn slots(n: u32) -> Vec<Variable> {
        (1..=n).map(|k| Variable::torus(1, 2, k)).collect()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_full(BlockKind::BC, 2).len(), 8);
        assert_eq!(enumerate_full(BlockKind::D, 2).len(), 4);
        assert_eq!(enumerate_full(BlockKind::Gl, 3).len(), 6);
    }

    #[test]
    fn coset_counts_match_index_up_to_rank_5() {
        for kind in [BlockKind::Gl, BlockKind::BC, BlockKind::D] {
            for a in 0..=5usize {
                for b in 0..=(5 - a) {
                    if a + b == 0 {
                        continue;
                    }
                    let reps = coset_reps(kind, a, b).len() as u64;
                    let sub = group_order(BlockKind::Gl, a) * group_order(kind, b);
                    assert_eq!(
                        reps * sub,
                        group_order(kind, a + b),
                        "kind {kind:?} split ({a},{b})"
                    );
                }
            }
        }
        assert_eq!(coset_reps(BlockKind::Gl, 1, 1).len(), 2);
        assert_eq!(coset_reps(BlockKind::BC, 1, 1).len(), 4);
        assert_eq!(coset_reps(BlockKind::BC, 0, 3).len(), 1);
    }

    #[test]
    fn coset_reps_hit_each_coset_once() {
        for kind in [BlockKind::Gl, BlockKind::BC, BlockKind::D] {
            for (a, b) in [(1usize, 2usize), (2, 1), (2, 0), (2, 2)] {
                let n = a + b;
                let reps = coset_reps(kind, a, b);
                let mut all: Vec<(Vec<u32>, Vec<bool>)> = Vec::new();
                for pa in enumerate_full(BlockKind::Gl, a) {
                    for pb in enumerate_full(kind, b) {
                        let mut perm = vec![0u32; n];
                        let mut signs = vec![false; n];
                        for k in 0..a {
                            let (i, s) = pa.image(k);
                            perm[k] = i as u32;
                            signs[k] = s;
                        }
                        for k in 0..b {
                            let (i, s) = pb.image(k);
                            perm[a + k] = (a + i) as u32;
                            signs[a + k] = s;
                        }
                        let h = SignedPermutation { perm, signs };
                        for w in &reps {
                            all.push(w.compose(&h).key());
                        }
                    }
                }
                let total = group_order(kind, n) as usize;
                assert_eq!(all.len(), total);
                all.sort();
                all.dedup();
                assert_eq!(all.len(), total, "kind {kind:?} ({a},{b}): bad cosets");
            }
        }
    }

    #[test]
    fn apply_examples() {
        let sl = slots(2);
        // ((1 2), (+,-)) applied to x1*x2^2 gives x1^2*x2
        let w = SignedPermutation::new(vec![1, 0], vec![false, true]);
        let p = FactoredRational::from_poly(
            &Polynomial::var(sl[0]) * &(&Polynomial::var(sl[1]) * &Polynomial::var(sl[1])),
        );
        let got = apply(&w, &sl, &p);
        let want = FactoredRational::from_poly(
            &(&Polynomial::var(sl[0]) * &Polynomial::var(sl[0])) * &Polynomial::var(sl[1]),
        );
        assert!(got.eq_exact(&want));
        let id = SignedPermutation::identity(2);
        assert!(apply(&id, &sl, &p).eq_exact(&p));
        // full sign flip negates 1/(x1+x2)
        let inv = FactoredRational::from_poly_over_forms(
            Polynomial::one(),
            vec![&Polynomial::var(sl[0]) + &Polynomial::var(sl[1])],
        )
        .unwrap();
        let flip = SignedPermutation::new(vec![0, 1], vec![true, true]);
        assert!(apply(&flip, &sl, &inv).eq_exact(&inv.neg()));
    }

    #[test]
    fn apply_is_group_action() {
        let sl = slots(3);
        let p = {
            let x1 = Polynomial::var(sl[0]);
            let x2 = Polynomial::var(sl[1]);
            let x3 = Polynomial::var(sl[2]);
            FactoredRational::from_poly_over_forms(&(&x1 * &x2) + &x3, vec![&x1 - &x2]).unwrap()
        };
        let w1 = SignedPermutation::new(vec![2, 0, 1], vec![true, false, true]);
        let w2 = SignedPermutation::new(vec![1, 2, 0], vec![false, true, false]);
        let lhs = apply(&w1, &sl, &apply(&w2, &sl, &p));
        let rhs = apply(&w1.compose(&w2), &sl, &p);
        assert!(lhs.eq_exact(&rhs));
    }

    #[test]
    fn invariance_examples() {
        let sl = slots(2);
        let x1 = Polynomial::var(sl[0]);
        let x2 = Polynomial::var(sl[1]);
        assert!(is_invariant(
            &FactoredRational::from_poly(&x1 + &x2),
            BlockKind::Gl,
            &sl
        ));
        assert!(is_invariant(
            &FactoredRational::from_poly(&(&x1 * &x1) + &(&x2 * &x2)),
            BlockKind::BC,
            &sl
        ));
        assert!(!is_invariant(
            &FactoredRational::from_poly(x1.clone()),
            BlockKind::BC,
            &sl[..1]
        ));
    }

    #[test]
    fn symmetrize_examples() {
        let sl = slots(2);
        let reps = coset_reps(BlockKind::Gl, 1, 1);
        let got = symmetrize(&reps, |w| apply(w, &sl, &FactoredRational::var(sl[0])));
        assert!(got.eq_exact(&FactoredRational::from_poly(
            &Polynomial::var(sl[0]) + &Polynomial::var(sl[1])
        )));

        let reps = coset_reps(BlockKind::BC, 1, 1);
        let got = symmetrize(&reps, |_| FactoredRational::one());
        assert!(got.eq_exact(&FactoredRational::from_scalar(int(4))));

        // x/(x-y) + y/(y-x) = 1
        let reps = coset_reps(BlockKind::Gl, 1, 1);
        let base = FactoredRational::from_poly_over_forms(
            Polynomial::var(sl[0]),
            vec![&Polynomial::var(sl[0]) - &Polynomial::var(sl[1])],
        )
        .unwrap();
        let got = symmetrize(&reps, |w| apply(w, &sl, &base));
        assert!(got.eq_exact(&FactoredRational::one()));
    }

    #[test]
    fn full_sum_equals_index_times_coset_sum_on_invariants() {
        let sl = slots(2);
        let term = {
            let x1 = Polynomial::var(sl[0]);
            let x2 = Polynomial::var(sl[1]);
            FactoredRational::from_poly(&(&x1 * &x1) * &(&x2 * &x2))
        };
        for kind in [BlockKind::BC, BlockKind::D] {
            let full = symmetrize(&enumerate_full(kind, 2), |w| apply(w, &sl, &term));
            let coset = symmetrize(&coset_reps(kind, 1, 1), |w| apply(w, &sl, &term));
            let index = int(group_order(BlockKind::Gl, 1) as i64)
                * int(group_order(kind, 1) as i64);
            assert!(full.eq_exact(&coset.mul(&FactoredRational::from_scalar(index))));
        }
    }
}
