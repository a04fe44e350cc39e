//! Cartan data for types B and C: integral (and half-integral) weights,
//! Weyl groups as signed permutations, reduced words, Bruhat order, and the
//! Dynkin-embedding table.
//!
//! All weight arithmetic is exact. A [`Weight`] stores doubled coordinates
//! as `i64`, so type B spin weights (all coordinates half-odd-integral) and
//! ordinary integral weights share one representation without floats.

use crate::error::{Error, Result, Violation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// The two Lie families this crate models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
        }
    }
}

/// A Cartan type `B_n` or `C_n` with rank `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Violation::new("cartan.rank", "rank must be >= 1").into());
        }
        Ok(CartanType { family, rank })
    }

    pub fn b(rank: usize) -> Self {
        CartanType::new(Family::B, rank).expect("rank >= 1")
    }

    pub fn c(rank: usize) -> Self {
        CartanType::new(Family::C, rank).expect("rank >= 1")
    }

    /// Simple-root indices run 1..=rank.
    pub fn colors(&self) -> impl Iterator<Item = usize> + Clone {
        1..=self.rank
    }

    pub fn check_color(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange(format!(
                "color {} not in 1..={}",
                i, self.rank
            )));
        }
        Ok(())
    }

    /// The Dynkin-diagram automorphism induced by `-w_0` on simple roots.
    /// Types B and C are stable under negation, so this is the identity.
    pub fn theta(&self, i: usize) -> Result<usize> {
        self.check_color(i)?;
        Ok(i)
    }

    /// Order of the Weyl group, `2^n * n!`.
    pub fn weyl_order(&self) -> u128 {
        let mut o: u128 = 1;
        for k in 1..=self.rank as u128 {
            o *= 2 * k;
        }
        o
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// An exact weight in coordinates. Coordinate `k` is `doubled[k] / 2`.
///
/// Invariant: in type B all coordinates are integers or all are
/// half-odd-integers; in type C all are integers. Enforced by
/// [`Weight::check_parity`] at the points where weights enter the system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    doubled: Vec<i64>,
}

impl Weight {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Weight { doubled }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            doubled: vec![0; rank],
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight {
            doubled: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    /// Doubled coordinate accessor, 0-indexed.
    pub fn d(&self, k: usize) -> i64 {
        self.doubled[k]
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    pub fn check_parity(&self, t: CartanType) -> Result<()> {
        if self.doubled.len() != t.rank {
            return Err(Error::RankMismatch(format!(
                "weight has {} coordinates, type {} has rank {}",
                self.doubled.len(),
                t,
                t.rank
            )));
        }
        let all_int = self.doubled.iter().all(|d| d.rem_euclid(2) == 0);
        let all_half = self.doubled.iter().all(|d| d.rem_euclid(2) == 1);
        match t.family {
            Family::B if all_int || all_half => Ok(()),
            Family::C if all_int => Ok(()),
            _ => Err(Violation::new(
                "weight.parity",
                format!("{} is not a valid {} weight", self, t),
            )
            .into()),
        }
    }

    /// Weakly decreasing and nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] >= w[1])
            && self.doubled.last().is_none_or(|&d| d >= 0)
    }

    /// Pairing `<alpha_i^vee, self>`; always an integer for valid weights.
    pub fn pair_coroot(&self, t: CartanType, i: usize) -> Result<i64> {
        t.check_color(i)?;
        let n = t.rank;
        let v = if i < n {
            // alpha_i^vee = e_i - e_{i+1} in both families.
            (self.doubled[i - 1] - self.doubled[i]) / 2
        } else {
            match t.family {
                Family::B => self.doubled[n - 1],     // alpha_n^vee = 2 e_n
                Family::C => self.doubled[n - 1] / 2, // alpha_n^vee = e_n
            }
        };
        Ok(v)
    }

    /// Subtract `m` copies of the simple root `alpha_i`.
    pub fn sub_alpha(&self, t: CartanType, i: usize, m: i64) -> Result<Weight> {
        t.check_color(i)?;
        let n = t.rank;
        let mut d = self.doubled.clone();
        if i < n {
            d[i - 1] -= 2 * m;
            d[i] += 2 * m;
        } else {
            match t.family {
                Family::B => d[n - 1] -= 2 * m,
                Family::C => d[n - 1] -= 4 * m,
            }
        }
        Ok(Weight { doubled: d })
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&other.doubled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, m: i64) -> Weight {
        Weight {
            doubled: self.doubled.iter().map(|d| d * m).collect(),
        }
    }

    pub fn negate(&self) -> Weight {
        self.scale(-1)
    }
}

/// Simple reflection `s_i(mu) = mu - <alpha_i^vee, mu> alpha_i`.
///
/// For `i < n` this swaps coordinates `i, i+1`; for `i = n` it negates the
/// last coordinate (both families).
pub fn reflect_weight(t: CartanType, i: usize, mu: &Weight) -> Result<Weight> {
    t.check_color(i)?;
    if mu.rank() != t.rank {
        return Err(Error::RankMismatch(format!(
            "weight rank {} vs type rank {}",
            mu.rank(),
            t.rank
        )));
    }
    let m = mu.pair_coroot(t, i)?;
    mu.sub_alpha(t, i, m)
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.doubled.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if d % 2 == 0 {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{}/2", d)?;
            }
        }
        write!(f, ")")
    }
}

/// An element of the hyperoctahedral Weyl group `W(B_n) = W(C_n)`, stored in
/// one-line signed-permutation form: `perm[j-1] = w(e_j)` encoded as
/// `sign * image_index`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    perm: Vec<i64>,
    cached_length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            perm: (1..=rank as i64).collect(),
            cached_length: 0,
        }
    }

    /// The longest element `w_0 = -1`.
    pub fn longest(rank: usize) -> Self {
        let perm: Vec<i64> = (1..=rank as i64).map(|j| -j).collect();
        let mut w = WeylElement {
            perm,
            cached_length: 0,
        };
        w.cached_length = w.recompute_length();
        w
    }

    pub fn from_signed_perm(perm: Vec<i64>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            let a = p.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(Violation::new(
                    "weyl.signed_perm",
                    format!("{:?} is not a signed permutation of 1..={}", perm, n),
                )
                .into());
            }
            seen[a - 1] = true;
        }
        let mut w = WeylElement {
            perm,
            cached_length: 0,
        };
        w.cached_length = w.recompute_length();
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn signed_perm(&self) -> &[i64] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.cached_length == 0
    }

    pub fn length(&self) -> usize {
        self.cached_length
    }

    /// Coxeter length from scratch: the number of positive roots sent
    /// negative. A vector is a positive root iff its first nonzero
    /// coordinate is positive, so it suffices to scan images of
    /// `e_j - e_k`, `e_j + e_k` (j < k) and `e_j`.
    pub fn recompute_length(&self) -> usize {
        let n = self.perm.len();
        let mut len = 0usize;
        let img = |j: usize| -> (usize, i64) {
            let p = self.perm[j];
            (p.unsigned_abs() as usize - 1, p.signum())
        };
        let first_nonzero_negative = |coords: &[i64]| -> bool {
            for &c in coords {
                if c != 0 {
                    return c < 0;
                }
            }
            false
        };
        let mut coords = vec![0i64; n];
        for j in 0..n {
            for k in (j + 1)..n {
                for &(cj, ck) in &[(1i64, -1i64), (1, 1)] {
                    coords.iter_mut().for_each(|c| *c = 0);
                    let (pj, sj) = img(j);
                    let (pk, sk) = img(k);
                    coords[pj] += cj * sj;
                    coords[pk] += ck * sk;
                    if first_nonzero_negative(&coords) {
                        len += 1;
                    }
                }
            }
            let (pj, sj) = img(j);
            if sj < 0 {
                // image of the positive root e_j (type B) / 2e_j (type C)
                let _ = pj;
                len += 1;
            }
        }
        len
    }

    /// Left multiplication by the simple reflection `s_i`.
    ///
    /// `s_i` acts on coordinates: for `i < n` it swaps axes `i, i+1`; for
    /// `i = n` it negates axis `n`. In one-line form that rewrites images.
    pub fn left_mul_s(&self, i: usize) -> WeylElement {
        let n = self.perm.len();
        assert!(i >= 1 && i <= n);
        let mut perm = self.perm.clone();
        for p in perm.iter_mut() {
            let a = p.unsigned_abs() as usize;
            let s = p.signum();
            if i < n {
                if a == i {
                    *p = s * (i as i64 + 1);
                } else if a == i + 1 {
                    *p = s * (i as i64);
                }
            } else if a == n {
                *p = -*p;
            }
        }
        let mut w = WeylElement {
            perm,
            cached_length: 0,
        };
        w.cached_length = w.recompute_length();
        w
    }

    /// Right multiplication by `s_i`.
    pub fn right_mul_s(&self, i: usize) -> WeylElement {
        let n = self.perm.len();
        assert!(i >= 1 && i <= n);
        let mut perm = self.perm.clone();
        if i < n {
            perm.swap(i - 1, i);
        } else {
            perm[n - 1] = -perm[n - 1];
        }
        let mut w = WeylElement {
            perm,
            cached_length: 0,
        };
        w.cached_length = w.recompute_length();
        w
    }

    /// Group product `self * other` (apply `other` first).
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), other.rank());
        let perm: Vec<i64> = other
            .perm
            .iter()
            .map(|&p| {
                let a = p.unsigned_abs() as usize;
                let s = p.signum();
                s * self.perm[a - 1]
            })
            .collect();
        let mut w = WeylElement {
            perm,
            cached_length: 0,
        };
        w.cached_length = w.recompute_length();
        w
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0i64; n];
        for (j, &p) in self.perm.iter().enumerate() {
            let a = p.unsigned_abs() as usize;
            let s = p.signum();
            perm[a - 1] = s * (j as i64 + 1);
        }
        WeylElement {
            perm,
            cached_length: self.cached_length,
        }
    }

    /// Build from a word of simple-reflection indices, leftmost applied last.
    pub fn from_word(rank: usize, word: &[usize]) -> WeylElement {
        let mut w = WeylElement::identity(rank);
        for &i in word.iter().rev() {
            w = w.left_mul_s(i);
        }
        w
    }

    /// Action on a weight in coordinates.
    pub fn act(&self, mu: &Weight) -> Weight {
        assert_eq!(self.rank(), mu.rank());
        let mut d = vec![0i64; mu.rank()];
        for (j, &p) in self.perm.iter().enumerate() {
            let a = p.unsigned_abs() as usize;
            let s = p.signum();
            d[a - 1] = s * mu.d(j);
        }
        Weight::from_doubled(d)
    }

    /// One deterministic reduced word: repeatedly strip the smallest left
    /// descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut word = Vec::with_capacity(self.cached_length);
        let mut w = self.clone();
        while !w.is_identity() {
            let mut found = None;
            for i in 1..=n {
                let v = w.left_mul_s(i);
                if v.length() < w.length() {
                    found = Some((i, v));
                    break;
                }
            }
            let (i, v) = found.expect("non-identity element has a left descent");
            word.push(i);
            w = v;
        }
        word
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.perm.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

/// Strong Bruhat order via the subword criterion against one stored reduced
/// expression of `v`: the set of elements admitting a reduced subword of
/// `rex(v)` is exactly the lower interval `[e, v]`.
pub fn bruhat_leq(u: &WeylElement, v: &WeylElement) -> Result<bool> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(format!(
            "ranks {} vs {}",
            u.rank(),
            v.rank()
        )));
    }
    if u.length() > v.length() {
        return Ok(false);
    }
    let rex = v.reduced_word();
    let mut reachable: BTreeSet<Vec<i64>> = BTreeSet::new();
    let e = WeylElement::identity(u.rank());
    reachable.insert(e.signed_perm().to_vec());
    let mut lens: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    lens.insert(e.signed_perm().to_vec(), 0);
    for &i in &rex {
        let snapshot: Vec<Vec<i64>> = reachable.iter().cloned().collect();
        for p in snapshot {
            let x = WeylElement {
                perm: p.clone(),
                cached_length: lens[&p],
            };
            let y = x.right_mul_s(i);
            if y.length() > x.length() && y.length() <= v.length() {
                lens.insert(y.signed_perm().to_vec(), y.length());
                reachable.insert(y.signed_perm().to_vec());
            }
        }
    }
    Ok(reachable.contains(u.signed_perm()))
}

/// Orbit of a dominant weight with minimal reduced words.
///
/// Breadth-first over simple reflections; each orbit weight is paired with
/// the lexicographically smallest shortest word, which is a reduced word for
/// the unique minimal-length representative of its coset in `W / W_lambda`.
pub fn weyl_orbit_with_words(
    t: CartanType,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, Vec<usize>>> {
    lambda.check_parity(t)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(format!("{}", lambda)));
    }
    let mut words: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    words.insert(lambda.clone(), Vec::new());
    let mut frontier: Vec<Weight> = vec![lambda.clone()];
    while !frontier.is_empty() {
        // Collect all candidates for this layer, then keep lex-smallest words.
        let mut candidates: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for mu in &frontier {
            let parent_word = words[mu].clone();
            for i in t.colors() {
                let nu = reflect_weight(t, i, mu)?;
                if nu == *mu || words.contains_key(&nu) {
                    continue;
                }
                let mut w = Vec::with_capacity(parent_word.len() + 1);
                w.push(i);
                w.extend_from_slice(&parent_word);
                match candidates.get(&nu) {
                    Some(best) if *best <= w => {}
                    _ => {
                        candidates.insert(nu, w);
                    }
                }
            }
        }
        frontier = candidates.keys().cloned().collect();
        for (nu, w) in candidates {
            words.insert(nu, w);
        }
    }
    Ok(words)
}

/// The Weyl element named by a minimal orbit word (leftmost letter applied
/// last, matching `F*_w` reading).
pub fn element_of_word(t: CartanType, word: &[usize]) -> WeylElement {
    WeylElement::from_word(t.rank, word)
}

/// A row of the Dynkin-embedding table. Only the `B_n <-> C_n` rows are
/// executable; the remaining rows are carried as inert data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinEmbedding {
    pub source_family: String,
    pub source_rank: usize,
    pub target_family: String,
    pub target_rank: usize,
    /// `gamma[i-1]` is the scaling coefficient attached to source node `i`.
    pub gamma: Vec<u32>,
    /// `psi[i-1]` is the orbit of target nodes folded onto source node `i`.
    pub psi: Vec<Vec<usize>>,
    pub executable: bool,
}

impl DynkinEmbedding {
    /// `B_n -> C_n`: gamma_i = 2 for i < n, gamma_n = 1, psi(i) = {i}.
    pub fn b_to_c(n: usize) -> Self {
        DynkinEmbedding {
            source_family: "B".into(),
            source_rank: n,
            target_family: "C".into(),
            target_rank: n,
            gamma: (1..=n).map(|i| if i < n { 2 } else { 1 }).collect(),
            psi: (1..=n).map(|i| vec![i]).collect(),
            executable: true,
        }
    }

    /// `C_n -> B_n`: gamma_i = 1 for i < n, gamma_n = 2, psi(i) = {i}.
    pub fn c_to_b(n: usize) -> Self {
        DynkinEmbedding {
            source_family: "C".into(),
            source_rank: n,
            target_family: "B".into(),
            target_rank: n,
            gamma: (1..=n).map(|i| if i < n { 1 } else { 2 }).collect(),
            psi: (1..=n).map(|i| vec![i]).collect(),
            executable: true,
        }
    }

    /// The full folding table. Rows other than `B_n <-> C_n` are data only.
    pub fn table(n: usize) -> Vec<Self> {
        let mut rows = Vec::new();
        // C_n -> A_{2n-1}
        rows.push(DynkinEmbedding {
            source_family: "C".into(),
            source_rank: n,
            target_family: "A".into(),
            target_rank: 2 * n - 1,
            gamma: (1..=n).map(|i| if i < n { 1 } else { 2 }).collect(),
            psi: (1..=n)
                .map(|i| if i < n { vec![i, 2 * n - i] } else { vec![n] })
                .collect(),
            executable: false,
        });
        // B_n -> D_{n+1}
        rows.push(DynkinEmbedding {
            source_family: "B".into(),
            source_rank: n,
            target_family: "D".into(),
            target_rank: n + 1,
            gamma: (1..=n).map(|i| if i < n { 2 } else { 1 }).collect(),
            psi: (1..=n)
                .map(|i| if i < n { vec![i] } else { vec![n, n + 1] })
                .collect(),
            executable: false,
        });
        // F_4 -> E_6
        rows.push(DynkinEmbedding {
            source_family: "F".into(),
            source_rank: 4,
            target_family: "E".into(),
            target_rank: 6,
            gamma: vec![2, 2, 1, 1],
            psi: vec![vec![2], vec![4], vec![3, 5], vec![1, 6]],
            executable: false,
        });
        // G_2 -> D_4
        rows.push(DynkinEmbedding {
            source_family: "G".into(),
            source_rank: 2,
            target_family: "D".into(),
            target_rank: 4,
            gamma: vec![1, 3],
            psi: vec![vec![1, 3, 4], vec![2]],
            executable: false,
        });
        rows.push(DynkinEmbedding::b_to_c(n));
        rows.push(DynkinEmbedding::c_to_b(n));
        // B_n -> A_{2n-1}
        rows.push(DynkinEmbedding {
            source_family: "B".into(),
            source_rank: n,
            target_family: "A".into(),
            target_rank: 2 * n - 1,
            gamma: vec![1; n],
            psi: (1..=n)
                .map(|i| if i < n { vec![i, 2 * n - i] } else { vec![n] })
                .collect(),
            executable: false,
        });
        // C_n -> D_{n+1}
        rows.push(DynkinEmbedding {
            source_family: "C".into(),
            source_rank: n,
            target_family: "D".into(),
            target_rank: n + 1,
            gamma: vec![1; n],
            psi: (1..=n)
                .map(|i| if i < n { vec![i] } else { vec![n, n + 1] })
                .collect(),
            executable: false,
        });
        rows
    }

    pub fn source_type(&self) -> Result<CartanType> {
        match self.source_family.as_str() {
            "B" => Ok(CartanType::b(self.source_rank)),
            "C" => Ok(CartanType::c(self.source_rank)),
            f => Err(Error::UnsupportedEmbedding(format!(
                "source family {} has no executable model",
                f
            ))),
        }
    }

    pub fn target_type(&self) -> Result<CartanType> {
        match self.target_family.as_str() {
            "B" => Ok(CartanType::b(self.target_rank)),
            "C" => Ok(CartanType::c(self.target_rank)),
            f => Err(Error::UnsupportedEmbedding(format!(
                "target family {} has no executable model",
                f
            ))),
        }
    }

    pub fn is_bc(&self) -> bool {
        self.executable
            && self.source_family == "B"
            && self.target_family == "C"
            && self.source_rank == self.target_rank
    }

    pub fn is_cb(&self) -> bool {
        self.executable
            && self.source_family == "C"
            && self.target_family == "B"
            && self.source_rank == self.target_rank
    }
}

/// Image of a dominant weight under an executable embedding, in coordinates.
///
/// Expanding in fundamental weights and applying the table's gammas gives
/// `lambda -> 2 lambda` for `B_n -> C_n` and the coordinate-identity for
/// `C_n -> B_n` (the doubling at the spin node cancels the halving of the
/// spin fundamental weight).
pub fn embed_weight(emb: &DynkinEmbedding, lambda: &Weight) -> Result<Weight> {
    if !emb.executable {
        return Err(Error::UnsupportedEmbedding(format!(
            "{}{} -> {}{}",
            emb.source_family, emb.source_rank, emb.target_family, emb.target_rank
        )));
    }
    let src = emb.source_type()?;
    lambda.check_parity(src)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(format!("{}", lambda)));
    }
    if emb.is_bc() {
        Ok(lambda.scale(2))
    } else if emb.is_cb() {
        Ok(lambda.clone())
    } else {
        Err(Error::UnsupportedEmbedding(format!(
            "{}{} -> {}{}",
            emb.source_family, emb.source_rank, emb.target_family, emb.target_rank
        )))
    }
}

/// Exhaustive enumeration of `W(t)`; intended for small ranks in tests and
/// the verification suites.
pub fn all_weyl_elements(t: CartanType) -> Vec<WeylElement> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let e = WeylElement::identity(t.rank);
    seen.insert(e.signed_perm().to_vec());
    queue.push_back(e.clone());
    out.push(e);
    while let Some(w) = queue.pop_front() {
        for i in t.colors() {
            let v = w.left_mul_s(i);
            if seen.insert(v.signed_perm().to_vec()) {
                out.push(v.clone());
                queue.push_back(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(doubled: &[i64]) -> Weight {
        Weight::from_doubled(doubled.to_vec())
    }

    #[test]
    fn reflect_swaps_and_negates() {
        let b2 = CartanType::b(2);
        let c2 = CartanType::c(2);
        // (3/2, 1/2) has doubled coords (3, 1).
        assert_eq!(reflect_weight(b2, 1, &w(&[3, 1])).unwrap(), w(&[1, 3]));
        assert_eq!(reflect_weight(b2, 2, &w(&[3, 1])).unwrap(), w(&[3, -1]));
        assert_eq!(
            reflect_weight(c2, 2, &Weight::from_ints(&[1, 1])).unwrap(),
            Weight::from_ints(&[1, -1])
        );
    }

    #[test]
    fn reflect_is_involutive() {
        let b3 = CartanType::b(3);
        let mu = w(&[5, 3, -1]);
        for i in 1..=3 {
            let r = reflect_weight(b3, i, &mu).unwrap();
            assert_eq!(reflect_weight(b3, i, &r).unwrap(), mu);
        }
    }

    #[test]
    fn reflect_rejects_bad_color() {
        let b2 = CartanType::b(2);
        assert!(reflect_weight(b2, 0, &w(&[0, 0])).is_err());
        assert!(reflect_weight(b2, 3, &w(&[0, 0])).is_err());
    }

    #[test]
    fn orbit_sizes_b2() {
        let b2 = CartanType::b(2);
        let regular = weyl_orbit_with_words(b2, &w(&[3, 1])).unwrap();
        assert_eq!(regular.len(), 8);
        let vector = weyl_orbit_with_words(b2, &Weight::from_ints(&[1, 0])).unwrap();
        assert_eq!(vector.len(), 4);
        let zero = weyl_orbit_with_words(CartanType::c(2), &Weight::zero(2)).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[&Weight::zero(2)].is_empty());
    }

    #[test]
    fn orbit_rejects_non_dominant() {
        let b2 = CartanType::b(2);
        assert!(weyl_orbit_with_words(b2, &w(&[1, 3])).is_err());
    }

    #[test]
    fn orbit_words_reproduce_weights() {
        let b2 = CartanType::b(2);
        let lambda = w(&[3, 1]);
        for (mu, word) in weyl_orbit_with_words(b2, &lambda).unwrap() {
            // Apply the word to lambda coordinate-wise, rightmost letter first.
            let mut nu = lambda.clone();
            for &i in word.iter().rev() {
                nu = reflect_weight(b2, i, &nu).unwrap();
            }
            assert_eq!(nu, mu);
            // And the word names the same element acting on lambda.
            let elt = element_of_word(b2, &word);
            assert_eq!(elt.act(&lambda), mu);
            assert_eq!(elt.length(), word.len(), "orbit word must be reduced");
        }
    }

    #[test]
    fn orbit_size_times_stabilizer_is_group_order() {
        let b2 = CartanType::b(2);
        for lambda in [w(&[3, 1]), Weight::from_ints(&[1, 0]), Weight::from_ints(&[1, 1]), Weight::zero(2)] {
            let orbit = weyl_orbit_with_words(b2, &lambda).unwrap();
            let stab = all_weyl_elements(b2)
                .into_iter()
                .filter(|g| g.act(&lambda) == lambda)
                .count();
            assert_eq!(orbit.len() as u128 * stab as u128, b2.weyl_order());
        }
    }

    #[test]
    fn weyl_element_basics() {
        let w0 = WeylElement::longest(2);
        assert_eq!(w0.length(), 4);
        assert_eq!(w0.cached_length, w0.recompute_length());
        let e = WeylElement::identity(2);
        assert_eq!(w0.mul(&w0), e);
        let s1 = e.left_mul_s(1);
        let s2 = e.left_mul_s(2);
        // Braid relation in B_2: s1 s2 s1 s2 = s2 s1 s2 s1 = w0.
        let a = s1.mul(&s2).mul(&s1).mul(&s2);
        let b = s2.mul(&s1).mul(&s2).mul(&s1);
        assert_eq!(a, b);
        assert_eq!(a, w0);
    }

    #[test]
    fn from_signed_perm_validates() {
        assert!(WeylElement::from_signed_perm(vec![2, -1]).is_ok());
        assert!(WeylElement::from_signed_perm(vec![1, 1]).is_err());
        assert!(WeylElement::from_signed_perm(vec![3, 1]).is_err());
    }

    #[test]
    fn reduced_word_roundtrip() {
        let b3 = CartanType::b(3);
        for g in all_weyl_elements(b3) {
            let word = g.reduced_word();
            assert_eq!(word.len(), g.length());
            assert_eq!(WeylElement::from_word(3, &word), g);
        }
    }

    #[test]
    fn bruhat_extremes() {
        let e = WeylElement::identity(2);
        let w0 = WeylElement::longest(2);
        assert!(bruhat_leq(&e, &w0).unwrap());
        assert!(!bruhat_leq(&w0, &e).unwrap());
        let s1 = e.left_mul_s(1);
        let s2s1s2 = e.left_mul_s(2).left_mul_s(1).left_mul_s(2);
        // left_mul composes: s2 . (s1 . (s2 . e)) = s2 s1 s2.
        assert_eq!(s2s1s2.length(), 3);
        assert!(bruhat_leq(&s1, &s2s1s2).unwrap());
        assert!(bruhat_leq(&e, &e).unwrap());
        assert!(bruhat_leq(
            &WeylElement::identity(3),
            &WeylElement::longest(3)
        )
        .unwrap());
        assert!(bruhat_leq(&s1, &WeylElement::identity(3)).is_err());
    }

    /// Exhaustive oracle on W(B_2): u <= v iff some subword of some reduced
    /// expression of v multiplies to u at length l(u).
    #[test]
    fn bruhat_matches_exhaustive_oracle_on_b2() {
        let b2 = CartanType::b(2);
        let group = all_weyl_elements(b2);

        fn all_reduced_words(g: &WeylElement, rank: usize) -> Vec<Vec<usize>> {
            if g.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 1..=rank {
                let h = g.left_mul_s(i);
                if h.length() < g.length() {
                    for mut tail in all_reduced_words(&h, rank) {
                        tail.insert(0, i);
                        out.push(tail);
                    }
                }
            }
            out
        }

        fn subword_hits(word: &[usize], target: &WeylElement) -> bool {
            let n = target.rank();
            let mut reachable: BTreeSet<Vec<i64>> =
                [WeylElement::identity(n).signed_perm().to_vec()].into();
            for &i in word {
                let snapshot: Vec<Vec<i64>> = reachable.iter().cloned().collect();
                for p in snapshot {
                    let x = WeylElement::from_signed_perm(p).unwrap();
                    reachable.insert(x.right_mul_s(i).signed_perm().to_vec());
                }
            }
            reachable.contains(target.signed_perm())
        }

        for u in &group {
            for v in &group {
                let expected = all_reduced_words(v, 2)
                    .iter()
                    .any(|word| subword_hits(word, u));
                assert_eq!(
                    bruhat_leq(u, v).unwrap(),
                    expected,
                    "bruhat_leq({}, {})",
                    u,
                    v
                );
            }
        }
    }

    #[test]
    fn theta_is_identity() {
        assert_eq!(CartanType::b(3).theta(2).unwrap(), 2);
        assert_eq!(CartanType::c(2).theta(1).unwrap(), 1);
        assert_eq!(CartanType::b(1).theta(1).unwrap(), 1);
        assert!(CartanType::b(2).theta(5).is_err());
    }

    #[test]
    fn embed_weight_bc_doubles_and_cb_preserves() {
        let bc2 = DynkinEmbedding::b_to_c(2);
        assert_eq!(
            embed_weight(&bc2, &w(&[3, 1])).unwrap(),
            Weight::from_ints(&[3, 1])
        );
        let bc3 = DynkinEmbedding::b_to_c(3);
        assert_eq!(
            embed_weight(&bc3, &Weight::zero(3)).unwrap(),
            Weight::zero(3)
        );
        // Expanding (1,1) = omega_2^C in fundamental weights sends it to
        // 2 omega_2^B, whose coordinates are again (1,1).
        let cb2 = DynkinEmbedding::c_to_b(2);
        assert_eq!(
            embed_weight(&cb2, &Weight::from_ints(&[1, 1])).unwrap(),
            Weight::from_ints(&[1, 1])
        );
        let ca = &DynkinEmbedding::table(2)[0];
        assert!(!ca.executable);
        assert!(embed_weight(ca, &Weight::from_ints(&[1, 0])).is_err());
    }

    #[test]
    fn table_has_eight_rows() {
        let rows = DynkinEmbedding::table(3);
        assert_eq!(rows.len(), 8);
        assert_eq!(rows.iter().filter(|r| r.executable).count(), 2);
        let bc = rows.iter().find(|r| r.is_bc()).unwrap();
        assert_eq!(bc.gamma, vec![2, 2, 1]);
        assert!(bc.psi.iter().enumerate().all(|(k, o)| *o == vec![k + 1]));
        let cb = rows.iter().find(|r| r.is_cb()).unwrap();
        assert_eq!(cb.gamma, vec![1, 1, 2]);
    }
}
