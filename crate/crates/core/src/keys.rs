//! Dilation into tensor powers, right/left keys, Demazure atoms, and the
//! combinatorial key characterization.

use crate::cartan::{bruhat_leq, WeylElement};
use crate::error::{Error, Result};
use crate::graph::{
    extremal_set, f_path, max_string_length, strings, tensor_apply, CrystalGraph, CrystalVertex,
    ExtremalSet, TensorElement,
};
use crate::tableau::{CrystalOp, KNTableau};

/// The image of a vertex under the dilation embedding into `B(lambda)^(x)m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationImage {
    pub base: CrystalVertex,
    pub m: usize,
    pub factors: TensorElement,
}

/// Dilate a vertex: record a lowering path from the highest vertex and replay
/// it with `m`-fold powers on the `m`-fold tensor of the highest vertex.
pub fn dilate(g: &CrystalGraph, v: usize, m: usize) -> Result<DilationImage> {
    if m == 0 {
        return Err(Error::IndexOutOfRange("dilation multiplicity 0".into()));
    }
    let path = f_path(g, v);
    let hw = g.vertex(g.highest).clone();
    let mut t = TensorElement::new(vec![hw; m]);
    for &c in &path {
        for _ in 0..m {
            t = tensor_apply(CrystalOp::F, c, &t)?.ok_or_else(|| {
                Error::Internal(format!(
                    "dilation path annihilated at color {} (m = {})",
                    c, m
                ))
            })?;
        }
    }
    let img = DilationImage {
        base: g.vertex(v).clone(),
        m,
        factors: t,
    };
    debug_assert_eq!(
        CrystalVertex::Tensor(img.factors.clone()).weight(),
        img.base.weight().scale(m as i64)
    );
    Ok(img)
}

/// The tight dilation bound: the maximum `i`-string length of the crystal.
pub fn ell_bound(g: &CrystalGraph) -> usize {
    max_string_length(g)
}

/// The pair of keys of a vertex together with their minimal coset
/// representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub right: CrystalVertex,
    pub left: CrystalVertex,
    pub right_elt: WeylElement,
    pub left_elt: WeylElement,
    pub right_word: Vec<usize>,
    pub left_word: Vec<usize>,
}

/// Keys by dilation at the tight bound: the first tensor factor of
/// `Theta_ell(b)` is the right key, the last is the left key. Under the
/// Kashiwara tensor convention the right key sits leftmost; conventions
/// that reverse tensor factors put it at the other end.
pub fn keys(g: &CrystalGraph, v: usize) -> Result<KeyPair> {
    let ext = extremal_set(g);
    keys_with_extremal(g, v, &ext)
}

/// As [`keys`], reusing a precomputed extremal set.
pub fn keys_with_extremal(g: &CrystalGraph, v: usize, ext: &ExtremalSet) -> Result<KeyPair> {
    let m = ell_bound(g).max(1);
    let img = dilate(g, v, m)?;
    let first = img.factors.factors.first().unwrap().clone();
    let last = img.factors.factors.last().unwrap().clone();
    let lookup = |vx: &CrystalVertex, side: &str| -> Result<(usize, WeylElement, Vec<usize>)> {
        let idx = g.index_of(vx).ok_or_else(|| {
            Error::Internal(format!("{} key endpoint left the component", side))
        })?;
        let (elt, word) = ext.map.get(&idx).cloned().ok_or_else(|| {
            Error::Internal(format!(
                "{} key endpoint {} is not extremal at m = {}",
                side,
                vx.label(),
                m
            ))
        })?;
        Ok((idx, elt, word))
    };
    let (_, right_elt, right_word) = lookup(&first, "right")?;
    let (_, left_elt, left_word) = lookup(&last, "left")?;
    Ok(KeyPair {
        right: first,
        left: last,
        right_elt,
        left_elt,
        right_word,
        left_word,
    })
}

/// Check the Bruhat comparability carried by a key pair: the left key's
/// representative lies below the right key's.
pub fn key_pair_comparable(kp: &KeyPair) -> Result<bool> {
    bruhat_leq(&kp.left_elt, &kp.right_elt)
}

/// A witness that the bound `ell` is tight: some vertex whose
/// `(ell-1)`-dilation starts with a non-extremal factor. Searches along
/// maximal-length strings first, as in the bound's converse direction.
pub fn tightness_witness(g: &CrystalGraph) -> Result<Option<usize>> {
    let ell = ell_bound(g);
    if ell < 2 {
        return Ok(None);
    }
    let ext = extremal_set(g);
    let m = ell - 1;
    let non_extremal_start = |v: usize| -> Result<bool> {
        let img = dilate(g, v, m)?;
        let first = img.factors.factors.first().unwrap();
        let idx = g
            .index_of(first)
            .ok_or_else(|| Error::Internal("dilated factor left the component".into()))?;
        Ok(!ext.contains(idx))
    };
    for i in g.ctype.colors() {
        for s in strings(g, i) {
            if s.length() == ell && ext.contains(s.vertices[0]) {
                for &v in &s.vertices[1..] {
                    if non_extremal_start(v)? {
                        return Ok(Some(v));
                    }
                }
            }
        }
    }
    for (v, _) in g.vertices() {
        if non_extremal_start(v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// The atom label of a vertex: the minimal coset representative attached to
/// its right key. Membership of `b` in the Demazure crystal `B_w` is
/// equivalent to `atom_of(b) <= w` in Bruhat order.
pub fn atom_of(g: &CrystalGraph, v: usize) -> Result<WeylElement> {
    Ok(keys(g, v)?.right_elt)
}

/// Combinatorial key test: column entry sets are nested right-into-left
/// (the spin column participating) and no column carries a symmetric pair
/// or a zero.
pub fn is_key_combinatorial(t: &KNTableau) -> bool {
    if t.validate().is_err() {
        return false;
    }
    let n = t.ctype.rank as i32;
    let mut col_sets: Vec<std::collections::BTreeSet<i32>> = Vec::new();
    if let Some(s) = &t.spin {
        col_sets.push(s.cells.iter().copied().collect());
    }
    for c in &t.columns {
        if c.contains(0) {
            return false;
        }
        for z in 1..=n {
            if c.contains(z) && c.contains(-z) {
                return false;
            }
        }
        col_sets.push(c.cells.iter().copied().collect());
    }
    col_sets
        .windows(2)
        .all(|w| w[1].is_subset(&w[0]))
}

/// Dilate with doubling multiplicities until every tensor factor is
/// extremal; returns the weakly decreasing Weyl sequence with multiplicities
/// normalized by their gcd. `cap` bounds the multiplicity at `cap * ell`.
pub fn extremal_decomposition(
    g: &CrystalGraph,
    v: usize,
    cap: usize,
) -> Result<Vec<(WeylElement, usize)>> {
    let ext = extremal_set(g);
    let ell = ell_bound(g).max(1);
    let mut m = ell;
    loop {
        let img = dilate(g, v, m)?;
        let mut elts: Vec<Option<WeylElement>> = Vec::with_capacity(m);
        for f in &img.factors.factors {
            let idx = g
                .index_of(f)
                .ok_or_else(|| Error::Internal("dilated factor left the component".into()))?;
            elts.push(ext.map.get(&idx).map(|(e, _)| e.clone()));
        }
        if elts.iter().all(|e| e.is_some()) {
            let mut grouped: Vec<(WeylElement, usize)> = Vec::new();
            for e in elts.into_iter().map(Option::unwrap) {
                match grouped.last_mut() {
                    Some((prev, count)) if *prev == e => *count += 1,
                    _ => grouped.push((e, 1)),
                }
            }
            let g0 = grouped
                .iter()
                .fold(0usize, |acc, (_, c)| gcd(acc, *c));
            if g0 > 1 {
                for (_, c) in grouped.iter_mut() {
                    *c /= g0;
                }
            }
            return Ok(grouped);
        }
        if m >= cap.saturating_mul(ell) {
            return Err(Error::IterationCap(format!(
                "extremal decomposition did not stabilize by m = {} (cap {} * ell)",
                m, cap
            )));
        }
        m *= 2;
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// Default doubling cap for [`extremal_decomposition`].
pub const DEFAULT_DECOMPOSITION_CAP: usize = 64;
