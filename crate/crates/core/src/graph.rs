//! Generic edge-colored crystal-graph engine.
//!
//! Vertices are either KN tableaux or tensor tuples of vertices under the
//! Kashiwara convention (leftmost factor first). Exploration materializes
//! the connected component of a seed together with weights and string
//! statistics, checking the crystal axioms (C1)-(C4) as it goes.

use crate::cartan::{element_of_word, CartanType, Weight, WeylElement};
use crate::error::{Error, Result, Violation};
use crate::tableau::{self, CrystalOp, KNTableau};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

/// Default exploration budget (vertices).
pub const DEFAULT_BUDGET: usize = 200_000;

/// A crystal vertex: a tableau or an ordered tensor of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CrystalVertex {
    Tableau(KNTableau),
    Tensor(TensorElement),
}

/// An ordered tuple of crystal vertices, leftmost factor first (Kashiwara
/// convention). The reversed factor order used by some texts is not offered.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TensorElement {
    pub factors: Vec<CrystalVertex>,
}

impl TensorElement {
    pub fn new(factors: Vec<CrystalVertex>) -> Self {
        TensorElement { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Flatten nested tensors into a sequence of tableaux.
    pub fn flatten(&self) -> Vec<KNTableau> {
        let mut out = Vec::new();
        for f in &self.factors {
            match f {
                CrystalVertex::Tableau(t) => out.push(t.clone()),
                CrystalVertex::Tensor(t) => out.extend(t.flatten()),
            }
        }
        out
    }
}

impl CrystalVertex {
    pub fn tableau(t: KNTableau) -> Self {
        CrystalVertex::Tableau(t)
    }

    pub fn tensor_of_tableaux(ts: Vec<KNTableau>) -> Self {
        CrystalVertex::Tensor(TensorElement::new(
            ts.into_iter().map(CrystalVertex::Tableau).collect(),
        ))
    }

    pub fn ctype(&self) -> CartanType {
        match self {
            CrystalVertex::Tableau(t) => t.ctype,
            CrystalVertex::Tensor(t) => t.factors[0].ctype(),
        }
    }

    pub fn as_tableau(&self) -> Option<&KNTableau> {
        match self {
            CrystalVertex::Tableau(t) => Some(t),
            _ => None,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        match self {
            CrystalVertex::Tableau(t) => t.validate(),
            CrystalVertex::Tensor(t) => {
                if t.factors.is_empty() {
                    return Err(Violation::new("tensor.empty", "tensor has no factors"));
                }
                let ct = t.factors[0].ctype();
                for f in &t.factors {
                    f.validate()?;
                    if f.ctype() != ct {
                        return Err(Violation::new(
                            "tensor.type",
                            "factors carry different Cartan types",
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn weight(&self) -> Weight {
        match self {
            CrystalVertex::Tableau(t) => t.weight(),
            CrystalVertex::Tensor(t) => {
                let mut w = Weight::zero(self.ctype().rank);
                for f in &t.factors {
                    w = w.add(&f.weight());
                }
                w
            }
        }
    }

    /// String statistics `(eps_i, phi_i)`.
    pub fn stats(&self, i: usize) -> (i64, i64) {
        match self {
            CrystalVertex::Tableau(t) => tableau::tableau_stats(t, i),
            CrystalVertex::Tensor(t) => {
                let stats: Vec<(i64, i64)> =
                    t.factors.iter().map(|f| f.stats(i)).collect();
                let (e, p, _, _) = bracket_factors(&stats);
                (e, p)
            }
        }
    }

    /// Apply a crystal operator; `Ok(None)` is annihilation.
    pub fn apply(&self, op: CrystalOp, i: usize) -> Result<Option<CrystalVertex>> {
        match self {
            CrystalVertex::Tableau(t) => {
                Ok(tableau::apply(op, i, t)?.map(CrystalVertex::Tableau))
            }
            CrystalVertex::Tensor(t) => {
                let stats: Vec<(i64, i64)> =
                    t.factors.iter().map(|f| f.stats(i)).collect();
                let (_, _, leftmost_plus, rightmost_minus) = bracket_factors(&stats);
                let target = match op {
                    CrystalOp::F => leftmost_plus,
                    CrystalOp::E => rightmost_minus,
                };
                let Some(k) = target else {
                    return Ok(None);
                };
                let sub = t.factors[k].apply(op, i)?.ok_or_else(|| {
                    Error::Internal(format!(
                        "signature selected factor {} but the operator annihilated it",
                        k
                    ))
                })?;
                let mut factors = t.factors.clone();
                factors[k] = sub;
                Ok(Some(CrystalVertex::Tensor(TensorElement::new(factors))))
            }
        }
    }

    /// Deterministic compact label for DOT output and diagnostics.
    pub fn label(&self) -> String {
        match self {
            CrystalVertex::Tableau(t) => {
                if t.is_empty() {
                    return "()".to_string();
                }
                let mut s = String::new();
                if let Some(sp) = &t.spin {
                    s.push('(');
                    s.push_str(
                        &sp.cells
                            .iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                    s.push_str(")|");
                }
                s.push_str(
                    &t.columns
                        .iter()
                        .map(|c| {
                            format!(
                                "[{}]",
                                c.cells
                                    .iter()
                                    .map(|e| e.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(""),
                );
                s
            }
            CrystalVertex::Tensor(t) => {
                let parts: Vec<String> = t.factors.iter().map(|f| f.label()).collect();
                parts.join(" (x) ")
            }
        }
    }
}

/// Bracket `(-)^eps (+)^phi` factor signatures by cancelling `(+-)` pairs.
/// Returns total `(eps, phi)` plus the factor owning the leftmost unpaired
/// `+` and the one owning the rightmost unpaired `-`.
pub fn bracket_factors(stats: &[(i64, i64)]) -> (i64, i64, Option<usize>, Option<usize>) {
    let mut plus_stack: Vec<usize> = Vec::new();
    let mut minus_unpaired: Vec<usize> = Vec::new();
    for (j, &(eps, phi)) in stats.iter().enumerate() {
        for _ in 0..eps {
            if plus_stack.pop().is_none() {
                minus_unpaired.push(j);
            }
        }
        for _ in 0..phi {
            plus_stack.push(j);
        }
    }
    (
        minus_unpaired.len() as i64,
        plus_stack.len() as i64,
        plus_stack.first().copied(),
        minus_unpaired.last().copied(),
    )
}

/// Tensor-product action of a crystal operator under the signature rule.
pub fn tensor_apply(
    op: CrystalOp,
    i: usize,
    t: &TensorElement,
) -> Result<Option<TensorElement>> {
    let v = CrystalVertex::Tensor(t.clone());
    Ok(v.apply(op, i)?.map(|w| match w {
        CrystalVertex::Tensor(te) => te,
        _ => unreachable!(),
    }))
}

/// A maximal `i`-colored chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IString {
    pub color: usize,
    /// Vertex indices from the `e`-maximal end to the `f`-maximal end.
    pub vertices: Vec<usize>,
}

impl IString {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// An explored connected crystal component.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub ctype: CartanType,
    vertices: Vec<CrystalVertex>,
    index: BTreeMap<CrystalVertex, usize>,
    f_edges: Vec<Vec<Option<usize>>>,
    e_edges: Vec<Vec<Option<usize>>>,
    weights: Vec<Weight>,
    stats: Vec<Vec<(i64, i64)>>,
    pub highest: usize,
    pub lowest: usize,
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, v: usize) -> &CrystalVertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (usize, &CrystalVertex)> {
        self.vertices.iter().enumerate()
    }

    pub fn index_of(&self, v: &CrystalVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn weight(&self, v: usize) -> &Weight {
        &self.weights[v]
    }

    pub fn f_edge(&self, v: usize, i: usize) -> Option<usize> {
        self.f_edges[v][i - 1]
    }

    pub fn e_edge(&self, v: usize, i: usize) -> Option<usize> {
        self.e_edges[v][i - 1]
    }

    /// Cached `(eps_i, phi_i)`.
    pub fn vertex_stats(&self, v: usize, i: usize) -> (i64, i64) {
        self.stats[v][i - 1]
    }

    /// The highest weight of the component.
    pub fn highest_weight(&self) -> &Weight {
        &self.weights[self.highest]
    }
}

/// Explore the connected component of `seed` with the default budget.
pub fn explore(seed: &CrystalVertex) -> Result<CrystalGraph> {
    explore_with_budget(seed, DEFAULT_BUDGET)
}

/// Explore the connected component of `seed`, materializing edges, weights
/// and string statistics, and verifying axioms (C1)-(C4).
pub fn explore_with_budget(seed: &CrystalVertex, budget: usize) -> Result<CrystalGraph> {
    seed.validate().map_err(Error::Invalid)?;
    let ctype = seed.ctype();
    let n = ctype.rank;
    let mut vertices: Vec<CrystalVertex> = Vec::new();
    let mut index: BTreeMap<CrystalVertex, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    vertices.push(seed.clone());
    index.insert(seed.clone(), 0);
    queue.push_back(0);
    let mut f_edges: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    let mut e_edges: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    while let Some(v) = queue.pop_front() {
        for i in 1..=n {
            for op in [CrystalOp::F, CrystalOp::E] {
                let img = vertices[v].apply(op, i)?;
                if let Some(w) = img {
                    let wi = match index.get(&w) {
                        Some(&wi) => wi,
                        None => {
                            if vertices.len() >= budget {
                                return Err(Error::BudgetExceeded {
                                    explored: vertices.len(),
                                    budget,
                                });
                            }
                            let wi = vertices.len();
                            vertices.push(w.clone());
                            index.insert(w, wi);
                            f_edges.push(vec![None; n]);
                            e_edges.push(vec![None; n]);
                            queue.push_back(wi);
                            wi
                        }
                    };
                    match op {
                        CrystalOp::F => f_edges[v][i - 1] = Some(wi),
                        CrystalOp::E => e_edges[v][i - 1] = Some(wi),
                    }
                }
            }
        }
    }
    let weights: Vec<Weight> = vertices.iter().map(|v| v.weight()).collect();
    let stats: Vec<Vec<(i64, i64)>> = vertices
        .iter()
        .map(|v| (1..=n).map(|i| v.stats(i)).collect())
        .collect();
    let mut highest = None;
    let mut lowest = None;
    for (vi, st) in stats.iter().enumerate() {
        if st.iter().all(|&(e, _)| e == 0)
            && highest.replace(vi).is_some() {
                return Err(Error::Internal(
                    "component has two highest weight vertices".into(),
                ));
            }
        if st.iter().all(|&(_, p)| p == 0)
            && lowest.replace(vi).is_some() {
                return Err(Error::Internal(
                    "component has two lowest weight vertices".into(),
                ));
            }
    }
    let g = CrystalGraph {
        ctype,
        vertices,
        index,
        f_edges,
        e_edges,
        weights,
        stats,
        highest: highest
            .ok_or_else(|| Error::Internal("component has no highest weight vertex".into()))?,
        lowest: lowest
            .ok_or_else(|| Error::Internal("component has no lowest weight vertex".into()))?,
    };
    let failures = check_axioms(&g);
    if !failures.is_empty() {
        return Err(Error::Internal(format!(
            "crystal axioms violated: {}",
            failures.join("; ")
        )));
    }
    Ok(g)
}

/// Check axioms (C1)-(C4) on an explored graph; returns one description per
/// violation, each naming the axiom.
pub fn check_axioms(g: &CrystalGraph) -> Vec<String> {
    let mut failures = Vec::new();
    let n = g.ctype.rank;
    for (v, _) in g.vertices() {
        for i in 1..=n {
            let (eps, phi) = g.vertex_stats(v, i);
            let pairing = match g.weights[v].pair_coroot(g.ctype, i) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(format!("(C1) pairing failed at v{} i{}: {}", v, i, e));
                    continue;
                }
            };
            if phi - eps != pairing {
                failures.push(format!(
                    "(C1) phi-eps = {} but <alpha_{}^v, wt> = {} at vertex {}",
                    phi - eps,
                    i,
                    pairing,
                    g.vertex(v).label()
                ));
            }
            if let Some(w) = g.f_edge(v, i) {
                let expect = g.weights[v]
                    .sub_alpha(g.ctype, i, 1)
                    .expect("valid color");
                if g.weights[w] != expect {
                    failures.push(format!(
                        "(C2) wt(f_{} b) != wt(b) - alpha_{} at vertex {}",
                        i,
                        i,
                        g.vertex(v).label()
                    ));
                }
                if g.e_edge(w, i) != Some(v) {
                    failures.push(format!(
                        "(C3) e_{} is not inverse to f_{} at vertex {}",
                        i,
                        i,
                        g.vertex(v).label()
                    ));
                }
            }
            if let Some(w) = g.e_edge(v, i) {
                if g.f_edge(w, i) != Some(v) {
                    failures.push(format!(
                        "(C3) f_{} is not inverse to e_{} at vertex {}",
                        i,
                        i,
                        g.vertex(v).label()
                    ));
                }
            }
            // (C4): walk the chains.
            let (we, wp) = walk_string_stats(g, v, i);
            if (we, wp) != (eps, phi) {
                failures.push(format!(
                    "(C4) counted chain lengths ({},{}) != ({},{}) at vertex {} color {}",
                    we,
                    wp,
                    eps,
                    phi,
                    g.vertex(v).label(),
                    i
                ));
            }
        }
    }
    failures
}

fn walk_string_stats(g: &CrystalGraph, v: usize, i: usize) -> (i64, i64) {
    let mut e = 0i64;
    let mut x = v;
    while let Some(y) = g.e_edge(x, i) {
        e += 1;
        x = y;
    }
    let mut p = 0i64;
    let mut x = v;
    while let Some(y) = g.f_edge(x, i) {
        p += 1;
        x = y;
    }
    (e, p)
}

/// `(eps_i, phi_i)` measured by walking edges.
pub fn string_stats(g: &CrystalGraph, v: usize, i: usize) -> (i64, i64) {
    walk_string_stats(g, v, i)
}

/// All `i`-strings of the graph, tops first.
pub fn strings(g: &CrystalGraph, i: usize) -> Vec<IString> {
    let mut out = Vec::new();
    for (v, _) in g.vertices() {
        if g.e_edge(v, i).is_none() {
            let mut chain = vec![v];
            let mut x = v;
            while let Some(y) = g.f_edge(x, i) {
                chain.push(y);
                x = y;
            }
            out.push(IString {
                color: i,
                vertices: chain,
            });
        }
    }
    out
}

/// Maximum `i`-string length over all colors.
pub fn max_string_length(g: &CrystalGraph) -> usize {
    g.ctype
        .colors()
        .flat_map(|i| strings(g, i).into_iter().map(|s| s.length()))
        .max()
        .unwrap_or(0)
}

/// Weyl-group action on vertices: flip across the `i`-string.
pub fn weyl_act(g: &CrystalGraph, i: usize, v: usize) -> usize {
    let (eps, phi) = g.vertex_stats(v, i);
    let mut x = v;
    if phi >= eps {
        for _ in 0..(phi - eps) {
            x = g.f_edge(x, i).expect("phi steps available");
        }
    } else {
        for _ in 0..(eps - phi) {
            x = g.e_edge(x, i).expect("eps steps available");
        }
    }
    x
}

/// The orbit of the highest vertex with minimal coset representatives.
#[derive(Debug, Clone)]
pub struct ExtremalSet {
    /// vertex index -> (minimal coset representative, its reduced word)
    pub map: BTreeMap<usize, (WeylElement, Vec<usize>)>,
}

impl ExtremalSet {
    pub fn contains(&self, v: usize) -> bool {
        self.map.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Enumerate extremal vertices by BFS with `weyl_act` along simple
/// reflections; each extremal vertex is paired with the lexicographically
/// smallest shortest word, a reduced word for its minimal coset
/// representative.
pub fn extremal_set(g: &CrystalGraph) -> ExtremalSet {
    let mut map: BTreeMap<usize, (WeylElement, Vec<usize>)> = BTreeMap::new();
    map.insert(
        g.highest,
        (WeylElement::identity(g.ctype.rank), Vec::new()),
    );
    let mut frontier = vec![g.highest];
    while !frontier.is_empty() {
        let mut candidates: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &frontier {
            let word = map[&v].1.clone();
            for i in g.ctype.colors() {
                let w = weyl_act(g, i, v);
                if w == v || map.contains_key(&w) {
                    continue;
                }
                let mut nw = Vec::with_capacity(word.len() + 1);
                nw.push(i);
                nw.extend_from_slice(&word);
                match candidates.get(&w) {
                    Some(best) if *best <= nw => {}
                    _ => {
                        candidates.insert(w, nw);
                    }
                }
            }
        }
        frontier = candidates.keys().copied().collect();
        for (w, word) in candidates {
            let elt = element_of_word(g.ctype, &word);
            map.insert(w, (elt, word));
        }
    }
    ExtremalSet { map }
}

/// Saturate a vertex set under `f_i` (or `e_i`).
fn saturate(g: &CrystalGraph, set: &mut std::collections::BTreeSet<usize>, i: usize, op: CrystalOp) {
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(v) = frontier.pop() {
        let next = match op {
            CrystalOp::F => g.f_edge(v, i),
            CrystalOp::E => g.e_edge(v, i),
        };
        if let Some(w) = next {
            if set.insert(w) {
                frontier.push(w);
            }
        }
    }
}

/// The Demazure crystal `B_w(lambda)`: monomials `f_{i_1}^{m_1} ... f_{i_k}^{m_k}`
/// along a reduced word for `w` applied to the highest vertex, computed by
/// iterated saturation passes (rightmost letter first).
pub fn demazure(g: &CrystalGraph, w: &WeylElement) -> Result<std::collections::BTreeSet<usize>> {
    if w.rank() != g.ctype.rank {
        return Err(Error::RankMismatch(format!(
            "Weyl element rank {} vs crystal rank {}",
            w.rank(),
            g.ctype.rank
        )));
    }
    let word = w.reduced_word();
    let mut set = std::collections::BTreeSet::new();
    set.insert(g.highest);
    for &i in word.iter().rev() {
        saturate(g, &mut set, i, CrystalOp::F);
    }
    Ok(set)
}

/// The opposite Demazure crystal `B^w(lambda) = E_{w w_0} { b_{w_0 lambda} }`.
pub fn opposite_demazure(
    g: &CrystalGraph,
    w: &WeylElement,
) -> Result<std::collections::BTreeSet<usize>> {
    if w.rank() != g.ctype.rank {
        return Err(Error::RankMismatch(format!(
            "Weyl element rank {} vs crystal rank {}",
            w.rank(),
            g.ctype.rank
        )));
    }
    let u = w.mul(&WeylElement::longest(g.ctype.rank));
    let word = u.reduced_word();
    let mut set = std::collections::BTreeSet::new();
    set.insert(g.lowest);
    for &i in word.iter().rev() {
        saturate(g, &mut set, i, CrystalOp::E);
    }
    Ok(set)
}

/// A lowering path from the highest vertex to `v`: edge colors in traversal
/// order, so `v = f_{c_k} ... f_{c_1} (b_highest)`. Colors are tried in the
/// order given by `priority` (BFS), making alternate paths available for
/// path-independence checks.
pub fn f_path_with_priority(g: &CrystalGraph, v: usize, priority: &[usize]) -> Vec<usize> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.len()];
    let mut seen = vec![false; g.len()];
    let mut queue = VecDeque::new();
    seen[g.highest] = true;
    queue.push_back(g.highest);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &i in priority {
            if let Some(y) = g.f_edge(x, i) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, i));
                    queue.push_back(y);
                }
            }
        }
    }
    let mut colors = Vec::new();
    let mut x = v;
    while let Some((p, i)) = parent[x] {
        colors.push(i);
        x = p;
    }
    colors.reverse();
    colors
}

/// BFS-shortest lowering path with the natural color order.
pub fn f_path(g: &CrystalGraph, v: usize) -> Vec<usize> {
    let priority: Vec<usize> = g.ctype.colors().collect();
    f_path_with_priority(g, v, &priority)
}

/// The Lusztig-Schuetzenberger involution computed along a recorded path.
pub fn schutzenberger_with_path(g: &CrystalGraph, path: &[usize]) -> Result<usize> {
    let mut x = g.lowest;
    for &i in path {
        let th = g.ctype.theta(i)?;
        x = g.e_edge(x, th).ok_or_else(|| {
            Error::Internal("raising chain broke while computing the involution".into())
        })?;
    }
    Ok(x)
}

/// The Lusztig-Schuetzenberger involution of a vertex.
pub fn schutzenberger(g: &CrystalGraph, v: usize) -> Result<usize> {
    let path = f_path(g, v);
    schutzenberger_with_path(g, &path)
}

/// The Henriques-Kamnitzer commutor on a tensor element split after factor
/// `k`: the involution of the swapped, blockwise-involuted element.
pub fn commutor(t: &TensorElement, k: usize, budget: usize) -> Result<TensorElement> {
    if k == 0 || k >= t.factors.len() {
        return Err(Error::IndexOutOfRange(format!(
            "split position {} not inside 1..{}",
            k,
            t.factors.len()
        )));
    }
    let block = |fs: &[CrystalVertex]| -> CrystalVertex {
        if fs.len() == 1 {
            fs[0].clone()
        } else {
            CrystalVertex::Tensor(TensorElement::new(fs.to_vec()))
        }
    };
    let left = block(&t.factors[..k]);
    let right = block(&t.factors[k..]);
    let xi = |v: &CrystalVertex| -> Result<CrystalVertex> {
        let comp = explore_with_budget(v, budget)?;
        let idx = comp.index_of(v).expect("seed present");
        Ok(comp.vertex(schutzenberger(&comp, idx)?).clone())
    };
    let xi_left = xi(&left)?;
    let xi_right = xi(&right)?;
    let swapped = CrystalVertex::Tensor(TensorElement::new(vec![xi_right, xi_left]));
    let outer = xi(&swapped)?;
    let CrystalVertex::Tensor(te) = outer else {
        return Err(Error::Internal("commutor lost the tensor structure".into()));
    };
    // Flatten the two blocks back into a plain tuple.
    let mut factors = Vec::with_capacity(t.factors.len());
    for b in te.factors {
        match b {
            CrystalVertex::Tensor(inner) => factors.extend(inner.factors),
            f => factors.push(f),
        }
    }
    Ok(TensorElement::new(factors))
}

/// Isotypic decomposition of `B(lambda) (x) B(mu)` via the highest-weight
/// selection rule: the summands are `lambda + wt(u)` over vertices `u` of the
/// right factor with `eps_i(u) <= phi_i(b_lambda)` for all `i`.
pub fn decompose(ga: &CrystalGraph, gb: &CrystalGraph) -> Vec<Weight> {
    let lambda = ga.highest_weight().clone();
    let mut out: Vec<Weight> = Vec::new();
    for (u, _) in gb.vertices() {
        let ok = ga.ctype.colors().all(|i| {
            let (eps_u, _) = gb.vertex_stats(u, i);
            let (_, phi_hw) = ga.vertex_stats(ga.highest, i);
            eps_u <= phi_hw
        });
        if ok {
            out.push(lambda.add(gb.weight(u)));
        }
    }
    out.sort();
    out
}

/// Brute-force cross-check of [`decompose`]: scan all pairs for tensor
/// vertices with every `eps_i = 0`.
pub fn decompose_brute_force(ga: &CrystalGraph, gb: &CrystalGraph) -> Vec<Weight> {
    let mut out = Vec::new();
    for (_, a) in ga.vertices() {
        for (_, b) in gb.vertices() {
            let t = CrystalVertex::Tensor(TensorElement::new(vec![a.clone(), b.clone()]));
            if ga.ctype.colors().all(|i| t.stats(i).0 == 0) {
                out.push(t.weight());
            }
        }
    }
    out.sort();
    out
}

/// Corrupt a stored weight, for negative-control testing of the axiom
/// checker. The graph no longer satisfies (C1)/(C2) afterwards.
pub fn corrupt_weight(g: &mut CrystalGraph, v: usize) {
    let w = g.weights[v].clone();
    let mut d = w.doubled().to_vec();
    d[0] += 2;
    g.weights[v] = Weight::from_doubled(d);
}

/// Deterministic DOT serialization: nodes ordered by canonical payload key,
/// extremal vertices drawn with doubled periphery.
pub fn to_dot(g: &CrystalGraph) -> String {
    let ext = extremal_set(g);
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| g.vertex(a).cmp(g.vertex(b)));
    let mut name = vec![0usize; g.len()];
    for (k, &v) in order.iter().enumerate() {
        name[v] = k;
    }
    let mut s = String::new();
    s.push_str("digraph crystal {\n");
    s.push_str("  rankdir=TB;\n");
    for &v in &order {
        let extra = if ext.contains(v) { ", peripheries=2" } else { "" };
        s.push_str(&format!(
            "  v{} [label=\"{}\"{}];\n",
            name[v],
            g.vertex(v).label(),
            extra
        ));
    }
    for &v in &order {
        for i in g.ctype.colors() {
            if let Some(w) = g.f_edge(v, i) {
                s.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", name[v], name[w], i));
            }
        }
    }
    s.push_str("}\n");
    s
}

impl fmt::Display for CrystalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}
