//! Virtualization along the executable B/C Dynkin foldings: the
//! operator-lifted embedding, its identification with the splitting map, and
//! the orbit/Demazure/key compatibility checks.

use crate::cartan::{
    all_weyl_elements, embed_weight, CartanType, DynkinEmbedding, Family, Weight,
};
use crate::error::{Error, Result, Violation};
use crate::graph::{
    demazure, explore_with_budget, extremal_set, CrystalGraph, CrystalVertex, DEFAULT_BUDGET,
};
use crate::keys::{keys_with_extremal, KeyPair};
use crate::tableau::{
    highest_weight_tableau, split_tableau, unsplit, KNTableau, SpinShape,
};

/// The spin-partition realizing a dominant weight as a tableau shape.
pub fn shape_of_weight(t: CartanType, lambda: &Weight) -> Result<SpinShape> {
    lambda.check_parity(t)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(format!("{}", lambda)));
    }
    let spin = t.family == Family::B && !lambda.is_integral();
    let rows: Vec<usize> = lambda
        .doubled()
        .iter()
        .map(|&d| {
            let r = if spin { d - 1 } else { d };
            (r / 2) as usize
        })
        .collect();
    Ok(SpinShape::new(spin, rows))
}

/// An operator-lifted virtualization between two explored crystals.
#[derive(Debug)]
pub struct VirtualMap {
    pub embedding: DynkinEmbedding,
    pub source: CrystalGraph,
    pub target: CrystalGraph,
    /// source vertex index -> target vertex index
    pub assignment: Vec<usize>,
}

/// Build the virtualization for an executable embedding by pushing every
/// source lowering edge through the lifted operator
/// `f_i -> prod_{j in psi(i)} f_j^{gamma_i}` in the target crystal.
pub fn build_virtualization(
    emb: &DynkinEmbedding,
    lambda: &Weight,
    budget: usize,
) -> Result<VirtualMap> {
    if !emb.executable {
        return Err(Error::UnsupportedEmbedding(format!(
            "{}{} -> {}{}",
            emb.source_family, emb.source_rank, emb.target_family, emb.target_rank
        )));
    }
    let st = emb.source_type()?;
    let tt = emb.target_type()?;
    let target_lambda = embed_weight(emb, lambda)?;
    let src_hw = highest_weight_tableau(st, &shape_of_weight(st, lambda)?)?;
    let tgt_hw = highest_weight_tableau(tt, &shape_of_weight(tt, &target_lambda)?)?;
    let source = explore_with_budget(&CrystalVertex::Tableau(src_hw), budget)?;
    let target = explore_with_budget(&CrystalVertex::Tableau(tgt_hw), budget)?;

    let mut assignment: Vec<Option<usize>> = vec![None; source.len()];
    assignment[source.highest] = Some(target.highest);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(source.highest);
    let mut seen = vec![false; source.len()];
    seen[source.highest] = true;
    while let Some(v) = queue.pop_front() {
        let img = assignment[v].expect("assigned before queueing");
        for i in st.colors() {
            if let Some(w) = source.f_edge(v, i) {
                let gamma = emb.gamma[i - 1] as usize;
                let mut x = img;
                for &j in &emb.psi[i - 1] {
                    for _ in 0..gamma {
                        x = target.f_edge(x, j).ok_or_else(|| {
                            Error::Internal(format!(
                                "lifted operator f_{}^{} annihilated where the source does not",
                                j, gamma
                            ))
                        })?;
                    }
                }
                match assignment[w] {
                    None => assignment[w] = Some(x),
                    Some(prev) if prev == x => {}
                    Some(prev) => {
                        return Err(Error::Internal(format!(
                            "virtualization is not well-defined: vertex {} got images {} and {}",
                            w, prev, x
                        )))
                    }
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let assignment: Vec<usize> = assignment
        .into_iter()
        .map(|a| a.ok_or_else(|| Error::Internal("assignment is not total".into())))
        .collect::<Result<_>>()?;
    {
        let mut img_sorted = assignment.clone();
        img_sorted.sort_unstable();
        img_sorted.dedup();
        if img_sorted.len() != assignment.len() {
            return Err(Error::Internal("assignment is not injective".into()));
        }
    }
    let vm = VirtualMap {
        embedding: emb.clone(),
        source,
        target,
        assignment,
    };
    let scaling = check_string_scaling(&vm);
    if !scaling.is_empty() {
        return Err(Error::Internal(format!(
            "string scaling violated: {}",
            scaling.join("; ")
        )));
    }
    Ok(vm)
}

/// Verify `gamma_i * eps_i(b) = eps_j(image)` (and likewise for phi) at
/// every vertex and color.
pub fn check_string_scaling(vm: &VirtualMap) -> Vec<String> {
    let mut failures = Vec::new();
    let st = vm.source.ctype;
    for (v, _) in vm.source.vertices() {
        let img = vm.assignment[v];
        for i in st.colors() {
            let gamma = vm.embedding.gamma[i - 1] as i64;
            let (eps, phi) = vm.source.vertex_stats(v, i);
            for &j in &vm.embedding.psi[i - 1] {
                let (teps, tphi) = vm.target.vertex_stats(img, j);
                if teps != gamma * eps || tphi != gamma * phi {
                    failures.push(format!(
                        "vertex {}: ({},{}) at color {} vs ({},{}) at target color {}",
                        vm.source.vertex(v).label(),
                        eps,
                        phi,
                        i,
                        teps,
                        tphi,
                        j
                    ));
                }
            }
        }
    }
    failures
}

/// The tableau form of the B -> C virtualization: the splitting map.
pub fn virtualize_tableau(t: &KNTableau) -> Result<KNTableau> {
    if t.ctype.family != Family::B {
        return Err(Violation::new("virtualize.type", "input must be type B").into());
    }
    split_tableau(t)
}

/// Inverse on the image: un-splitting.
pub fn devirtualize_tableau(s: &KNTableau, spin_target: bool) -> Result<KNTableau> {
    unsplit(s, spin_target)
}

/// Outcome of a whole-crystal verification pass.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check that the source orbit maps exactly onto the target extremal
/// vertices named by the image words, reduced-to-reduced.
pub fn check_orbit_embedding(vm: &VirtualMap) -> CheckReport {
    let mut report = CheckReport::default();
    let src_ext = extremal_set(&vm.source);
    let tgt_ext = extremal_set(&vm.target);
    let mut image_indices = std::collections::BTreeSet::new();
    for (&v, (elt, word)) in &src_ext.map {
        report.checked += 1;
        let img = vm.assignment[v];
        image_indices.insert(img);
        match tgt_ext.map.get(&img) {
            None => report.mismatches.push(format!(
                "image of extremal {} is not extremal",
                vm.source.vertex(v).label()
            )),
            Some((telt, tword)) => {
                // psi is the identity on nodes for the B/C rows, so the
                // image coset representative is the same signed permutation
                // and the same word stays reduced.
                if telt != elt {
                    report.mismatches.push(format!(
                        "image of {} carries {} instead of {}",
                        vm.source.vertex(v).label(),
                        telt,
                        elt
                    ));
                }
                if tword != word {
                    report.mismatches.push(format!(
                        "image word {:?} differs from source word {:?}",
                        tword, word
                    ));
                }
            }
        }
    }
    // The image is exactly the sub-orbit named by source words.
    for (&w, (elt, _)) in &tgt_ext.map {
        let expected = src_ext.map.values().any(|(e, _)| e == elt);
        if expected && !image_indices.contains(&w) {
            report.mismatches.push(format!(
                "target extremal {} (coset {}) missed by the image",
                vm.target.vertex(w).label(),
                elt
            ));
        }
    }
    report
}

/// Check `image(K^+-(b)) = K^+-(image(b))` for every source vertex, and the
/// induced embeddings of Demazure crystals and atoms for every `w`.
pub fn check_keys_commute(vm: &VirtualMap) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let src_ext = extremal_set(&vm.source);
    let tgt_ext = extremal_set(&vm.target);
    let mut src_keys: Vec<KeyPair> = Vec::with_capacity(vm.source.len());
    let mut tgt_key_of_img: Vec<KeyPair> = Vec::with_capacity(vm.source.len());
    for (v, _) in vm.source.vertices() {
        report.checked += 1;
        let sk = keys_with_extremal(&vm.source, v, &src_ext)?;
        let tk = keys_with_extremal(&vm.target, vm.assignment[v], &tgt_ext)?;
        let img_right = vm.assignment[vm
            .source
            .index_of(&sk.right)
            .expect("key inside component")];
        let img_left = vm.assignment[vm
            .source
            .index_of(&sk.left)
            .expect("key inside component")];
        if vm.target.index_of(&tk.right) != Some(img_right) {
            report.mismatches.push(format!(
                "right key of {} does not commute with the virtualization",
                vm.source.vertex(v).label()
            ));
        }
        if vm.target.index_of(&tk.left) != Some(img_left) {
            report.mismatches.push(format!(
                "left key of {} does not commute with the virtualization",
                vm.source.vertex(v).label()
            ));
        }
        src_keys.push(sk);
        tgt_key_of_img.push(tk);
    }
    // Demazure crystals and atoms embed: for every w, the image of B_w lands
    // in the target B_{psi(w)} and atoms map onto atoms of the same label.
    for w in all_weyl_elements(vm.source.ctype) {
        report.checked += 1;
        let src_dem = demazure(&vm.source, &w)?;
        let tgt_dem = demazure(&vm.target, &w)?;
        for &v in &src_dem {
            if !tgt_dem.contains(&vm.assignment[v]) {
                report.mismatches.push(format!(
                    "image of Demazure member {} escapes the target Demazure crystal of {}",
                    vm.source.vertex(v).label(),
                    w
                ));
            }
        }
        for (v, _) in vm.source.vertices() {
            let in_src_atom = src_keys[v].right_elt == w;
            let in_tgt_atom = tgt_key_of_img[v].right_elt == w;
            if in_src_atom != in_tgt_atom {
                report.mismatches.push(format!(
                    "atom membership of {} disagrees at {}",
                    vm.source.vertex(v).label(),
                    w
                ));
            }
        }
    }
    Ok(report)
}

/// Check that the operator-lifted assignment agrees pointwise with the
/// splitting map on tableaux (B -> C rows only).
pub fn check_split_agrees(vm: &VirtualMap) -> Result<CheckReport> {
    if !vm.embedding.is_bc() {
        return Err(Error::UnsupportedEmbedding(
            "splitting comparison applies to the B -> C row".into(),
        ));
    }
    let mut report = CheckReport::default();
    for (v, vert) in vm.source.vertices() {
        report.checked += 1;
        let t = vert
            .as_tableau()
            .ok_or_else(|| Error::Internal("source vertex is not a tableau".into()))?;
        let split = split_tableau(t)?;
        let img = vm.target.vertex(vm.assignment[v]);
        if img.as_tableau() != Some(&split) {
            report.mismatches.push(format!(
                "operator lift of {} is {} but split gives {}",
                vert.label(),
                img.label(),
                CrystalVertex::Tableau(split).label()
            ));
        }
    }
    Ok(report)
}

/// Convenience: the default-budget virtualization of `B(lambda)` along
/// `B_n -> C_n`.
pub fn bc_virtualization(n: usize, lambda: &Weight) -> Result<VirtualMap> {
    build_virtualization(&DynkinEmbedding::b_to_c(n), lambda, DEFAULT_BUDGET)
}

/// Replay a 2-dilation inside the dilated tableau crystal: the composite
/// `A_CB . A_BC` must send `b` to the same tableau as the proper dilation
/// `D_2` into `B(2 lambda)`.
pub fn composite_equals_dilation(
    vm_bc: &VirtualMap,
    vm_cb: &VirtualMap,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    // vm_cb.source must be vm_bc.target (same crystal, separately explored).
    if vm_cb.source.highest_weight() != vm_bc.target.highest_weight()
        || vm_cb.source.ctype != vm_bc.target.ctype
    {
        return Err(Error::Internal(
            "composite check needs matching middle crystals".into(),
        ));
    }
    for (v, vert) in vm_bc.source.vertices() {
        report.checked += 1;
        let mid = vm_bc.assignment[v];
        let mid_vert = vm_bc.target.vertex(mid);
        let mid_idx = vm_cb
            .source
            .index_of(mid_vert)
            .ok_or_else(|| Error::Internal("middle vertex missing".into()))?;
        let composite = vm_cb.target.vertex(vm_cb.assignment[mid_idx]);
        // D_2 replay: follow the lowering path of v with squared powers from
        // the doubled highest weight tableau.
        let path = crate::graph::f_path(&vm_bc.source, v);
        let mut x = vm_cb.target.highest;
        for &c in &path {
            for _ in 0..2 {
                x = vm_cb.target.f_edge(x, c).ok_or_else(|| {
                    Error::Internal("2-dilation replay annihilated".into())
                })?;
            }
        }
        if vm_cb.target.vertex(x) != composite {
            report.mismatches.push(format!(
                "composite image of {} is {} but D_2 gives {}",
                vert.label(),
                composite.label(),
                vm_cb.target.vertex(x).label()
            ));
        }
        // Apply the crystal operators once more to cross-check the squared law.
        for i in vm_bc.source.ctype.colors() {
            if let Some(w) = vm_bc.source.f_edge(v, i) {
                let mid_w = vm_bc.assignment[w];
                let mid_w_idx = vm_cb
                    .source
                    .index_of(vm_bc.target.vertex(mid_w))
                    .expect("image in middle");
                let comp_w = vm_cb.assignment[mid_w_idx];
                let mut y = vm_cb.target.index_of(composite).expect("composite present");
                let mut ok = true;
                for _ in 0..2 {
                    match vm_cb.target.f_edge(y, i) {
                        Some(z) => y = z,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || y != comp_w {
                    report.mismatches.push(format!(
                        "composite of f_{} at {} is not f_{}^2 of the composite",
                        i,
                        vert.label(),
                        i
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Pointwise check that the involution commutes with the virtualization.
pub fn check_involution_commutes(vm: &VirtualMap) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for (v, vert) in vm.source.vertices() {
        report.checked += 1;
        let xi_src = crate::graph::schutzenberger(&vm.source, v)?;
        let xi_tgt = crate::graph::schutzenberger(&vm.target, vm.assignment[v])?;
        if vm.assignment[xi_src] != xi_tgt {
            report.mismatches.push(format!(
                "involution does not commute with virtualization at {}",
                vert.label()
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_BUDGET;
    use crate::tableau::Column;

    fn flag_vm() -> VirtualMap {
        bc_virtualization(2, &Weight::from_doubled(vec![3, 1])).unwrap()
    }

    #[test]
    fn shape_of_weight_covers_spin_and_plain() {
        let b2 = CartanType::b(2);
        assert_eq!(
            shape_of_weight(b2, &Weight::from_doubled(vec![3, 1])).unwrap(),
            SpinShape::new(true, vec![1])
        );
        assert_eq!(
            shape_of_weight(b2, &Weight::from_ints(&[2, 1])).unwrap(),
            SpinShape::new(false, vec![2, 1])
        );
        assert_eq!(
            shape_of_weight(CartanType::c(2), &Weight::from_ints(&[3, 1])).unwrap(),
            SpinShape::new(false, vec![3, 1])
        );
    }

    #[test]
    fn spin_b1_into_c1_is_isomorphism() {
        // The B_1 spin crystal (2 vertices) maps onto all of C(1).
        let vm = bc_virtualization(1, &Weight::from_doubled(vec![1])).unwrap();
        assert_eq!(vm.source.len(), 2);
        assert_eq!(vm.target.len(), 2);
        // gamma_n = 1: the single lowering edge maps to a single edge.
        let img_low = vm.assignment[vm.source.lowest];
        assert_eq!(img_low, vm.target.lowest);
    }

    #[test]
    fn flagship_embeds_into_c2_of_3_1() {
        let vm = flag_vm();
        assert_eq!(vm.source.len(), 16);
        assert_eq!(vm.target.len(), 35);
        assert_eq!(
            vm.target.highest_weight(),
            &Weight::from_ints(&[3, 1])
        );
        assert_eq!(vm.assignment[vm.source.highest], vm.target.highest);
    }

    #[test]
    fn zero_weight_is_singleton() {
        let vm = bc_virtualization(2, &Weight::zero(2)).unwrap();
        assert_eq!(vm.source.len(), 1);
        assert_eq!(vm.target.len(), 1);
    }

    #[test]
    fn operator_lift_equals_splitting() {
        let vm = flag_vm();
        let rep = check_split_agrees(&vm).unwrap();
        assert_eq!(rep.checked, 16);
        assert!(rep.is_ok(), "{:?}", rep.mismatches);
    }

    #[test]
    fn virtualize_tableau_fixture_b3_column() {
        // The B_3 column [0,0,-1] splits to rows (2,-3)/(3,-2)/(-1,-1).
        let t = KNTableau::new(
            CartanType::b(3),
            None,
            vec![Column::new(vec![0, 0, -1])],
        );
        let s = virtualize_tableau(&t).unwrap();
        assert_eq!(
            s.columns,
            vec![Column::new(vec![2, 3, -1]), Column::new(vec![-3, -2, -1])]
        );
        assert_eq!(devirtualize_tableau(&s, false).unwrap(), t);
    }

    #[test]
    fn virtualization_preserves_highest_weight_tableau() {
        let b3 = CartanType::b(3);
        let shape = SpinShape::new(false, vec![2, 1]);
        let hw = highest_weight_tableau(b3, &shape).unwrap();
        let img = virtualize_tableau(&hw).unwrap();
        let target_shape = SpinShape::new(false, vec![4, 2]);
        assert_eq!(
            img,
            highest_weight_tableau(CartanType::c(3), &target_shape).unwrap()
        );
    }

    #[test]
    fn orbit_embedding_report_clean() {
        let vm = flag_vm();
        let rep = check_orbit_embedding(&vm);
        assert_eq!(rep.checked, 8);
        assert!(rep.is_ok(), "{:?}", rep.mismatches);
    }

    #[test]
    fn keys_commute_report_clean() {
        let vm = flag_vm();
        let rep = check_keys_commute(&vm).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.mismatches);
    }

    #[test]
    fn split_commutes_with_keys_on_worked_vertex() {
        // split(K+(T)) for T = spin(2,-1)+box 0 has rows (-2,-2,-2)/(-1).
        let vm = flag_vm();
        let t = KNTableau::new(
            CartanType::b(2),
            Some(crate::tableau::SpinColumn::new(vec![2, -1])),
            vec![Column::new(vec![0])],
        );
        let v = vm
            .source
            .index_of(&CrystalVertex::Tableau(t))
            .unwrap();
        let src_ext = extremal_set(&vm.source);
        let kp = crate::keys::keys_with_extremal(&vm.source, v, &src_ext).unwrap();
        let split_kplus = split_tableau(kp.right.as_tableau().unwrap()).unwrap();
        assert_eq!(
            split_kplus.columns,
            vec![
                Column::new(vec![-2, -1]),
                Column::new(vec![-2]),
                Column::new(vec![-2])
            ]
        );
        // And it equals K+ of the split image computed in the target.
        let tgt_ext = extremal_set(&vm.target);
        let tk =
            crate::keys::keys_with_extremal(&vm.target, vm.assignment[v], &tgt_ext).unwrap();
        assert_eq!(tk.right.as_tableau().unwrap(), &split_kplus);
        // The left key splits to rows (2,2,2)/(-1).
        let split_kminus = split_tableau(kp.left.as_tableau().unwrap()).unwrap();
        assert_eq!(
            split_kminus.columns,
            vec![
                Column::new(vec![2, -1]),
                Column::new(vec![2]),
                Column::new(vec![2])
            ]
        );
        assert_eq!(tk.left.as_tableau().unwrap(), &split_kminus);
    }

    #[test]
    fn involution_commutes_with_virtualization() {
        let vm = flag_vm();
        let rep = check_involution_commutes(&vm).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.mismatches);
    }

    #[test]
    fn composites_are_two_dilations() {
        // On the spin crystal and the vector crystal of B_2.
        for lambda in [Weight::from_doubled(vec![1, 1]), Weight::from_ints(&[1, 0])] {
            let vm_bc = bc_virtualization(2, &lambda).unwrap();
            let mid_lambda = embed_weight(&DynkinEmbedding::b_to_c(2), &lambda).unwrap();
            let vm_cb = build_virtualization(
                &DynkinEmbedding::c_to_b(2),
                &mid_lambda,
                DEFAULT_BUDGET,
            )
            .unwrap();
            let rep = composite_equals_dilation(&vm_bc, &vm_cb).unwrap();
            assert!(rep.is_ok(), "{:?}", rep.mismatches);
        }
    }

    #[test]
    fn string_scaling_holds() {
        let vm = flag_vm();
        assert!(check_string_scaling(&vm).is_empty());
    }

    #[test]
    fn non_executable_rows_rejected() {
        let table = DynkinEmbedding::table(2);
        let ca = table.iter().find(|r| r.target_family == "A").unwrap();
        assert!(build_virtualization(ca, &Weight::from_ints(&[1, 0]), 1000).is_err());
    }
}
