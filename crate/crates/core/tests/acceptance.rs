//! Acceptance suite: one test per criterion, each printing a PASS line.
//! All comparisons are exact; runtime budgets are asserted where stated.

use kn_crystal::cartan::{CartanType, Weight};
use kn_crystal::graph::{
    explore, extremal_set, schutzenberger, CrystalGraph, CrystalVertex,
};
use kn_crystal::keys::{dilate, ell_bound, keys_with_extremal, tightness_witness};
use kn_crystal::sjdt::{
    bar_swap_rows, evac_b, evac_c, evac_c_rotated, rect_c, PuncturedTableau, SkewColumn,
    SkewTableau, SlideKind,
};
use kn_crystal::tableau::{
    apply, highest_weight_tableau, split_column, split_sets, split_tableau, Column, CrystalOp,
    KNTableau, SpinColumn, SpinShape,
};
use kn_crystal::verify::{run_suite, SuiteReport};
use kn_crystal::virt::{bc_virtualization, check_keys_commute, check_orbit_embedding, check_split_agrees};
use std::time::{Duration, Instant};

fn graph_of(t: CartanType, spin: bool, rows: &[usize]) -> CrystalGraph {
    let hw = highest_weight_tableau(t, &SpinShape::new(spin, rows.to_vec())).unwrap();
    explore(&CrystalVertex::Tableau(hw)).unwrap()
}

fn spin_vertex(spin: &[i32], boxes: &[i32]) -> CrystalVertex {
    CrystalVertex::Tableau(KNTableau::new(
        CartanType::b(2),
        Some(SpinColumn::new(spin.to_vec())),
        if boxes.is_empty() {
            vec![]
        } else {
            vec![Column::new(boxes.to_vec())]
        },
    ))
}

fn pass(n: usize, what: &str) {
    println!("ACCEPTANCE {}: PASS - {}", n, what);
}

/// Criterion 1: the flagship B_2 crystal has 16 vertices, 8 extremal
/// vertices and ell = 3, explored in under a second.
#[test]
fn acceptance_01_flagship_crystal() {
    let start = Instant::now();
    let g = graph_of(CartanType::b(2), true, &[1]);
    assert_eq!(g.len(), 16);
    assert_eq!(extremal_set(&g).len(), 8);
    assert_eq!(ell_bound(&g), 3);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    pass(1, "B(1^2|1) has 16 vertices, 8 extremal, ell = 3, under 1 s");
}

/// Criterion 2: the worked key computation.
#[test]
fn acceptance_02_keys_fixture() {
    let g = graph_of(CartanType::b(2), true, &[1]);
    let ext = extremal_set(&g);
    let t = spin_vertex(&[2, -1], &[0]);
    let v = g.index_of(&t).unwrap();
    let img = dilate(&g, v, 3).unwrap();
    assert_eq!(
        img.factors.factors,
        vec![
            spin_vertex(&[-2, -1], &[-2]),
            spin_vertex(&[2, -1], &[2]),
            spin_vertex(&[2, -1], &[2]),
        ]
    );
    let kp = keys_with_extremal(&g, v, &ext).unwrap();
    assert_eq!(kp.right, spin_vertex(&[-2, -1], &[-2]));
    assert_eq!(kp.left, spin_vertex(&[2, -1], &[2]));
    pass(2, "Theta_3 and keys of spin(2,-1)|0 match the worked example");
}

/// Criterion 3: the splitting fixtures.
#[test]
fn acceptance_03_splitting_fixtures() {
    // Column fixture in B_9.
    let c = Column::new(vec![2, 4, 6, 9, 0, 0, -9, -4, -2]);
    let (i_set, j_set) = split_sets(&c, CartanType::b(9)).unwrap();
    assert_eq!(i_set, vec![0, 0, 9, 4, 2]);
    assert_eq!(j_set, vec![8, 7, 5, 3, 1]);
    let (lc, rc) = split_column(&c, CartanType::b(9)).unwrap();
    assert_eq!(lc.cells, vec![1, 3, 5, 6, 7, 8, -9, -4, -2]);
    assert_eq!(rc.cells, vec![2, 4, 6, 9, -8, -7, -5, -3, -1]);
    // Tableau fixture in B_3.
    let t = KNTableau::new(
        CartanType::b(3),
        Some(SpinColumn::new(vec![1, 3, -2])),
        vec![
            Column::new(vec![2, 3, -2]),
            Column::new(vec![0, 0]),
            Column::new(vec![-3]),
        ],
    );
    let s = split_tableau(&t).unwrap();
    assert_eq!(s.shape(), SpinShape::new(false, vec![7, 5, 3]));
    let rows: Vec<Vec<i32>> = (0..3)
        .map(|r| {
            s.columns
                .iter()
                .filter(|cc| r < cc.height())
                .map(|cc| cc.cells[r])
                .collect()
        })
        .collect();
    assert_eq!(rows[0], vec![1, 1, 2, 2, -3, -3, -3]);
    assert_eq!(rows[1], vec![3, 3, 3, 3, -2]);
    assert_eq!(rows[2], vec![-2, -2, -1]);
    assert_eq!(s.weight(), Weight::from_ints(&[1, -1, 1]));
    assert_eq!(s.weight(), t.weight().scale(2));
    pass(3, "splitting fixtures reproduce I, J, lC/rC and the 7-column split");
}

/// Criterion 4: the lowering-operator chains.
#[test]
fn acceptance_04_operator_fixtures() {
    // f_8 chain on [8,0,0] in B_8.
    let t0 = KNTableau::new(CartanType::b(8), None, vec![Column::new(vec![8, 0, 0])]);
    let t1 = apply(CrystalOp::F, 8, &t0).unwrap().unwrap();
    assert_eq!(t1.columns[0].cells, vec![0, 0, 0]);
    let t2 = apply(CrystalOp::F, 8, &t1).unwrap().unwrap();
    assert_eq!(t2.columns[0].cells, vec![0, 0, -8]);
    assert!(apply(CrystalOp::F, 8, &t2).unwrap().is_none());
    // Four-step f_3 chain on the B_3 fixture, each state exact.
    let state = |spin: [i32; 3], c1: Vec<i32>, c2: Vec<i32>, c3: Vec<i32>| {
        KNTableau::new(
            CartanType::b(3),
            Some(SpinColumn::new(spin.to_vec())),
            vec![Column::new(c1), Column::new(c2), Column::new(c3)],
        )
    };
    let s0 = state([1, 3, -2], vec![2, 3, -2], vec![0, 0], vec![-3]);
    let s1 = apply(CrystalOp::F, 3, &s0).unwrap().unwrap();
    assert_eq!(s1, state([1, 3, -2], vec![2, 3, -2], vec![0, -3], vec![-3]));
    let s2 = apply(CrystalOp::F, 3, &s1).unwrap().unwrap();
    assert_eq!(s2, state([1, 3, -2], vec![2, 0, -2], vec![0, -3], vec![-3]));
    let s3 = apply(CrystalOp::F, 3, &s2).unwrap().unwrap();
    assert_eq!(s3, state([1, 3, -2], vec![2, -3, -2], vec![0, -3], vec![-3]));
    let s4 = apply(CrystalOp::F, 3, &s3).unwrap().unwrap();
    assert_eq!(s4, state([1, -3, -2], vec![2, -3, -2], vec![0, -3], vec![-3]));
    pass(4, "the f_8 chain and the four-step f_3 chain are exact");
}

/// Criterion 5: the worked rectification with its spelled-out steps.
#[test]
fn acceptance_05_sjdt_fixture() {
    let start = SkewTableau::new(
        CartanType::c(3),
        None,
        vec![
            SkewColumn { top: 3, cells: vec![1] },
            SkewColumn { top: 2, cells: vec![3, -3] },
            SkewColumn { top: 1, cells: vec![3, -3] },
        ],
    );
    // Spelled-out step one: an unbarred horizontal slide producing
    // C_1' = [2,3,-3], C_2' = [-2].
    let mut p = PuncturedTableau::new(&start, 1, 2).unwrap();
    assert_eq!(
        p.step().unwrap(),
        SlideKind::HorizontalUnbarred { contracted: false }
    );
    assert_eq!(
        p.to_skew(CartanType::c(3)).cols,
        vec![
            SkewColumn { top: 3, cells: vec![1] },
            SkewColumn { top: 1, cells: vec![2, 3, -3] },
            SkewColumn { top: 2, cells: vec![-2] },
        ]
    );
    p.run().unwrap();
    let after1 = p.to_skew(CartanType::c(3));
    // Spelled-out step four: in the second pass the barred slide rebuilds
    // the left column as Phi^{-1}([1] u [-3]) = [1,-3].
    let mut p2 = PuncturedTableau::new(&after1, 2, 1).unwrap();
    assert_eq!(p2.step().unwrap(), SlideKind::Vertical);
    assert_eq!(p2.step().unwrap(), SlideKind::HorizontalBarred);
    let after2 = p2.to_skew(CartanType::c(3));
    assert_eq!(
        after2.cols,
        vec![
            SkewColumn { top: 2, cells: vec![1, -3] },
            SkewColumn { top: 1, cells: vec![2, 3] },
            SkewColumn { top: 1, cells: vec![-2] },
        ]
    );
    // Terminal tableau.
    let t = rect_c(&start).unwrap();
    assert_eq!(
        t.columns,
        vec![
            Column::new(vec![1, 3, -3]),
            Column::new(vec![2]),
            Column::new(vec![-2])
        ]
    );
    pass(5, "the worked rectification terminates at rows (1,2,-2)/(3)/(-3)");
}

/// Criterion 6: the dilation bound, both directions, on three crystals.
#[test]
fn acceptance_06_extremal_endpoints() {
    let start = Instant::now();
    let graphs = vec![
        ("B(1^2|1)", graph_of(CartanType::b(2), true, &[1])),
        ("B_2 spin", graph_of(CartanType::b(2), true, &[])),
        ("C_2 B(1^2)", graph_of(CartanType::c(2), false, &[1, 1])),
    ];
    for (name, g) in graphs {
        let ext = extremal_set(&g);
        let ell = ell_bound(&g).max(1);
        for m in [ell, ell + 1] {
            for (v, _) in g.vertices() {
                let img = dilate(&g, v, m).unwrap();
                let first = g.index_of(img.factors.factors.first().unwrap()).unwrap();
                let last = g.index_of(img.factors.factors.last().unwrap()).unwrap();
                assert!(
                    ext.contains(first) && ext.contains(last),
                    "{}: Theta_{} endpoint not extremal at vertex {}",
                    name,
                    m,
                    g.vertex(v).label()
                );
            }
        }
        if ell >= 2 {
            assert!(
                tightness_witness(&g).unwrap().is_some(),
                "{}: missing tightness witness",
                name
            );
        } else {
            assert!(tightness_witness(&g).unwrap().is_none());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
    pass(6, "extremal endpoints hold at m >= ell with witnesses at ell - 1");
}

/// Criterion 7: the involution exchanges right and left keys.
#[test]
fn acceptance_07_keys_involution_exchange() {
    for (name, g) in [
        ("B(1^2|1)", graph_of(CartanType::b(2), true, &[1])),
        ("B_3 (-|2,1)", graph_of(CartanType::b(3), false, &[2, 1])),
    ] {
        let ext = extremal_set(&g);
        for (v, _) in g.vertices() {
            let xi_v = schutzenberger(&g, v).unwrap();
            let kp = keys_with_extremal(&g, v, &ext).unwrap();
            let kp_xi = keys_with_extremal(&g, xi_v, &ext).unwrap();
            let left_idx = g.index_of(&kp.left).unwrap();
            let xi_left = schutzenberger(&g, left_idx).unwrap();
            assert_eq!(
                g.index_of(&kp_xi.right),
                Some(xi_left),
                "{}: K+(xi(b)) != xi(K-(b)) at {}",
                name,
                g.vertex(v).label()
            );
        }
    }
    pass(7, "K+(xi(b)) = xi(K-(b)) exhaustively on both crystals");
}

/// Criterion 8: splitting is the operator-lifted virtualization and keys
/// commute with it, exhaustively on the flagship pair.
#[test]
fn acceptance_08_virtualization() {
    let start = Instant::now();
    let vm = bc_virtualization(2, &Weight::from_doubled(vec![3, 1])).unwrap();
    assert_eq!(vm.source.len(), 16);
    assert_eq!(vm.target.len(), 35);
    assert_eq!(vm.target.highest_weight(), &Weight::from_ints(&[3, 1]));
    let split_rep = check_split_agrees(&vm).unwrap();
    assert!(split_rep.is_ok(), "{:?}", split_rep.mismatches);
    let orbit_rep = check_orbit_embedding(&vm);
    assert!(orbit_rep.is_ok(), "{:?}", orbit_rep.mismatches);
    let keys_rep = check_keys_commute(&vm).unwrap();
    assert!(keys_rep.is_ok(), "{:?}", keys_rep.mismatches);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
    pass(8, "split = operator lift and split . K = K . split on B(1^2|1) -> C(3,1)");
}

/// Criterion 9: evacuation equals the graph involution, is involutive, and
/// the worked intermediates match.
#[test]
fn acceptance_09_evacuation() {
    let gb = graph_of(CartanType::b(2), true, &[1]);
    for (v, vert) in gb.vertices() {
        let t = vert.as_tableau().unwrap();
        let e = evac_b(t).unwrap();
        assert_eq!(
            gb.vertex(schutzenberger(&gb, v).unwrap()).as_tableau(),
            Some(&e)
        );
        assert_eq!(evac_b(&e).unwrap(), *t);
    }
    let gc = graph_of(CartanType::c(2), false, &[3, 1]);
    for (v, vert) in gc.vertices() {
        let t = vert.as_tableau().unwrap();
        let e = evac_c(t).unwrap();
        assert_eq!(
            gc.vertex(schutzenberger(&gc, v).unwrap()).as_tableau(),
            Some(&e)
        );
        assert_eq!(evac_c(&e).unwrap(), *t);
    }
    // Worked intermediates: bar-swap and rotation of split(spin(2,-1)|0).
    let t = KNTableau::new(
        CartanType::c(2),
        None,
        vec![
            Column::new(vec![2, -1]),
            Column::new(vec![2]),
            Column::new(vec![-2]),
        ],
    );
    assert_eq!(bar_swap_rows(&t), vec![vec![-2, -2, 2], vec![1]]);
    assert_eq!(
        evac_c_rotated(&t).cols,
        vec![
            SkewColumn { top: 2, cells: vec![2] },
            SkewColumn { top: 2, cells: vec![-2] },
            SkewColumn { top: 1, cells: vec![1, -2] },
        ]
    );
    pass(9, "evac_B and evac_C equal the involution; intermediates match");
}

/// Criterion 10: the full verification battery runs clean within budget.
#[test]
fn acceptance_10_verify_all() {
    let start = Instant::now();
    let reports: Vec<SuiteReport> = run_suite("all").unwrap();
    let failures: usize = reports.iter().map(|r| r.total_failures()).sum();
    let checked: u64 = reports.iter().map(|r| r.total_checked()).sum();
    for rep in &reports {
        for case in &rep.cases {
            assert!(
                case.failures.is_empty(),
                "{} / {}: {:?}",
                rep.suite,
                case.name,
                case.failures
            );
        }
    }
    assert_eq!(failures, 0);
    assert!(checked > 1000, "suites ran only {} checks", checked);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {:?}", elapsed);
    pass(
        10,
        "verify all: 0 failures across every suite, within the runtime budget",
    );
}
