//! Kashiwara-Nakashima tableaux for types B and C.
//!
//! Letters are encoded as signed integers: `i` as `+i`, barred `i` as `-i`,
//! and the type B zero letter as `0`. The alphabets are ordered
//! `1 < ... < n < 0 < -n < ... < -1` (type B) and `1 < ... < n < -n < ... < -1`
//! (type C).

use crate::cartan::{CartanType, Family, Weight};
use crate::error::{Error, Result, Violation};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A letter of the alphabet, encoded as described in the module docs.
pub type Entry = i32;

/// Total order position of a letter in the type's alphabet.
pub fn order_key(e: Entry, n: usize) -> i64 {
    let n = n as i64;
    let e = e as i64;
    if e > 0 {
        2 * e
    } else if e == 0 {
        2 * n + 1
    } else {
        4 * n + 2 + 2 * e
    }
}

/// Strict alphabet comparison `a < b`.
pub fn entry_lt(a: Entry, b: Entry, n: usize) -> bool {
    order_key(a, n) < order_key(b, n)
}

/// Weak alphabet comparison `a <= b`.
pub fn entry_le(a: Entry, b: Entry, n: usize) -> bool {
    order_key(a, n) <= order_key(b, n)
}

pub fn entry_in_alphabet(e: Entry, t: CartanType) -> bool {
    let n = t.rank as i32;
    if e == 0 {
        t.family == Family::B
    } else {
        e.abs() <= n
    }
}

/// Render a letter for humans: barred letters carry a combining macron.
pub fn entry_text(e: Entry) -> String {
    if e < 0 {
        format!("{}\u{0304}", -e)
    } else {
        format!("{}", e)
    }
}

/// Parse either machine form (`-2`) or overbar form (`2̄`).
pub fn parse_entry(s: &str) -> Result<Entry> {
    let s = s.trim();
    if let Some(stripped) = s.strip_suffix('\u{0304}') {
        let v: i32 = stripped
            .parse()
            .map_err(|_| Error::Parse(format!("bad entry {:?}", s)))?;
        return Ok(-v);
    }
    s.parse()
        .map_err(|_| Error::Parse(format!("bad entry {:?}", s)))
}

fn sort_entries(entries: &mut [Entry], n: usize) {
    entries.sort_by_key(|&e| order_key(e, n));
}

/// An ordinary (non-spin) column, cells top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Column {
    pub cells: Vec<Entry>,
}

impl Column {
    pub fn new(cells: Vec<Entry>) -> Self {
        Column { cells }
    }

    pub fn height(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, e: Entry) -> bool {
        self.cells.contains(&e)
    }

    /// Admissibility of a column for the given type.
    ///
    /// Checks the alphabet, strict increase (type B zeros may repeat), and
    /// the pair condition `N(z) = p + q <= z`.
    pub fn validate(&self, t: CartanType) -> std::result::Result<(), Violation> {
        let n = t.rank;
        if self.cells.is_empty() || self.cells.len() > n {
            return Err(Violation::new(
                "column.height",
                format!("height {} not in 1..={}", self.cells.len(), n),
            ));
        }
        for &e in &self.cells {
            if !entry_in_alphabet(e, t) {
                return Err(Violation::new(
                    "column.alphabet",
                    format!("entry {} not in the {} alphabet", entry_text(e), t),
                ));
            }
        }
        for w in self.cells.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ok = entry_lt(a, b, n) || (a == 0 && b == 0);
            if !ok {
                return Err(Violation::new(
                    "column.strict",
                    format!(
                        "entries {} {} not strictly increasing",
                        entry_text(a),
                        entry_text(b)
                    ),
                ));
            }
        }
        for z in 1..=n as i32 {
            let p = self.cells.iter().position(|&e| e == z);
            let q = self.cells.iter().position(|&e| e == -z);
            if let (Some(p), Some(q)) = (p, q) {
                let p = p + 1; // row of z from the top
                let q = self.cells.len() - q; // row of -z from the bottom
                if (p + q) as i32 > z {
                    return Err(Violation::new(
                        "column.pair",
                        format!("N({}) = {} + {} > {}", z, p, q, z),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Paired letters: each zero pairs with itself, a letter `z > 0` is
    /// paired when both `z` and barred `z` occur.
    pub fn paired_letters(&self, n: usize) -> Vec<Entry> {
        let mut out: Vec<Entry> = self.cells.iter().copied().filter(|&e| e == 0).collect();
        let mut pos: Vec<Entry> = (1..=n as i32)
            .filter(|&z| self.contains(z) && self.contains(-z))
            .collect();
        pos.sort_unstable_by(|a, b| b.cmp(a));
        out.extend(pos);
        out
    }
}

/// A spin column: height exactly `n`, no zeros, no symmetric pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpinColumn {
    pub cells: Vec<Entry>,
}

impl SpinColumn {
    pub fn new(cells: Vec<Entry>) -> Self {
        SpinColumn { cells }
    }

    pub fn contains(&self, e: Entry) -> bool {
        self.cells.contains(&e)
    }

    pub fn validate(&self, t: CartanType) -> std::result::Result<(), Violation> {
        let n = t.rank;
        if t.family != Family::B {
            return Err(Violation::new(
                "spin.family",
                "spin columns exist only in type B",
            ));
        }
        if self.cells.len() != n {
            return Err(Violation::new(
                "spin.height",
                format!("height {} != rank {}", self.cells.len(), n),
            ));
        }
        for &e in &self.cells {
            if e == 0 || e.unsigned_abs() as usize > n {
                return Err(Violation::new(
                    "spin.alphabet",
                    format!("entry {} not allowed in a spin column", entry_text(e)),
                ));
            }
        }
        for w in self.cells.windows(2) {
            if !entry_lt(w[0], w[1], n) {
                return Err(Violation::new(
                    "spin.strict",
                    format!(
                        "entries {} {} not strictly increasing",
                        entry_text(w[0]),
                        entry_text(w[1])
                    ),
                ));
            }
        }
        for z in 1..=n as i32 {
            if self.contains(z) && self.contains(-z) {
                return Err(Violation::new(
                    "spin.pair",
                    format!("contains the pair ({}, {})", z, entry_text(-z)),
                ));
            }
        }
        Ok(())
    }
}

/// The shape of a KN tableau: an optional full-height spin column plus a
/// partition given by row lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpinShape {
    pub spin: bool,
    pub rows: Vec<usize>,
}

impl SpinShape {
    pub fn new(spin: bool, rows: Vec<usize>) -> Self {
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        SpinShape { spin, rows }
    }

    /// Column heights (conjugate partition).
    pub fn column_heights(&self) -> Vec<usize> {
        let width = self.rows.first().copied().unwrap_or(0);
        (1..=width)
            .map(|c| self.rows.iter().filter(|&&r| r >= c).count())
            .collect()
    }

    /// The highest weight carried by this shape.
    pub fn weight(&self, t: CartanType) -> Weight {
        let n = t.rank;
        let mut doubled = vec![0i64; n];
        for (r, &len) in self.rows.iter().enumerate() {
            doubled[r] += 2 * len as i64;
        }
        if self.spin {
            for d in doubled.iter_mut() {
                *d += 1;
            }
        }
        Weight::from_doubled(doubled)
    }

    pub fn validate(&self, t: CartanType) -> std::result::Result<(), Violation> {
        if self.spin && t.family != Family::B {
            return Err(Violation::new("shape.spin", "spin part requires type B"));
        }
        if self.rows.len() > t.rank {
            return Err(Violation::new(
                "shape.rows",
                format!("{} rows exceed rank {}", self.rows.len(), t.rank),
            ));
        }
        if self.rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Violation::new("shape.partition", "rows must weakly decrease"));
        }
        Ok(())
    }
}

impl fmt::Display for SpinShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}|{:?})",
            if self.spin { "spin" } else { "-" },
            self.rows
        )
    }
}

/// A straight-shape Kashiwara-Nakashima tableau.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KNTableau {
    pub ctype: CartanType,
    pub spin: Option<SpinColumn>,
    pub columns: Vec<Column>,
}

impl KNTableau {
    pub fn new(ctype: CartanType, spin: Option<SpinColumn>, columns: Vec<Column>) -> Self {
        KNTableau {
            ctype,
            spin,
            columns,
        }
    }

    pub fn empty(ctype: CartanType) -> Self {
        KNTableau {
            ctype,
            spin: None,
            columns: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.spin.is_none() && self.columns.is_empty()
    }

    pub fn shape(&self) -> SpinShape {
        let heights: Vec<usize> = self.columns.iter().map(|c| c.height()).collect();
        let max_h = heights.iter().copied().max().unwrap_or(0);
        let rows: Vec<usize> = (1..=max_h)
            .map(|r| heights.iter().filter(|&&h| h >= r).count())
            .collect();
        SpinShape::new(self.spin.is_some(), rows)
    }

    /// Number of boxes, the spin column counting `n`.
    pub fn size(&self) -> usize {
        self.spin.as_ref().map_or(0, |s| s.cells.len())
            + self.columns.iter().map(|c| c.height()).sum::<usize>()
    }

    /// Full admissibility check; reports the first violated clause.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let t = self.ctype;
        let n = t.rank;
        if let Some(s) = &self.spin {
            s.validate(t)?;
        }
        for c in &self.columns {
            c.validate(t)?;
            if t.family == Family::C && c.contains(0) {
                return Err(Violation::new(
                    "tableau.alphabet",
                    "type C tableaux use only nonzero entries",
                ));
            }
        }
        for w in self.columns.windows(2) {
            if w[0].height() < w[1].height() {
                return Err(Violation::new(
                    "tableau.heights",
                    "column heights must weakly decrease left to right",
                ));
            }
        }
        // Rows weakly increase (spin column participates) with no repeated
        // zeros in a row.
        let max_h = self.columns.first().map_or(0, |c| c.height());
        let spin_h = self.spin.as_ref().map_or(0, |s| s.cells.len());
        for r in 0..max_h.max(spin_h) {
            let mut row: Vec<Entry> = Vec::new();
            if let Some(s) = &self.spin {
                if r < s.cells.len() {
                    row.push(s.cells[r]);
                }
            }
            for c in &self.columns {
                if r < c.height() {
                    row.push(c.cells[r]);
                }
            }
            for w in row.windows(2) {
                if !entry_le(w[0], w[1], n) {
                    return Err(Violation::new(
                        "tableau.rows",
                        format!(
                            "row {} entries {} {} not weakly increasing",
                            r + 1,
                            entry_text(w[0]),
                            entry_text(w[1])
                        ),
                    ));
                }
                if w[0] == 0 && w[1] == 0 {
                    return Err(Violation::new(
                        "tableau.rows",
                        format!("row {} repeats the zero letter", r + 1),
                    ));
                }
            }
        }
        // The split must be semistandard.
        let split = split_tableau_unchecked(self).map_err(|e| match e {
            Error::Invalid(v) => v,
            other => Violation::new("tableau.split", format!("{}", other)),
        })?;
        let cols = &split.columns;
        for c in cols {
            for w in c.cells.windows(2) {
                if !entry_lt(w[0], w[1], n) {
                    return Err(Violation::new(
                        "tableau.split",
                        "split column not strictly increasing",
                    ));
                }
            }
        }
        let split_max_h = cols.first().map_or(0, |c| c.height());
        for r in 0..split_max_h {
            let row: Vec<Entry> = cols
                .iter()
                .filter(|c| r < c.height())
                .map(|c| c.cells[r])
                .collect();
            if row.windows(2).any(|w| !entry_le(w[0], w[1], n)) {
                return Err(Violation::new(
                    "tableau.split",
                    format!("split row {} not weakly increasing", r + 1),
                ));
            }
        }
        Ok(())
    }

    /// Reading word: non-spin columns right to left, each top to bottom,
    /// then the spin column.
    pub fn reading_word(&self) -> Vec<Entry> {
        let mut w = Vec::with_capacity(self.size());
        for c in self.columns.iter().rev() {
            w.extend_from_slice(&c.cells);
        }
        if let Some(s) = &self.spin {
            w.extend_from_slice(&s.cells);
        }
        w
    }

    pub fn weight(&self) -> Weight {
        let n = self.ctype.rank;
        let mut doubled = vec![0i64; n];
        for c in &self.columns {
            for &e in &c.cells {
                if e > 0 {
                    doubled[e as usize - 1] += 2;
                } else if e < 0 {
                    doubled[(-e) as usize - 1] -= 2;
                }
            }
        }
        if let Some(s) = &self.spin {
            for &e in &s.cells {
                if e > 0 {
                    doubled[e as usize - 1] += 1;
                } else {
                    doubled[(-e) as usize - 1] -= 1;
                }
            }
        }
        Weight::from_doubled(doubled)
    }
}

/// The highest-weight tableau of a shape: column `j` is filled `1..height`,
/// the spin column is `1..n`.
pub fn highest_weight_tableau(t: CartanType, shape: &SpinShape) -> Result<KNTableau> {
    shape.validate(t).map_err(Error::Invalid)?;
    let spin = if shape.spin {
        Some(SpinColumn::new((1..=t.rank as i32).collect()))
    } else {
        None
    };
    let columns = shape
        .column_heights()
        .into_iter()
        .map(|h| Column::new((1..=h as i32).collect()))
        .collect();
    let tab = KNTableau::new(t, spin, columns);
    tab.validate().map_err(Error::Invalid)?;
    Ok(tab)
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

/// The sets `I(C)` (paired letters, zeros self-paired, in decreasing order)
/// and `J(C)` (greedy replacement letters).
pub fn split_sets(c: &Column, t: CartanType) -> Result<(Vec<Entry>, Vec<Entry>)> {
    c.validate(t).map_err(Error::Invalid)?;
    let n = t.rank;
    let i_set = c.paired_letters(n);
    let mut j_set: Vec<Entry> = Vec::with_capacity(i_set.len());
    let mut prev: Option<Entry> = None;
    for &z in &i_set {
        let mut found = None;
        // Candidates are unbarred letters below z (and below the previous
        // replacement) that occur in the column with neither sign.
        let mut cand: Vec<Entry> = (1..=n as i32)
            .filter(|&x| !c.contains(x) && !c.contains(-x))
            .filter(|&x| entry_lt(x, z, n))
            .filter(|&x| prev.is_none_or(|p| entry_lt(x, p, n)))
            .collect();
        cand.sort_unstable();
        if let Some(&x) = cand.last() {
            found = Some(x);
        }
        let x = found.ok_or_else(|| {
            Error::Internal(format!(
                "no replacement letter below {} in admissible column",
                entry_text(z)
            ))
        })?;
        j_set.push(x);
        prev = Some(x);
    }
    Ok((i_set, j_set))
}

/// Splitting of an admissible column into `(lC, rC)`.
///
/// `lC` replaces the unbarred half of each pair (and each zero) by the
/// matching replacement letter; `rC` does the same on the barred half.
pub fn split_column(c: &Column, t: CartanType) -> Result<(Column, Column)> {
    let n = t.rank;
    let (i_set, j_set) = split_sets(c, t)?;
    let mut zero_ts: Vec<Entry> = Vec::new();
    let mut pair_t: std::collections::BTreeMap<Entry, Entry> = Default::default();
    for (&z, &tl) in i_set.iter().zip(&j_set) {
        if z == 0 {
            zero_ts.push(tl);
        } else {
            pair_t.insert(z, tl);
        }
    }
    let mut left: Vec<Entry> = Vec::with_capacity(c.height());
    let mut right: Vec<Entry> = Vec::with_capacity(c.height());
    let mut zi = 0usize;
    for &e in &c.cells {
        if e == 0 {
            left.push(zero_ts[zi]);
            right.push(-zero_ts[zi]);
            zi += 1;
        } else if e > 0 {
            if let Some(&tl) = pair_t.get(&e) {
                left.push(tl);
            } else {
                left.push(e);
            }
            right.push(e);
        } else {
            if let Some(&tl) = pair_t.get(&-e) {
                right.push(-tl);
            } else {
                right.push(e);
            }
            left.push(e);
        }
    }
    sort_entries(&mut left, n);
    sort_entries(&mut right, n);
    let lc = Column::new(left);
    let rc = Column::new(right);
    let tc = CartanType::c(n);
    lc.validate(tc).map_err(|v| {
        Error::Internal(format!("lC of split is inadmissible: {}", v))
    })?;
    rc.validate(tc).map_err(|v| {
        Error::Internal(format!("rC of split is inadmissible: {}", v))
    })?;
    Ok((lc, rc))
}

fn split_tableau_unchecked(tab: &KNTableau) -> Result<KNTableau> {
    let n = tab.ctype.rank;
    let mut columns: Vec<Column> = Vec::new();
    if let Some(s) = &tab.spin {
        columns.push(Column::new(s.cells.clone()));
    }
    for c in &tab.columns {
        let (l, r) = split_column(c, tab.ctype)?;
        columns.push(l);
        columns.push(r);
    }
    Ok(KNTableau::new(CartanType::c(n), None, columns))
}

/// The splitting map on whole tableaux; the result is a type C tableau of
/// shape `mu_0 + 2 mu` and doubled weight.
pub fn split_tableau(tab: &KNTableau) -> Result<KNTableau> {
    tab.validate().map_err(Error::Invalid)?;
    let out = split_tableau_unchecked(tab)?;
    out.validate().map_err(|v| {
        Error::Internal(format!("split output failed validation: {}", v))
    })?;
    debug_assert_eq!(out.weight(), tab.weight().scale(2));
    Ok(out)
}

/// Inverse of [`split_tableau`] for a given target spin-shape.
pub fn unsplit(s: &KNTableau, spin_target: bool) -> Result<KNTableau> {
    if s.ctype.family != Family::C {
        return Err(Violation::new("unsplit.type", "input must be type C").into());
    }
    s.validate().map_err(Error::Invalid)?;
    let n = s.ctype.rank;
    let bt = CartanType::b(n);
    let mut cols = s.columns.iter();
    let spin = if spin_target {
        let first = cols.next().ok_or_else(|| {
            Error::NotInSplitImage("missing spin column".to_string())
        })?;
        if first.height() != n {
            return Err(Error::NotInSplitImage(format!(
                "spin column must have height {}",
                n
            )));
        }
        let sc = SpinColumn::new(first.cells.clone());
        sc.validate(bt)
            .map_err(|v| Error::NotInSplitImage(format!("spin column: {}", v)))?;
        Some(sc)
    } else {
        None
    };
    let rest: Vec<&Column> = cols.collect();
    if !rest.len().is_multiple_of(2) {
        return Err(Error::NotInSplitImage(
            "odd number of non-spin columns".to_string(),
        ));
    }
    let mut columns = Vec::with_capacity(rest.len() / 2);
    for pair in rest.chunks(2) {
        let (l, r) = (pair[0], pair[1]);
        if l.height() != r.height() {
            return Err(Error::NotInSplitImage(
                "paired columns differ in height".to_string(),
            ));
        }
        let h = l.height();
        let mut cells: Vec<Entry> = Vec::with_capacity(h);
        cells.extend(r.cells.iter().copied().filter(|&e| e > 0));
        cells.extend(l.cells.iter().copied().filter(|&e| e < 0));
        if cells.len() > h {
            return Err(Error::NotInSplitImage(
                "column pair carries too many letters".to_string(),
            ));
        }
        cells.resize(h, 0);
        sort_entries(&mut cells, n);
        let c = Column::new(cells);
        c.validate(bt)
            .map_err(|v| Error::NotInSplitImage(format!("recovered column: {}", v)))?;
        let (lc, rc) = split_column(&c, bt)?;
        if &lc != l || &rc != r {
            return Err(Error::NotInSplitImage(format!(
                "columns {:?} | {:?} fail the lC/rC relation",
                l.cells, r.cells
            )));
        }
        columns.push(c);
    }
    let tab = KNTableau::new(bt, spin, columns);
    tab.validate()
        .map_err(|v| Error::NotInSplitImage(format!("recovered tableau: {}", v)))?;
    Ok(tab)
}

// ---------------------------------------------------------------------------
// Crystal operators
// ---------------------------------------------------------------------------

/// Which raising/lowering operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrystalOp {
    E,
    F,
}

/// String statistics `(eps_i, phi_i)` of a single non-spin letter.
///
/// These are the signature symbols of the rules for non-spin entries, read
/// as `(-)^eps (+)^phi`; e.g. in type B at color `n` the letter `n` carries
/// `++`, the zero letter `-+`, and barred `n` carries `--`.
fn letter_stats(e: Entry, t: CartanType, i: usize) -> (u8, u8) {
    let n = t.rank;
    let ii = i as i32;
    if i < n {
        if e == ii || e == -(ii + 1) {
            (0, 1)
        } else if e == -ii || e == ii + 1 {
            (1, 0)
        } else {
            (0, 0)
        }
    } else {
        match t.family {
            Family::B => {
                if e == ii {
                    (0, 2)
                } else if e == 0 {
                    (1, 1)
                } else if e == -ii {
                    (2, 0)
                } else {
                    (0, 0)
                }
            }
            Family::C => {
                if e == ii {
                    (0, 1)
                } else if e == -ii {
                    (1, 0)
                } else {
                    (0, 0)
                }
            }
        }
    }
}

/// String statistics of a spin column: at most one step in either direction.
pub fn spin_stats(s: &SpinColumn, n: usize, i: usize) -> (u8, u8) {
    let ii = i as i32;
    if i < n {
        let phi = u8::from(s.contains(ii) && s.contains(-(ii + 1)));
        let eps = u8::from(s.contains(-ii) && s.contains(ii + 1));
        (eps, phi)
    } else {
        (u8::from(s.contains(-ii)), u8::from(s.contains(ii)))
    }
}

/// A factor of the reading word for signature purposes: either one non-spin
/// letter (identified by its cell) or the whole spin column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    /// (column index, cell index) of a non-spin letter.
    Cell(usize, usize),
    Spin,
}

fn factors_of(tab: &KNTableau) -> Vec<Factor> {
    let mut fs = Vec::with_capacity(tab.size());
    for (ci, c) in tab.columns.iter().enumerate().rev() {
        for k in 0..c.height() {
            fs.push(Factor::Cell(ci, k));
        }
    }
    if tab.spin.is_some() {
        fs.push(Factor::Spin);
    }
    fs
}

fn factor_stats(tab: &KNTableau, f: Factor, i: usize) -> (u8, u8) {
    match f {
        Factor::Cell(ci, k) => letter_stats(tab.columns[ci].cells[k], tab.ctype, i),
        Factor::Spin => spin_stats(tab.spin.as_ref().unwrap(), tab.ctype.rank, i),
    }
}

/// Bracket the signature `(-)^eps (+)^phi` over a sequence of factor stats.
/// Returns `(eps, phi, index of leftmost unpaired +, index of rightmost
/// unpaired -)` where indices point into the factor sequence.
fn bracket(stats: &[(u8, u8)]) -> (i64, i64, Option<usize>, Option<usize>) {
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

/// `(eps_i, phi_i)` of a whole tableau.
pub fn tableau_stats(tab: &KNTableau, i: usize) -> (i64, i64) {
    let fs = factors_of(tab);
    let stats: Vec<(u8, u8)> = fs.iter().map(|&f| factor_stats(tab, f, i)).collect();
    let (e, p, _, _) = bracket(&stats);
    (e, p)
}

fn edit_letter(e: Entry, t: CartanType, i: usize, op: CrystalOp) -> Entry {
    let n = t.rank;
    let ii = i as i32;
    match op {
        CrystalOp::F => {
            if i < n {
                if e == ii {
                    ii + 1
                } else if e == -(ii + 1) {
                    -ii
                } else {
                    unreachable!("f edit on non-participating letter")
                }
            } else {
                match t.family {
                    Family::B => {
                        if e == ii {
                            0
                        } else if e == 0 {
                            -ii
                        } else {
                            unreachable!()
                        }
                    }
                    Family::C => {
                        debug_assert_eq!(e, ii);
                        -ii
                    }
                }
            }
        }
        CrystalOp::E => {
            if i < n {
                if e == ii + 1 {
                    ii
                } else if e == -ii {
                    -(ii + 1)
                } else {
                    unreachable!("e edit on non-participating letter")
                }
            } else {
                match t.family {
                    Family::B => {
                        if e == 0 {
                            ii
                        } else if e == -ii {
                            0
                        } else {
                            unreachable!()
                        }
                    }
                    Family::C => {
                        debug_assert_eq!(e, -ii);
                        ii
                    }
                }
            }
        }
    }
}

/// Spin-column edit. Follows the lowering-operator clause for spin entries
/// verbatim, including the annihilation branch when the partner letter is
/// absent (which a full-height spin column never triggers).
fn edit_spin(s: &SpinColumn, n: usize, i: usize, op: CrystalOp) -> Option<SpinColumn> {
    let ii = i as i32;
    let mut cells = s.cells.clone();
    match op {
        CrystalOp::F => {
            if i < n {
                if !s.contains(ii) {
                    return None;
                }
                if !s.contains(-(ii + 1)) {
                    return None;
                }
                for c in cells.iter_mut() {
                    if *c == ii {
                        *c = ii + 1;
                    } else if *c == -(ii + 1) {
                        *c = -ii;
                    }
                }
            } else {
                if !s.contains(ii) {
                    return None;
                }
                for c in cells.iter_mut() {
                    if *c == ii {
                        *c = -ii;
                    }
                }
            }
        }
        CrystalOp::E => {
            if i < n {
                if !s.contains(-ii) {
                    return None;
                }
                if !s.contains(ii + 1) {
                    return None;
                }
                for c in cells.iter_mut() {
                    if *c == -ii {
                        *c = -(ii + 1);
                    } else if *c == ii + 1 {
                        *c = ii;
                    }
                }
            } else {
                if !s.contains(-ii) {
                    return None;
                }
                for c in cells.iter_mut() {
                    if *c == -ii {
                        *c = ii;
                    }
                }
            }
        }
    }
    Some(SpinColumn::new(cells))
}

/// Apply a crystal operator to a tableau. `Ok(None)` is the in-band
/// annihilated result; an inadmissible output is an internal defect.
pub fn apply(op: CrystalOp, i: usize, tab: &KNTableau) -> Result<Option<KNTableau>> {
    tab.ctype.check_color(i)?;
    let fs = factors_of(tab);
    let stats: Vec<(u8, u8)> = fs.iter().map(|&f| factor_stats(tab, f, i)).collect();
    let (_, _, leftmost_plus, rightmost_minus) = bracket(&stats);
    let target = match op {
        CrystalOp::F => leftmost_plus,
        CrystalOp::E => rightmost_minus,
    };
    let Some(j) = target else {
        return Ok(None);
    };
    let mut out = tab.clone();
    match fs[j] {
        Factor::Cell(ci, k) => {
            let e = out.columns[ci].cells[k];
            out.columns[ci].cells[k] = edit_letter(e, tab.ctype, i, op);
        }
        Factor::Spin => {
            let s = out.spin.as_ref().unwrap();
            match edit_spin(s, tab.ctype.rank, i, op) {
                Some(ns) => out.spin = Some(ns),
                None => return Ok(None),
            }
        }
    }
    out.validate().map_err(|v| {
        Error::Internal(format!(
            "crystal operator produced an inadmissible tableau ({}): {:?}",
            v, out
        ))
    })?;
    Ok(Some(out))
}

// ---------------------------------------------------------------------------
// JSON and text interchange
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct TableauJson {
    #[serde(rename = "type")]
    ctype: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    spin: Option<Vec<Entry>>,
    columns: Vec<Vec<Entry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner: Option<Vec<usize>>,
}

pub fn tableau_to_json(tab: &KNTableau) -> serde_json::Value {
    serde_json::to_value(TableauJson {
        ctype: tab.ctype.family.to_string(),
        n: tab.ctype.rank,
        spin: tab.spin.as_ref().map(|s| s.cells.clone()),
        columns: tab.columns.iter().map(|c| c.cells.clone()).collect(),
        inner: None,
    })
    .expect("serializable")
}

pub fn tableau_from_json(v: &serde_json::Value) -> Result<KNTableau> {
    let dto: TableauJson = serde_json::from_value(v.clone())?;
    if dto.inner.is_some() {
        return Err(Error::Parse(
            "skew tableau supplied where a straight tableau was expected".into(),
        ));
    }
    let family = match dto.ctype.as_str() {
        "B" => Family::B,
        "C" => Family::C,
        other => return Err(Error::Parse(format!("unknown type {:?}", other))),
    };
    let t = CartanType::new(family, dto.n)?;
    let tab = KNTableau::new(
        t,
        dto.spin.map(SpinColumn::new),
        dto.columns.into_iter().map(Column::new).collect(),
    );
    tab.validate().map_err(Error::Invalid)?;
    Ok(tab)
}

/// Human text rendering: one line per row, spin entry separated by `|`,
/// barred letters with overbars.
pub fn tableau_to_text(tab: &KNTableau) -> String {
    let spin_h = tab.spin.as_ref().map_or(0, |s| s.cells.len());
    let max_h = tab.columns.first().map_or(0, |c| c.height()).max(spin_h);
    if max_h == 0 {
        return "(empty)".to_string();
    }
    let mut lines = Vec::new();
    for r in 0..max_h {
        let mut line = String::new();
        if let Some(s) = &tab.spin {
            if r < s.cells.len() {
                line.push_str(&entry_text(s.cells[r]));
            }
            line.push_str(" |");
        }
        for c in &tab.columns {
            if r < c.height() {
                line.push(' ');
                line.push_str(&entry_text(c.cells[r]));
            }
        }
        lines.push(line.trim_end().to_string());
    }
    lines.join("\n")
}

pub fn tableau_from_text(t: CartanType, text: &str) -> Result<KNTableau> {
    let mut spin_cells: Vec<Entry> = Vec::new();
    let mut rows: Vec<Vec<Entry>> = Vec::new();
    let mut has_spin = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == "(empty)" {
            continue;
        }
        let (spin_part, rest) = match line.split_once('|') {
            Some((s, r)) => {
                has_spin = true;
                (Some(s), r)
            }
            None => (None, line),
        };
        if let Some(sp) = spin_part {
            for tok in sp.split_whitespace() {
                spin_cells.push(parse_entry(tok)?);
            }
        }
        let row: Vec<Entry> = rest
            .split_whitespace()
            .map(parse_entry)
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut columns = Vec::new();
    for c in 0..width {
        let cells: Vec<Entry> = rows.iter().filter_map(|r| r.get(c).copied()).collect();
        columns.push(Column::new(cells));
    }
    let tab = KNTableau::new(
        t,
        if has_spin {
            Some(SpinColumn::new(spin_cells))
        } else {
            None
        },
        columns,
    );
    tab.validate().map_err(Error::Invalid)?;
    Ok(tab)
}

impl fmt::Display for KNTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", tableau_to_text(self))
    }
}
