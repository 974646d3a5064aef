use std::collections::HashMap;

use thiserror::Error;

use crate::exactfield::Scalar;

use super::ncpoly::NCPoly;
use super::word::Word;

/// Sparse vector: (index, coefficient) pairs with strictly increasing indices.
pub type SVec<F> = Vec<(usize, F)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("degree {degree} exceeds the rewrite cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("degree_cap must be at least 2, got {0}")]
    CapTooSmall(usize),
    #[error("degree {degree}: {found} irreducible words, expected {expected}")]
    HilbertMismatch {
        degree: usize,
        found: usize,
        expected: usize,
    },
}

/// A leading word together with its normal form.
#[derive(Clone, Debug)]
pub struct Rule<F: Scalar> {
    pub lead: Word,
    pub tail: NCPoly<F>,
}

/// Outcome of a centrality test.
#[derive(Clone, Debug, PartialEq)]
pub enum Centrality<F: Scalar> {
    Central,
    /// `[p, generator]` has the given nonzero normal form.
    NotCentral { generator: u8, commutator: NCPoly<F> },
}

impl<F: Scalar> Centrality<F> {
    pub fn is_central(&self) -> bool {
        matches!(self, Centrality::Central)
    }
}

/// Which redex [`RewriteSystem::reduce_by_rules`] rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Degree-truncated normal forms for the Sklyanin relations
/// `a·yz + b·zy + c·x²`, `a·zx + b·xz + c·y²`, `a·xy + b·yx + c·z²`
/// under deglex with x ≺ y ≺ z.
///
/// Each degree is completed by row-reducing the relation space inside the
/// span of (standard word)·(letter). The result is a right-multiplication
/// table: `right[d][i][l]` is the normal form of `basis[d][i]·l`.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Scalar> {
    coeffs: [F; 3],
    cap: usize,
    basis: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    right: Vec<Vec<[SVec<F>; 3]>>,
    rules: Vec<Rule<F>>,
    rule_index: HashMap<Word, usize>,
}

pub fn standard_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

fn relations<F: Scalar>(c: &[F; 3]) -> [[(u8, u8, F); 3]; 3] {
    let [a, b, cc] = c.clone();
    [
        [(1, 2, a.clone()), (2, 1, b.clone()), (0, 0, cc.clone())],
        [(2, 0, a.clone()), (0, 2, b.clone()), (1, 1, cc.clone())],
        [(0, 1, a), (1, 0, b), (2, 2, cc)],
    ]
}

/// `row -= f * other` on sparse vectors.
fn axpy<F: Scalar>(row: &SVec<F>, f: &F, other: &SVec<F>) -> SVec<F> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            let v = f.mul(&other[j].1).neg();
            if !v.is_zero() {
                out.push((other[j].0, v));
            }
            j += 1;
        } else {
            let mut v = row[i].1.clone();
            v.sub_assign(&f.mul(&other[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row<F: Scalar>(row: &mut SVec<F>, s: &F) {
    for e in row.iter_mut() {
        e.1 = e.1.mul(s);
    }
}

fn remove_content<F: Scalar>(row: &mut SVec<F>) {
    let k = row.iter().map(|e| e.1.order()).min().unwrap_or(0);
    if k > 0 {
        for e in row.iter_mut() {
            e.1 = e.1.div_uniformizer(k);
        }
    }
}

/// Echelon form over a field or a discrete valuation ring. Pivots sit at the
/// largest column of each row; a pivot is replaced whenever a row arrives
/// whose leading coefficient has smaller order.
struct Echelon<F: Scalar> {
    pivots: Vec<Option<SVec<F>>>,
}

impl<F: Scalar> Echelon<F> {
    fn new(ncols: usize) -> Self {
        Echelon {
            pivots: vec![None; ncols],
        }
    }

    fn insert(&mut self, mut row: SVec<F>) {
        loop {
            let Some((c, lc)) = row.last().cloned() else {
                return;
            };
            match &self.pivots[c] {
                None => {
                    remove_content(&mut row);
                    let lead = row.last().unwrap().1.clone();
                    if let Some(inv) = lead.try_inv() {
                        scale_row(&mut row, &inv);
                    }
                    self.pivots[c] = Some(row);
                    return;
                }
                Some(p) => {
                    let pl = &p.last().unwrap().1;
                    match lc.try_div(pl) {
                        Some(f) => {
                            let mut r = axpy(&row, &f, p);
                            // the leading entry cancels exactly
                            if r.last().map(|e| e.0) == Some(c) {
                                r.pop();
                            }
                            row = r;
                        }
                        None => {
                            let old = self.pivots[c].take().unwrap();
                            remove_content(&mut row);
                            self.pivots[c] = Some(row);
                            row = old;
                        }
                    }
                }
            }
        }
    }
}

impl<F: Scalar> RewriteSystem<F> {
    /// Complete the relations with coefficients `(a, b, c)` through `cap`.
    pub fn new(coeffs: [F; 3], cap: usize) -> Result<Self, RewriteError> {
        if cap < 2 {
            return Err(RewriteError::CapTooSmall(cap));
        }
        let mut rs = RewriteSystem {
            coeffs,
            cap,
            basis: vec![vec![Word::empty()], (0..3).map(Word::letter).collect()],
            index: Vec::new(),
            right: vec![vec![[
                vec![(0, F::one())],
                vec![(1, F::one())],
                vec![(2, F::one())],
            ]]],
            rules: Vec::new(),
            rule_index: HashMap::new(),
        };
        for d in 1..cap {
            rs.extend(d)?;
        }
        rs.index = rs
            .basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
            .collect();
        Ok(rs)
    }

    /// Build `basis[d+1]` and `right[d]` from the degree-d data.
    fn extend(&mut self, d: usize) -> Result<(), RewriteError> {
        let rels = relations(&self.coeffs);
        let bd = &self.basis[d];
        let ncols = 3 * bd.len();
        let mut rows = Vec::new();
        for u in 0..self.basis[d - 1].len() {
            for rel in &rels {
                let mut acc: Vec<Option<F>> = vec![None; ncols];
                for (l1, l2, c) in rel {
                    for (j, v) in &self.right[d - 1][u][*l1 as usize] {
                        let col = 3 * j + *l2 as usize;
                        add_slot(&mut acc[col], c.mul(v));
                    }
                }
                let row: SVec<F> = acc
                    .into_iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.filter(|v| !v.is_zero()).map(|v| (i, v)))
                    .collect();
                rows.push(row);
            }
        }
        let word_of = |col: usize| bd[col / 3].concat(&Word::letter((col % 3) as u8));
        let reduced = match deglex_reduce(&rows, ncols) {
            Some(r) => r,
            None => unit_pivot_reduce(&rows, ncols),
        };
        let mut new_index = vec![usize::MAX; ncols];
        let mut next = Vec::new();
        for c in 0..ncols {
            if reduced[c].is_none() {
                new_index[c] = next.len();
                next.push(word_of(c));
            }
        }
        let expected = standard_count(d + 1);
        if next.len() != expected {
            return Err(RewriteError::HilbertMismatch {
                degree: d + 1,
                found: next.len(),
                expected,
            });
        }
        let next_set: std::collections::HashSet<&Word> = next.iter().collect();
        let mut table = Vec::with_capacity(bd.len());
        let mut new_rules = Vec::new();
        for i in 0..bd.len() {
            let mut entry: [SVec<F>; 3] = Default::default();
            for (l, slot) in entry.iter_mut().enumerate() {
                let c = 3 * i + l;
                *slot = match &reduced[c] {
                    None => vec![(new_index[c], F::one())],
                    Some(q) => q
                        .iter()
                        .map(|(k, v)| (new_index[*k], v.neg()))
                        .collect(),
                };
                if reduced[c].is_some() {
                    let w = word_of(c);
                    let suffix = Word(w.0[1..].to_vec());
                    let suffix_std = if d == 1 {
                        true
                    } else {
                        self.basis[d].binary_search(&suffix).is_ok()
                    };
                    if suffix_std {
                        let tail = slot
                            .iter()
                            .map(|(k, v)| (next[*k].clone(), v.clone()));
                        let mut t = NCPoly::zero();
                        for (w, v) in tail {
                            t.add_term(w, v);
                        }
                        new_rules.push(Rule { lead: w, tail: t });
                    }
                }
            }
            table.push(entry);
        }
        debug_assert!(next.iter().all(|w| next_set.contains(w)));
        for r in new_rules {
            self.rule_index.insert(r.lead.clone(), self.rules.len());
            self.rules.push(r);
        }
        self.right.push(table);
        self.basis.push(next);
        Ok(())
    }

    pub fn coeffs(&self) -> &[F; 3] {
        &self.coeffs
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Standard (irreducible) words of degree d, in increasing order.
    pub fn basis(&self, d: usize) -> &[Word] {
        &self.basis[d]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w.degree())?.get(w).copied()
    }

    /// Minimal rules (every proper subword of a leading word is irreducible).
    pub fn rules(&self) -> &[Rule<F>] {
        &self.rules
    }

    pub fn hilbert_dims(&self, d_max: usize) -> Result<Vec<usize>, RewriteError> {
        self.check_cap(d_max)?;
        Ok(self.basis[..=d_max].iter().map(|b| b.len()).collect())
    }

    fn check_cap(&self, degree: usize) -> Result<(), RewriteError> {
        if degree > self.cap {
            Err(RewriteError::CapExceeded {
                degree,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Multiply a degree-k normal-form vector on the right by a letter.
    pub fn apply_letter(&self, k: usize, v: &SVec<F>, l: u8) -> SVec<F> {
        let mut acc: Vec<Option<F>> = vec![None; self.basis[k + 1].len()];
        for (i, c) in v {
            for (j, w) in &self.right[k][*i][l as usize] {
                let t = c.mul(w);
                add_slot(&mut acc[*j], t);
            }
        }
        acc.into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.filter(|v| !v.is_zero()).map(|v| (i, v)))
            .collect()
    }

    /// Normal form of `v · q` where `v` is a degree-k vector. Words of `q`
    /// sharing a prefix reuse the partial products.
    fn right_mul_vec(
        &self,
        k: usize,
        v: &SVec<F>,
        q: &NCPoly<F>,
        out: &mut HashMap<usize, Vec<Option<F>>>,
    ) -> Result<(), RewriteError> {
        let mut stack: Vec<SVec<F>> = vec![v.clone()];
        let mut prev: Vec<u8> = Vec::new();
        for (w, c) in q.terms() {
            let d = k + w.degree();
            self.check_cap(d)?;
            let common = prev
                .iter()
                .zip(w.letters())
                .take_while(|(a, b)| a == b)
                .count();
            stack.truncate(common + 1);
            for (pos, &l) in w.letters().iter().enumerate().skip(common) {
                let next = self.apply_letter(k + pos, &stack[pos], l);
                stack.push(next);
            }
            prev = w.letters().to_vec();
            let top = &stack[w.degree()];
            let slot = out
                .entry(d)
                .or_insert_with(|| vec![None; self.basis[d].len()]);
            for (i, x) in top {
                add_slot(&mut slot[*i], x.mul(c));
            }
        }
        Ok(())
    }

    fn collect(&self, acc: HashMap<usize, Vec<Option<F>>>) -> NCPoly<F> {
        let mut out = NCPoly::zero();
        for (d, v) in acc {
            for (i, c) in v.into_iter().enumerate() {
                if let Some(c) = c {
                    out.add_term(self.basis[d][i].clone(), c);
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary element of degree at most the cap.
    pub fn normal_form(&self, p: &NCPoly<F>) -> Result<NCPoly<F>, RewriteError> {
        self.check_cap(p.degree())?;
        let mut acc = HashMap::new();
        self.right_mul_vec(0, &vec![(0, F::one())], p, &mut acc)?;
        Ok(self.collect(acc))
    }

    /// Normal form of `p · q` for `p` already in normal form.
    pub fn mul_nf(&self, p: &NCPoly<F>, q: &NCPoly<F>) -> Result<NCPoly<F>, RewriteError> {
        self.check_cap(p.degree() + q.degree())?;
        let mut by_deg: HashMap<usize, SVec<F>> = HashMap::new();
        for (w, c) in p.terms() {
            let i = self
                .index_of(w)
                .expect("left factor of mul_nf must be in normal form");
            by_deg.entry(w.degree()).or_default().push((i, c.clone()));
        }
        let mut acc = HashMap::new();
        for (k, v) in by_deg {
            self.right_mul_vec(k, &v, q, &mut acc)?;
        }
        Ok(self.collect(acc))
    }

    /// Normal form of `[p, q]` for `p`, `q` in normal form.
    pub fn commutator_nf(&self, p: &NCPoly<F>, q: &NCPoly<F>) -> Result<NCPoly<F>, RewriteError> {
        Ok(self.mul_nf(p, q)?.sub(&self.mul_nf(q, p)?))
    }

    /// Tests `[p, w] = 0` for each generator `w`. `p` is reduced first.
    pub fn is_central(&self, p: &NCPoly<F>) -> Result<Centrality<F>, RewriteError> {
        self.check_cap(p.degree() + 1)?;
        let p = self.normal_form(p)?;
        for l in 0..3u8 {
            let c = self.commutator_nf(&p, &NCPoly::gen(l))?;
            if !c.is_zero() {
                return Ok(Centrality::NotCentral {
                    generator: l,
                    commutator: c,
                });
            }
        }
        Ok(Centrality::Central)
    }

    /// Coordinates of a homogeneous degree-d normal form in `basis(d)`.
    pub fn coords(&self, p: &NCPoly<F>, d: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.basis[d].len()];
        for (w, c) in p.terms() {
            let i = self
                .index_of(w)
                .expect("coords expects a homogeneous normal form");
            v[i] = c.clone();
        }
        v
    }

    /// Rewrite with the minimal rules only, one redex at a time.
    /// Slow; used to cross-check the table-driven normal form.
    pub fn reduce_by_rules(
        &self,
        p: &NCPoly<F>,
        strategy: Strategy,
    ) -> Result<NCPoly<F>, RewriteError> {
        self.check_cap(p.degree())?;
        let mut todo = p.clone();
        let mut done = NCPoly::zero();
        loop {
            let last = todo.terms().next_back().map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = last else { break };
            todo.add_term(w.clone(), c.neg());
            match self.find_redex(&w, strategy) {
                None => done.add_term(w, c),
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let pre = Word(w.0[..pos].to_vec());
                    let post = Word(w.0[pos + rule.lead.degree()..].to_vec());
                    for (tw, tc) in rule.tail.terms() {
                        let nw = pre.concat(tw).concat(&post);
                        todo.add_term(nw, tc.mul(&c));
                    }
                }
            }
        }
        Ok(done)
    }

    fn find_redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        let n = w.degree();
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..n),
            Strategy::Rightmost => Box::new((0..n).rev()),
        };
        for start in positions {
            for end in start + 2..=n {
                let sub = Word(w.0[start..end].to_vec());
                if let Some(&r) = self.rule_index.get(&sub) {
                    return Some((start, r));
                }
            }
        }
        None
    }
}

/// Reduced echelon form with pivots at the deglex-largest column of each row.
/// `reduced[c]` holds the non-pivot part of the pivot row at column c.
/// `None` when some pivot is not a unit (only possible over the ħ-local ring).
fn deglex_reduce<F: Scalar>(rows: &[SVec<F>], ncols: usize) -> Option<Vec<Option<SVec<F>>>> {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.insert(row.clone());
    }
    if ech
        .pivots
        .iter()
        .flatten()
        .any(|p| !p.last().unwrap().1.is_one())
    {
        return None;
    }
    // Full back-substitution, smallest pivot first.
    let mut reduced: Vec<Option<SVec<F>>> = vec![None; ncols];
    for c in 0..ncols {
        let Some(p) = &ech.pivots[c] else { continue };
        let mut acc: Vec<Option<F>> = vec![None; c];
        for (j, v) in &p[..p.len() - 1] {
            match &reduced[*j] {
                None => add_slot(&mut acc[*j], v.clone()),
                Some(q) => {
                    for (k, w) in q {
                        add_slot(&mut acc[*k], v.mul(w).neg());
                    }
                }
            }
        }
        reduced[c] = Some(
            acc.into_iter()
                .enumerate()
                .filter_map(|(i, v)| v.filter(|v| !v.is_zero()).map(|v| (i, v)))
                .collect(),
        );
    }
    Some(reduced)
}

/// Reduced echelon form over a discrete valuation ring in which every pivot is
/// a unit: each row is made primitive and pivots at its largest unit entry.
/// The row space is then saturated, so the quotient is torsion-free.
fn unit_pivot_reduce<F: Scalar>(rows: &[SVec<F>], ncols: usize) -> Vec<Option<SVec<F>>> {
    let mut piv: Vec<(usize, Vec<F>)> = Vec::new();
    for row in rows {
        let mut r = vec![F::zero(); ncols];
        for (j, v) in row {
            r[*j] = v.clone();
        }
        for (c, p) in &piv {
            if !r[*c].is_zero() {
                let f = r[*c].clone();
                for (x, y) in r.iter_mut().zip(p) {
                    if !y.is_zero() {
                        x.sub_assign(&f.mul(y));
                    }
                }
            }
        }
        let Some(k) = r.iter().filter(|v| !v.is_zero()).map(|v| v.order()).min() else {
            continue;
        };
        if k > 0 {
            for v in r.iter_mut().filter(|v| !v.is_zero()) {
                *v = v.div_uniformizer(k);
            }
        }
        let col = (0..ncols)
            .rev()
            .find(|&j| !r[j].is_zero() && r[j].is_unit())
            .expect("a primitive row has a unit entry");
        let inv = r[col].try_inv().unwrap();
        for v in r.iter_mut() {
            *v = v.mul(&inv);
        }
        for (_, p) in piv.iter_mut() {
            if !p[col].is_zero() {
                let f = p[col].clone();
                for (x, y) in p.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        x.sub_assign(&f.mul(y));
                    }
                }
            }
        }
        piv.push((col, r));
    }
    let mut reduced: Vec<Option<SVec<F>>> = vec![None; ncols];
    for (c, p) in piv {
        reduced[c] = Some(
            p.into_iter()
                .enumerate()
                .filter(|(j, v)| *j != c && !v.is_zero())
                .collect(),
        );
    }
    reduced
}

fn add_slot<F: Scalar>(slot: &mut Option<F>, t: F) {
    match slot {
        Some(e) => e.add_assign(&t),
        None => *slot = Some(t),
    }
}
