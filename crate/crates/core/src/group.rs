//! Finite abelian groups presented by invariant factors.
//!
//! A group is a list of factors `[n_1, ..., n_k]` standing for
//! `Z/n_1 x ... x Z/n_k`; an element is its coefficient vector.  Elements are
//! enumerated lexicographically (last coordinate fastest), and that order is
//! the indexing convention for every table in the crate.

use std::collections::BTreeSet;
use std::fmt;

use num::integer::{gcd, lcm};

use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::snf::{smith_normal_form, IMat};

/// Default order bound for brute-force isomorphism searches.
pub const DEFAULT_ISO_BOUND: u64 = 256;

/// `Z/n_1 x ... x Z/n_k`, all `n_i >= 2`.  The empty list is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

/// Coefficient vector of a group element, reduced mod the invariant factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    coeffs: Vec<u64>,
}

impl Element {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<FinAbGroup> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::Validation(format!(
                "invariant factor {bad} is not allowed; all factors must be >= 2"
            )));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The dual group `Hom(self, Q/Z)`, presented on the same factor list.
    /// A dual element `chi` pairs with `a` via [`FinAbGroup::pairing`].
    pub fn dual(&self) -> FinAbGroup {
        self.clone()
    }

    pub fn zero(&self) -> Element {
        Element { coeffs: vec![0; self.factors.len()] }
    }

    /// The `j`-th standard generator.
    pub fn generator(&self, j: usize) -> Element {
        let mut coeffs = vec![0; self.factors.len()];
        coeffs[j] = 1 % self.factors[j];
        Element { coeffs }
    }

    /// Builds an element from raw (possibly negative) coefficients.
    pub fn make(&self, raw: &[i64]) -> Element {
        assert_eq!(raw.len(), self.factors.len(), "coefficient count mismatch");
        let coeffs = raw
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Element { coeffs }
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.coeffs.len() == self.factors.len()
            && e.coeffs.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    /// Element at position `index` in the lexicographic enumeration
    /// (last coordinate varies fastest).
    pub fn element(&self, index: u64) -> Element {
        assert!(index < self.order(), "element index out of range");
        let mut coeffs = vec![0; self.factors.len()];
        let mut rest = index;
        for i in (0..self.factors.len()).rev() {
            coeffs[i] = rest % self.factors[i];
            rest /= self.factors[i];
        }
        Element { coeffs }
    }

    pub fn index_of(&self, e: &Element) -> u64 {
        assert!(self.contains(e), "element does not belong to this group");
        let mut idx = 0;
        for (c, n) in e.coeffs.iter().zip(&self.factors) {
            idx = idx * n + c;
        }
        idx
    }

    pub fn elements(&self) -> Vec<Element> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Element { coeffs }
    }

    pub fn neg(&self, a: &Element) -> Element {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Element { coeffs }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, k: i64, a: &Element) -> Element {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| ((k.rem_euclid(n as i64) as u64) * x) % n)
            .collect();
        Element { coeffs }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn element_order(&self, a: &Element) -> u64 {
        a.coeffs
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &n)| lcm(acc, n / gcd(c, n)))
    }

    /// The perfect pairing between the group and its dual:
    /// `pairing(a, chi) = sum_i a_i chi_i / n_i` in `Q/Z`.
    pub fn pairing(&self, a: &Element, chi: &Element) -> Phase {
        assert!(self.contains(a) && self.contains(chi), "pairing shape mismatch");
        a.coeffs
            .iter()
            .zip(&chi.coeffs)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| Phase::new((x * y) as i64, n as i64))
            .sum()
    }

    /// `self x other`, coefficients concatenated.  Enumeration order agrees
    /// with `index = index_left * other.order() + index_right`.
    pub fn direct_product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FinAbGroup { factors }
    }

    pub fn pair_element(&self, other: &FinAbGroup, a: &Element, b: &Element) -> Element {
        assert!(self.contains(a) && other.contains(b));
        let mut coeffs = a.coeffs.clone();
        coeffs.extend_from_slice(&b.coeffs);
        Element { coeffs }
    }

    pub fn split_element(&self, e: &Element) -> (Element, Element) {
        let (left, right) = e.coeffs.split_at(self.factors.len());
        (Element { coeffs: left.to_vec() }, Element { coeffs: right.to_vec() })
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({})", self)
    }
}

/// A subgroup given by generators, with its elements materialized.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FinAbGroup,
    gens: Vec<Element>,
    elems: Vec<Element>,
    members: BTreeSet<Element>,
}

impl Subgroup {
    /// Closure of `gens` under addition.
    pub fn span(parent: &FinAbGroup, gens: &[Element]) -> Subgroup {
        for g in gens {
            assert!(parent.contains(g), "generator does not belong to the parent group");
        }
        let mut members = BTreeSet::new();
        members.insert(parent.zero());
        let mut frontier = vec![parent.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = parent.add(&x, g);
                if members.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut elems: Vec<Element> = members.iter().cloned().collect();
        elems.sort_by_key(|e| parent.index_of(e));
        Subgroup { parent: parent.clone(), gens: gens.to_vec(), elems, members }
    }

    pub fn from_elements(parent: &FinAbGroup, elems: BTreeSet<Element>) -> Result<Subgroup> {
        if !elems.contains(&parent.zero()) {
            return Err(Error::Validation("subgroup must contain zero".into()));
        }
        for a in &elems {
            for b in &elems {
                if !elems.contains(&parent.add(a, b)) {
                    return Err(Error::Validation(format!(
                        "set is not closed under addition: {a} + {b} escapes"
                    )));
                }
            }
        }
        let gens: Vec<Element> = elems.iter().cloned().collect();
        let mut sorted: Vec<Element> = elems.iter().cloned().collect();
        sorted.sort_by_key(|e| parent.index_of(e));
        Ok(Subgroup { parent: parent.clone(), gens, elems: sorted, members: elems })
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    /// Elements in the parent's enumeration order.
    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.members.contains(e)
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.parent.order()
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent)
    }
}

/// Homomorphism between presented groups, stored as the images of the
/// source's standard generators.
#[derive(Clone, PartialEq, Eq)]
pub struct Hom {
    source: FinAbGroup,
    target: FinAbGroup,
    cols: Vec<Element>,
}

impl Hom {
    /// Checks shapes and well-definedness (`n_j * cols[j] = 0` in the target).
    pub fn new(source: FinAbGroup, target: FinAbGroup, cols: Vec<Element>) -> Result<Hom> {
        if cols.len() != source.rank() {
            return Err(Error::Validation(format!(
                "homomorphism needs {} generator images, got {}",
                source.rank(),
                cols.len()
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            if !target.contains(col) {
                return Err(Error::Validation(format!(
                    "generator image {j} is not an element of the target group"
                )));
            }
            let killed = target.scalar_mul(source.factors()[j] as i64, col);
            if !target.is_zero(&killed) {
                return Err(Error::Validation(format!(
                    "generator image {j} has order not dividing {}; map is not well defined",
                    source.factors()[j]
                )));
            }
        }
        Ok(Hom { source, target, cols })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Hom {
        let cols = vec![target.zero(); source.rank()];
        Hom { source, target, cols }
    }

    pub fn identity(group: &FinAbGroup) -> Hom {
        let cols = (0..group.rank()).map(|j| group.generator(j)).collect();
        Hom { source: group.clone(), target: group.clone(), cols }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn cols(&self) -> &[Element] {
        &self.cols
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert!(self.source.contains(x), "argument outside the source group");
        let mut acc = self.target.zero();
        for (c, col) in x.coeffs().iter().zip(&self.cols) {
            acc = self.target.add(&acc, &self.target.scalar_mul(*c as i64, col));
        }
        acc
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::span(&self.target, &self.cols)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.source.elements().iter().all(|x| seen.insert(self.apply(x)))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn compose(&self, inner: &Hom) -> Hom {
        assert_eq!(inner.target, self.source, "composition shape mismatch");
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect();
        Hom { source: inner.source.clone(), target: self.target.clone(), cols }
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.cols.iter().map(|c| c.to_string()).collect();
        write!(f, "Hom({} -> {}; gens -> [{}])", self.source, self.target, cols.join(", "))
    }
}

/// Quotient of a group by the subgroup spanned by given generators.
///
/// Invariant factors come from the Smith normal form of the relation matrix
/// `[diag(n_i) | gens]`; the section picks the minimal coset representative in
/// enumeration order, so `section(0) = 0`.
pub struct Quotient {
    pub subgroup: Subgroup,
    pub group: FinAbGroup,
    /// Rows of the left SNF transform for the kept factors, with their moduli.
    proj_rows: Vec<(Vec<i64>, u64)>,
    pub section: Vec<Element>,
}

impl Quotient {
    pub fn project(&self, x: &Element) -> Element {
        let coeffs = self
            .proj_rows
            .iter()
            .map(|(row, d)| {
                let s: i64 = row.iter().zip(x.coeffs()).map(|(&u, &c)| u * c as i64).sum();
                s.rem_euclid(*d as i64) as u64
            })
            .collect();
        Element { coeffs }
    }
}

pub fn subgroup_quotient(g: &FinAbGroup, gens: &[Element]) -> Result<Quotient> {
    for gen in gens {
        if !g.contains(gen) {
            return Err(Error::Validation(format!(
                "quotient generator {gen} is not an element of {g}"
            )));
        }
    }
    let subgroup = Subgroup::span(g, gens);
    let k = g.rank();

    // Relation matrix: columns are diag(n_i) followed by the generators.
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(k + gens.len());
    for (i, &n) in g.factors().iter().enumerate() {
        let mut col = vec![0i64; k];
        col[i] = n as i64;
        columns.push(col);
    }
    for gen in gens {
        columns.push(gen.coeffs().iter().map(|&c| c as i64).collect());
    }
    let snf = smith_normal_form(&IMat::from_columns(k, &columns));

    let mut proj_rows = Vec::new();
    let mut factors = Vec::new();
    for (i, &d) in snf.diagonal().iter().enumerate().take(k) {
        debug_assert!(d > 0, "relation matrix has full rank");
        if d > 1 {
            proj_rows.push((snf.u.row(i).to_vec(), d as u64));
            factors.push(d as u64);
        }
    }
    let quotient_group = FinAbGroup::new(factors)?;
    if quotient_group.order() * subgroup.order() != g.order() {
        return Err(Error::Internal(format!(
            "quotient bookkeeping: |Q| * |H| = {} * {} != |G| = {}",
            quotient_group.order(),
            subgroup.order(),
            g.order()
        )));
    }

    let quotient = Quotient {
        subgroup,
        group: quotient_group,
        proj_rows,
        section: Vec::new(),
    };

    // Minimal coset representatives, scanning in enumeration order.
    let mut section: Vec<Option<Element>> = vec![None; quotient.group.order() as usize];
    for x in g.elements() {
        let idx = quotient.group.index_of(&quotient.project(&x)) as usize;
        if section[idx].is_none() {
            section[idx] = Some(x);
        }
    }
    let section: Vec<Element> = section
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Internal("projection is not surjective".into())))
        .collect::<Result<_>>()?;
    debug_assert!(g.is_zero(&section[0]));

    Ok(Quotient { section, ..quotient })
}

/// Presents a subgroup (given as a closed element set) abstractly: returns a
/// group `Z/f_1 x ... x Z/f_k` with `f_1 | f_2 | ...` and a basis inside the
/// parent, so that `(c_1, ..., c_k) -> sum c_i basis_i` is an isomorphism.
pub fn subgroup_presentation(
    parent: &FinAbGroup,
    elems: &BTreeSet<Element>,
) -> Result<(FinAbGroup, Vec<Element>)> {
    let sub = Subgroup::from_elements(parent, elems.clone())?;
    let n = sub.order();
    if n == 1 {
        return Ok((FinAbGroup::trivial(), vec![]));
    }
    let ordered: Vec<(Element, u64)> = sub
        .elements()
        .iter()
        .map(|e| (e.clone(), parent.element_order(e)))
        .collect();
    let exponent = ordered.iter().map(|(_, o)| *o).max().unwrap();

    fn dfs(
        parent: &FinAbGroup,
        ordered: &[(Element, u64)],
        n: u64,
        span: &mut BTreeSet<Element>,
        prev: u64,
        basis: &mut Vec<Element>,
        factors: &mut Vec<u64>,
    ) -> bool {
        if span.len() as u64 == n {
            return true;
        }
        let remaining = n / span.len() as u64;
        let mut cands: Vec<u64> = (2..=prev).filter(|d| prev % d == 0 && remaining % d == 0).collect();
        cands.sort_unstable_by(|a, b| b.cmp(a));
        for d in cands {
            for (x, ord) in ordered {
                if *ord != d || span.contains(x) {
                    continue;
                }
                // Direct extension: the span must grow by exactly a factor d.
                let mut grown = span.clone();
                for s in span.iter() {
                    let mut acc = s.clone();
                    for _ in 1..d {
                        acc = parent.add(&acc, x);
                        grown.insert(acc.clone());
                    }
                }
                if grown.len() as u64 != span.len() as u64 * d {
                    continue;
                }
                basis.push(x.clone());
                factors.push(d);
                let mut inner = grown;
                std::mem::swap(span, &mut inner);
                if dfs(parent, ordered, n, span, d, basis, factors) {
                    return true;
                }
                std::mem::swap(span, &mut inner);
                basis.pop();
                factors.pop();
            }
        }
        false
    }

    let mut span = BTreeSet::new();
    span.insert(parent.zero());
    let mut basis = Vec::new();
    let mut factors = Vec::new();
    if !dfs(parent, &ordered, n, &mut span, exponent, &mut basis, &mut factors) {
        return Err(Error::Internal(
            "no basis found for a finite abelian subgroup (cannot happen)".into(),
        ));
    }
    basis.reverse();
    factors.reverse();
    Ok((FinAbGroup::new(factors)?, basis))
}

/// Every subgroup of `g`, deterministically ordered by (order, element list).
pub fn all_subgroups(g: &FinAbGroup) -> Vec<Subgroup> {
    let elements = g.elements();
    let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
    let trivial = Subgroup::span(g, &[]);
    seen.insert(trivial.elements().to_vec());
    let mut queue = vec![trivial.clone()];
    let mut out = vec![trivial];
    while let Some(s) = queue.pop() {
        for x in &elements {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.gens().to_vec();
            gens.push(x.clone());
            let bigger = Subgroup::span(g, &gens);
            if seen.insert(bigger.elements().to_vec()) {
                queue.push(bigger.clone());
                out.push(bigger);
            }
        }
    }
    out.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    out
}

/// All abelian groups of order `n`, as prime-power factor lists (ascending).
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    assert!(n >= 1);
    fn partitions(a: u32) -> Vec<Vec<u32>> {
        fn rec(a: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if a == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=max.min(a)).rev() {
                cur.push(part);
                rec(a - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(a, a, &mut Vec::new(), &mut out);
        out
    }

    let mut rest = n;
    let mut prime_parts: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut a = 0;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            prime_parts.push(
                partitions(a)
                    .into_iter()
                    .map(|ps| ps.iter().map(|&e| p.pow(e)).collect())
                    .collect(),
            );
        }
        p += 1;
    }
    if rest > 1 {
        prime_parts.push(
            partitions(1)
                .into_iter()
                .map(|ps| ps.iter().map(|&e| rest.pow(e)).collect())
                .collect(),
        );
    }

    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for parts in prime_parts {
        let mut next = Vec::new();
        for base in &out {
            for part in &parts {
                let mut combined = base.clone();
                combined.extend_from_slice(part);
                next.push(combined);
            }
        }
        out = next;
    }
    for factors in &mut out {
        factors.sort_unstable();
    }
    out.sort();
    out
}

/// Brute-force isomorphism search with an incremental filter.
///
/// `pair_ok(x, y)` is consulted for every newly determined pair
/// `f(x) = y` of the partial map and can prune the branch; `pred` accepts or
/// rejects completed isomorphisms.  Candidates are tried in enumeration
/// order, so results are deterministic.
pub fn find_isomorphisms_filtered(
    g: &FinAbGroup,
    h: &FinAbGroup,
    pair_ok: &mut dyn FnMut(&Element, &Element) -> bool,
    pred: &mut dyn FnMut(&Hom) -> bool,
    first_only: bool,
    bound: u64,
) -> Result<Vec<Hom>> {
    if g.order() > bound || h.order() > bound {
        return Err(Error::Capacity(format!(
            "isomorphism search limited to order {bound}; got {} and {}",
            g.order(),
            h.order()
        )));
    }
    if g.order() != h.order() {
        return Ok(vec![]);
    }
    if !pair_ok(&g.zero(), &h.zero()) {
        return Ok(vec![]);
    }

    let h_elements = h.elements();
    let cands: Vec<Vec<Element>> = g
        .factors()
        .iter()
        .map(|&n| {
            h_elements
                .iter()
                .filter(|y| h.element_order(y) == n)
                .cloned()
                .collect()
        })
        .collect();

    struct Search<'a> {
        g: &'a FinAbGroup,
        h: &'a FinAbGroup,
        cands: &'a [Vec<Element>],
        pair_ok: &'a mut dyn FnMut(&Element, &Element) -> bool,
        pred: &'a mut dyn FnMut(&Hom) -> bool,
        first_only: bool,
        pairs: Vec<(Element, Element)>,
        used: BTreeSet<Element>,
        cols: Vec<Element>,
        out: Vec<Hom>,
    }

    impl Search<'_> {
        fn rec(&mut self, j: usize) -> bool {
            if j == self.g.rank() {
                let hom = Hom {
                    source: self.g.clone(),
                    target: self.h.clone(),
                    cols: self.cols.clone(),
                };
                if (self.pred)(&hom) {
                    self.out.push(hom);
                    if self.first_only {
                        return true;
                    }
                }
                return false;
            }
            let n = self.g.factors()[j];
            'cand: for y in &self.cands[j] {
                let base_len = self.pairs.len();
                let mut added = Vec::new();
                for idx in 0..base_len {
                    let (d, im) = self.pairs[idx].clone();
                    let mut dd = d;
                    let mut imim = im;
                    for _ in 1..n {
                        dd = {
                            let gen = self.g.generator(j);
                            self.g.add(&dd, &gen)
                        };
                        imim = self.h.add(&imim, y);
                        if self.used.contains(&imim) || !(self.pair_ok)(&dd, &imim) {
                            for a in &added {
                                self.used.remove(a);
                            }
                            self.pairs.truncate(base_len);
                            continue 'cand;
                        }
                        self.used.insert(imim.clone());
                        added.push(imim.clone());
                        self.pairs.push((dd.clone(), imim.clone()));
                    }
                }
                self.cols.push(y.clone());
                let stop = self.rec(j + 1);
                self.cols.pop();
                for a in &added {
                    self.used.remove(a);
                }
                self.pairs.truncate(base_len);
                if stop {
                    return true;
                }
            }
            false
        }
    }

    let zero_pair = (g.zero(), h.zero());
    let mut search = Search {
        g,
        h,
        cands: &cands,
        pair_ok,
        pred,
        first_only,
        pairs: vec![zero_pair.clone()],
        used: BTreeSet::from([zero_pair.1]),
        cols: Vec::new(),
        out: Vec::new(),
    };
    search.rec(0);
    Ok(search.out)
}

/// All isomorphisms `g -> h` satisfying `pred`, within the default bound.
pub fn find_isomorphisms(
    g: &FinAbGroup,
    h: &FinAbGroup,
    mut pred: impl FnMut(&Hom) -> bool,
) -> Result<Vec<Hom>> {
    find_isomorphisms_filtered(g, h, &mut |_, _| true, &mut pred, false, DEFAULT_ISO_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(factors: &[u64]) -> FinAbGroup {
        FinAbGroup::new(factors.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_enumeration() {
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert!(FinAbGroup::new(vec![2, 0]).is_err());
        assert_eq!(FinAbGroup::trivial().order(), 1);
        assert_eq!(FinAbGroup::trivial().elements().len(), 1);

        let g = z(&[2, 2]);
        let listed: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(listed, ["0.0", "0.1", "1.0", "1.1"]);
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(e), i as u64);
        }
    }

    #[test]
    fn arithmetic_and_orders() {
        let g = z(&[4]);
        let three = g.make(&[3]);
        assert_eq!(g.add(&three, &three), g.make(&[2]));
        assert_eq!(g.neg(&three), g.make(&[1]));
        assert_eq!(g.make(&[-1]), three);
        assert_eq!(g.element_order(&three), 4);
        assert_eq!(g.element_order(&g.make(&[2])), 2);
        assert_eq!(g.element_order(&g.zero()), 1);

        let h = z(&[2, 4]);
        assert_eq!(h.element_order(&h.make(&[1, 2])), 2);
        assert_eq!(h.element_order(&h.make(&[1, 1])), 4);
    }

    #[test]
    fn pairing_values() {
        let g = z(&[4]);
        assert_eq!(g.pairing(&g.make(&[1]), &g.make(&[1])), Phase::new(1, 4));
        let h = z(&[2]);
        assert_eq!(h.pairing(&h.make(&[1]), &h.make(&[1])), Phase::half());
        assert_eq!(h.pairing(&h.zero(), &h.make(&[1])), Phase::ZERO);
        let k = z(&[2, 4]);
        assert_eq!(
            k.pairing(&k.make(&[1, 1]), &k.make(&[1, 2])),
            Phase::half() + Phase::half()
        );
    }

    #[test]
    fn spans_and_subgroups() {
        let g = z(&[4]);
        let h = Subgroup::span(&g, &[g.make(&[2])]);
        assert_eq!(h.order(), 2);
        assert!(h.contains(&g.make(&[2])));
        assert!(!h.contains(&g.make(&[1])));

        let whole = Subgroup::span(&g, &[g.make(&[3])]);
        assert!(whole.is_whole_group());

        let all = all_subgroups(&z(&[2, 2]));
        assert_eq!(all.len(), 5);
        let all4 = all_subgroups(&z(&[4]));
        assert_eq!(all4.len(), 3);
    }

    #[test]
    fn hom_validation_and_application() {
        let g = z(&[2]);
        let h = z(&[4]);
        // Z/2 -> Z/4 sending 1 to 1 is not well defined.
        assert!(Hom::new(g.clone(), h.clone(), vec![h.make(&[1])]).is_err());
        let ok = Hom::new(g.clone(), h.clone(), vec![h.make(&[2])]).unwrap();
        assert_eq!(ok.apply(&g.make(&[1])), h.make(&[2]));
        assert!(ok.is_injective());
        assert!(!ok.is_bijective());
        assert_eq!(ok.image().order(), 2);
    }

    #[test]
    fn quotient_by_diagonal() {
        // (Z/4 x Z/4) / <(2,2)> has order 8; its structure is Z/2 x Z/4.
        let g = z(&[4, 4]);
        let q = subgroup_quotient(&g, &[g.make(&[2, 2])]).unwrap();
        assert_eq!(q.subgroup.order(), 2);
        assert_eq!(q.group.order(), 8);
        assert_eq!(q.group.factors(), &[2, 4]);

        // Independent check: count cosets by brute force, and count elements
        // of order dividing two the slow way.
        let mut cosets: BTreeSet<Vec<Element>> = BTreeSet::new();
        for x in g.elements() {
            let mut coset: Vec<Element> = q
                .subgroup
                .elements()
                .iter()
                .map(|h| g.add(&x, h))
                .collect();
            coset.sort_by_key(|e| g.index_of(e));
            cosets.insert(coset);
        }
        assert_eq!(cosets.len(), 8);
        let small = g
            .elements()
            .iter()
            .filter(|x| q.subgroup.contains(&g.scalar_mul(2, x)))
            .count();
        // 4 cosets of order dividing 2, each seen |H| = 2 times.
        assert_eq!(small, 8);

        // Projection is a homomorphism with the right kernel, and the section
        // is a genuine set of minimal representatives.
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(
                    q.project(&g.add(&x, &y)),
                    q.group.add(&q.project(&x), &q.project(&y))
                );
            }
            let in_kernel = q.group.is_zero(&q.project(&x));
            assert_eq!(in_kernel, q.subgroup.contains(&x));
        }
        for (i, rep) in q.section.iter().enumerate() {
            assert_eq!(q.group.index_of(&q.project(rep)), i as u64);
        }
        assert!(g.is_zero(&q.section[0]));
    }

    #[test]
    fn quotient_edge_cases() {
        let g = z(&[6]);
        let whole = subgroup_quotient(&g, &[g.make(&[1])]).unwrap();
        assert!(whole.group.is_trivial());
        let by_nothing = subgroup_quotient(&g, &[]).unwrap();
        assert_eq!(by_nothing.group.factors(), &[6]);
        assert!(subgroup_quotient(&g, &[z(&[2]).make(&[1])]).is_err());
    }

    #[test]
    fn presentation_of_subgroups() {
        let g = z(&[4, 4]);
        // The diagonal <(1,1)> is cyclic of order 4.
        let d = Subgroup::span(&g, &[g.make(&[1, 1])]);
        let (abs, basis) = subgroup_presentation(&g, &d.elements().iter().cloned().collect()).unwrap();
        assert_eq!(abs.factors(), &[4]);
        assert_eq!(basis.len(), 1);

        // The 2-torsion subgroup is Z/2 x Z/2.
        let t: BTreeSet<Element> = g
            .elements()
            .into_iter()
            .filter(|x| g.is_zero(&g.scalar_mul(2, x)))
            .collect();
        let (abs, basis) = subgroup_presentation(&g, &t).unwrap();
        assert_eq!(abs.factors(), &[2, 2]);
        // The basis must reproduce every element exactly once.
        let mut seen = BTreeSet::new();
        for c in abs.elements() {
            let mut acc = g.zero();
            for (k, b) in c.coeffs().iter().zip(&basis) {
                acc = g.add(&acc, &g.scalar_mul(*k as i64, b));
            }
            assert!(seen.insert(acc));
        }
        assert_eq!(seen, t);

        let trivial: BTreeSet<Element> = [g.zero()].into();
        let (abs, basis) = subgroup_presentation(&g, &trivial).unwrap();
        assert!(abs.is_trivial());
        assert!(basis.is_empty());
    }

    #[test]
    fn isomorphism_counts() {
        let v = z(&[2, 2]);
        let autos = find_isomorphisms(&v, &v, |_| true).unwrap();
        assert_eq!(autos.len(), 6); // |GL(2, F_2)|

        let c4 = z(&[4]);
        let autos = find_isomorphisms(&c4, &c4, |_| true).unwrap();
        assert_eq!(autos.len(), 2); // multiplication by 1 and 3

        assert!(find_isomorphisms(&v, &c4, |_| true).unwrap().is_empty());

        // Non-canonical presentations of the same group are handled.
        let c6 = z(&[6]);
        let c2c3 = z(&[2, 3]);
        let isos = find_isomorphisms(&c2c3, &c6, |_| true).unwrap();
        assert_eq!(isos.len(), 2);
        assert!(isos[0].is_bijective());
    }

    #[test]
    fn isomorphism_bound() {
        let big = z(&[512]);
        assert!(matches!(
            find_isomorphisms(&big, &big, |_| true),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn group_catalogue() {
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<u64>::new()]);
        assert_eq!(abelian_groups_of_order(4), vec![vec![2, 2], vec![4]]);
        assert_eq!(
            abelian_groups_of_order(16),
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 4],
                vec![2, 8],
                vec![4, 4],
                vec![16]
            ]
        );
        assert_eq!(abelian_groups_of_order(12), vec![vec![2, 2, 3], vec![3, 4]]);
    }

    #[test]
    fn product_and_split() {
        let a = z(&[4]);
        let b = z(&[2, 2]);
        let p = a.direct_product(&b);
        assert_eq!(p.factors(), &[4, 2, 2]);
        let e = a.pair_element(&b, &a.make(&[3]), &b.make(&[1, 0]));
        let (x, y) = a.split_element(&e);
        assert_eq!(x, a.make(&[3]));
        assert_eq!(y, b.make(&[1, 0]));
        assert_eq!(
            p.index_of(&e),
            a.index_of(&a.make(&[3])) * b.order() + b.index_of(&b.make(&[1, 0]))
        );
    }
}
