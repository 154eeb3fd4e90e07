//! Finite groups as explicit multiplication tables, together with the
//! concrete groups the rest of the crate is built on: permutations, the
//! transposition/inversion group acting on the twelve pitch classes, wreath
//! products and split extensions.
//!
//! Every constructor validates the full set of group axioms before returning,
//! so a `FiniteGroup` value is always a group, not merely a table. Products
//! follow the transformation convention: `a · b` means "apply `b` first,
//! then `a`", exactly like function composition.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ceiling on the order of any constructed group. Tables are quadratic in the
/// order and axiom checks cubic, so everything past this is deliberately out
/// of reach.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A permutation of `{0..n}`. Stored zero-based; displayed in one-based
/// cycle notation, which is also how one-based input is accepted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from zero-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from one-based images, e.g. `[2, 1]` for the swap on two points.
    pub fn from_one_based(images: Vec<usize>) -> Result<Self> {
        if images.iter().any(|&i| i == 0) {
            return Err(Error::InvalidPermutation(format!(
                "one-based images {images:?} contain 0"
            )));
        }
        Self::from_images(images.into_iter().map(|i| i - 1).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Permutation {
        assert_eq!(self.degree(), first.degree(), "degree mismatch");
        Permutation {
            images: (0..self.degree())
                .map(|i| self.images[first.images[i]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// All permutations of degree `n` in lexicographic order of their image
    /// vectors; `rank` and `from_rank` index into this order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(factorial(n));
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_lexicographic(&mut current) {
                break;
            }
        }
        out
    }

    /// Lexicographic rank via the Lehmer code.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut used = vec![false; n];
        let mut rank = 0;
        for (i, &img) in self.images.iter().enumerate() {
            let smaller = (0..img).filter(|&j| !used[j]).count();
            rank += smaller * factorial(n - 1 - i);
            used[img] = true;
        }
        rank
    }

    pub fn from_rank(n: usize, mut rank: usize) -> Permutation {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let pick = rank / f;
            rank %= f;
            images.push(pool.remove(pick));
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// One-based cycle notation; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let n = self.degree();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Advance `v` to the next lexicographic permutation; false once exhausted.
fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite group given by its complete multiplication table.
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: usize,
    /// Row-major: `table[a * order + b]` is the product `a · b`.
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    label_lookup: HashMap<String, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Identity index and inverse table of a multiplication table that satisfies
/// all group axioms; the error names the first violated axiom with a witness.
fn check_table(labels: &[String], table: &[u32]) -> Result<(usize, Vec<u32>)> {
    let order = labels.len();
    if order == 0 {
        return Err(Error::NotAGroup("the empty set is not a group".into()));
    }
    if table.len() != order * order {
        return Err(Error::NotAGroup(format!(
            "table has {} entries, expected {}",
            table.len(),
            order * order
        )));
    }
    if let Some(&bad) = table.iter().find(|&&e| e as usize >= order) {
        return Err(Error::NotAGroup(format!(
            "closure fails: table entry {bad} is outside 0..{order}"
        )));
    }
    let at = |a: usize, b: usize| table[a * order + b] as usize;

    let identity = (0..order)
        .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no two-sided identity element".into()))?;

    for a in 0..order {
        for b in 0..order {
            let ab = at(a, b);
            for c in 0..order {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }

    let mut inverse = vec![0u32; order];
    for a in 0..order {
        match (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity) {
            Some(b) => inverse[a] = b as u32,
            None => {
                return Err(Error::NotAGroup(format!(
                    "no two-sided inverse for {}",
                    labels[a]
                )))
            }
        }
    }
    Ok((identity, inverse))
}

impl FiniteGroup {
    pub fn try_from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<u32>,
    ) -> Result<Self> {
        Self::try_from_table_capped(name, labels, table, DEFAULT_ORDER_CAP)
    }

    pub fn try_from_table_capped(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<u32>,
        cap: usize,
    ) -> Result<Self> {
        let order = labels.len();
        if order > cap {
            return Err(Error::OrderCap {
                order: order as u128,
                cap,
            });
        }
        let mut label_lookup = HashMap::with_capacity(order);
        for (i, l) in labels.iter().enumerate() {
            if label_lookup.insert(l.clone(), i).is_some() {
                return Err(Error::NotAGroup(format!("duplicate element label {l:?}")));
            }
        }
        let (identity, inverse) = check_table(&labels, &table)?;
        Ok(FiniteGroup {
            name: name.into(),
            order,
            identity,
            table,
            inverse,
            labels,
            label_lookup,
        })
    }

    /// The cyclic group of order `n` under addition, labelled `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u32);
            }
        }
        Self::try_from_table(format!("Z{n}"), labels, table)
    }

    /// The symmetric group on `n` points, elements in lexicographic order of
    /// their image vectors and labelled by cycle notation.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = Permutation::all(n);
        if perms.len() > DEFAULT_ORDER_CAP {
            return Err(Error::OrderCap {
                order: perms.len() as u128,
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let labels: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
        let mut table = Vec::with_capacity(perms.len() * perms.len());
        for a in &perms {
            for b in &perms {
                table.push(a.compose(b).rank() as u32);
            }
        }
        Self::try_from_table(format!("S{n}"), labels, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `a · b`: apply `b` first, then `a`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.label_lookup
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Re-run the axiom battery on the stored table.
    pub fn verify_axioms(&self) -> Result<()> {
        check_table(&self.labels, &self.table).map(|_| ())
    }

    /// Structural identity: two handles denote the same group if they share
    /// storage or carry identical tables.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other)
            || (self.order == other.order
                && self.identity == other.identity
                && self.table == other.table)
    }
}

/// True iff the table satisfies all group axioms.
pub fn verify_group_axioms(group: &FiniteGroup) -> bool {
    group.verify_axioms().is_ok()
}

/// An element handle tied to its owning group; mixing groups is an error,
/// not a silent index confusion.
#[derive(Clone, Debug)]
pub struct GroupElement {
    group: Arc<FiniteGroup>,
    index: usize,
}

impl GroupElement {
    pub fn new(group: Arc<FiniteGroup>, index: usize) -> Result<Self> {
        if index >= group.order() {
            return Err(Error::UnknownElement(format!("index {index} out of range")));
        }
        Ok(GroupElement { group, index })
    }

    pub fn from_label(group: Arc<FiniteGroup>, label: &str) -> Result<Self> {
        let index = group.index_of(label)?;
        Ok(GroupElement { group, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn label(&self) -> &str {
        self.group.label(self.index)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn is_identity(&self) -> bool {
        self.index == self.group.identity()
    }

    /// `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        if !self.group.same_group(&rhs.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            group: Arc::clone(&self.group),
            index: self.group.mul(self.index, rhs.index),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            index: self.group.inv(self.index),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.group.same_group(&other.group)
    }
}

impl Eq for GroupElement {}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One of the twenty-four transposition/inversion operations on pitch
/// classes: `Tn(x) = x + n`, `In(x) = n − x` (mod 12).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct TiElement {
    shift: u8,
    inverting: bool,
}

impl TiElement {
    pub const IDENTITY: TiElement = TiElement {
        shift: 0,
        inverting: false,
    };

    pub fn transposition(n: i32) -> Self {
        TiElement {
            shift: n.rem_euclid(12) as u8,
            inverting: false,
        }
    }

    pub fn inversion(n: i32) -> Self {
        TiElement {
            shift: n.rem_euclid(12) as u8,
            inverting: true,
        }
    }

    pub fn shift(self) -> u8 {
        self.shift
    }

    pub fn is_transposition(self) -> bool {
        !self.inverting
    }

    /// `self ∘ first`: apply `first`, then `self`. With shifts `a` and `b`
    /// this is `(a ± b, signs added)`, the sign of `b` flipped when `self`
    /// inverts.
    pub fn compose(self, first: TiElement) -> TiElement {
        let b = first.shift as i32;
        let shift = if self.inverting {
            self.shift as i32 - b
        } else {
            self.shift as i32 + b
        };
        TiElement {
            shift: shift.rem_euclid(12) as u8,
            inverting: self.inverting ^ first.inverting,
        }
    }

    pub fn inverse(self) -> TiElement {
        if self.inverting {
            self
        } else {
            TiElement::transposition(-(self.shift as i32))
        }
    }

    pub fn apply(self, pitch_class: u8) -> u8 {
        debug_assert!(pitch_class < 12);
        if self.inverting {
            ((12 + self.shift - pitch_class) % 12) as u8
        } else {
            (pitch_class + self.shift) % 12
        }
    }

    /// Canonical position in the group enumeration: `T0..T11` then `I0..I11`.
    pub fn index(self) -> usize {
        self.shift as usize + if self.inverting { 12 } else { 0 }
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 24, "T/I index {i} out of range");
        TiElement {
            shift: (i % 12) as u8,
            inverting: i >= 12,
        }
    }

    /// Accepts `T3`, `I10`, and negative shifts like `T-2`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::UnknownElement(s.to_string());
        let (kind, rest) = s.split_at(1.min(s.len()));
        let n: i32 = rest.parse().map_err(|_| err())?;
        match kind {
            "T" => Ok(TiElement::transposition(n)),
            "I" => Ok(TiElement::inversion(n)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for TiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            if self.inverting { "I" } else { "T" },
            self.shift
        )
    }
}

/// The T/I group: dihedral of order 24, labelled `T0..T11, I0..I11` in
/// canonical enumeration order.
pub fn ti_group() -> FiniteGroup {
    let labels: Vec<String> = (0..24).map(|i| TiElement::from_index(i).to_string()).collect();
    let mut table = Vec::with_capacity(24 * 24);
    for a in 0..24 {
        let ea = TiElement::from_index(a);
        for b in 0..24 {
            table.push(ea.compose(TiElement::from_index(b)).index() as u32);
        }
    }
    FiniteGroup::try_from_table("T/I", labels, table).expect("T/I table is a group")
}

/// An element of the wreath product `Z ≀ Sn`: an n-vector of `Z`-elements and
/// a permutation of the n coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    pub coords: Vec<usize>,
    pub perm: Permutation,
}

impl WreathElement {
    pub fn identity(z: &FiniteGroup, n: usize) -> Self {
        WreathElement {
            coords: vec![z.identity(); n],
            perm: Permutation::identity(n),
        }
    }

    /// `⟨m, τ⟩ · ⟨n, σ⟩ = ⟨(m_{σ(i)} · n_i)_i, τσ⟩`: the right factor's
    /// permutation realigns the left coordinates before the pointwise product.
    pub fn multiply(&self, rhs: &WreathElement, z: &FiniteGroup) -> WreathElement {
        let n = self.coords.len();
        assert_eq!(n, rhs.coords.len(), "coordinate count mismatch");
        let coords = (0..n)
            .map(|i| z.mul(self.coords[rhs.perm.apply(i)], rhs.coords[i]))
            .collect();
        WreathElement {
            coords,
            perm: self.perm.compose(&rhs.perm),
        }
    }

    pub fn inverse(&self, z: &FiniteGroup) -> WreathElement {
        let inv_perm = self.perm.inverse();
        let coords = (0..self.coords.len())
            .map(|i| z.inv(self.coords[inv_perm.apply(i)]))
            .collect();
        WreathElement {
            coords,
            perm: inv_perm,
        }
    }

    /// Position in the canonical enumeration: permutations in rank order,
    /// coordinate vectors in mixed radix with the first coordinate most
    /// significant.
    pub fn canonical_index(&self, z_order: usize) -> usize {
        let mut ix = self.perm.rank();
        for &c in &self.coords {
            ix = ix * z_order + c;
        }
        ix
    }

    pub fn from_canonical_index(mut ix: usize, z_order: usize, n: usize) -> Self {
        let mut coords = vec![0usize; n];
        for slot in coords.iter_mut().rev() {
            *slot = ix % z_order;
            ix /= z_order;
        }
        WreathElement {
            coords,
            perm: Permutation::from_rank(n, ix),
        }
    }

    pub fn label(&self, z: &FiniteGroup) -> String {
        let coords: Vec<&str> = self.coords.iter().map(|&c| z.label(c)).collect();
        format!("({});{}", coords.join(","), self.perm)
    }
}

/// The wreath product `Z ≀ Sn` as an explicit finite group of order
/// `|Z|^n · n!`.
pub fn wreath_group(z: &FiniteGroup, n: usize) -> Result<FiniteGroup> {
    wreath_group_capped(z, n, DEFAULT_ORDER_CAP)
}

pub fn wreath_group_capped(z: &FiniteGroup, n: usize, cap: usize) -> Result<FiniteGroup> {
    assert!(n >= 1, "wreath product needs at least one coordinate");
    let mut order: u128 = (1..=n as u128).product();
    for _ in 0..n {
        order = order.saturating_mul(z.order() as u128);
    }
    if order > cap as u128 {
        return Err(Error::OrderCap { order, cap });
    }
    let order = order as usize;
    let elements: Vec<WreathElement> = (0..order)
        .map(|ix| WreathElement::from_canonical_index(ix, z.order(), n))
        .collect();
    let labels: Vec<String> = elements.iter().map(|w| w.label(z)).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            table.push(a.multiply(b, z).canonical_index(z.order()) as u32);
        }
    }
    FiniteGroup::try_from_table_capped(format!("{}wr S{n}", z.name()), labels, table, cap)
}

/// A split extension `1 → Z → G → H → 1` with a chosen section `H → G`,
/// validated exhaustively: `inject` is an injective homomorphism whose image
/// is exactly the kernel of the surjective homomorphism `project`, and
/// `project ∘ section` is the identity.
#[derive(Debug)]
pub struct GroupExtension {
    kernel: Arc<FiniteGroup>,
    total: Arc<FiniteGroup>,
    quotient: Arc<FiniteGroup>,
    inject: Vec<usize>,
    project: Vec<usize>,
    section: Vec<usize>,
    kernel_of: Vec<Option<usize>>,
}

impl GroupExtension {
    pub fn try_new(
        kernel: Arc<FiniteGroup>,
        total: Arc<FiniteGroup>,
        quotient: Arc<FiniteGroup>,
        inject: Vec<usize>,
        project: Vec<usize>,
        section: Vec<usize>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidExtension(msg));
        if inject.len() != kernel.order()
            || project.len() != total.order()
            || section.len() != quotient.order()
        {
            return bad("map lengths do not match the group orders".into());
        }
        for (z, g) in [
            (&inject, total.order()),
            (&project, quotient.order()),
            (&section, total.order()),
        ] {
            if z.iter().any(|&i| i >= g) {
                return bad("map hits an out-of-range element".into());
            }
        }
        // Homomorphism checks.
        for a in kernel.elements() {
            for b in kernel.elements() {
                if inject[kernel.mul(a, b)] != total.mul(inject[a], inject[b]) {
                    return bad(format!(
                        "inject is not a homomorphism at ({}, {})",
                        kernel.label(a),
                        kernel.label(b)
                    ));
                }
            }
        }
        for a in total.elements() {
            for b in total.elements() {
                if project[total.mul(a, b)] != quotient.mul(project[a], project[b]) {
                    return bad(format!(
                        "project is not a homomorphism at ({}, {})",
                        total.label(a),
                        total.label(b)
                    ));
                }
            }
        }
        // Injectivity, surjectivity, section property.
        let mut kernel_of = vec![None; total.order()];
        for z in kernel.elements() {
            if kernel_of[inject[z]].replace(z).is_some() {
                return bad("inject is not injective".into());
            }
        }
        let mut hit = vec![false; quotient.order()];
        for g in total.elements() {
            hit[project[g]] = true;
        }
        if !hit.iter().all(|&h| h) {
            return bad("project is not surjective".into());
        }
        for h in quotient.elements() {
            if project[section[h]] != h {
                return bad(format!(
                    "section of {} does not project back",
                    quotient.label(h)
                ));
            }
        }
        // Exactness: image of inject must be exactly the kernel of project.
        for g in total.elements() {
            let in_kernel = project[g] == quotient.identity();
            if in_kernel != kernel_of[g].is_some() {
                return bad(format!(
                    "image of inject differs from the kernel of project at {}",
                    total.label(g)
                ));
            }
        }
        Ok(GroupExtension {
            kernel,
            total,
            quotient,
            inject,
            project,
            section,
            kernel_of,
        })
    }

    pub fn kernel(&self) -> &Arc<FiniteGroup> {
        &self.kernel
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        &self.total
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn inject(&self, z: usize) -> usize {
        self.inject[z]
    }

    pub fn project(&self, g: usize) -> usize {
        self.project[g]
    }

    pub fn section(&self, h: usize) -> usize {
        self.section[h]
    }

    pub fn in_kernel(&self, g: usize) -> bool {
        self.kernel_of[g].is_some()
    }

    /// The unique `(z, h)` with `g = section(h) · inject(z)`.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        let h = self.project[g];
        let rest = self.total.mul(self.total.inv(self.section[h]), g);
        let z = self.kernel_of[rest]
            .expect("section(h)^{-1} · g lies in the kernel by exactness");
        (z, h)
    }

    pub fn recompose(&self, z: usize, h: usize) -> usize {
        self.total.mul(self.section[h], self.inject[z])
    }
}

/// The extension `1 → Z12 → T/I → Z2 → 1` with `section(0) = T0`,
/// `section(1) = I0`.
pub fn ti_extension() -> GroupExtension {
    let z12 = Arc::new(FiniteGroup::cyclic(12).expect("Z12"));
    let ti = Arc::new(ti_group());
    let z2 = Arc::new(FiniteGroup::cyclic(2).expect("Z2"));
    let inject: Vec<usize> = (0..12)
        .map(|n| TiElement::transposition(n).index())
        .collect();
    let project: Vec<usize> = (0..24)
        .map(|i| usize::from(!TiElement::from_index(i).is_transposition()))
        .collect();
    let section = vec![
        TiElement::transposition(0).index(),
        TiElement::inversion(0).index(),
    ];
    GroupExtension::try_new(z12, ti, z2, inject, project, section)
        .expect("the T/I extension is valid")
}

/// Brute-force isomorphism search. Returns an element map `a → b` witnessing
/// the isomorphism, or None. Intended for small orders only: generators of
/// `a` are matched against order-compatible candidates in `b`.
pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut profile_a: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let mut profile_b: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    let orders_b = profile_b.clone();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return None;
    }

    let gens = generating_set(a);
    let mut images = vec![0usize; gens.len()];
    search_isomorphism(a, b, &gens, &orders_b, &mut images, 0)
}

fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = vec![false; g.order()];
    closure[g.identity()] = true;
    let mut size = 1;
    while size < g.order() {
        let next = (0..g.order()).find(|&x| !closure[x]).unwrap();
        gens.push(next);
        // Re-close under the enlarged generating set.
        let mut frontier = vec![g.identity()];
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        while let Some(x) = frontier.pop() {
            for &gen in &gens {
                let y = g.mul(gen, x);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        closure = seen;
        size = closure.iter().filter(|&&s| s).count();
    }
    gens
}

fn search_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    orders_b: &[usize],
    images: &mut [usize],
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        return build_homomorphism(a, b, gens, images).filter(|map| {
            // Bijectivity plus the full multiplication check.
            let mut seen = vec![false; b.order()];
            if !map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                return false;
            }
            a.elements().all(|x| {
                a.elements()
                    .all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y]))
            })
        });
    }
    let want = a.element_order(gens[depth]);
    for candidate in b.elements() {
        if orders_b[candidate] != want {
            continue;
        }
        images[depth] = candidate;
        if let Some(found) = search_isomorphism(a, b, gens, orders_b, images, depth + 1) {
            return Some(found);
        }
    }
    None
}

/// Extend generator images to a total map by closing under left
/// multiplication; None on any inconsistency.
fn build_homomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[a.identity()] = b.identity();
    let mut frontier = vec![a.identity()];
    while let Some(x) = frontier.pop() {
        for (&gen, &img) in gens.iter().zip(images) {
            let y = a.mul(gen, x);
            let fy = b.mul(img, map[x]);
            if map[y] == usize::MAX {
                map[y] = fy;
                frontier.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    map.iter().all(|&y| y != usize::MAX).then_some(map)
}
