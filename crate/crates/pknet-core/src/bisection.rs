//! Bisections of a finite groupoid: one outgoing morphism per object, with
//! the induced object permutation. Bisections form a group under pointwise
//! composition; over a connected groupoid with a chosen transport frame that
//! group is isomorphic to the wreath product End(base) ≀ Sₙ, splits as a
//! semidirect product of the coordinatewise normal part by the frame
//! permutations, and acts on the groupoid by inner automorphisms. All of
//! these facts are verified by exhaustive computation, never assumed.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::category::{Functor, Groupoid, MorId, ObjId};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, WreathElement, DEFAULT_ORDER_CAP};

/// One morphism out of every object: `legs[e] : e → sigma(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    sigma: Permutation,
    legs: Vec<MorId>,
}

impl Hash for Bisection {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // `sigma` is determined by the legs' targets, so the legs suffice.
        self.legs.hash(state);
    }
}

impl Bisection {
    pub fn try_new(groupoid: &Groupoid, sigma: Permutation, legs: Vec<MorId>) -> Result<Self> {
        let n = groupoid.object_count();
        if sigma.degree() != n || legs.len() != n {
            return Err(Error::InvalidBisection(format!(
                "need one leg per object ({n}), got σ of degree {} and {} legs",
                sigma.degree(),
                legs.len()
            )));
        }
        for (e, &leg) in legs.iter().enumerate() {
            if leg >= groupoid.morphism_count() {
                return Err(Error::InvalidBisection(format!(
                    "leg {leg} out of range at object {}",
                    groupoid.object_label(e)
                )));
            }
            if groupoid.src(leg) != e || groupoid.tgt(leg) != sigma.apply(e) {
                return Err(Error::InvalidBisection(format!(
                    "leg {} at object {} must run {} → {}",
                    groupoid.morphism(leg).label,
                    groupoid.object_label(e),
                    groupoid.object_label(e),
                    groupoid.object_label(sigma.apply(e))
                )));
            }
        }
        Ok(Bisection { sigma, legs })
    }

    pub fn identity(groupoid: &Groupoid) -> Bisection {
        let n = groupoid.object_count();
        Bisection {
            sigma: Permutation::identity(n),
            legs: (0..n).map(|o| groupoid.identity(o)).collect(),
        }
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn legs(&self) -> &[MorId] {
        &self.legs
    }

    pub fn leg(&self, e: ObjId) -> MorId {
        self.legs[e]
    }

    pub fn is_identity(&self, groupoid: &Groupoid) -> bool {
        self.sigma.is_identity() && self.legs.iter().all(|&m| groupoid.is_identity(m))
    }

    /// `self ⋆ first`: apply `first`, then `self`. The leg at `e` follows
    /// `first` out of `e` and continues with `self`'s leg at the landing
    /// object.
    pub fn compose_in(&self, groupoid: &Groupoid, first: &Bisection) -> Bisection {
        let legs = (0..self.legs.len())
            .map(|e| {
                groupoid
                    .compose(self.legs[first.sigma.apply(e)], first.legs[e])
                    .expect("bisection legs meet end to end")
            })
            .collect();
        Bisection {
            sigma: self.sigma.compose(&first.sigma),
            legs,
        }
    }

    pub fn inverse_in(&self, groupoid: &Groupoid) -> Bisection {
        let sigma_inv = self.sigma.inverse();
        let legs = (0..self.legs.len())
            .map(|e| groupoid.inverse(self.legs[sigma_inv.apply(e)]))
            .collect();
        Bisection {
            sigma: sigma_inv,
            legs,
        }
    }

    pub fn label(&self, groupoid: &Groupoid) -> String {
        let legs: Vec<&str> = self
            .legs
            .iter()
            .map(|&m| groupoid.morphism(m).label.as_str())
            .collect();
        format!("{}⟨{}⟩", self.sigma, legs.join(", "))
    }
}

/// Every bisection of a finite groupoid, in canonical order (object
/// permutation rank first, then legs lexicographically by morphism id),
/// together with the multiplication table as a validated finite group.
pub struct BisectionGroup {
    groupoid: Groupoid,
    elements: Vec<Bisection>,
    index: HashMap<Bisection, usize>,
    group: FiniteGroup,
}

impl std::fmt::Debug for BisectionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BisectionGroup(order {})", self.elements.len())
    }
}

impl BisectionGroup {
    pub fn new(groupoid: &Groupoid) -> Result<Self> {
        BisectionGroup::with_cap(groupoid, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(groupoid: &Groupoid, cap: usize) -> Result<Self> {
        let n = groupoid.object_count();
        let perms = Permutation::all(n);
        let mut total: u128 = 0;
        for sigma in &perms {
            let mut count: u128 = 1;
            for e in 0..n {
                count = count.saturating_mul(groupoid.hom(e, sigma.apply(e)).len() as u128);
            }
            total = total.saturating_add(count);
        }
        if total > cap as u128 {
            return Err(Error::OrderCap { order: total, cap });
        }

        let mut elements = Vec::with_capacity(total as usize);
        for sigma in &perms {
            let choices: Vec<Vec<MorId>> = (0..n).map(|e| groupoid.hom(e, sigma.apply(e))).collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut cursor = vec![0usize; n];
            loop {
                let legs: Vec<MorId> = (0..n).map(|e| choices[e][cursor[e]]).collect();
                elements.push(Bisection {
                    sigma: sigma.clone(),
                    legs,
                });
                // Odometer with the last object fastest.
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    cursor[pos] += 1;
                    if cursor[pos] < choices[pos].len() {
                        break;
                    }
                    cursor[pos] = 0;
                }
                if cursor.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }

        let index: HashMap<Bisection, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                let c = a.compose_in(groupoid, b);
                table.push(index[&c] as u32);
            }
        }
        let labels: Vec<String> = elements.iter().map(|b| b.label(groupoid)).collect();
        let group = FiniteGroup::try_from_table_capped(
            format!("Bis({})", groupoid.name()),
            labels,
            table,
            cap,
        )?;
        Ok(BisectionGroup {
            groupoid: groupoid.clone(),
            elements,
            index,
            group,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Bisection] {
        &self.elements
    }

    pub fn bisection(&self, i: usize) -> &Bisection {
        &self.elements[i]
    }

    pub fn index_of(&self, b: &Bisection) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// The abstract multiplication table; `mul(a, b)` applies `b` first.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

/// A base object with one anchor morphism `base → i` per object (identity at
/// the base). Induces transports `h(i, j) = anchor(j) ∘ anchor(i)⁻¹`, which
/// satisfy the cocycle law `h(q, r) ∘ h(p, q) = h(p, r)` — checked
/// exhaustively anyway — and identifies every endomorphism group with
/// End(base).
pub struct TransportFrame {
    groupoid: Groupoid,
    base: ObjId,
    anchors: Vec<MorId>,
    endo_group: FiniteGroup,
    endo_ids: Vec<MorId>,
    endo_index: HashMap<MorId, usize>,
}

impl std::fmt::Debug for TransportFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TransportFrame(base {}, {} objects)",
            self.groupoid.object_label(self.base),
            self.anchors.len()
        )
    }
}

impl TransportFrame {
    pub fn try_new(groupoid: &Groupoid, base: ObjId, anchors: Vec<MorId>) -> Result<Self> {
        let n = groupoid.object_count();
        if base >= n {
            return Err(Error::InvalidFrame(format!("base object {base} out of range")));
        }
        if anchors.len() != n {
            return Err(Error::InvalidFrame(format!(
                "need one anchor per object ({n}), got {}",
                anchors.len()
            )));
        }
        for (i, &a) in anchors.iter().enumerate() {
            if a >= groupoid.morphism_count()
                || groupoid.src(a) != base
                || groupoid.tgt(a) != i
            {
                return Err(Error::InvalidFrame(format!(
                    "anchor at {} must run {} → {}",
                    groupoid.object_label(i),
                    groupoid.object_label(base),
                    groupoid.object_label(i)
                )));
            }
        }
        if !groupoid.is_identity(anchors[base]) {
            return Err(Error::InvalidFrame(
                "anchor at the base must be the identity".into(),
            ));
        }
        let (endo_group, endo_ids) = groupoid.endomorphism_group(base);
        let endo_index: HashMap<MorId, usize> = endo_ids
            .iter()
            .enumerate()
            .map(|(z, &m)| (m, z))
            .collect();
        let frame = TransportFrame {
            groupoid: groupoid.clone(),
            base,
            anchors,
            endo_group,
            endo_ids,
            endo_index,
        };
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let through = frame
                        .groupoid
                        .compose(frame.transport(q, r), frame.transport(p, q))
                        .expect("transports meet end to end");
                    if through != frame.transport(p, r) {
                        return Err(Error::InvalidFrame(format!(
                            "transport cocycle fails through ({p}, {q}, {r})"
                        )));
                    }
                }
            }
        }
        Ok(frame)
    }

    /// Default frame: anchor each object by the lowest-id morphism out of
    /// the base (the identity at the base itself).
    pub fn from_base(groupoid: &Groupoid, base: ObjId) -> Result<Self> {
        let n = groupoid.object_count();
        if base >= n {
            return Err(Error::InvalidFrame(format!("base object {base} out of range")));
        }
        let mut anchors = Vec::with_capacity(n);
        for i in 0..n {
            if i == base {
                anchors.push(groupoid.identity(base));
                continue;
            }
            let hom = groupoid.hom(base, i);
            match hom.first() {
                Some(&m) => anchors.push(m),
                None => {
                    return Err(Error::NotConnected(format!(
                        "no morphism from {} to {}",
                        groupoid.object_label(base),
                        groupoid.object_label(i)
                    )))
                }
            }
        }
        TransportFrame::try_new(groupoid, base, anchors)
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn base(&self) -> ObjId {
        self.base
    }

    pub fn anchors(&self) -> &[MorId] {
        &self.anchors
    }

    pub fn anchor(&self, i: ObjId) -> MorId {
        self.anchors[i]
    }

    /// `h(i, j) : i → j`, via the base.
    pub fn transport(&self, i: ObjId, j: ObjId) -> MorId {
        self.groupoid
            .compose(self.anchors[j], self.groupoid.inverse(self.anchors[i]))
            .expect("anchors meet at the base")
    }

    /// End(base), the local group every object gets identified with.
    pub fn endo_group(&self) -> &FiniteGroup {
        &self.endo_group
    }

    pub fn endo_morphism(&self, z: usize) -> MorId {
        self.endo_ids[z]
    }

    pub fn endo_index(&self, m: MorId) -> Option<usize> {
        self.endo_index.get(&m).copied()
    }

    /// Split off the permutation part: `b = h_part ⋆ n_part` where `n_part`
    /// fixes every object and `h_part` is the frame bisection of `b`'s
    /// permutation.
    pub fn decompose(&self, b: &Bisection) -> (Bisection, Bisection) {
        let n = self.anchors.len();
        let n_legs: Vec<MorId> = (0..n)
            .map(|e| {
                let to_target = self.transport(e, b.sigma.apply(e));
                self.groupoid
                    .compose(self.groupoid.inverse(to_target), b.legs[e])
                    .expect("leg endpoints match the transport")
            })
            .collect();
        let n_part = Bisection {
            sigma: Permutation::identity(n),
            legs: n_legs,
        };
        let h_part = self.frame_bisection(&b.sigma);
        debug_assert_eq!(h_part.compose_in(&self.groupoid, &n_part), *b);
        (n_part, h_part)
    }

    /// The bisection whose legs are the frame transports along `sigma`.
    pub fn frame_bisection(&self, sigma: &Permutation) -> Bisection {
        let legs = (0..self.anchors.len())
            .map(|e| self.transport(e, sigma.apply(e)))
            .collect();
        Bisection {
            sigma: sigma.clone(),
            legs,
        }
    }

    /// χ: read a bisection in frame coordinates. Coordinate `i` is the
    /// object-fixing part at `i` conjugated back to the base; the permutation
    /// is the object part.
    pub fn to_wreath(&self, b: &Bisection) -> WreathElement {
        let (n_part, _) = self.decompose(b);
        let coords = (0..self.anchors.len())
            .map(|i| {
                let down = self.groupoid.inverse(self.anchors[i]);
                let conj = self
                    .groupoid
                    .compose(down, self.groupoid.compose(n_part.legs[i], self.anchors[i]).unwrap())
                    .expect("conjugation lands at the base");
                self.endo_index[&conj]
            })
            .collect();
        WreathElement {
            coords,
            perm: b.sigma.clone(),
        }
    }

    /// χ⁻¹: rebuild the bisection from frame coordinates.
    pub fn from_wreath(&self, w: &WreathElement) -> Result<Bisection> {
        let n = self.anchors.len();
        if w.coords.len() != n || w.perm.degree() != n {
            return Err(Error::InvalidBisection(
                "wreath element size does not match the groupoid".into(),
            ));
        }
        let legs = (0..n)
            .map(|i| {
                let endo_at_base = self.endo_ids[w.coords[i]];
                let up = self.anchors[i];
                let local = self
                    .groupoid
                    .compose(up, self.groupoid.compose(endo_at_base, self.groupoid.inverse(up)).unwrap())
                    .expect("conjugation lands at the object");
                self.groupoid
                    .compose(self.transport(i, w.perm.apply(i)), local)
                    .expect("transport continues the local part")
            })
            .collect();
        Bisection::try_new(&self.groupoid, w.perm.clone(), legs)
    }
}

/// Exhaustive comparison of the bisection group with `End(base) ≀ Sn`
/// through the frame coordinates χ.
#[derive(Clone, Debug, Serialize)]
pub struct WreathComparison {
    pub bisection_count: usize,
    pub wreath_order: usize,
    pub bijective: bool,
    pub identity_to_identity: bool,
    pub homomorphism: bool,
}

impl WreathComparison {
    pub fn is_isomorphism(&self) -> bool {
        self.bisection_count == self.wreath_order
            && self.bijective
            && self.identity_to_identity
            && self.homomorphism
    }
}

/// Check that χ is a group isomorphism Bis(G) → End(base) ≀ Sn, pair by
/// pair.
pub fn compare_with_wreath(bis: &BisectionGroup, frame: &TransportFrame) -> WreathComparison {
    let z = frame.endo_group();
    let n = frame.anchors().len();
    let wreath_order = z.order().pow(n as u32) * (1..=n).product::<usize>();

    let images: Vec<WreathElement> = bis.elements().iter().map(|b| frame.to_wreath(b)).collect();
    let distinct: HashSet<usize> = images.iter().map(|w| w.canonical_index(z.order())).collect();
    let bijective = distinct.len() == bis.order()
        && images.iter().all(|w| w.canonical_index(z.order()) < wreath_order);

    let identity_to_identity = {
        let id = Bisection::identity(bis.groupoid());
        frame.to_wreath(&id) == WreathElement::identity(z, n)
    };

    let mut homomorphism = true;
    'outer: for (a, wa) in images.iter().enumerate() {
        for (b, wb) in images.iter().enumerate() {
            let product = bis.group().mul(a, b);
            if wa.multiply(wb, z) != images[product] {
                homomorphism = false;
                break 'outer;
            }
        }
    }

    WreathComparison {
        bisection_count: bis.order(),
        wreath_order,
        bijective,
        identity_to_identity,
        homomorphism,
    }
}

/// A finite-set-valued action of a groupoid: a carrier per object and a map
/// per morphism, validated to respect identities and composition (hence
/// every map is a bijection).
pub struct GroupoidAction {
    groupoid: Groupoid,
    carriers: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl std::fmt::Debug for GroupoidAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupoidAction({} points)", self.point_count())
    }
}

impl GroupoidAction {
    pub fn try_new(
        groupoid: &Groupoid,
        carriers: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if carriers.len() != groupoid.object_count() || maps.len() != groupoid.morphism_count() {
            return Err(Error::InvalidAction(
                "need one carrier per object and one map per morphism".into(),
            ));
        }
        for (m, map) in maps.iter().enumerate() {
            let src = &carriers[groupoid.src(m)];
            let tgt_len = carriers[groupoid.tgt(m)].len();
            if map.len() != src.len() || map.iter().any(|&y| y >= tgt_len) {
                return Err(Error::InvalidAction(format!(
                    "map of {} has the wrong shape",
                    groupoid.morphism(m).label
                )));
            }
        }
        for o in 0..groupoid.object_count() {
            let id = groupoid.identity(o);
            if maps[id].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::InvalidAction(format!(
                    "identity of {} does not act trivially",
                    groupoid.object_label(o)
                )));
            }
        }
        for m1 in 0..groupoid.morphism_count() {
            for m2 in 0..groupoid.morphism_count() {
                let Some(c) = groupoid.compose(m2, m1) else {
                    continue;
                };
                for x in 0..carriers[groupoid.src(m1)].len() {
                    if maps[c][x] != maps[m2][maps[m1][x]] {
                        return Err(Error::InvalidAction(format!(
                            "({}) ∘ ({}) does not act as {}",
                            groupoid.morphism(m2).label,
                            groupoid.morphism(m1).label,
                            groupoid.morphism(c).label
                        )));
                    }
                }
            }
        }
        Ok(GroupoidAction {
            groupoid: groupoid.clone(),
            carriers,
            maps,
        })
    }

    /// The groupoid acting on its own hom-sets out of each object's group
    /// part — for pair-product groupoids this is the regular carrier.
    pub fn regular(groupoid: &Groupoid, z: &FiniteGroup) -> Result<Self> {
        let carriers: Vec<Vec<String>> = (0..groupoid.object_count())
            .map(|_| z.labels().to_vec())
            .collect();
        let zo = z.order();
        let maps: Vec<Vec<usize>> = (0..groupoid.morphism_count())
            .map(|m| {
                let g = m % zo;
                (0..zo).map(|x| z.mul(g, x)).collect()
            })
            .collect();
        GroupoidAction::try_new(groupoid, carriers, maps)
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn carrier(&self, o: ObjId) -> &[String] {
        &self.carriers[o]
    }

    pub fn apply(&self, m: MorId, x: usize) -> usize {
        self.maps[m][x]
    }

    pub fn point_count(&self) -> usize {
        self.carriers.iter().map(|c| c.len()).sum()
    }

    /// Points of the total carrier, as (object, element) pairs.
    pub fn points(&self) -> Vec<(ObjId, usize)> {
        let mut out = Vec::with_capacity(self.point_count());
        for (o, c) in self.carriers.iter().enumerate() {
            for x in 0..c.len() {
                out.push((o, x));
            }
        }
        out
    }

    pub fn point_label(&self, p: (ObjId, usize)) -> String {
        format!(
            "{}@{}",
            self.carriers[p.0][p.1],
            self.groupoid.object_label(p.0)
        )
    }

    /// A bisection moves the point along its leg at the point's object.
    pub fn apply_bisection(&self, b: &Bisection, p: (ObjId, usize)) -> (ObjId, usize) {
        let (o, x) = p;
        (b.sigma().apply(o), self.maps[b.leg(o)][x])
    }
}

/// Exhaustive verification that the bisection group acts on the total
/// carrier: identity fixes every point and composition is compatible.
#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub group_order: usize,
    pub point_count: usize,
    pub identity_fixes_all: bool,
    pub composition_compatible: bool,
    pub every_element_permutes: bool,
}

impl ActionReport {
    pub fn holds(&self) -> bool {
        self.identity_fixes_all && self.composition_compatible && self.every_element_permutes
    }
}

pub fn verify_bisection_action(bis: &BisectionGroup, action: &GroupoidAction) -> ActionReport {
    let points = action.points();
    let id = Bisection::identity(bis.groupoid());
    let identity_fixes_all = points.iter().all(|&p| action.apply_bisection(&id, p) == p);

    let every_element_permutes = bis.elements().iter().all(|b| {
        let mut seen = HashSet::with_capacity(points.len());
        points
            .iter()
            .all(|&p| seen.insert(action.apply_bisection(b, p)))
    });

    let mut composition_compatible = true;
    'outer: for (i, a) in bis.elements().iter().enumerate() {
        for (j, b) in bis.elements().iter().enumerate() {
            let product = bis.bisection(bis.group().mul(i, j));
            for &p in &points {
                let stepwise = action.apply_bisection(a, action.apply_bisection(b, p));
                if action.apply_bisection(product, p) != stepwise {
                    composition_compatible = false;
                    break 'outer;
                }
            }
        }
    }

    ActionReport {
        group_order: bis.order(),
        point_count: points.len(),
        identity_fixes_all,
        composition_compatible,
        every_element_permutes,
    }
}

/// ξ(b): the inner automorphism g ↦ leg(target) ∘ g ∘ leg(source)⁻¹, as a
/// validated functor from the groupoid to itself.
pub fn inner_automorphism(groupoid: &Groupoid, b: &Bisection) -> Result<Functor> {
    let on_objects: Vec<ObjId> = (0..groupoid.object_count())
        .map(|o| b.sigma().apply(o))
        .collect();
    let on_morphisms: Vec<MorId> = (0..groupoid.morphism_count())
        .map(|g| {
            let e = groupoid.src(g);
            let e2 = groupoid.tgt(g);
            let middle = groupoid
                .compose(g, groupoid.inverse(b.leg(e)))
                .expect("inverse leg lands at the source");
            groupoid
                .compose(b.leg(e2), middle)
                .expect("leg continues from the target")
        })
        .collect();
    Functor::try_new(
        Arc::clone(groupoid.category()),
        Arc::clone(groupoid.category()),
        on_objects,
        on_morphisms,
    )
}

/// The inner action ξ measured exhaustively: whether it is a homomorphism
/// into the automorphisms of the groupoid, its kernel and image sizes, and
/// whether the inner automorphisms exhaust all of Bis(G) — a claim that
/// fails precisely when conjugation forgets part of the local group, so it
/// is reported, never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct InnerActionReport {
    pub bisection_count: usize,
    pub homomorphism: bool,
    pub kernel_size: usize,
    pub image_size: usize,
    pub faithful_up_to_center: bool,
    pub inner_automorphisms_exhaust_bisections: bool,
}

pub fn inner_action_report(bis: &BisectionGroup) -> Result<InnerActionReport> {
    let groupoid = bis.groupoid();
    let functors: Vec<Functor> = bis
        .elements()
        .iter()
        .map(|b| inner_automorphism(groupoid, b))
        .collect::<Result<_>>()?;

    let mut homomorphism = true;
    'outer: for (i, fi) in functors.iter().enumerate() {
        for (j, fj) in functors.iter().enumerate() {
            let product = &functors[bis.group().mul(i, j)];
            let composed_objects: Vec<ObjId> = (0..groupoid.object_count())
                .map(|o| fi.map_object(fj.map_object(o)))
                .collect();
            let composed_morphisms: Vec<MorId> = (0..groupoid.morphism_count())
                .map(|m| fi.map_morphism(fj.map_morphism(m)))
                .collect();
            if product.on_objects() != composed_objects.as_slice()
                || product.on_morphisms() != composed_morphisms.as_slice()
            {
                homomorphism = false;
                break 'outer;
            }
        }
    }

    let identity_objects: Vec<ObjId> = (0..groupoid.object_count()).collect();
    let identity_morphisms: Vec<MorId> = (0..groupoid.morphism_count()).collect();
    let kernel_size = functors
        .iter()
        .filter(|f| {
            f.on_objects() == identity_objects.as_slice()
                && f.on_morphisms() == identity_morphisms.as_slice()
        })
        .count();
    let image: HashSet<(Vec<ObjId>, Vec<MorId>)> = functors
        .iter()
        .map(|f| (f.on_objects().to_vec(), f.on_morphisms().to_vec()))
        .collect();
    let image_size = image.len();

    Ok(InnerActionReport {
        bisection_count: bis.order(),
        homomorphism,
        kernel_size,
        image_size,
        faithful_up_to_center: kernel_size * image_size == bis.order(),
        inner_automorphisms_exhaust_bisections: image_size == bis.order(),
    })
}

/// The frame identification of a connected groupoid with the pair groupoid
/// on its objects times End(base): `g : e → e'` goes to the triple
/// `(e, e', anchor(e')⁻¹ ∘ g ∘ anchor(e))`.
pub struct Trivialization {
    pub target: Groupoid,
    pub functor: Functor,
}

pub fn trivialize(frame: &TransportFrame) -> Result<Trivialization> {
    let groupoid = frame.groupoid();
    let z = frame.endo_group();
    let target = Groupoid::pair_product(z, groupoid.objects().to_vec())?;
    let n = groupoid.object_count();
    let zo = z.order();
    let on_morphisms: Vec<MorId> = (0..groupoid.morphism_count())
        .map(|g| {
            let e = groupoid.src(g);
            let e2 = groupoid.tgt(g);
            let down = groupoid.inverse(frame.anchor(e2));
            let conj = groupoid
                .compose(down, groupoid.compose(g, frame.anchor(e)).unwrap())
                .expect("conjugation lands at the base");
            let zi = frame
                .endo_index(conj)
                .expect("conjugate is an endomorphism of the base");
            (e * n + e2) * zo + zi
        })
        .collect();
    let functor = Functor::try_new(
        Arc::clone(groupoid.category()),
        Arc::clone(target.category()),
        (0..n).collect(),
        on_morphisms,
    )?;
    Ok(Trivialization { target, functor })
}

/// The split of Bis(G) into the object-fixing normal part and the frame
/// permutations, with every law checked exhaustively over the whole group.
#[derive(Clone, Debug, Serialize)]
pub struct SemidirectReport {
    pub total_order: usize,
    pub normal_part_order: usize,
    pub frame_part_order: usize,
    /// |N| = ∏ᵢ |End(i)|: the object-fixing bisections are exactly the
    /// coordinatewise tuples of local endomorphisms.
    pub normal_part_coordinatewise: bool,
    /// h(τ) ⋆ h(σ) = h(τσ): the frame bisections close up as a copy of Sn.
    pub frame_part_closed: bool,
    pub intersection_trivial: bool,
    pub normal_part_normal: bool,
    /// (h(σ)·n)(e) = h(σ(e), e) ∘ n(σ(e)) ∘ h(e, σ(e)) equals conjugation
    /// h(σ)⁻¹ ⋆ n ⋆ h(σ).
    pub action_formula_holds: bool,
    /// decompose(b' ⋆ b) = ((h(σ)·n') ⋆ n, h(τσ)) for all pairs.
    pub product_law_holds: bool,
    pub decomposition_bijective: bool,
}

impl SemidirectReport {
    pub fn holds(&self) -> bool {
        self.normal_part_coordinatewise
            && self.frame_part_closed
            && self.intersection_trivial
            && self.normal_part_normal
            && self.action_formula_holds
            && self.product_law_holds
            && self.decomposition_bijective
            && self.total_order == self.normal_part_order * self.frame_part_order
    }
}

pub fn semidirect_report(bis: &BisectionGroup, frame: &TransportFrame) -> SemidirectReport {
    let groupoid = bis.groupoid();
    let n = groupoid.object_count();

    let normal: Vec<usize> = (0..bis.order())
        .filter(|&i| bis.bisection(i).sigma().is_identity())
        .collect();
    let expected_normal: usize = (0..n).map(|o| groupoid.endomorphisms(o).len()).product();
    let normal_part_coordinatewise = normal.len() == expected_normal;

    let perms = Permutation::all(n);
    let frame_bisections: Vec<Bisection> =
        perms.iter().map(|p| frame.frame_bisection(p)).collect();
    let mut frame_part_closed = true;
    for (ti, tau) in perms.iter().enumerate() {
        for (si, sigma) in perms.iter().enumerate() {
            let left = frame_bisections[ti].compose_in(groupoid, &frame_bisections[si]);
            if left != frame.frame_bisection(&tau.compose(sigma)) {
                frame_part_closed = false;
            }
        }
    }

    let identity = Bisection::identity(groupoid);
    let intersection_trivial = frame_bisections
        .iter()
        .all(|h| !h.sigma().is_identity() || *h == identity);

    let mut normal_part_normal = true;
    for &ni in &normal {
        let nb = bis.bisection(ni);
        for b in bis.elements() {
            let conj = b
                .compose_in(groupoid, nb)
                .compose_in(groupoid, &b.inverse_in(groupoid));
            if !conj.sigma().is_identity() {
                normal_part_normal = false;
            }
        }
    }

    let twist = |sigma: &Permutation, nb: &Bisection| -> Bisection {
        let legs: Vec<MorId> = (0..n)
            .map(|e| {
                let se = sigma.apply(e);
                let inward = frame.transport(e, se);
                let back = frame.transport(se, e);
                groupoid
                    .compose(back, groupoid.compose(nb.leg(se), inward).unwrap())
                    .expect("twist stays at the object")
            })
            .collect();
        Bisection {
            sigma: Permutation::identity(n),
            legs,
        }
    };

    let mut action_formula_holds = true;
    for sigma in &perms {
        let h = frame.frame_bisection(sigma);
        let h_inv = h.inverse_in(groupoid);
        for &ni in &normal {
            let nb = bis.bisection(ni);
            let by_conjugation = h_inv.compose_in(groupoid, &nb.compose_in(groupoid, &h));
            if twist(sigma, nb) != by_conjugation {
                action_formula_holds = false;
            }
        }
    }

    let mut product_law_holds = true;
    'pairs: for b2 in bis.elements() {
        for b1 in bis.elements() {
            let (n2, _) = frame.decompose(b2);
            let (n1, h1) = frame.decompose(b1);
            let (np, hp) = frame.decompose(&b2.compose_in(groupoid, b1));
            let expected_n = twist(h1.sigma(), &n2).compose_in(groupoid, &n1);
            let expected_h = frame.frame_bisection(&b2.sigma().compose(b1.sigma()));
            if np != expected_n || hp != expected_h {
                product_law_holds = false;
                break 'pairs;
            }
        }
    }

    let mut seen: HashSet<(usize, Vec<MorId>)> = HashSet::with_capacity(bis.order());
    let mut decomposition_bijective = true;
    for b in bis.elements() {
        let (n_part, h_part) = frame.decompose(b);
        if h_part.compose_in(groupoid, &n_part) != *b {
            decomposition_bijective = false;
        }
        if !seen.insert((h_part.sigma().rank(), n_part.legs().to_vec())) {
            decomposition_bijective = false;
        }
    }
    if seen.len() != bis.order() {
        decomposition_bijective = false;
    }

    SemidirectReport {
        total_order: bis.order(),
        normal_part_order: normal.len(),
        frame_part_order: frame_bisections.len(),
        normal_part_coordinatewise,
        frame_part_closed,
        intersection_trivial,
        normal_part_normal,
        action_formula_holds,
        product_law_holds,
        decomposition_bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::wreath_group;

    fn z3_pair() -> Groupoid {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        Groupoid::pair_product(&z3, vec!["A".into(), "B".into()]).unwrap()
    }

    #[test]
    fn bisection_validation_and_algebra() {
        let g = z3_pair();
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        // Legs must run e → σ(e).
        let id0 = g.identity(0);
        let id1 = g.identity(1);
        assert!(matches!(
            Bisection::try_new(&g, swap.clone(), vec![id0, id1]),
            Err(Error::InvalidBisection(_))
        ));
        let a_to_b = g.hom(0, 1)[1];
        let b_to_a = g.hom(1, 0)[2];
        let b = Bisection::try_new(&g, swap, vec![a_to_b, b_to_a]).unwrap();
        let id = Bisection::identity(&g);
        assert_eq!(b.compose_in(&g, &id), b);
        assert_eq!(id.compose_in(&g, &b), b);
        let inv = b.inverse_in(&g);
        assert!(b.compose_in(&g, &inv).is_identity(&g));
        assert!(inv.compose_in(&g, &b).is_identity(&g));
    }

    #[test]
    fn bisection_group_orders() {
        let g2 = z3_pair();
        let bis2 = BisectionGroup::new(&g2).unwrap();
        assert_eq!(bis2.order(), 18);

        let z3 = FiniteGroup::cyclic(3).unwrap();
        let g3 =
            Groupoid::pair_product(&z3, vec!["A".into(), "B".into(), "C".into()]).unwrap();
        let bis3 = BisectionGroup::new(&g3).unwrap();
        assert_eq!(bis3.order(), 162);

        // The cap is honored before any table is built.
        assert!(matches!(
            BisectionGroup::with_cap(&g3, 100),
            Err(Error::OrderCap { order: 162, cap: 100 })
        ));
    }

    #[test]
    fn frame_transports_satisfy_the_cocycle() {
        let g = z3_pair();
        let frame = TransportFrame::from_base(&g, 0).unwrap();
        assert_eq!(frame.anchor(0), g.identity(0));
        assert_eq!(frame.anchor(1), g.hom(0, 1)[0]);
        assert_eq!(frame.endo_group().order(), 3);
        // h(i, i) is the identity; h(j, i) inverts h(i, j).
        for i in 0..2 {
            assert!(g.is_identity(frame.transport(i, i)));
            for j in 0..2 {
                assert_eq!(g.inverse(frame.transport(i, j)), frame.transport(j, i));
            }
        }
        // A frame whose base anchor is not the identity is refused.
        let endo = g.endomorphisms(0)[1];
        assert!(matches!(
            TransportFrame::try_new(&g, 0, vec![endo, g.hom(0, 1)[0]]),
            Err(Error::InvalidFrame(_))
        ));
    }

    #[test]
    fn decompose_splits_every_bisection() {
        let g = z3_pair();
        let frame = TransportFrame::from_base(&g, 0).unwrap();
        let bis = BisectionGroup::new(&g).unwrap();
        for b in bis.elements() {
            let (n_part, h_part) = frame.decompose(b);
            assert!(n_part.sigma().is_identity());
            assert_eq!(h_part.sigma(), b.sigma());
            assert_eq!(h_part.compose_in(&g, &n_part), *b);
        }
    }

    #[test]
    fn frame_coordinates_give_the_wreath_product() {
        let g = z3_pair();
        let frame = TransportFrame::from_base(&g, 0).unwrap();
        let bis = BisectionGroup::new(&g).unwrap();
        let report = compare_with_wreath(&bis, &frame);
        assert!(report.is_isomorphism(), "{report:?}");
        assert_eq!(report.wreath_order, 18);

        // Round trip through the coordinates.
        for b in bis.elements() {
            let w = frame.to_wreath(b);
            assert_eq!(&frame.from_wreath(&w).unwrap(), b);
        }

        // The abstract wreath group has the same multiplication table under
        // the canonical indexing.
        let z = frame.endo_group();
        let wreath = wreath_group(z, 2).unwrap();
        for (i, a) in bis.elements().iter().enumerate() {
            for (j, b) in bis.elements().iter().enumerate() {
                let via_bis = frame
                    .to_wreath(bis.bisection(bis.group().mul(i, j)))
                    .canonical_index(z.order());
                let via_wreath = wreath.mul(
                    frame.to_wreath(a).canonical_index(z.order()),
                    frame.to_wreath(b).canonical_index(z.order()),
                );
                assert_eq!(via_bis, via_wreath);
            }
        }
    }

    #[test]
    fn a_skewed_frame_still_gives_an_isomorphism() {
        let g = z3_pair();
        // Anchor B through a non-lowest morphism and base at the other end.
        let anchors = vec![g.hom(1, 0)[2], g.identity(1)];
        let frame = TransportFrame::try_new(&g, 1, anchors).unwrap();
        let bis = BisectionGroup::new(&g).unwrap();
        let report = compare_with_wreath(&bis, &frame);
        assert!(report.is_isomorphism(), "{report:?}");
    }

    #[test]
    fn regular_action_satisfies_the_axioms() {
        let g = z3_pair();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let action = GroupoidAction::regular(&g, &z3).unwrap();
        assert_eq!(action.point_count(), 6);
        let bis = BisectionGroup::new(&g).unwrap();
        let report = verify_bisection_action(&bis, &action);
        assert!(report.holds(), "{report:?}");

        // Corrupting one identity map is caught.
        let mut maps: Vec<Vec<usize>> = (0..g.morphism_count())
            .map(|m| (0..3).map(|x| z3.mul(m % 3, x)).collect())
            .collect();
        maps[g.identity(0)] = vec![1, 0, 2];
        let carriers = vec![z3.labels().to_vec(), z3.labels().to_vec()];
        assert!(matches!(
            GroupoidAction::try_new(&g, carriers, maps),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn inner_action_is_a_homomorphism_with_central_kernel() {
        let g = z3_pair();
        let bis = BisectionGroup::new(&g).unwrap();
        let report = inner_action_report(&bis).unwrap();
        assert!(report.homomorphism);
        // Z₃ is abelian: the diagonal center acts trivially, so conjugation
        // cannot reach all 18 bisections.
        assert_eq!(report.kernel_size, 3);
        assert_eq!(report.image_size, 6);
        assert!(report.faithful_up_to_center);
        assert!(!report.inner_automorphisms_exhaust_bisections);
    }

    #[test]
    fn trivialization_is_a_bijective_functor() {
        let g = z3_pair();
        let frame = TransportFrame::from_base(&g, 0).unwrap();
        let trivialization = trivialize(&frame).unwrap();
        assert!(trivialization.functor.is_bijective());
        assert_eq!(
            trivialization.target.morphism_count(),
            g.morphism_count()
        );
    }

    #[test]
    fn semidirect_split_holds_exhaustively() {
        let g = z3_pair();
        let frame = TransportFrame::from_base(&g, 0).unwrap();
        let bis = BisectionGroup::new(&g).unwrap();
        let report = semidirect_report(&bis, &frame);
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.normal_part_order, 9);
        assert_eq!(report.frame_part_order, 2);
    }
}
