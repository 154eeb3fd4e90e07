//! Poly-Klumpenhouwer networks. A network glues four pieces of data: a
//! shape category, a set-valued diagram `R` over it (the "form"), a group
//! action `S` providing the context points, and a chord class `F` labelling
//! the arrows — tied together by a pointwise assignment `φ` that must be
//! natural: following an arrow in the form and then interpreting must equal
//! interpreting and then applying the arrow's transformation. Class
//! morphisms act on networks pointwise, and the inverse problem — which
//! morphisms carry one network to another — is solved by exhaustive filter.

use std::sync::Arc;

use crate::category::{FinCategory, GSet, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor_groupoid::{homset, ChordClass, ClassMorphism};

/// A functor from the shape into finite sets: one nonempty labelled set per
/// object, one total function per morphism, functorial on the nose.
pub struct SetValuedDiagram {
    delta: Arc<FinCategory>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<u32>>,
}

impl std::fmt::Debug for SetValuedDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sizes: Vec<usize> = self.sets.iter().map(Vec::len).collect();
        write!(f, "SetValuedDiagram({} with sizes {:?})", self.delta.name(), sizes)
    }
}

impl SetValuedDiagram {
    pub fn try_new(
        delta: Arc<FinCategory>,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if sets.len() != delta.object_count() || maps.len() != delta.morphism_count() {
            return Err(Error::MalformedNetwork(
                "one set per object and one map per morphism required".into(),
            ));
        }
        for (o, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::MalformedNetwork(format!(
                    "the set at {:?} is empty",
                    delta.object_label(o)
                )));
            }
        }
        for m in 0..maps.len() {
            let (s, t) = (delta.src(m), delta.tgt(m));
            if maps[m].len() != sets[s].len() {
                return Err(Error::MalformedNetwork(format!(
                    "map at {:?} has wrong domain size",
                    delta.morphism(m).label
                )));
            }
            if maps[m].iter().any(|&y| y as usize >= sets[t].len()) {
                return Err(Error::MalformedNetwork(format!(
                    "map at {:?} leaves its codomain",
                    delta.morphism(m).label
                )));
            }
        }
        for o in 0..sets.len() {
            let id = delta.identity(o);
            if maps[id].iter().enumerate().any(|(x, &y)| y as usize != x) {
                return Err(Error::NotAFunctor(format!(
                    "identity of {:?} does not map to the identity function",
                    delta.object_label(o)
                )));
            }
        }
        for m1 in 0..maps.len() {
            for m2 in 0..maps.len() {
                if let Some(m) = delta.compose(m2, m1) {
                    for x in 0..maps[m1].len() {
                        if maps[m][x] != maps[m2][maps[m1][x] as usize] {
                            return Err(Error::NotAFunctor(format!(
                                "composite map at ({}, {}) disagrees at element {}",
                                delta.morphism(m2).label,
                                delta.morphism(m1).label,
                                sets[delta.src(m1)][x]
                            )));
                        }
                    }
                }
            }
        }
        Ok(SetValuedDiagram { delta, sets, maps })
    }

    /// One point per object, all maps forced.
    pub fn singleton(delta: Arc<FinCategory>) -> SetValuedDiagram {
        let sets = vec![vec!["•".to_string()]; delta.object_count()];
        let maps = vec![vec![0]; delta.morphism_count()];
        SetValuedDiagram::try_new(delta, sets, maps).expect("singleton diagram is functorial")
    }

    pub fn delta(&self) -> &Arc<FinCategory> {
        &self.delta
    }

    pub fn set(&self, o: ObjId) -> &[String] {
        &self.sets[o]
    }

    pub fn map(&self, m: MorId, x: usize) -> usize {
        self.maps[m][x] as usize
    }

    pub fn is_singleton(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    pub fn same_diagram(&self, other: &SetValuedDiagram) -> bool {
        std::ptr::eq(self, other)
            || (self.delta.same_category(&other.delta)
                && self.sets == other.sets
                && self.maps == other.maps)
    }
}

/// A poly-Klumpenhouwer network: `phi[X]` sends each element of `R(X)` to a
/// point of the context action, naturally in `X`.
#[derive(Clone)]
pub struct PKNet {
    r: Arc<SetValuedDiagram>,
    s: Arc<GSet>,
    class: Arc<ChordClass>,
    phi: Vec<Vec<u32>>,
}

impl PKNet {
    pub fn try_new(
        r: Arc<SetValuedDiagram>,
        s: Arc<GSet>,
        class: Arc<ChordClass>,
        phi: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if !r.delta().same_category(class.delta()) {
            return Err(Error::MalformedNetwork(
                "form and class live over different shapes".into(),
            ));
        }
        if !s.group().same_group(class.group()) {
            return Err(Error::MalformedNetwork(
                "context action and class use different groups".into(),
            ));
        }
        if phi.len() != r.delta().object_count() {
            return Err(Error::MalformedNetwork(
                "one assignment per shape object required".into(),
            ));
        }
        for (o, column) in phi.iter().enumerate() {
            if column.len() != r.set(o).len() {
                return Err(Error::MalformedNetwork(format!(
                    "assignment at {:?} has wrong domain size",
                    r.delta().object_label(o)
                )));
            }
            if column.iter().any(|&p| p as usize >= s.len()) {
                return Err(Error::MalformedNetwork(format!(
                    "assignment at {:?} hits a point outside the context",
                    r.delta().object_label(o)
                )));
            }
        }
        let net = PKNet { r, s, class, phi };
        net.check_natural()?;
        Ok(net)
    }

    fn check_natural(&self) -> Result<()> {
        let delta = self.r.delta();
        for m in 0..delta.morphism_count() {
            let (x, y) = (delta.src(m), delta.tgt(m));
            let g = self.class.image(m);
            for e in 0..self.r.set(x).len() {
                let via_form = self.phi[y][self.r.map(m, e)] as usize;
                let via_action = self.s.act(g, self.phi[x][e] as usize);
                if via_form != via_action {
                    return Err(Error::UnnaturalNetwork(format!(
                        "at {:?} element {}: form route gives {} but {} sends {} to {}",
                        delta.morphism(m).label,
                        self.r.set(x)[e],
                        self.s.point_label(via_form),
                        self.class.group().label(g),
                        self.s.point_label(self.phi[x][e] as usize),
                        self.s.point_label(via_action)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Singleton form, one context point per shape object.
    pub fn singleton(s: Arc<GSet>, class: Arc<ChordClass>, points: &[usize]) -> Result<Self> {
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(class.delta())));
        Self::singleton_in(r, s, class, points)
    }

    /// Singleton constructor sharing an existing form (keeps nets from one
    /// progression structurally identical).
    pub fn singleton_in(
        r: Arc<SetValuedDiagram>,
        s: Arc<GSet>,
        class: Arc<ChordClass>,
        points: &[usize],
    ) -> Result<Self> {
        if !r.is_singleton() {
            return Err(Error::MalformedNetwork(
                "singleton constructor used with a non-singleton form".into(),
            ));
        }
        let phi = points.iter().map(|&p| vec![p as u32]).collect();
        Self::try_new(r, s, class, phi)
    }

    pub fn form(&self) -> &Arc<SetValuedDiagram> {
        &self.r
    }

    pub fn context(&self) -> &Arc<GSet> {
        &self.s
    }

    pub fn class(&self) -> &Arc<ChordClass> {
        &self.class
    }

    pub fn assignment(&self, o: ObjId) -> &[u32] {
        &self.phi[o]
    }

    /// For singleton forms: the context point at each shape object.
    pub fn points(&self) -> Vec<usize> {
        self.phi.iter().map(|column| column[0] as usize).collect()
    }

    /// Apply a class morphism: the result lives over the morphism's target
    /// class, with every point moved by the component at its object.
    pub fn act(&self, morphism: &ClassMorphism) -> Result<PKNet> {
        if !morphism.source().same_class(&self.class) {
            return Err(Error::ClassMismatch(format!(
                "{} does not start at class {}",
                morphism.label(),
                self.class.name()
            )));
        }
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(o, column)| {
                let g = morphism.component(o);
                column
                    .iter()
                    .map(|&p| self.s.act(g, p as usize) as u32)
                    .collect()
            })
            .collect();
        let moved = PKNet {
            r: Arc::clone(&self.r),
            s: Arc::clone(&self.s),
            class: Arc::clone(morphism.target()),
            phi,
        };
        debug_assert!(moved.check_natural().is_ok());
        Ok(moved)
    }

    pub fn same_context(&self, other: &PKNet) -> bool {
        self.r.same_diagram(&other.r) && self.s.same_action(&other.s)
    }
}

impl PartialEq for PKNet {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.class.same_class(&other.class) && self.phi == other.phi
    }
}

impl std::fmt::Debug for PKNet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let points: Vec<Vec<&str>> = self
            .phi
            .iter()
            .map(|column| {
                column
                    .iter()
                    .map(|&p| self.s.point_label(p as usize))
                    .collect()
            })
            .collect();
        write!(f, "PKNet({} ↦ {:?})", self.class.name(), points)
    }
}

/// All networks with the given form, context and class: backtracking over
/// the shape objects with naturality pruning after every assignment. The
/// candidate counter guards against blow-up and reports the configured
/// bound when exceeded. Results are in lexicographic assignment order.
pub fn enumerate_nets(
    r: &Arc<SetValuedDiagram>,
    s: &Arc<GSet>,
    class: &Arc<ChordClass>,
    bound: u64,
) -> Result<Vec<PKNet>> {
    if !r.delta().same_category(class.delta()) {
        return Err(Error::MalformedNetwork(
            "form and class live over different shapes".into(),
        ));
    }
    if !s.group().same_group(class.group()) {
        return Err(Error::MalformedNetwork(
            "context action and class use different groups".into(),
        ));
    }
    let delta = r.delta();
    let n_obj = delta.object_count();
    // Morphisms checkable once objects 0..=o are assigned.
    let ready: Vec<Vec<MorId>> = (0..n_obj)
        .map(|o| {
            (0..delta.morphism_count())
                .filter(|&m| delta.src(m).max(delta.tgt(m)) == o)
                .collect()
        })
        .collect();

    struct Search<'a> {
        r: &'a SetValuedDiagram,
        s: &'a GSet,
        class: &'a ChordClass,
        ready: &'a [Vec<MorId>],
        bound: u64,
        nodes: u64,
        phi: Vec<Vec<u32>>,
        out: Vec<Vec<Vec<u32>>>,
    }

    impl Search<'_> {
        fn consistent(&self, o: ObjId) -> bool {
            let delta = self.r.delta();
            self.ready[o].iter().all(|&m| {
                let (x, y) = (delta.src(m), delta.tgt(m));
                let g = self.class.image(m);
                (0..self.r.set(x).len()).all(|e| {
                    self.phi[y][self.r.map(m, e)] as usize
                        == self.s.act(g, self.phi[x][e] as usize)
                })
            })
        }

        fn descend(&mut self, o: ObjId) -> Result<()> {
            if o == self.phi.len() {
                self.out.push(self.phi.clone());
                return Ok(());
            }
            let arity = self.r.set(o).len();
            let points = self.s.len() as u32;
            let mut column = vec![0u32; arity];
            loop {
                self.nodes += 1;
                if self.nodes > self.bound {
                    return Err(Error::SearchBound {
                        bound: self.bound,
                        context: "network enumeration".into(),
                    });
                }
                self.phi[o] = column.clone();
                if self.consistent(o) {
                    self.descend(o + 1)?;
                }
                // Advance the assignment lexicographically (last slot fastest).
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        return Ok(());
                    }
                    pos -= 1;
                    column[pos] += 1;
                    if column[pos] < points {
                        break;
                    }
                    column[pos] = 0;
                }
            }
        }
    }

    let mut search = Search {
        r,
        s,
        class,
        ready: &ready,
        bound,
        nodes: 0,
        phi: vec![Vec::new(); n_obj],
        out: Vec::new(),
    };
    search.descend(0)?;
    search
        .out
        .into_iter()
        .map(|phi| PKNet::try_new(Arc::clone(r), Arc::clone(s), Arc::clone(class), phi))
        .collect()
}

/// Every class morphism carrying `a` to `b`: the hom-set from `a`'s class to
/// `b`'s class filtered by the action. May be empty.
pub fn solve_transport(a: &PKNet, b: &PKNet) -> Result<Vec<ClassMorphism>> {
    if !a.same_context(b) {
        return Err(Error::MalformedNetwork(
            "networks live over different forms or contexts".into(),
        ));
    }
    let candidates = homset(a.class(), b.class())?;
    let mut out = Vec::new();
    for morphism in candidates {
        if a.act(&morphism)? == *b {
            out.push(morphism);
        }
    }
    Ok(out)
}

/// The action of class morphisms on networks is functorial: identities act
/// trivially and composite morphisms act as composed actions, over every
/// network of every class in the family. `composer` is injectable so the
/// check itself can be validated against a corrupted composition.
pub fn check_action_functoriality_with(
    classes: &[Arc<ChordClass>],
    r: &Arc<SetValuedDiagram>,
    s: &Arc<GSet>,
    bound: u64,
    composer: impl Fn(&ClassMorphism, &ClassMorphism) -> Result<ClassMorphism>,
) -> Result<bool> {
    let nets: Vec<Vec<PKNet>> = classes
        .iter()
        .map(|class| enumerate_nets(r, s, class, bound))
        .collect::<Result<_>>()?;
    for (i, class) in classes.iter().enumerate() {
        let id = ClassMorphism::identity(class);
        for net in &nets[i] {
            if net.act(&id)? != *net {
                return Ok(false);
            }
        }
    }
    for (i, src) in classes.iter().enumerate() {
        for mid in classes.iter() {
            let first_leg = homset(src, mid)?;
            for tgt in classes.iter() {
                let second_leg = homset(mid, tgt)?;
                for eta1 in &first_leg {
                    for eta2 in &second_leg {
                        let composite = composer(eta2, eta1)?;
                        for net in &nets[i] {
                            if net.act(&composite)? != net.act(eta1)?.act(eta2)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn check_action_functoriality(
    classes: &[Arc<ChordClass>],
    r: &Arc<SetValuedDiagram>,
    s: &Arc<GSet>,
    bound: u64,
) -> Result<bool> {
    check_action_functoriality_with(classes, r, s, bound, |eta2, eta1| eta2.compose(eta1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PosetCategory;
    use crate::group::{ti_group, FiniteGroup, TiElement};
    use crate::music::pitch_classes;

    fn ti() -> Arc<FiniteGroup> {
        Arc::new(ti_group())
    }

    fn t(n: i32) -> usize {
        TiElement::transposition(n).index()
    }

    fn i(n: i32) -> usize {
        TiElement::inversion(n).index()
    }

    fn major_class() -> Arc<ChordClass> {
        let span = PosetCategory::span();
        Arc::new(
            ChordClass::from_labels("U", Arc::clone(span.category()), ti(), &[
                ("f", "T4"),
                ("g", "T7"),
            ])
            .unwrap(),
        )
    }

    fn spread_class() -> Arc<ChordClass> {
        let span = PosetCategory::span();
        Arc::new(
            ChordClass::from_labels("V", Arc::clone(span.category()), ti(), &[
                ("f", "T2"),
                ("g", "T5"),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn diagram_functoriality_enforced() {
        let triangle = PosetCategory::triangle();
        let delta = Arc::clone(triangle.category());
        let ok = SetValuedDiagram::singleton(Arc::clone(&delta));
        assert!(ok.is_singleton());

        // Two-point sets with a non-functorial composite map.
        let sets = vec![
            vec!["a".into(), "b".into()],
            vec!["c".into(), "d".into()],
            vec!["e".into(), "h".into()],
        ];
        let mut maps = vec![Vec::new(); 6];
        for o in 0..3 {
            maps[triangle.identity(o)] = vec![0, 1];
        }
        maps[triangle.morphism_index("f").unwrap()] = vec![1, 0];
        maps[triangle.morphism_index("g").unwrap()] = vec![0, 1];
        maps[triangle.morphism_index("g∘f").unwrap()] = vec![0, 1]; // should be (1,0)
        let err = SetValuedDiagram::try_new(delta.clone(), sets.clone(), maps.clone()).unwrap_err();
        assert!(matches!(err, Error::NotAFunctor(_)));
        maps[triangle.morphism_index("g∘f").unwrap()] = vec![1, 0];
        assert!(SetValuedDiagram::try_new(delta, sets, maps).is_ok());
    }

    #[test]
    fn triad_network_validates_and_rejects() {
        let triangle = PosetCategory::triangle();
        let class = Arc::new(
            ChordClass::from_labels("C", Arc::clone(triangle.category()), ti(), &[
                ("f", "T4"),
                ("g", "T3"),
            ])
            .unwrap(),
        );
        let s = pitch_classes();
        let net = PKNet::singleton(Arc::clone(&s), Arc::clone(&class), &[0, 4, 7]).unwrap();
        assert_eq!(net.points(), vec![0, 4, 7]);

        let err = PKNet::singleton(Arc::clone(&s), Arc::clone(&class), &[0, 4, 9]).unwrap_err();
        assert!(matches!(err, Error::UnnaturalNetwork(_)));

        // Structural failures are reported distinctly.
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(class.delta())));
        let err = PKNet::try_new(r, s, class, vec![vec![0], vec![4]]).unwrap_err();
        assert!(matches!(err, Error::MalformedNetwork(_)));
    }

    #[test]
    fn enumeration_counts() {
        let s = pitch_classes();
        let u = major_class();
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(u.delta())));
        let nets = enumerate_nets(&r, &s, &u, 10_000).unwrap();
        assert_eq!(nets.len(), 12);
        assert_eq!(nets[0].points(), vec![0, 4, 7]);
        // One network per root, in root order.
        for (root, net) in nets.iter().enumerate() {
            assert_eq!(net.points(), vec![root, (root + 4) % 12, (root + 7) % 12]);
        }

        let triangle = PosetCategory::triangle();
        let berg_shape = Arc::new(
            ChordClass::from_labels("U'", Arc::clone(triangle.category()), ti(), &[
                ("f", "I7"),
                ("g", "I3"),
            ])
            .unwrap(),
        );
        let r3 = Arc::new(SetValuedDiagram::singleton(Arc::clone(triangle.category())));
        assert_eq!(enumerate_nets(&r3, &s, &berg_shape, 10_000).unwrap().len(), 12);
    }

    #[test]
    fn unconstrained_shape_and_search_bound() {
        use crate::category::MorphismData;
        let discrete = Arc::new(
            crate::category::FinCategory::try_new(
                "discrete2",
                vec!["A".into(), "B".into()],
                vec![
                    MorphismData { label: "id_A".into(), src: 0, tgt: 0 },
                    MorphismData { label: "id_B".into(), src: 1, tgt: 1 },
                ],
                vec![0, 1],
                &[(0, 0, 0), (1, 1, 1)],
            )
            .unwrap(),
        );
        let class = Arc::new(
            ChordClass::try_new("D", Arc::clone(&discrete), ti(), vec![t(0), t(0)]).unwrap(),
        );
        let s = pitch_classes();
        let r = Arc::new(SetValuedDiagram::singleton(discrete));
        let nets = enumerate_nets(&r, &s, &class, 10_000).unwrap();
        assert_eq!(nets.len(), 144);

        let err = enumerate_nets(&r, &s, &class, 10).unwrap_err();
        assert!(matches!(err, Error::SearchBound { bound: 10, .. }));
    }

    #[test]
    fn acting_moves_chords() {
        let s = pitch_classes();
        let u = major_class();
        let v = spread_class();
        let f_major = PKNet::singleton(Arc::clone(&s), Arc::clone(&u), &[5, 9, 0]).unwrap();

        let flip = homset(&u, &u)
            .unwrap()
            .into_iter()
            .find(|m| m.anchor() == i(8))
            .unwrap();
        assert_eq!(flip.components(), &[i(8), i(4), i(10)]);
        let e_flat = f_major.act(&flip).unwrap();
        assert_eq!(e_flat.points(), vec![3, 7, 10]);

        let shift = homset(&u, &v)
            .unwrap()
            .into_iter()
            .find(|m| m.anchor() == t(3))
            .unwrap();
        let moved = f_major.act(&shift).unwrap();
        assert_eq!(moved.points(), vec![8, 10, 1]);
        assert!(moved.class().same_class(&v));

        let mirror = homset(&u, &v)
            .unwrap()
            .into_iter()
            .find(|m| m.anchor() == i(1))
            .unwrap();
        assert_eq!(mirror.components(), &[i(1), i(7), i(1)]);
        assert_eq!(f_major.act(&mirror).unwrap().points(), vec![8, 10, 1]);

        // Identity acts trivially; wrong source class is refused.
        let id = ClassMorphism::identity(&u);
        assert_eq!(f_major.act(&id).unwrap(), f_major);
        let from_v = ClassMorphism::identity(&v);
        assert!(matches!(f_major.act(&from_v), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn transport_solving() {
        let s = pitch_classes();
        let u = major_class();
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(u.delta())));
        let f_major =
            PKNet::singleton_in(Arc::clone(&r), Arc::clone(&s), Arc::clone(&u), &[5, 9, 0])
                .unwrap();
        let e_flat =
            PKNet::singleton_in(Arc::clone(&r), Arc::clone(&s), Arc::clone(&u), &[3, 7, 10])
                .unwrap();
        let transports = solve_transport(&f_major, &e_flat).unwrap();
        let anchors: Vec<usize> = transports.iter().map(ClassMorphism::anchor).collect();
        assert_eq!(anchors, vec![t(10), i(8)]);

        // A network reaches itself by the identity and one inversion.
        let c_major =
            PKNet::singleton_in(Arc::clone(&r), Arc::clone(&s), Arc::clone(&u), &[0, 4, 7])
                .unwrap();
        let stabilizers = solve_transport(&c_major, &c_major).unwrap();
        let anchors: Vec<usize> = stabilizers.iter().map(ClassMorphism::anchor).collect();
        assert_eq!(anchors, vec![t(0), i(0)]);
        assert!(stabilizers[0].is_identity());
    }

    #[test]
    fn transport_closure() {
        let s = pitch_classes();
        let u = major_class();
        let v = spread_class();
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(u.delta())));
        let nets = enumerate_nets(&r, &s, &u, 10_000).unwrap();
        for eta in homset(&u, &v).unwrap() {
            for net in &nets {
                let moved = net.act(&eta).unwrap();
                let found = solve_transport(net, &moved).unwrap();
                assert!(found.contains(&eta));
            }
        }
    }

    #[test]
    fn action_functoriality_and_mutation() {
        let s = pitch_classes();
        let classes = vec![major_class(), spread_class()];
        let r = Arc::new(SetValuedDiagram::singleton(Arc::clone(classes[0].delta())));
        assert!(check_action_functoriality(&classes, &r, &s, 10_000).unwrap());

        // A composer that lands on the wrong hom-set element must be caught.
        let ti = classes[0].group().clone();
        let skew = move |eta2: &ClassMorphism, eta1: &ClassMorphism| -> Result<ClassMorphism> {
            let honest = eta2.compose(eta1)?;
            if honest.is_identity() {
                return Ok(honest);
            }
            let twisted = ti.mul(honest.anchor(), TiElement::transposition(1).index());
            let hom = homset(honest.source(), honest.target())?;
            Ok(hom.into_iter().find(|m| m.anchor() == twisted).unwrap())
        };
        assert!(!check_action_functoriality_with(&classes, &r, &s, 10_000, skew).unwrap());
    }
}
