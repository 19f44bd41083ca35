//! Functors between finite categories, functor-class predicates, the bo-ff
//! factorisation, pullbacks and binary products.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{pair_name, triple_name, FinCat, Mor, MorData, Obj};
use crate::error::{Error, Result};

/// A functor given by explicit object and morphism tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    on_objects: BTreeMap<Obj, Obj>,
    on_morphisms: BTreeMap<Mor, Mor>,
}

impl Functor {
    /// Check the four preservation laws exhaustively and build the functor.
    pub fn validate(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        on_objects: BTreeMap<Obj, Obj>,
        on_morphisms: BTreeMap<Mor, Mor>,
    ) -> Result<Functor> {
        for a in dom.objects() {
            let fa = on_objects.get(a).ok_or_else(|| Error::NotAFunctor {
                law: "totality on objects".into(),
                witness: a.to_string(),
            })?;
            if !cod.has_object(fa) {
                return Err(Error::NotAFunctor {
                    law: "object image exists".into(),
                    witness: format!("{a} -> {fa}"),
                });
            }
        }
        for (m, d) in dom.morphisms() {
            let fm = on_morphisms.get(m).ok_or_else(|| Error::NotAFunctor {
                law: "totality on morphisms".into(),
                witness: m.to_string(),
            })?;
            if !cod.has_morphism(fm) {
                return Err(Error::NotAFunctor {
                    law: "morphism image exists".into(),
                    witness: format!("{m} -> {fm}"),
                });
            }
            if cod.src(fm) != &on_objects[&d.src] {
                return Err(Error::NotAFunctor {
                    law: "source preservation".into(),
                    witness: format!("{m}: src {} maps to {}, image has src {}", d.src, on_objects[&d.src], cod.src(fm)),
                });
            }
            if cod.tgt(fm) != &on_objects[&d.tgt] {
                return Err(Error::NotAFunctor {
                    law: "target preservation".into(),
                    witness: format!("{m}: tgt {} maps to {}, image has tgt {}", d.tgt, on_objects[&d.tgt], cod.tgt(fm)),
                });
            }
        }
        for a in dom.objects() {
            let id = dom.identity(a);
            if &on_morphisms[id] != cod.identity(&on_objects[a]) {
                return Err(Error::NotAFunctor {
                    law: "identity preservation".into(),
                    witness: format!("id of {a}"),
                });
            }
        }
        for (f, df) in dom.morphisms() {
            for (g, dg) in dom.morphisms() {
                if df.tgt != dg.src {
                    continue;
                }
                let gf = dom.compose(g, f).unwrap();
                let img = cod.compose(&on_morphisms[g], &on_morphisms[f]).unwrap();
                if img != &on_morphisms[gf] {
                    return Err(Error::NotAFunctor {
                        law: "composition preservation".into(),
                        witness: format!("({g} . {f})"),
                    });
                }
            }
        }
        Ok(Functor { dom, cod, on_objects, on_morphisms })
    }

    pub fn identity(cat: Arc<FinCat>) -> Functor {
        let on_objects = cat.objects().iter().map(|a| (a.clone(), a.clone())).collect();
        let on_morphisms = cat.morphism_names().map(|m| (m.clone(), m.clone())).collect();
        Functor { dom: cat.clone(), cod: cat, on_objects, on_morphisms }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn ob(&self, a: &Obj) -> &Obj {
        &self.on_objects[a]
    }

    pub fn mor(&self, m: &Mor) -> &Mor {
        &self.on_morphisms[m]
    }

    pub fn on_objects(&self) -> &BTreeMap<Obj, Obj> {
        &self.on_objects
    }

    pub fn on_morphisms(&self) -> &BTreeMap<Mor, Mor> {
        &self.on_morphisms
    }

    /// `g` after `f`.
    pub fn compose(g: &Functor, f: &Functor) -> Result<Functor> {
        if f.cod.as_ref() != g.dom.as_ref() {
            return Err(Error::precondition("functor composition: middle categories differ"));
        }
        let on_objects = f.on_objects.iter().map(|(a, fa)| (a.clone(), g.on_objects[fa].clone())).collect();
        let on_morphisms = f.on_morphisms.iter().map(|(m, fm)| (m.clone(), g.on_morphisms[fm].clone())).collect();
        Ok(Functor { dom: f.dom.clone(), cod: g.cod.clone(), on_objects, on_morphisms })
    }

    /// Whether the functor is an isomorphism of categories: bijective on
    /// both objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let obs: std::collections::BTreeSet<&Obj> = self.on_objects.values().collect();
        let mors: std::collections::BTreeSet<&Mor> = self.on_morphisms.values().collect();
        obs.len() == self.cod.object_count() && mors.len() == self.cod.morphism_count()
    }

    /// The inverse of an isomorphism of categories.
    pub fn inverse(&self) -> Result<Functor> {
        if !self.is_isomorphism() {
            return Err(Error::shape("functor is not an isomorphism of categories"));
        }
        let on_objects = self.on_objects.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let on_morphisms = self.on_morphisms.iter().map(|(m, n)| (n.clone(), m.clone())).collect();
        Functor::validate(self.cod.clone(), self.dom.clone(), on_objects, on_morphisms)
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.dom.objects() == self.cod.objects() && self.on_objects.iter().all(|(a, b)| a == b)
    }

    /// Compute the three class predicates by exhaustive search, with a
    /// witness for every failing flag.
    pub fn classify(&self) -> FunctorClass {
        let mut class = FunctorClass {
            is_discrete_opfibration: true,
            is_bijective_on_objects: true,
            is_fully_faithful: true,
            dopf_witness: None,
            boo_witness: None,
            ff_witness: None,
        };
        // Bijective on objects.
        let mut seen: BTreeMap<&Obj, &Obj> = BTreeMap::new();
        for (a, fa) in &self.on_objects {
            if let Some(other) = seen.insert(fa, a) {
                class.is_bijective_on_objects = false;
                class.boo_witness = Some(format!("objects {other} and {a} both map to {fa}"));
            }
        }
        if class.is_bijective_on_objects && seen.len() != self.cod.object_count() {
            let missing = self
                .cod
                .objects()
                .iter()
                .find(|b| !seen.contains_key(*b))
                .expect("some codomain object is not hit");
            class.is_bijective_on_objects = false;
            class.boo_witness = Some(format!("object {missing} has no preimage"));
        }
        // Discrete opfibration: unique lifts of morphisms out of image objects.
        'dopf: for a in self.dom.objects() {
            let fa = &self.on_objects[a];
            for u in self.cod.morphisms_from(fa) {
                let lifts: Vec<&Mor> = self
                    .dom
                    .morphisms_from(a)
                    .into_iter()
                    .filter(|w| &self.on_morphisms[*w] == u)
                    .collect();
                if lifts.len() != 1 {
                    class.is_discrete_opfibration = false;
                    class.dopf_witness = Some((a.clone(), u.clone()));
                    break 'dopf;
                }
            }
        }
        // Fully faithful: unique preimages between image objects.
        'ff: for a in self.dom.objects() {
            for a2 in self.dom.objects() {
                for u in self.cod.hom(&self.on_objects[a], &self.on_objects[a2]) {
                    let pre: Vec<&Mor> = self
                        .dom
                        .hom(a, a2)
                        .into_iter()
                        .filter(|w| &self.on_morphisms[*w] == u)
                        .collect();
                    if pre.len() != 1 {
                        class.is_fully_faithful = false;
                        class.ff_witness = Some((a.clone(), a2.clone(), u.clone()));
                        break 'ff;
                    }
                }
            }
        }
        class
    }
}

/// Flags for the three functor classes, with witnesses for failures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctorClass {
    pub is_discrete_opfibration: bool,
    pub is_bijective_on_objects: bool,
    pub is_fully_faithful: bool,
    /// A pair `(a, u)` with zero or at least two lifts.
    pub dopf_witness: Option<(Obj, Mor)>,
    pub boo_witness: Option<String>,
    /// A pair of objects and a morphism `(a, a', u)` with zero or at least
    /// two preimages.
    pub ff_witness: Option<(Obj, Obj, Mor)>,
}

/// Factorise a functor as an identity-on-objects functor followed by a fully
/// faithful one, through the image category.
///
/// The image has the objects of the domain; its morphisms are triples
/// `(a, u, a')` with `u : Fa -> Fa'` in the codomain.
pub fn boff_factorize(f: &Functor) -> (Functor, Arc<FinCat>, Functor) {
    let dom = f.dom();
    let cod = f.cod();
    let objects: Vec<Obj> = dom.objects().to_vec();
    let mut morphisms = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut m_on_morphisms = BTreeMap::new();
    let mor_of = |a: &Obj, u: &Mor, a2: &Obj| Mor::new(triple_name(a.as_str(), u.as_str(), a2.as_str()));
    for a in &objects {
        for a2 in &objects {
            for u in cod.hom(f.ob(a), f.ob(a2)) {
                let name = mor_of(a, u, a2);
                morphisms.insert(name.clone(), MorData { src: a.clone(), tgt: a2.clone() });
                m_on_morphisms.insert(name, u.clone());
            }
        }
    }
    for a in &objects {
        identities.insert(a.clone(), mor_of(a, cod.identity(f.ob(a)), a));
    }
    let mut composition = BTreeMap::new();
    for (mf, df) in &morphisms {
        for (mg, dg) in &morphisms {
            if df.tgt != dg.src {
                continue;
            }
            let u = &m_on_morphisms[mf];
            let v = &m_on_morphisms[mg];
            let vu = cod.compose(v, u).expect("image morphisms compose in the codomain");
            composition.insert((mg.clone(), mf.clone()), mor_of(&df.src, vu, &dg.tgt));
        }
    }
    let image = FinCat::from_parts(objects, morphisms, identities, composition)
        .expect("bo-ff image is a category");
    let e_on_objects: BTreeMap<Obj, Obj> = dom.objects().iter().map(|a| (a.clone(), a.clone())).collect();
    let e_on_morphisms: BTreeMap<Mor, Mor> = dom
        .morphisms()
        .map(|(w, d)| (w.clone(), mor_of(&d.src, f.mor(w), &d.tgt)))
        .collect();
    let e = Functor::validate(dom.clone(), image.clone(), e_on_objects, e_on_morphisms)
        .expect("bo-ff left factor is a functor");
    let m_on_objects: BTreeMap<Obj, Obj> = dom.objects().iter().map(|a| (a.clone(), f.ob(a).clone())).collect();
    let m = Functor::validate(image.clone(), cod.clone(), m_on_objects, m_on_morphisms)
        .expect("bo-ff right factor is a functor");
    (e, image, m)
}

/// Fill the unique diagonal of a commuting square `m . f = g . e` where `e`
/// is bijective-on-objects and `m` is fully faithful.
pub fn boff_fill(e: &Functor, m: &Functor, f: &Functor, g: &Functor) -> Result<Functor> {
    if e.dom().as_ref() != f.dom().as_ref()
        || e.cod().as_ref() != g.dom().as_ref()
        || m.dom().as_ref() != f.cod().as_ref()
        || m.cod().as_ref() != g.cod().as_ref()
    {
        return Err(Error::precondition("bo-ff fill: square boundary mismatch"));
    }
    if Functor::compose(m, f)? != Functor::compose(g, e)? {
        return Err(Error::precondition("bo-ff fill: square does not commute"));
    }
    let e_class = e.classify();
    if !e_class.is_bijective_on_objects {
        return Err(Error::precondition("bo-ff fill: left leg is not bijective-on-objects"));
    }
    let m_class = m.classify();
    if !m_class.is_fully_faithful {
        return Err(Error::precondition("bo-ff fill: right leg is not fully faithful"));
    }
    // Invert e on objects.
    let e_inv: BTreeMap<&Obj, &Obj> = e.on_objects().iter().map(|(a, b)| (b, a)).collect();
    let c = e.cod().clone();
    let b = m.dom().clone();
    let on_objects: BTreeMap<Obj, Obj> =
        c.objects().iter().map(|x| (x.clone(), f.ob(e_inv[x]).clone())).collect();
    let mut on_morphisms = BTreeMap::new();
    for (w, d) in c.morphisms() {
        let src = &on_objects[&d.src];
        let tgt = &on_objects[&d.tgt];
        let gw = g.mor(w);
        let pre: Vec<&Mor> = b.hom(src, tgt).into_iter().filter(|x| m.mor(x) == gw).collect();
        match pre.as_slice() {
            [unique] => {
                on_morphisms.insert(w.clone(), (*unique).clone());
            }
            _ => {
                return Err(Error::precondition(format!(
                    "bo-ff fill: no unique preimage for {w} under the fully faithful leg"
                )))
            }
        }
    }
    Functor::validate(c, b, on_objects, on_morphisms)
}

/// Strict pullback of a cospan of functors, with objects the matching pairs.
pub fn pullback(f: &Functor, g: &Functor) -> Result<(Arc<FinCat>, Functor, Functor)> {
    if f.cod().as_ref() != g.cod().as_ref() {
        return Err(Error::precondition("pullback: codomains differ"));
    }
    let a = f.dom();
    let b = g.dom();
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.ob(x) == g.ob(y) {
                objects.push(Obj::new(pair_name(x.as_str(), y.as_str())));
            }
        }
    }
    let mor_of = |u: &Mor, v: &Mor| Mor::new(pair_name(u.as_str(), v.as_str()));
    let mut morphisms = BTreeMap::new();
    let mut p0_mor = BTreeMap::new();
    let mut p1_mor = BTreeMap::new();
    for (u, du) in a.morphisms() {
        for (v, dv) in b.morphisms() {
            if f.mor(u) != g.mor(v) {
                continue;
            }
            let name = mor_of(u, v);
            morphisms.insert(
                name.clone(),
                MorData {
                    src: Obj::new(pair_name(du.src.as_str(), dv.src.as_str())),
                    tgt: Obj::new(pair_name(du.tgt.as_str(), dv.tgt.as_str())),
                },
            );
            p0_mor.insert(name.clone(), u.clone());
            p1_mor.insert(name, v.clone());
        }
    }
    let mut identities = BTreeMap::new();
    let mut p0_ob = BTreeMap::new();
    let mut p1_ob = BTreeMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.ob(x) == g.ob(y) {
                let o = Obj::new(pair_name(x.as_str(), y.as_str()));
                identities.insert(o.clone(), mor_of(a.identity(x), b.identity(y)));
                p0_ob.insert(o.clone(), x.clone());
                p1_ob.insert(o, y.clone());
            }
        }
    }
    let mut composition = BTreeMap::new();
    for (mf, df) in &morphisms {
        for (mg, dg) in &morphisms {
            if df.tgt != dg.src {
                continue;
            }
            let u = a.compose(&p0_mor[mg], &p0_mor[mf]).unwrap();
            let v = b.compose(&p1_mor[mg], &p1_mor[mf]).unwrap();
            composition.insert((mg.clone(), mf.clone()), mor_of(u, v));
        }
    }
    let p = FinCat::from_parts(objects, morphisms, identities, composition)?;
    let p0 = Functor::validate(p.clone(), a.clone(), p0_ob, p0_mor)?;
    let p1 = Functor::validate(p.clone(), b.clone(), p1_ob, p1_mor)?;
    Ok((p, p0, p1))
}

/// Binary product of categories, with projections.
pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> (Arc<FinCat>, Functor, Functor) {
    // The product is the pullback over the terminal category.
    let one = crate::fixtures::one();
    let bang = |c: &Arc<FinCat>| {
        let star = Obj::new("*");
        let on_objects = c.objects().iter().map(|x| (x.clone(), star.clone())).collect();
        let on_morphisms = c.morphism_names().map(|m| (m.clone(), one.identity(&star).clone())).collect();
        Functor::validate(c.clone(), one.clone(), on_objects, on_morphisms).expect("terminal functor")
    };
    pullback(&bang(a), &bang(b)).expect("product of categories")
}

/// The pairing `<f, g>` into a product built by [`product`].
pub fn pairing(f: &Functor, g: &Functor, prod: &Arc<FinCat>) -> Result<Functor> {
    if f.dom().as_ref() != g.dom().as_ref() {
        return Err(Error::precondition("pairing: domains differ"));
    }
    let on_objects: BTreeMap<Obj, Obj> = f
        .dom()
        .objects()
        .iter()
        .map(|x| (x.clone(), Obj::new(pair_name(f.ob(x).as_str(), g.ob(x).as_str()))))
        .collect();
    let on_morphisms: BTreeMap<Mor, Mor> = f
        .dom()
        .morphism_names()
        .map(|m| (m.clone(), Mor::new(pair_name(f.mor(m).as_str(), g.mor(m).as_str()))))
        .collect();
    Functor::validate(f.dom().clone(), prod.clone(), on_objects, on_morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn collapse_two_to_one() -> Functor {
        let two = fixtures::two();
        let one = fixtures::one();
        let star = Obj::new("*");
        let on_objects = two.objects().iter().map(|a| (a.clone(), star.clone())).collect();
        let on_morphisms = two.morphism_names().map(|m| (m.clone(), one.identity(&star).clone())).collect();
        Functor::validate(two, one, on_objects, on_morphisms).unwrap()
    }

    fn include_one_into_two() -> Functor {
        // The inclusion of the object 1 (as the terminal object of TWO).
        let one = fixtures::one();
        let two = fixtures::two();
        let on_objects = [(Obj::new("*"), Obj::new("1"))].into_iter().collect();
        let on_morphisms = [(one.identity(&Obj::new("*")).clone(), Mor::new("id1"))].into_iter().collect();
        Functor::validate(one, two, on_objects, on_morphisms).unwrap()
    }

    #[test]
    fn identity_functor_validates_and_is_all_three_classes() {
        let two = fixtures::two();
        let id = Functor::identity(two);
        let class = id.classify();
        assert!(class.is_discrete_opfibration);
        assert!(class.is_bijective_on_objects);
        assert!(class.is_fully_faithful);
    }

    #[test]
    fn collapse_functor_validates() {
        // One composable non-identity pair to check: (u . id0).
        let f = collapse_two_to_one();
        assert_eq!(f.ob(&Obj::new("0")), &Obj::new("*"));
    }

    #[test]
    fn non_functor_is_rejected() {
        let two = fixtures::two();
        let mut on_objects = BTreeMap::new();
        for a in two.objects() {
            on_objects.insert(a.clone(), a.clone());
        }
        let mut on_morphisms: BTreeMap<Mor, Mor> =
            two.morphism_names().map(|m| (m.clone(), m.clone())).collect();
        on_morphisms.insert(Mor::new("u"), Mor::new("id0"));
        match Functor::validate(two.clone(), two, on_objects, on_morphisms) {
            Err(Error::NotAFunctor { law, .. }) => assert_eq!(law, "target preservation"),
            other => panic!("expected NotAFunctor, got {other:?}"),
        }
    }

    #[test]
    fn collapse_classifies_as_nothing() {
        let f = collapse_two_to_one();
        let class = f.classify();
        // At object 0 both id0 and u lift the identity of *.
        assert!(!class.is_discrete_opfibration);
        assert_eq!(class.dopf_witness.as_ref().unwrap().0, Obj::new("0"));
        assert!(!class.is_bijective_on_objects);
        assert!(!class.is_fully_faithful);
    }

    #[test]
    fn inclusion_classifies_as_dopf_and_ff() {
        let f = include_one_into_two();
        let class = f.classify();
        assert!(class.is_discrete_opfibration);
        assert!(class.is_fully_faithful);
        assert!(!class.is_bijective_on_objects);
    }

    #[test]
    fn boff_of_identity_is_trivial() {
        let two = fixtures::two();
        let id = Functor::identity(two.clone());
        let (e, image, m) = boff_factorize(&id);
        assert_eq!(image.object_count(), 2);
        assert_eq!(image.morphism_count(), 3);
        assert!(e.is_identity_on_objects());
        assert!(m.classify().is_fully_faithful);
        assert_eq!(Functor::compose(&m, &e).unwrap(), id);
    }

    #[test]
    fn boff_of_collapse_is_indiscrete() {
        let f = collapse_two_to_one();
        let (e, image, m) = boff_factorize(&f);
        // Oracle: the image has one morphism (a, id*, a') per ordered pair of
        // objects, so exactly 4 morphisms on 2 objects.
        assert_eq!(image.object_count(), 2);
        assert_eq!(image.morphism_count(), 4);
        assert!(e.is_identity_on_objects());
        assert!(m.classify().is_fully_faithful);
        assert_eq!(Functor::compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn boff_of_inclusion() {
        let f = include_one_into_two();
        let (e, image, m) = boff_factorize(&f);
        assert_eq!(image.object_count(), 1);
        assert_eq!(image.morphism_count(), 1);
        assert!(m.classify().is_fully_faithful);
        assert_eq!(Functor::compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn boff_fill_identity_cases() {
        let two = fixtures::two();
        let id = Functor::identity(two.clone());
        let f = collapse_two_to_one();
        // e identity: h = f.
        let h = boff_fill(&id, &Functor::identity(f.cod().clone()), &f, &f).unwrap();
        assert_eq!(h, f);
        // m identity: h = g.
        let h = boff_fill(&id, &Functor::identity(two.clone()), &id, &id).unwrap();
        assert_eq!(h, id);
    }

    #[test]
    fn boff_fill_rejects_non_commuting_square() {
        let two = fixtures::two();
        let id = Functor::identity(two.clone());
        let f = collapse_two_to_one();
        let bad = boff_fill(&id, &Functor::identity(fixtures::one()), &f, &Functor::identity(two));
        assert!(matches!(bad, Err(Error::PreconditionViolated { .. })));
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let two = fixtures::two();
        let id = Functor::identity(two.clone());
        let (p, p0, p1) = pullback(&id, &id).unwrap();
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 3);
        assert_eq!(p0.on_morphisms().len(), p1.on_morphisms().len());
    }

    #[test]
    fn pullback_of_collapses_is_the_square() {
        let f = collapse_two_to_one();
        let (p, _, _) = pullback(&f, &f).unwrap();
        // Oracle: TWO x TWO has 4 objects and 9 morphisms.
        assert_eq!(p.object_count(), 4);
        assert_eq!(p.morphism_count(), 9);
    }

    #[test]
    fn pullback_along_identity_is_isomorphic_to_the_other_leg() {
        let f = include_one_into_two();
        let id = Functor::identity(f.cod().clone());
        let (p, _, _) = pullback(&f, &id).unwrap();
        assert_eq!(p.object_count(), f.dom().object_count());
        assert_eq!(p.morphism_count(), f.dom().morphism_count());
    }

    #[test]
    fn product_with_one_keeps_counts() {
        let two = fixtures::two();
        let (p, _, _) = product(&two, &fixtures::one());
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 3);
    }
}
