//! Cofunctors: an object assignment backwards with a coherent lifting of
//! morphisms forwards, plus their composition and span representation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{pair_name, FinCat, Mor, MorData, Obj};
use crate::error::{Error, Result};
use crate::functor::Functor;

/// A cofunctor `B -/-> A`: objects of `A` are assigned objects of `B`, and
/// morphisms of `B` out of an assigned object are lifted to morphisms of `A`.
///
/// Lifts are stored as an explicit table keyed by `(a, u)`, which makes
/// equality of cofunctors decidable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cofunctor {
    a: Arc<FinCat>,
    b: Arc<FinCat>,
    obj_assign: BTreeMap<Obj, Obj>,
    lifts: BTreeMap<(Obj, Mor), Mor>,
}

impl Cofunctor {
    /// Check totality and the three cofunctor axioms exhaustively.
    pub fn validate(
        a: Arc<FinCat>,
        b: Arc<FinCat>,
        obj_assign: BTreeMap<Obj, Obj>,
        lifts: BTreeMap<(Obj, Mor), Mor>,
    ) -> Result<Cofunctor> {
        for x in a.objects() {
            let img = obj_assign.get(x).ok_or_else(|| Error::Document {
                detail: format!("cofunctor object assignment misses {x}"),
            })?;
            if !b.has_object(img) {
                return Err(Error::Document {
                    detail: format!("cofunctor assigns unknown object {img} to {x}"),
                });
            }
        }
        // Totality of the lift table, and no stray entries.
        for x in a.objects() {
            for u in b.morphisms_from(&obj_assign[x]) {
                if !lifts.contains_key(&(x.clone(), u.clone())) {
                    return Err(Error::Document {
                        detail: format!("cofunctor lift table misses ({x}, {u})"),
                    });
                }
            }
        }
        for ((x, u), w) in &lifts {
            if !a.has_object(x) || !b.has_morphism(u) || b.src(u) != &obj_assign[x] {
                return Err(Error::Document {
                    detail: format!("stray lift entry ({x}, {u})"),
                });
            }
            if !a.has_morphism(w) || a.src(w) != x {
                return Err(Error::Document {
                    detail: format!("lift of ({x}, {u}) is {w}, which does not start at {x}"),
                });
            }
        }
        let cof = Cofunctor { a, b, obj_assign, lifts };
        cof.check_axioms()?;
        Ok(cof)
    }

    fn check_axioms(&self) -> Result<()> {
        for ((x, u), w) in &self.lifts {
            // Axiom (1): the codomain of the lift is assigned the codomain
            // of the lifted morphism.
            let p = self.a.tgt(w);
            if &self.obj_assign[p] != self.b.tgt(u) {
                return Err(Error::axiom(1, format!("({x}, {u}) lifts to {w}")));
            }
            // Axiom (2): identities lift to identities.
            if self.b.is_identity(u) && !self.a.is_identity(w) {
                return Err(Error::axiom(2, format!("({x}, {u}) lifts to {w}")));
            }
        }
        // Axiom (3): lifting is functorial in the lifted morphism.
        for x in self.a.objects() {
            for u in self.b.morphisms_from(&self.obj_assign[x]) {
                let w = &self.lifts[&(x.clone(), u.clone())];
                let p = self.a.tgt(w).clone();
                for v in self.b.morphisms_from(self.b.tgt(u)) {
                    let vu = self.b.compose(v, u).unwrap();
                    let left = &self.lifts[&(x.clone(), vu.clone())];
                    let step = &self.lifts[&(p.clone(), v.clone())];
                    let right = self.a.compose(step, w).unwrap();
                    if left != right {
                        return Err(Error::axiom(3, format!("({x}, {v} . {u})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The identity cofunctor on a category.
    pub fn identity(cat: Arc<FinCat>) -> Cofunctor {
        let obj_assign = cat.objects().iter().map(|x| (x.clone(), x.clone())).collect();
        let lifts = cat
            .objects()
            .iter()
            .flat_map(|x| {
                cat.morphisms_from(x)
                    .into_iter()
                    .map(|u| ((x.clone(), u.clone()), u.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        Cofunctor { a: cat.clone(), b: cat, obj_assign, lifts }
    }

    /// The cofunctor `B -/-> A` induced by a discrete opfibration `A -> B`.
    pub fn from_opfibration(f: &Functor) -> Result<Cofunctor> {
        let class = f.classify();
        if !class.is_discrete_opfibration {
            return Err(Error::shape(format!(
                "not a discrete opfibration (witness {:?})",
                class.dopf_witness
            )));
        }
        let a = f.dom().clone();
        let b = f.cod().clone();
        let obj_assign: BTreeMap<Obj, Obj> =
            a.objects().iter().map(|x| (x.clone(), f.ob(x).clone())).collect();
        let mut lifts = BTreeMap::new();
        for x in a.objects() {
            for u in b.morphisms_from(f.ob(x)) {
                let lift = a
                    .morphisms_from(x)
                    .into_iter()
                    .find(|w| f.mor(w) == u)
                    .expect("discrete opfibration has a lift");
                lifts.insert((x.clone(), u.clone()), lift.clone());
            }
        }
        Cofunctor::validate(a, b, obj_assign, lifts)
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.b
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.a
    }

    pub fn ob(&self, x: &Obj) -> &Obj {
        &self.obj_assign[x]
    }

    pub fn obj_assign(&self) -> &BTreeMap<Obj, Obj> {
        &self.obj_assign
    }

    pub fn lifts(&self) -> &BTreeMap<(Obj, Mor), Mor> {
        &self.lifts
    }

    pub fn lift(&self, x: &Obj, u: &Mor) -> &Mor {
        &self.lifts[&(x.clone(), u.clone())]
    }

    /// Codomain object of a lift.
    pub fn lift_target(&self, x: &Obj, u: &Mor) -> &Obj {
        self.a.tgt(self.lift(x, u))
    }

    /// Compose `second . first` where `first : C -/-> B` and
    /// `second : B -/-> A`.
    pub fn compose(second: &Cofunctor, first: &Cofunctor) -> Result<Cofunctor> {
        if second.b.as_ref() != first.a.as_ref() {
            return Err(Error::precondition("cofunctor composition: middle categories differ"));
        }
        let a = second.a.clone();
        let c = first.b.clone();
        let obj_assign: BTreeMap<Obj, Obj> = a
            .objects()
            .iter()
            .map(|x| (x.clone(), first.ob(second.ob(x)).clone()))
            .collect();
        let mut lifts = BTreeMap::new();
        for x in a.objects() {
            for u in c.morphisms_from(&obj_assign[x]) {
                let middle = first.lift(second.ob(x), u);
                lifts.insert((x.clone(), u.clone()), second.lift(x, middle).clone());
            }
        }
        Cofunctor::validate(a, c, obj_assign, lifts)
    }
}

/// The span representation of a cofunctor: apex with objects of `A` and
/// morphisms the lift inputs `(a, u)`, a discrete opfibration to `B` and an
/// identity-on-objects functor to `A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CofunctorSpan {
    pub apex: Arc<FinCat>,
    /// The discrete opfibration to `B`, sending `(a, u)` to `u`.
    pub leg_b: Functor,
    /// The identity-on-objects functor to `A`, sending `(a, u)` to the lift.
    pub leg_a: Functor,
}

/// Build the span representation of a cofunctor.
pub fn cofunctor_span_rep(cof: &Cofunctor) -> CofunctorSpan {
    let a = cof.cod();
    let b = cof.dom();
    let mor_of = |x: &Obj, u: &Mor| Mor::new(pair_name(x.as_str(), u.as_str()));
    let mut morphisms = BTreeMap::new();
    let mut leg_b_mor = BTreeMap::new();
    let mut leg_a_mor = BTreeMap::new();
    for ((x, u), w) in cof.lifts() {
        let name = mor_of(x, u);
        morphisms.insert(name.clone(), MorData { src: x.clone(), tgt: a.tgt(w).clone() });
        leg_b_mor.insert(name.clone(), u.clone());
        leg_a_mor.insert(name, w.clone());
    }
    let identities: BTreeMap<Obj, Mor> = a
        .objects()
        .iter()
        .map(|x| (x.clone(), mor_of(x, b.identity(cof.ob(x)))))
        .collect();
    let mut composition = BTreeMap::new();
    for ((x, u), w) in cof.lifts() {
        let p = a.tgt(w);
        for v in b.morphisms_from(b.tgt(u)) {
            let vu = b.compose(v, u).unwrap();
            composition.insert((mor_of(p, v), mor_of(x, u)), mor_of(x, vu));
        }
    }
    let apex = FinCat::from_parts(a.objects().to_vec(), morphisms, identities, composition)
        .expect("cofunctor span apex is a category");
    let ioo_objects: BTreeMap<Obj, Obj> = a.objects().iter().map(|x| (x.clone(), x.clone())).collect();
    let leg_b = Functor::validate(
        apex.clone(),
        b.clone(),
        a.objects().iter().map(|x| (x.clone(), cof.ob(x).clone())).collect(),
        leg_b_mor,
    )
    .expect("span leg to the lifted category is a functor");
    let leg_a = Functor::validate(apex.clone(), a.clone(), ioo_objects, leg_a_mor)
        .expect("span leg to the lifting category is a functor");
    CofunctorSpan { apex, leg_b, leg_a }
}

/// Recover a cofunctor from a span whose first leg is a discrete opfibration
/// and whose second leg is identity-on-objects.
pub fn span_to_cofunctor(span: &CofunctorSpan) -> Result<Cofunctor> {
    if span.leg_b.dom().as_ref() != span.apex.as_ref()
        || span.leg_a.dom().as_ref() != span.apex.as_ref()
    {
        return Err(Error::shape("span legs do not share the apex"));
    }
    let class = span.leg_b.classify();
    if !class.is_discrete_opfibration {
        return Err(Error::shape(format!(
            "first leg is not a discrete opfibration (witness {:?})",
            class.dopf_witness
        )));
    }
    if !span.leg_a.is_identity_on_objects() {
        return Err(Error::shape("second leg is not identity-on-objects"));
    }
    let a = span.leg_a.cod().clone();
    let b = span.leg_b.cod().clone();
    let obj_assign: BTreeMap<Obj, Obj> =
        a.objects().iter().map(|x| (x.clone(), span.leg_b.ob(x).clone())).collect();
    let mut lifts = BTreeMap::new();
    for x in a.objects() {
        for u in b.morphisms_from(&obj_assign[x]) {
            let lifted = span
                .apex
                .morphisms_from(x)
                .into_iter()
                .find(|m| span.leg_b.mor(m) == u)
                .expect("discrete opfibration has a lift");
            lifts.insert((x.clone(), u.clone()), span.leg_a.mor(lifted).clone());
        }
    }
    Cofunctor::validate(a, b, obj_assign, lifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// The cofunctor ONE -/-> TWO: constant object assignment, identity lifts.
    fn one_to_two() -> Cofunctor {
        let two = fixtures::two();
        let one = fixtures::one();
        let star = Obj::new("*");
        let obj_assign = two.objects().iter().map(|x| (x.clone(), star.clone())).collect();
        let lifts = two
            .objects()
            .iter()
            .map(|x| ((x.clone(), one.identity(&star).clone()), two.identity(x).clone()))
            .collect();
        Cofunctor::validate(two, one, obj_assign, lifts).unwrap()
    }

    #[test]
    fn identity_cofunctor_validates() {
        let cof = Cofunctor::identity(fixtures::two());
        assert!(Cofunctor::validate(
            cof.cod().clone(),
            cof.dom().clone(),
            cof.obj_assign().clone(),
            cof.lifts().clone()
        )
        .is_ok());
    }

    #[test]
    fn constant_cofunctor_validates() {
        let cof = one_to_two();
        assert_eq!(cof.ob(&Obj::new("0")), &Obj::new("*"));
    }

    #[test]
    fn axiom_one_violation_is_reported() {
        // Lift u of id0 at 0: target 1 is assigned 1, but u "lifts" id0 whose
        // target is 0.
        let two = fixtures::two();
        let id = Cofunctor::identity(two.clone());
        let mut lifts = id.lifts().clone();
        lifts.insert((Obj::new("0"), Mor::new("id0")), Mor::new("u"));
        match Cofunctor::validate(two.clone(), two, id.obj_assign().clone(), lifts) {
            Err(Error::AxiomViolation { axiom: 1, .. }) => {}
            other => panic!("expected axiom (1) violation, got {other:?}"),
        }
    }

    #[test]
    fn composition_with_identity_is_identity() {
        let cof = one_to_two();
        let left = Cofunctor::compose(&cof, &Cofunctor::identity(cof.dom().clone())).unwrap();
        assert_eq!(left, cof);
        let right = Cofunctor::compose(&Cofunctor::identity(cof.cod().clone()), &cof).unwrap();
        assert_eq!(right, cof);
    }

    #[test]
    fn opfibration_cofunctors_compose_like_opfibrations() {
        // s: {1} -> TWO is a discrete opfibration; composing its cofunctor
        // with the identity gives the cofunctor of the composite.
        let one = fixtures::one();
        let two = fixtures::two();
        let s = Functor::validate(
            one.clone(),
            two.clone(),
            [(Obj::new("*"), Obj::new("1"))].into_iter().collect(),
            [(Mor::new("id*"), Mor::new("id1"))]
                .into_iter()
                .map(|(_, m)| (one.identity(&Obj::new("*")).clone(), m))
                .collect(),
        )
        .unwrap();
        let cof = Cofunctor::from_opfibration(&s).unwrap();
        let composite =
            Cofunctor::compose(&Cofunctor::identity(one.clone()), &cof).unwrap();
        let direct = Cofunctor::from_opfibration(&s).unwrap();
        assert_eq!(composite, direct);
    }

    #[test]
    fn composition_is_associative_on_tables() {
        let cof = one_to_two();
        let id_a = Cofunctor::identity(cof.cod().clone());
        let id_c = Cofunctor::identity(cof.dom().clone());
        let left = Cofunctor::compose(&Cofunctor::compose(&id_a, &cof).unwrap(), &id_c).unwrap();
        let right = Cofunctor::compose(&id_a, &Cofunctor::compose(&cof, &id_c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn span_rep_of_identity_is_two_shaped() {
        let span = cofunctor_span_rep(&Cofunctor::identity(fixtures::two()));
        assert_eq!(span.apex.object_count(), 2);
        assert_eq!(span.apex.morphism_count(), 3);
        assert!(span.leg_b.classify().is_discrete_opfibration);
        assert!(span.leg_a.is_identity_on_objects());
    }

    #[test]
    fn span_rep_of_constant_cofunctor_is_discrete() {
        let span = cofunctor_span_rep(&one_to_two());
        // Apex DISC2: only the identity pairs (a, id*).
        assert_eq!(span.apex.object_count(), 2);
        assert_eq!(span.apex.morphism_count(), 2);
        assert!(span.leg_b.classify().is_discrete_opfibration);
        assert!(span.leg_a.is_identity_on_objects());
    }

    #[test]
    fn round_trip_recovers_the_cofunctor() {
        for cof in [Cofunctor::identity(fixtures::two()), one_to_two()] {
            let span = cofunctor_span_rep(&cof);
            assert_eq!(span_to_cofunctor(&span).unwrap(), cof);
        }
    }

    #[test]
    fn shape_error_when_left_leg_is_not_an_opfibration() {
        let span = cofunctor_span_rep(&Cofunctor::identity(fixtures::two()));
        // Replace the opfibration leg by the collapse to ONE.
        let one = fixtures::one();
        let star = Obj::new("*");
        let collapse = Functor::validate(
            span.apex.clone(),
            one.clone(),
            span.apex.objects().iter().map(|x| (x.clone(), star.clone())).collect(),
            span.apex.morphism_names().map(|m| (m.clone(), one.identity(&star).clone())).collect(),
        )
        .unwrap();
        let bad = CofunctorSpan { apex: span.apex.clone(), leg_b: collapse, leg_a: span.leg_a };
        assert!(matches!(span_to_cofunctor(&bad), Err(Error::ShapeError { .. })));
    }
}
