//! Asymmetric delta lenses: a functor (Get) together with a compatible
//! cofunctor (Put), plus lens composition and the diagram representation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::cofunctor::{
    cofunctor_span_rep, span_to_cofunctor, Cofunctor, CofunctorSpan,
};
use crate::error::{Error, Result};
use crate::functor::Functor;

/// A delta lens `A -> B`: a Get functor and a Put cofunctor that agree on
/// objects and satisfy PutGet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lens {
    get: Functor,
    put: Cofunctor,
}

impl Lens {
    /// Check that the functor and cofunctor share endpoints, agree on
    /// objects, and satisfy the PutGet law.
    pub fn validate(get: Functor, put: Cofunctor) -> Result<Lens> {
        if get.dom().as_ref() != put.cod().as_ref() || get.cod().as_ref() != put.dom().as_ref() {
            return Err(Error::precondition("lens: get and put relate different categories"));
        }
        for x in get.dom().objects() {
            if get.ob(x) != put.ob(x) {
                return Err(Error::ObjectMismatch {
                    witness: format!("get({x}) = {}, put assigns {}", get.ob(x), put.ob(x)),
                });
            }
        }
        for ((x, u), w) in put.lifts() {
            if get.mor(w) != u {
                return Err(Error::PutGetViolation {
                    witness: format!("get(put({x}, {u})) = {} != {u}", get.mor(w)),
                });
            }
        }
        Ok(Lens { get, put })
    }

    /// Build a lens from raw tables: the object assignment is shared by Get
    /// and Put.
    pub fn from_tables(
        a: Arc<FinCat>,
        b: Arc<FinCat>,
        on_objects: BTreeMap<Obj, Obj>,
        on_morphisms: BTreeMap<Mor, Mor>,
        lifts: BTreeMap<(Obj, Mor), Mor>,
    ) -> Result<Lens> {
        let get = Functor::validate(a.clone(), b.clone(), on_objects.clone(), on_morphisms)?;
        let put = Cofunctor::validate(a, b, on_objects, lifts)?;
        Lens::validate(get, put)
    }

    pub fn identity(cat: Arc<FinCat>) -> Lens {
        Lens { get: Functor::identity(cat.clone()), put: Cofunctor::identity(cat) }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        self.get.dom()
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        self.get.cod()
    }

    pub fn get(&self) -> &Functor {
        &self.get
    }

    pub fn put(&self) -> &Cofunctor {
        &self.put
    }

    /// Compose `first : A -> B` with `second : B -> C`.
    pub fn compose(first: &Lens, second: &Lens) -> Result<Lens> {
        let get = Functor::compose(second.get(), first.get())?;
        let put = Cofunctor::compose(first.put(), second.put())?;
        Lens::validate(get, put)
    }
}

/// The diagram representation of a lens `A -> B`: a span apex on the objects
/// of `A` with an identity-on-objects leg to `A`, a discrete opfibration leg
/// to `B`, and the Get functor closing the triangle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LensDiagram {
    pub apex: Arc<FinCat>,
    /// Identity-on-objects leg sending `(a, u)` to the lift.
    pub to_dom: Functor,
    /// Discrete opfibration leg sending `(a, u)` to `u`.
    pub to_cod: Functor,
    /// The Get functor; composing it after `to_dom` gives `to_cod`.
    pub get: Functor,
}

/// Build the diagram representation of a lens.
pub fn lens_diagram_rep(lens: &Lens) -> LensDiagram {
    let span = cofunctor_span_rep(lens.put());
    LensDiagram {
        apex: span.apex,
        to_dom: span.leg_a,
        to_cod: span.leg_b,
        get: lens.get().clone(),
    }
}

/// Recover a lens from a diagram, checking the leg classes and the
/// commuting triangle.
pub fn diagram_to_lens(diagram: &LensDiagram) -> Result<Lens> {
    let put = span_to_cofunctor(&CofunctorSpan {
        apex: diagram.apex.clone(),
        leg_b: diagram.to_cod.clone(),
        leg_a: diagram.to_dom.clone(),
    })?;
    let composite = Functor::compose(&diagram.get, &diagram.to_dom)?;
    if composite != diagram.to_cod {
        return Err(Error::shape("the triangle get . to_dom = to_cod does not commute"));
    }
    Lens::validate(diagram.get.clone(), put)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;

    /// A lens THREE -> TWO collapsing 1 and 2.
    pub(crate) fn three_to_two() -> Lens {
        let three = fixtures::three();
        let two = fixtures::two();
        let on_objects: BTreeMap<Obj, Obj> = [
            (Obj::new("0"), Obj::new("0")),
            (Obj::new("1"), Obj::new("1")),
            (Obj::new("2"), Obj::new("1")),
        ]
        .into_iter()
        .collect();
        let on_morphisms: BTreeMap<Mor, Mor> = [
            (Mor::new("id0"), Mor::new("id0")),
            (Mor::new("id1"), Mor::new("id1")),
            (Mor::new("id2"), Mor::new("id1")),
            (Mor::new("u"), Mor::new("u")),
            (Mor::new("v"), Mor::new("id1")),
            (Mor::new("w"), Mor::new("u")),
        ]
        .into_iter()
        .collect();
        let lifts: BTreeMap<(Obj, Mor), Mor> = [
            ((Obj::new("0"), Mor::new("id0")), Mor::new("id0")),
            ((Obj::new("0"), Mor::new("u")), Mor::new("u")),
            ((Obj::new("1"), Mor::new("id1")), Mor::new("id1")),
            ((Obj::new("2"), Mor::new("id1")), Mor::new("id2")),
        ]
        .into_iter()
        .collect();
        Lens::from_tables(three, two, on_objects, on_morphisms, lifts).unwrap()
    }

    #[test]
    fn identity_lens_validates() {
        let l = Lens::identity(fixtures::two());
        assert_eq!(l.dom().object_count(), 2);
    }

    #[test]
    fn three_to_two_lens_validates_and_composes_with_identities() {
        let l = three_to_two();
        let left = Lens::compose(&Lens::identity(l.dom().clone()), &l).unwrap();
        let right = Lens::compose(&l, &Lens::identity(l.cod().clone())).unwrap();
        assert_eq!(left, l);
        assert_eq!(right, l);
    }

    #[test]
    fn object_mismatch_is_reported() {
        let two = fixtures::two();
        // Get collapses everything to 0, but Put is the identity cofunctor.
        let on_objects: BTreeMap<Obj, Obj> =
            two.objects().iter().map(|x| (x.clone(), Obj::new("0"))).collect();
        let on_morphisms: BTreeMap<Mor, Mor> =
            two.morphism_names().map(|m| (m.clone(), Mor::new("id0"))).collect();
        let get = Functor::validate(two.clone(), two.clone(), on_objects, on_morphisms).unwrap();
        let put = Cofunctor::identity(two);
        match Lens::validate(get, put) {
            Err(Error::ObjectMismatch { .. }) => {}
            other => panic!("expected object mismatch, got {other:?}"),
        }
    }

    #[test]
    fn putget_violation_is_reported() {
        let two = fixtures::two();
        let par2 = fixtures::par2();
        // Get TWO -> PAR2 sends u to u; the lift of v can only be u, which
        // Get sends back to u, not v.
        let on_objects: BTreeMap<Obj, Obj> =
            two.objects().iter().map(|x| (x.clone(), x.clone())).collect();
        let on_morphisms: BTreeMap<Mor, Mor> =
            two.morphism_names().map(|m| (m.clone(), m.clone())).collect();
        let lifts: BTreeMap<(Obj, Mor), Mor> = [
            ((Obj::new("0"), Mor::new("id0")), Mor::new("id0")),
            ((Obj::new("0"), Mor::new("u")), Mor::new("u")),
            ((Obj::new("0"), Mor::new("v")), Mor::new("u")),
            ((Obj::new("1"), Mor::new("id1")), Mor::new("id1")),
        ]
        .into_iter()
        .collect();
        match Lens::from_tables(two, par2, on_objects, on_morphisms, lifts) {
            Err(Error::PutGetViolation { witness }) => {
                assert!(witness.contains("v"), "witness should mention v: {witness}");
            }
            other => panic!("expected PutGet violation, got {other:?}"),
        }
    }

    #[test]
    fn lifting_an_identity_to_the_idempotent_violates_axiom_two() {
        let idem = fixtures::idem();
        let star = Obj::new("*");
        let on_objects: BTreeMap<Obj, Obj> = [(star.clone(), star.clone())].into_iter().collect();
        let on_morphisms: BTreeMap<Mor, Mor> = idem
            .morphism_names()
            .map(|m| (m.clone(), m.clone()))
            .collect();
        let lifts: BTreeMap<(Obj, Mor), Mor> = [
            ((star.clone(), idem.identity(&star).clone()), Mor::new("e")),
            ((star.clone(), Mor::new("e")), Mor::new("e")),
        ]
        .into_iter()
        .collect();
        match Lens::from_tables(idem.clone(), idem, on_objects, on_morphisms, lifts) {
            Err(Error::AxiomViolation { axiom: 2, .. }) => {}
            other => panic!("expected axiom 2 violation, got {other:?}"),
        }
    }

    #[test]
    fn diagram_round_trip_recovers_the_lens() {
        for l in [Lens::identity(fixtures::two()), three_to_two()] {
            let diagram = lens_diagram_rep(&l);
            assert!(diagram.to_cod.classify().is_discrete_opfibration);
            assert!(diagram.to_dom.is_identity_on_objects());
            assert_eq!(diagram_to_lens(&diagram).unwrap(), l);
        }
    }

    #[test]
    fn non_commuting_diagram_is_a_shape_error() {
        let l = three_to_two();
        let mut diagram = lens_diagram_rep(&l);
        // Replace Get with the constant functor at 0, which breaks the
        // commuting triangle.
        let on_objects: BTreeMap<Obj, Obj> =
            l.dom().objects().iter().map(|x| (x.clone(), Obj::new("0"))).collect();
        let on_morphisms: BTreeMap<Mor, Mor> =
            l.dom().morphism_names().map(|m| (m.clone(), Mor::new("id0"))).collect();
        diagram.get = Functor::validate(
            l.dom().clone(),
            l.cod().clone(),
            on_objects,
            on_morphisms,
        )
        .unwrap();
        match diagram_to_lens(&diagram) {
            Err(Error::ShapeError { .. }) => {}
            other => panic!("expected shape error, got {other:?}"),
        }
    }
}
