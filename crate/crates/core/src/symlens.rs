//! Symmetric lenses: a pair of Mealy morphisms in opposite directions
//! sharing one state set, with matching anchors on both sides.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{pair_name, FinCat, Obj};
use crate::error::{Error, Result};
use crate::lens::Lens;
use crate::mealy::{MealyMap, MealyMorphism, State};

/// A symmetric lens `A <-/-> B`: a forward Mealy morphism `A -/-> B` and a
/// backward Mealy morphism `B -/-> A` over the same states with the same
/// anchors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricLens {
    forward: MealyMorphism,
    backward: MealyMorphism,
}

impl SymmetricLens {
    /// Check that the two Mealy morphisms share states and anchors.
    pub fn validate(forward: MealyMorphism, backward: MealyMorphism) -> Result<SymmetricLens> {
        if forward.dom().as_ref() != backward.cod().as_ref()
            || forward.cod().as_ref() != backward.dom().as_ref()
        {
            return Err(Error::precondition(
                "symmetric lens: forward and backward relate different categories",
            ));
        }
        if forward.states() != backward.states() {
            return Err(Error::AnchorMismatch {
                detail: "forward and backward state sets differ".into(),
            });
        }
        for x in forward.states() {
            if forward.anchor_dom(x) != backward.anchor_cod(x) {
                return Err(Error::AnchorMismatch {
                    detail: format!("left anchors of state {x} disagree"),
                });
            }
            if forward.anchor_cod(x) != backward.anchor_dom(x) {
                return Err(Error::AnchorMismatch {
                    detail: format!("right anchors of state {x} disagree"),
                });
            }
        }
        Ok(SymmetricLens { forward, backward })
    }

    pub fn identity(cat: Arc<FinCat>) -> SymmetricLens {
        let id = MealyMorphism::identity(cat);
        SymmetricLens { forward: id.clone(), backward: id }
    }

    /// Left endpoint category.
    pub fn left(&self) -> &Arc<FinCat> {
        self.forward.dom()
    }

    /// Right endpoint category.
    pub fn right(&self) -> &Arc<FinCat> {
        self.forward.cod()
    }

    pub fn states(&self) -> &[State] {
        self.forward.states()
    }

    pub fn anchor_left(&self, x: &State) -> &Obj {
        self.forward.anchor_dom(x)
    }

    pub fn anchor_right(&self, x: &State) -> &Obj {
        self.forward.anchor_cod(x)
    }

    pub fn forward(&self) -> &MealyMorphism {
        &self.forward
    }

    pub fn backward(&self) -> &MealyMorphism {
        &self.backward
    }

    /// Swap the two directions.
    pub fn dagger(&self) -> SymmetricLens {
        SymmetricLens { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// Compose `first : A <-/-> B` with `second : B <-/-> C`; the shared
    /// states are anchor-compatible pairs `(x, y)`.
    pub fn compose(first: &SymmetricLens, second: &SymmetricLens) -> Result<SymmetricLens> {
        let forward = MealyMorphism::compose(first.forward(), second.forward())?;
        // The backward composite is built directly so that its states carry
        // the same `(x, y)` names as the forward composite.
        let a = first.left().clone();
        let c = second.right().clone();
        let pair = |x: &State, y: &State| State::new(pair_name(x.as_str(), y.as_str()));
        let mut g0 = BTreeMap::new();
        let mut f0 = BTreeMap::new();
        let mut transitions = BTreeMap::new();
        let mut states = Vec::new();
        for x in first.states() {
            for y in second.states() {
                if first.anchor_right(x) != second.anchor_left(y) {
                    continue;
                }
                let xy = pair(x, y);
                g0.insert(xy.clone(), second.anchor_right(y).clone());
                f0.insert(xy.clone(), first.anchor_left(x).clone());
                for w in c.morphisms_from(second.anchor_right(y)) {
                    let (y2, v) = second.backward().step(y, w);
                    let (x2, out) = first.backward().step(x, v);
                    transitions.insert((xy.clone(), w.clone()), (pair(x2, y2), out.clone()));
                }
                states.push(xy);
            }
        }
        let backward = MealyMorphism::validate(c, a, states, g0, f0, transitions)?;
        SymmetricLens::validate(forward, backward)
    }
}

/// Embed an asymmetric lens `A -> B` as a symmetric lens whose states are
/// the objects of `A`.
pub fn embed_lens_sym(lens: &Lens) -> SymmetricLens {
    SymmetricLens::validate(
        MealyMorphism::from_functor(lens.get()),
        MealyMorphism::from_cofunctor(lens.put()),
    )
    .expect("a lens embeds as a symmetric lens")
}

/// A morphism of symmetric lenses: one state map that is simultaneously a
/// map of the forward and backward Mealy morphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymLensMorphism {
    map: BTreeMap<State, State>,
}

impl SymLensMorphism {
    pub fn validate(
        src: &SymmetricLens,
        tgt: &SymmetricLens,
        map: BTreeMap<State, State>,
    ) -> Result<SymLensMorphism> {
        MealyMap::validate(src.forward(), tgt.forward(), map.clone())?;
        MealyMap::validate(src.backward(), tgt.backward(), map.clone())?;
        Ok(SymLensMorphism { map })
    }

    pub fn identity(sl: &SymmetricLens) -> SymLensMorphism {
        SymLensMorphism { map: sl.states().iter().map(|x| (x.clone(), x.clone())).collect() }
    }

    pub fn map(&self) -> &BTreeMap<State, State> {
        &self.map
    }

    pub fn apply(&self, x: &State) -> &State {
        &self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        let images: std::collections::BTreeSet<&State> = self.map.values().collect();
        images.len() == self.map.len()
    }

    /// The inverse state map, if bijective.
    pub fn inverse(&self, src: &SymmetricLens, tgt: &SymmetricLens) -> Result<SymLensMorphism> {
        if !self.is_bijective() {
            return Err(Error::shape("state map is not bijective"));
        }
        let map = self.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        SymLensMorphism::validate(tgt, src, map)
    }
}

/// The associator: an invertible 2-cell from `(s1 ∘ s2) ∘ s3` to
/// `s1 ∘ (s2 ∘ s3)`, renaming state `((x,y),z)` to `(x,(y,z))`.
pub fn symlens_associator(
    s1: &SymmetricLens,
    s2: &SymmetricLens,
    s3: &SymmetricLens,
) -> Result<(SymmetricLens, SymmetricLens, SymLensMorphism)> {
    let left = SymmetricLens::compose(&SymmetricLens::compose(s1, s2)?, s3)?;
    let right = SymmetricLens::compose(s1, &SymmetricLens::compose(s2, s3)?)?;
    let mut map = BTreeMap::new();
    for x in s1.states() {
        for y in s2.states() {
            let xy = pair_name(x.as_str(), y.as_str());
            for z in s3.states() {
                let nested = State::new(pair_name(&xy, z.as_str()));
                if left.states().contains(&nested) {
                    let yz = pair_name(y.as_str(), z.as_str());
                    map.insert(nested, State::new(pair_name(x.as_str(), &yz)));
                }
            }
        }
    }
    let cell = SymLensMorphism::validate(&left, &right, map)?;
    cell.inverse(&left, &right)?;
    Ok((left, right, cell))
}

/// The left unitor: an invertible 2-cell from `id ∘ s` to `s`.
pub fn symlens_left_unitor(s: &SymmetricLens) -> Result<(SymmetricLens, SymLensMorphism)> {
    let id = SymmetricLens::identity(s.left().clone());
    let composite = SymmetricLens::compose(&id, s)?;
    let mut map = BTreeMap::new();
    for a in id.states() {
        for x in s.states() {
            let pair = State::new(pair_name(a.as_str(), x.as_str()));
            if composite.states().contains(&pair) {
                map.insert(pair, x.clone());
            }
        }
    }
    let cell = SymLensMorphism::validate(&composite, s, map)?;
    cell.inverse(&composite, s)?;
    Ok((composite, cell))
}

/// The right unitor: an invertible 2-cell from `s ∘ id` to `s`.
pub fn symlens_right_unitor(s: &SymmetricLens) -> Result<(SymmetricLens, SymLensMorphism)> {
    let id = SymmetricLens::identity(s.right().clone());
    let composite = SymmetricLens::compose(s, &id)?;
    let mut map = BTreeMap::new();
    for x in s.states() {
        for c in id.states() {
            let pair = State::new(pair_name(x.as_str(), c.as_str()));
            if composite.states().contains(&pair) {
                map.insert(pair, x.clone());
            }
        }
    }
    let cell = SymLensMorphism::validate(&composite, s, map)?;
    cell.inverse(&composite, s)?;
    Ok((composite, cell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lens::tests::three_to_two;

    #[test]
    fn identity_symmetric_lens_validates() {
        let sl = SymmetricLens::identity(fixtures::two());
        assert_eq!(sl.states().len(), 2);
        assert_eq!(sl.dagger().dagger(), sl);
    }

    #[test]
    fn embedded_lens_is_a_symmetric_lens() {
        let sl = embed_lens_sym(&three_to_two());
        assert_eq!(sl.states().len(), 3);
        // The dagger swaps the directions.
        assert_eq!(sl.dagger().forward(), sl.backward());
        assert_eq!(sl.dagger().backward(), sl.forward());
    }

    #[test]
    fn mismatched_anchors_are_reported() {
        let two = fixtures::two();
        let m = MealyMorphism::identity(two.clone());
        // Backward over a different state set: the identity of ONE does not
        // share states with TWO's identity Mealy morphism.
        let other = MealyMorphism::identity(fixtures::one());
        match SymmetricLens::validate(m, other) {
            Err(Error::PreconditionViolated { .. }) => {}
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn composite_with_identity_is_isomorphic() {
        let sl = embed_lens_sym(&three_to_two());
        let id = SymmetricLens::identity(sl.right().clone());
        let composite = SymmetricLens::compose(&sl, &id).unwrap();
        let map: BTreeMap<State, State> = composite
            .states()
            .iter()
            .map(|xy| {
                let orig = sl
                    .states()
                    .iter()
                    .find(|x| {
                        xy.as_str() == pair_name(x.as_str(), sl.anchor_right(x).as_str())
                    })
                    .unwrap();
                (xy.clone(), orig.clone())
            })
            .collect();
        let cell = SymLensMorphism::validate(&composite, &sl, map).unwrap();
        assert!(cell.is_bijective());
        cell.inverse(&composite, &sl).unwrap();
    }

    #[test]
    fn dagger_reverses_composition() {
        let sl = embed_lens_sym(&three_to_two());
        let id = SymmetricLens::identity(sl.right().clone());
        let composite = SymmetricLens::compose(&sl, &id).unwrap();
        // dagger(sl ; id) and dagger(id) ; dagger(sl) have mirrored state
        // names; compare transition tables through the mirror bijection.
        let lhs = composite.dagger();
        let rhs = SymmetricLens::compose(&id.dagger(), &sl.dagger()).unwrap();
        let map: BTreeMap<State, State> = lhs
            .states()
            .iter()
            .map(|xy| {
                let orig = sl
                    .states()
                    .iter()
                    .find(|x| {
                        xy.as_str() == pair_name(x.as_str(), sl.anchor_right(x).as_str())
                    })
                    .unwrap();
                (
                    xy.clone(),
                    State::new(pair_name(sl.anchor_right(orig).as_str(), orig.as_str())),
                )
            })
            .collect();
        let cell = SymLensMorphism::validate(&lhs, &rhs, map).unwrap();
        assert!(cell.is_bijective());
    }
}
