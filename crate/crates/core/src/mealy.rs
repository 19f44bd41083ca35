//! Mealy morphisms: a state set anchored in two categories with transition
//! and output operations, generalising functors, cofunctors and Mealy
//! machines.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{pair_name, FinCat, Mor, MorData, Obj};
use crate::cofunctor::Cofunctor;
use crate::error::{Error, Result};
use crate::functor::Functor;

/// A state identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(pub String);

impl State {
    pub fn new(s: impl Into<String>) -> Self {
        State(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
    /// The state as an object of a span apex.
    pub fn as_obj(&self) -> Obj {
        Obj::new(&self.0)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({})", self.0)
    }
}

/// A Mealy morphism `A -/-> B`.
///
/// Transitions and outputs are explicit tables keyed by `(x, u)` with
/// `u : g0(x) -> a` in `A`; the entry holds the next state and the output
/// morphism `f(x, u) : f0(x) -> f0(q(x, u))` in `B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MealyMorphism {
    a: Arc<FinCat>,
    b: Arc<FinCat>,
    states: Vec<State>,
    g0: BTreeMap<State, Obj>,
    f0: BTreeMap<State, Obj>,
    transitions: BTreeMap<(State, Mor), (State, Mor)>,
}

impl MealyMorphism {
    /// Check totality, typing and the three Mealy axioms exhaustively.
    pub fn validate(
        a: Arc<FinCat>,
        b: Arc<FinCat>,
        states: Vec<State>,
        g0: BTreeMap<State, Obj>,
        f0: BTreeMap<State, Obj>,
        transitions: BTreeMap<(State, Mor), (State, Mor)>,
    ) -> Result<MealyMorphism> {
        let mut states = states;
        states.sort();
        states.dedup();
        for x in &states {
            let ga = g0.get(x).ok_or_else(|| Error::Document {
                detail: format!("state {x} has no anchor in the source category"),
            })?;
            let fb = f0.get(x).ok_or_else(|| Error::Document {
                detail: format!("state {x} has no anchor in the target category"),
            })?;
            if !a.has_object(ga) || !b.has_object(fb) {
                return Err(Error::Document { detail: format!("state {x} has unknown anchors") });
            }
        }
        for x in &states {
            for u in a.morphisms_from(&g0[x]) {
                if !transitions.contains_key(&(x.clone(), u.clone())) {
                    return Err(Error::Document {
                        detail: format!("transition table misses ({x}, {u})"),
                    });
                }
            }
        }
        for ((x, u), (q, out)) in &transitions {
            if !g0.contains_key(x) || !a.has_morphism(u) || a.src(u) != &g0[x] {
                return Err(Error::Document { detail: format!("stray transition entry ({x}, {u})") });
            }
            if !g0.contains_key(q) {
                return Err(Error::Document {
                    detail: format!("transition ({x}, {u}) targets unknown state {q}"),
                });
            }
            if !b.has_morphism(out) {
                return Err(Error::Document {
                    detail: format!("output of ({x}, {u}) is not a morphism"),
                });
            }
        }
        let mealy = MealyMorphism { a, b, states, g0, f0, transitions };
        mealy.check_axioms()?;
        Ok(mealy)
    }

    fn check_axioms(&self) -> Result<()> {
        for ((x, u), (q, out)) in &self.transitions {
            // Axiom (1): the next state is anchored at the codomain of u.
            if &self.g0[q] != self.a.tgt(u) {
                return Err(Error::axiom(1, format!("({x}, {u}) -> {q}")));
            }
            // Output typing, per the shape f(x, u) : f0(x) -> f0(q(x, u)).
            if self.b.src(out) != &self.f0[x] || self.b.tgt(out) != &self.f0[q] {
                return Err(Error::axiom(3, format!("output of ({x}, {u}) is ill-typed: {out}")));
            }
            // Axiom (2): identities are silent.
            if self.a.is_identity(u) && (q != x || !self.b.is_identity(out)) {
                return Err(Error::axiom(2, format!("({x}, {u}) -> ({q}, {out})")));
            }
        }
        // Axiom (3): transitions and outputs are functorial.
        for x in &self.states {
            for u in self.a.morphisms_from(&self.g0[x]) {
                let (q, out) = &self.transitions[&(x.clone(), u.clone())];
                for v in self.a.morphisms_from(self.a.tgt(u)) {
                    let vu = self.a.compose(v, u).unwrap();
                    let (q_step, out_step) = &self.transitions[&(q.clone(), v.clone())];
                    let (q_all, out_all) = &self.transitions[&(x.clone(), vu.clone())];
                    if q_all != q_step {
                        return Err(Error::axiom(3, format!("state of ({x}, {v} . {u})")));
                    }
                    if out_all != self.b.compose(out_step, out).unwrap() {
                        return Err(Error::axiom(3, format!("output of ({x}, {v} . {u})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The identity Mealy morphism on a category.
    pub fn identity(cat: Arc<FinCat>) -> MealyMorphism {
        MealyMorphism::from_functor(&Functor::identity(cat))
    }

    /// The Mealy morphism `A -/-> B` of a functor `A -> B`.
    pub fn from_functor(f: &Functor) -> MealyMorphism {
        let a = f.dom().clone();
        let states: Vec<State> = a.objects().iter().map(|o| State::new(o.as_str())).collect();
        let g0 = states.iter().map(|x| (x.clone(), Obj::new(x.as_str()))).collect();
        let f0 = states.iter().map(|x| (x.clone(), f.ob(&Obj::new(x.as_str())).clone())).collect();
        let mut transitions = BTreeMap::new();
        for x in a.objects() {
            for u in a.morphisms_from(x) {
                transitions.insert(
                    (State::new(x.as_str()), u.clone()),
                    (State::new(a.tgt(u).as_str()), f.mor(u).clone()),
                );
            }
        }
        MealyMorphism { a, b: f.cod().clone(), states, g0, f0, transitions }
    }

    /// The Mealy morphism `B -/-> A` of a cofunctor `B -/-> A`.
    pub fn from_cofunctor(cof: &Cofunctor) -> MealyMorphism {
        let a = cof.cod().clone(); // lifting category
        let b = cof.dom().clone(); // lifted category
        let states: Vec<State> = a.objects().iter().map(|o| State::new(o.as_str())).collect();
        let g0 = states.iter().map(|x| (x.clone(), cof.ob(&Obj::new(x.as_str())).clone())).collect();
        let f0 = states.iter().map(|x| (x.clone(), Obj::new(x.as_str()))).collect();
        let mut transitions = BTreeMap::new();
        for x in a.objects() {
            for u in b.morphisms_from(cof.ob(x)) {
                let w = cof.lift(x, u);
                transitions.insert(
                    (State::new(x.as_str()), u.clone()),
                    (State::new(a.tgt(w).as_str()), w.clone()),
                );
            }
        }
        MealyMorphism { a: b, b: a, states, g0, f0, transitions }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.a
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.b
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn anchor_dom(&self, x: &State) -> &Obj {
        &self.g0[x]
    }

    pub fn anchor_cod(&self, x: &State) -> &Obj {
        &self.f0[x]
    }

    pub fn anchors_dom(&self) -> &BTreeMap<State, Obj> {
        &self.g0
    }

    pub fn anchors_cod(&self) -> &BTreeMap<State, Obj> {
        &self.f0
    }

    pub fn transitions(&self) -> &BTreeMap<(State, Mor), (State, Mor)> {
        &self.transitions
    }

    pub fn step(&self, x: &State, u: &Mor) -> &(State, Mor) {
        &self.transitions[&(x.clone(), u.clone())]
    }

    /// Compose `first : A -/-> B` with `second : B -/-> C`; states are the
    /// pairs whose anchors agree over `B`.
    pub fn compose(first: &MealyMorphism, second: &MealyMorphism) -> Result<MealyMorphism> {
        if first.b.as_ref() != second.a.as_ref() {
            return Err(Error::precondition("Mealy composition: middle categories differ"));
        }
        let mut states = Vec::new();
        let mut g0 = BTreeMap::new();
        let mut f0 = BTreeMap::new();
        let mut transitions = BTreeMap::new();
        let pair = |x: &State, y: &State| State::new(pair_name(x.as_str(), y.as_str()));
        for x in &first.states {
            for y in &second.states {
                if first.f0[x] != second.g0[y] {
                    continue;
                }
                let xy = pair(x, y);
                g0.insert(xy.clone(), first.g0[x].clone());
                f0.insert(xy.clone(), second.f0[y].clone());
                states.push(xy);
            }
        }
        for x in &first.states {
            for y in &second.states {
                if first.f0[x] != second.g0[y] {
                    continue;
                }
                let xy = pair(x, y);
                for u in first.a.morphisms_from(&first.g0[x]) {
                    let (q1, out1) = first.step(x, u);
                    let (q2, out2) = second.step(y, out1);
                    transitions.insert((xy.clone(), u.clone()), (pair(q1, q2), out2.clone()));
                }
            }
        }
        MealyMorphism::validate(first.a.clone(), second.b.clone(), states, g0, f0, transitions)
    }
}

/// A map of Mealy morphisms between parallel Mealy morphisms: a state map
/// commuting with the anchors, transitions and outputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MealyMap {
    map: BTreeMap<State, State>,
}

impl MealyMap {
    /// Check the span-morphism and transition conditions exhaustively.
    pub fn validate(
        src: &MealyMorphism,
        tgt: &MealyMorphism,
        map: BTreeMap<State, State>,
    ) -> Result<MealyMap> {
        if src.dom().as_ref() != tgt.dom().as_ref() || src.cod().as_ref() != tgt.cod().as_ref() {
            return Err(Error::precondition("Mealy map: endpoints differ"));
        }
        for x in src.states() {
            let mx = map.get(x).ok_or_else(|| Error::Document {
                detail: format!("state map misses {x}"),
            })?;
            if !tgt.states().contains(mx) {
                return Err(Error::Document { detail: format!("state map sends {x} to unknown {mx}") });
            }
            if tgt.anchor_dom(mx) != src.anchor_dom(x) || tgt.anchor_cod(mx) != src.anchor_cod(x) {
                return Err(Error::shape(format!("state map does not commute with anchors at {x}")));
            }
        }
        for ((x, u), (q, out)) in src.transitions() {
            let (p, h) = tgt.step(&map[x], u);
            if &map[q] != p {
                return Err(Error::shape(format!("state map breaks transitions at ({x}, {u})")));
            }
            if out != h {
                return Err(Error::shape(format!("state map breaks outputs at ({x}, {u})")));
            }
        }
        Ok(MealyMap { map })
    }

    pub fn identity(m: &MealyMorphism) -> MealyMap {
        MealyMap { map: m.states().iter().map(|x| (x.clone(), x.clone())).collect() }
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
}

/// The span representation of a Mealy morphism: an apex category on the
/// state set, a discrete opfibration to the source and the output functor to
/// the target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MealySpan {
    pub apex: Arc<FinCat>,
    /// Discrete opfibration sending `(x, u)` to `u`.
    pub leg_dom: Functor,
    /// Output functor sending `(x, u)` to `f(x, u)`.
    pub leg_cod: Functor,
}

/// Build the span representation of a Mealy morphism.
pub fn mealy_span_rep(m: &MealyMorphism) -> MealySpan {
    let a = m.dom();
    let b = m.cod();
    let mor_of = |x: &State, u: &Mor| Mor::new(pair_name(x.as_str(), u.as_str()));
    let objects: Vec<Obj> = m.states().iter().map(State::as_obj).collect();
    let mut morphisms = BTreeMap::new();
    let mut dom_mor = BTreeMap::new();
    let mut cod_mor = BTreeMap::new();
    for ((x, u), (q, out)) in m.transitions() {
        let name = mor_of(x, u);
        morphisms.insert(name.clone(), MorData { src: x.as_obj(), tgt: q.as_obj() });
        dom_mor.insert(name.clone(), u.clone());
        cod_mor.insert(name, out.clone());
    }
    let identities: BTreeMap<Obj, Mor> = m
        .states()
        .iter()
        .map(|x| (x.as_obj(), mor_of(x, a.identity(m.anchor_dom(x)))))
        .collect();
    let mut composition = BTreeMap::new();
    for ((x, u), (q, _)) in m.transitions() {
        for v in a.morphisms_from(a.tgt(u)) {
            let vu = a.compose(v, u).unwrap();
            composition.insert((mor_of(q, v), mor_of(x, u)), mor_of(x, vu));
        }
    }
    let apex = FinCat::from_parts(objects, morphisms, identities, composition)
        .expect("Mealy span apex is a category");
    let leg_dom = Functor::validate(
        apex.clone(),
        a.clone(),
        m.states().iter().map(|x| (x.as_obj(), m.anchor_dom(x).clone())).collect(),
        dom_mor,
    )
    .expect("Mealy span source leg is a functor");
    let leg_cod = Functor::validate(
        apex.clone(),
        b.clone(),
        m.states().iter().map(|x| (x.as_obj(), m.anchor_cod(x).clone())).collect(),
        cod_mor,
    )
    .expect("Mealy span output leg is a functor");
    MealySpan { apex, leg_dom, leg_cod }
}

/// Recover a Mealy morphism from a span whose source leg is a discrete
/// opfibration.
pub fn span_to_mealy(span: &MealySpan) -> Result<MealyMorphism> {
    let class = span.leg_dom.classify();
    if !class.is_discrete_opfibration {
        return Err(Error::shape(format!(
            "source leg is not a discrete opfibration (witness {:?})",
            class.dopf_witness
        )));
    }
    let apex = span.leg_dom.dom().clone();
    let a = span.leg_dom.cod().clone();
    let b = span.leg_cod.cod().clone();
    let states: Vec<State> = apex.objects().iter().map(|o| State::new(o.as_str())).collect();
    let g0 = states.iter().map(|x| (x.clone(), span.leg_dom.ob(&x.as_obj()).clone())).collect();
    let f0: BTreeMap<State, Obj> =
        states.iter().map(|x| (x.clone(), span.leg_cod.ob(&x.as_obj()).clone())).collect();
    let mut transitions = BTreeMap::new();
    for x in &states {
        for u in a.morphisms_from(span.leg_dom.ob(&x.as_obj())) {
            let lifted = apex
                .morphisms_from(&x.as_obj())
                .into_iter()
                .find(|w| span.leg_dom.mor(w) == u)
                .expect("discrete opfibration has a lift");
            transitions.insert(
                (x.clone(), u.clone()),
                (State::new(apex.tgt(lifted).as_str()), span.leg_cod.mor(lifted).clone()),
            );
        }
    }
    MealyMorphism::validate(a, b, states, g0, f0, transitions)
}

/// The canonical re-association of a composable triple: a bijective Mealy
/// map from `(m1 ; m2) ; m3` to `m1 ; (m2 ; m3)`.
pub fn reassociation(
    m1: &MealyMorphism,
    m2: &MealyMorphism,
    m3: &MealyMorphism,
) -> Result<(MealyMorphism, MealyMorphism, MealyMap)> {
    let left = MealyMorphism::compose(&MealyMorphism::compose(m1, m2)?, m3)?;
    let right = MealyMorphism::compose(m1, &MealyMorphism::compose(m2, m3)?)?;
    let mut map = BTreeMap::new();
    for x in m1.states() {
        for y in m2.states() {
            if m1.anchor_cod(x) != m2.anchor_dom(y) {
                continue;
            }
            for z in m3.states() {
                if m2.anchor_cod(y) != m3.anchor_dom(z) {
                    continue;
                }
                let nested_left = State::new(pair_name(
                    &pair_name(x.as_str(), y.as_str()),
                    z.as_str(),
                ));
                let nested_right = State::new(pair_name(
                    x.as_str(),
                    &pair_name(y.as_str(), z.as_str()),
                ));
                map.insert(nested_left, nested_right);
            }
        }
    }
    let cell = MealyMap::validate(&left, &right, map)?;
    Ok((left, right, cell))
}
