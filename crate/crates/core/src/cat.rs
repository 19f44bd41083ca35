//! Finite categories as explicit composition tables.
//!
//! A [`FinCat`] stores its objects, morphisms with endpoints, an identity
//! assignment and a total composition table on composable pairs. All category
//! laws are decidable by table lookup and are checked exhaustively on
//! construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An object identifier. Equality is identifier equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Obj(pub String);

/// A morphism identifier. Equality is identifier equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mor(pub String);

impl Obj {
    pub fn new(s: impl Into<String>) -> Self {
        Obj(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Mor {
    pub fn new(s: impl Into<String>) -> Self {
        Mor(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj({})", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({})", self.0)
    }
}

/// Source and target of a morphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MorData {
    pub src: Obj,
    pub tgt: Obj,
}

/// Raw description of a category, as read from a JSON document.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, gf]` meaning `compose(g, f) = gf`.
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// A finite category with a total composition table.
///
/// Invariants (checked exhaustively by [`FinCat::check`]):
/// - `identity(a)` is an endomorphism of `a` for every object `a`;
/// - `compose(g, f)` is present exactly when `tgt(f) = src(g)`, with the
///   expected endpoints;
/// - left and right unit laws;
/// - associativity on all composable triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCat {
    objects: Vec<Obj>,
    morphisms: BTreeMap<Mor, MorData>,
    identities: BTreeMap<Obj, Mor>,
    composition: BTreeMap<(Mor, Mor), Mor>,
}

impl FinCat {
    /// Validate a raw description into a `FinCat`, checking every invariant.
    pub fn validate(raw: &RawCategory) -> Result<Arc<FinCat>> {
        let mut objects: Vec<Obj> = raw.objects.iter().map(Obj::new).collect();
        objects.sort();
        objects.dedup();
        let mut morphisms = BTreeMap::new();
        for m in &raw.morphisms {
            let prev = morphisms.insert(
                Mor::new(&m.name),
                MorData { src: Obj::new(&m.src), tgt: Obj::new(&m.tgt) },
            );
            if prev.is_some() {
                return Err(Error::Document { detail: format!("duplicate morphism name {}", m.name) });
            }
        }
        let identities: BTreeMap<Obj, Mor> = raw
            .identities
            .iter()
            .map(|(a, m)| (Obj::new(a), Mor::new(m)))
            .collect();
        let composition: BTreeMap<(Mor, Mor), Mor> = raw
            .compose
            .iter()
            .map(|[g, f, gf]| ((Mor::new(g), Mor::new(f)), Mor::new(gf)))
            .collect();
        let cat = FinCat { objects, morphisms, identities, composition };
        cat.check()?;
        Ok(Arc::new(cat))
    }

    /// Assemble a category from already-structured parts, re-checking all laws.
    pub fn from_parts(
        objects: Vec<Obj>,
        morphisms: BTreeMap<Mor, MorData>,
        identities: BTreeMap<Obj, Mor>,
        composition: BTreeMap<(Mor, Mor), Mor>,
    ) -> Result<Arc<FinCat>> {
        let mut objects = objects;
        objects.sort();
        objects.dedup();
        let cat = FinCat { objects, morphisms, identities, composition };
        cat.check()?;
        Ok(Arc::new(cat))
    }

    /// The discrete category on the given objects.
    pub fn discrete(objects: impl IntoIterator<Item = Obj>) -> Arc<FinCat> {
        let objects: BTreeSet<Obj> = objects.into_iter().collect();
        let mut morphisms = BTreeMap::new();
        let mut identities = BTreeMap::new();
        let mut composition = BTreeMap::new();
        for a in &objects {
            let id = Mor::new(format!("1_{a}"));
            morphisms.insert(id.clone(), MorData { src: a.clone(), tgt: a.clone() });
            identities.insert(a.clone(), id.clone());
            composition.insert((id.clone(), id.clone()), id);
        }
        Arc::new(FinCat { objects: objects.into_iter().collect(), morphisms, identities, composition })
    }

    /// Exhaustively re-check every `FinCat` invariant.
    pub fn check(&self) -> Result<()> {
        let objset: BTreeSet<&Obj> = self.objects.iter().collect();
        for (m, d) in &self.morphisms {
            if !objset.contains(&d.src) || !objset.contains(&d.tgt) {
                return Err(Error::EndpointMismatch {
                    detail: format!("morphism {m} has unknown endpoint {} or {}", d.src, d.tgt),
                });
            }
        }
        for a in &self.objects {
            let id = self.identities.get(a).ok_or_else(|| Error::Document {
                detail: format!("no identity assigned to object {a}"),
            })?;
            let d = self.morphisms.get(id).ok_or_else(|| Error::Document {
                detail: format!("identity {id} of {a} is not a listed morphism"),
            })?;
            if &d.src != a || &d.tgt != a {
                return Err(Error::EndpointMismatch {
                    detail: format!("identity {id} of {a} has endpoints {} -> {}", d.src, d.tgt),
                });
            }
        }
        // Totality and endpoint discipline of the composition table.
        for ((g, f), gf) in &self.composition {
            let (df, dg) = match (self.morphisms.get(f), self.morphisms.get(g)) {
                (Some(df), Some(dg)) => (df, dg),
                _ => {
                    return Err(Error::Document {
                        detail: format!("composition entry ({g} . {f}) mentions unknown morphisms"),
                    })
                }
            };
            if df.tgt != dg.src {
                return Err(Error::EndpointMismatch {
                    detail: format!(
                        "pair ({g} . {f}) is not composable: tgt({f}) = {} but src({g}) = {}",
                        df.tgt, dg.src
                    ),
                });
            }
            let dgf = self.morphisms.get(gf).ok_or_else(|| Error::Document {
                detail: format!("composite {gf} of ({g} . {f}) is not a listed morphism"),
            })?;
            if dgf.src != df.src || dgf.tgt != dg.tgt {
                return Err(Error::EndpointMismatch {
                    detail: format!(
                        "composite {gf} of ({g} . {f}) has endpoints {} -> {}, expected {} -> {}",
                        dgf.src, dgf.tgt, df.src, dg.tgt
                    ),
                });
            }
        }
        for (f, df) in &self.morphisms {
            for (g, dg) in &self.morphisms {
                if df.tgt == dg.src && !self.composition.contains_key(&(g.clone(), f.clone())) {
                    return Err(Error::MissingComposite { g: g.to_string(), f: f.to_string() });
                }
            }
        }
        // Unit laws.
        for (f, d) in &self.morphisms {
            let id_src = &self.identities[&d.src];
            let id_tgt = &self.identities[&d.tgt];
            if &self.composition[&(f.clone(), id_src.clone())] != f {
                return Err(Error::law("right unit", format!("{f} . {id_src}")));
            }
            if &self.composition[&(id_tgt.clone(), f.clone())] != f {
                return Err(Error::law("left unit", format!("{id_tgt} . {f}")));
            }
        }
        // Associativity on all composable triples.
        for (f, df) in &self.morphisms {
            for (g, dg) in &self.morphisms {
                if df.tgt != dg.src {
                    continue;
                }
                let gf = &self.composition[&(g.clone(), f.clone())];
                for (h, dh) in &self.morphisms {
                    if dg.tgt != dh.src {
                        continue;
                    }
                    let hg = &self.composition[&(h.clone(), g.clone())];
                    let left = &self.composition[&(h.clone(), gf.clone())];
                    let right = &self.composition[&(hg.clone(), f.clone())];
                    if left != right {
                        return Err(Error::law(
                            "associativity",
                            format!("({h} . {g}) . {f} = {right} but {h} . ({g} . {f}) = {left}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn has_object(&self, a: &Obj) -> bool {
        self.objects.binary_search(a).is_ok()
    }

    pub fn has_morphism(&self, m: &Mor) -> bool {
        self.morphisms.contains_key(m)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&Mor, &MorData)> {
        self.morphisms.iter()
    }

    pub fn morphism_names(&self) -> impl Iterator<Item = &Mor> {
        self.morphisms.keys()
    }

    pub fn src(&self, m: &Mor) -> &Obj {
        &self.morphisms[m].src
    }

    pub fn tgt(&self, m: &Mor) -> &Obj {
        &self.morphisms[m].tgt
    }

    pub fn identity(&self, a: &Obj) -> &Mor {
        &self.identities[a]
    }

    pub fn is_identity(&self, m: &Mor) -> bool {
        let d = &self.morphisms[m];
        d.src == d.tgt && self.identities[&d.src] == *m
    }

    /// `compose(g, f)` is `g` after `f`; `None` when the pair is not composable.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Option<&Mor> {
        self.composition.get(&(g.clone(), f.clone()))
    }

    /// Compose a path given in diagrammatic order (first morphism first);
    /// the empty path at `a` is the identity.
    pub fn compose_path(&self, a: &Obj, path: &[Mor]) -> Result<Mor> {
        let mut acc = self.identity(a).clone();
        for m in path {
            acc = self
                .compose(m, &acc)
                .cloned()
                .ok_or_else(|| Error::EndpointMismatch {
                    detail: format!("path step {m} does not compose with {acc}"),
                })?;
        }
        Ok(acc)
    }

    /// All morphisms with the given source.
    pub fn morphisms_from(&self, a: &Obj) -> Vec<&Mor> {
        self.morphisms.iter().filter(|(_, d)| &d.src == a).map(|(m, _)| m).collect()
    }

    /// The hom-set from `a` to `b`.
    pub fn hom(&self, a: &Obj, b: &Obj) -> Vec<&Mor> {
        self.morphisms
            .iter()
            .filter(|(_, d)| &d.src == a && &d.tgt == b)
            .map(|(m, _)| m)
            .collect()
    }

    pub fn non_identity_morphisms(&self) -> Vec<&Mor> {
        self.morphisms.keys().filter(|m| !self.is_identity(m)).collect()
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.iter().map(|o| o.0.clone()).collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(m, d)| RawMorphism { name: m.0.clone(), src: d.src.0.clone(), tgt: d.tgt.0.clone() })
                .collect(),
            identities: self.identities.iter().map(|(a, m)| (a.0.clone(), m.0.clone())).collect(),
            compose: self
                .composition
                .iter()
                .map(|((g, f), gf)| [g.0.clone(), f.0.clone(), gf.0.clone()])
                .collect(),
        }
    }
}

/// Name for a synthesized pair object or morphism.
pub(crate) fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Name for a synthesized triple morphism `(a, u, a')`.
pub(crate) fn triple_name(a: &str, u: &str, b: &str) -> String {
    format!("({a},{u},{b})")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn raw_two() -> RawCategory {
        RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                RawMorphism { name: "id0".into(), src: "0".into(), tgt: "0".into() },
                RawMorphism { name: "id1".into(), src: "1".into(), tgt: "1".into() },
                RawMorphism { name: "u".into(), src: "0".into(), tgt: "1".into() },
            ],
            identities: [("0".to_string(), "id0".to_string()), ("1".to_string(), "id1".to_string())]
                .into_iter()
                .collect(),
            compose: vec![
                ["id0".into(), "id0".into(), "id0".into()],
                ["id1".into(), "id1".into(), "id1".into()],
                ["u".into(), "id0".into(), "u".into()],
                ["id1".into(), "u".into(), "u".into()],
            ],
        }
    }

    #[test]
    fn one_object_category_validates() {
        let one = fixtures::one();
        assert_eq!(one.object_count(), 1);
        assert_eq!(one.morphism_count(), 1);
        one.check().unwrap();
    }

    #[test]
    fn two_validates() {
        let two = FinCat::validate(&raw_two()).unwrap();
        assert_eq!(two.morphism_count(), 3);
        assert_eq!(two.hom(&Obj::new("0"), &Obj::new("1")).len(), 1);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = raw_two();
        raw.compose.retain(|[g, f, _]| !(g == "u" && f == "id0"));
        match FinCat::validate(&raw) {
            Err(Error::MissingComposite { g, f }) => {
                assert_eq!(g, "u");
                assert_eq!(f, "id0");
            }
            other => panic!("expected MissingComposite, got {other:?}"),
        }
    }

    #[test]
    fn non_composable_entry_is_an_endpoint_mismatch() {
        let mut raw = raw_two();
        raw.compose.push(["u".into(), "id1".into(), "u".into()]);
        assert!(matches!(FinCat::validate(&raw), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn broken_unit_law_is_reported() {
        // A unit failure needs parallel morphisms, so start from PAR2 and
        // redirect v . id0 to u.
        let mut raw = fixtures::par2().to_raw();
        for entry in raw.compose.iter_mut() {
            if entry[0] == "v" && entry[1] == "id0" {
                entry[2] = "u".into();
            }
        }
        match FinCat::validate(&raw) {
            Err(Error::LawViolation { law, .. }) => assert_eq!(law, "right unit"),
            other => panic!("expected unit violation, got {other:?}"),
        }
    }

    #[test]
    fn associativity_failure_is_reported() {
        // One object, morphisms {1, a, b}: define a.a = b, with a.b and b.a
        // chosen inconsistently so that (a.a).a != a.(a.a).
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![
                RawMorphism { name: "1".into(), src: "*".into(), tgt: "*".into() },
                RawMorphism { name: "a".into(), src: "*".into(), tgt: "*".into() },
                RawMorphism { name: "b".into(), src: "*".into(), tgt: "*".into() },
            ],
            identities: [("*".to_string(), "1".to_string())].into_iter().collect(),
            compose: vec![
                ["1".into(), "1".into(), "1".into()],
                ["1".into(), "a".into(), "a".into()],
                ["1".into(), "b".into(), "b".into()],
                ["a".into(), "1".into(), "a".into()],
                ["b".into(), "1".into(), "b".into()],
                ["a".into(), "a".into(), "b".into()],
                ["a".into(), "b".into(), "a".into()],
                ["b".into(), "a".into(), "1".into()],
                ["b".into(), "b".into(), "b".into()],
            ],
        };
        match FinCat::validate(&raw) {
            Err(Error::LawViolation { law, .. }) => assert_eq!(law, "associativity"),
            other => panic!("expected associativity violation, got {other:?}"),
        }
    }

    #[test]
    fn compose_path_folds_in_diagram_order() {
        let two = fixtures::two();
        let id0 = two.identity(&Obj::new("0")).clone();
        let u = Mor::new("u");
        let got = two.compose_path(&Obj::new("0"), &[id0, u.clone()]).unwrap();
        assert_eq!(got, u);
    }
}
