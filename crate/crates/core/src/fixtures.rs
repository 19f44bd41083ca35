//! Named fixture categories used throughout the test suites and examples.

use std::sync::Arc;

use crate::cat::{FinCat, RawCategory, RawMorphism};

/// Build a category from objects, non-identity morphisms and the composition
/// table on non-identity pairs. Identities (named `id<obj>`) and all unit
/// composites are filled in automatically.
pub fn build(
    objects: &[&str],
    morphisms: &[(&str, &str, &str)],
    compose: &[(&str, &str, &str)],
) -> Arc<FinCat> {
    let mut raw = RawCategory::default();
    raw.objects = objects.iter().map(|o| o.to_string()).collect();
    for o in objects {
        let id = format!("id{o}");
        raw.morphisms.push(RawMorphism { name: id.clone(), src: o.to_string(), tgt: o.to_string() });
        raw.identities.insert(o.to_string(), id.clone());
        raw.compose.push([id.clone(), id.clone(), id]);
    }
    for (name, src, tgt) in morphisms {
        raw.morphisms.push(RawMorphism {
            name: name.to_string(),
            src: src.to_string(),
            tgt: tgt.to_string(),
        });
        raw.compose.push([name.to_string(), format!("id{src}"), name.to_string()]);
        raw.compose.push([format!("id{tgt}"), name.to_string(), name.to_string()]);
    }
    for (g, f, gf) in compose {
        raw.compose.push([g.to_string(), f.to_string(), gf.to_string()]);
    }
    FinCat::validate(&raw).expect("fixture category must validate")
}

/// ONE: a single object `*` with only its identity.
pub fn one() -> Arc<FinCat> {
    build(&["*"], &[], &[])
}

/// TWO: objects 0, 1 and a single arrow `u : 0 -> 1`.
pub fn two() -> Arc<FinCat> {
    build(&["0", "1"], &[("u", "0", "1")], &[])
}

/// DISC2: the discrete category on objects 0, 1.
pub fn disc2() -> Arc<FinCat> {
    build(&["0", "1"], &[], &[])
}

/// IDEM: one object with a non-identity idempotent `e`.
pub fn idem() -> Arc<FinCat> {
    build(&["*"], &[("e", "*", "*")], &[("e", "e", "e")])
}

/// PAR2: objects 0, 1 with two parallel arrows `u, v : 0 -> 1`.
pub fn par2() -> Arc<FinCat> {
    build(&["0", "1"], &[("u", "0", "1"), ("v", "0", "1")], &[])
}

/// THREE: the linear order 0 -> 1 -> 2 with composite `w = v . u`.
pub fn three() -> Arc<FinCat> {
    build(
        &["0", "1", "2"],
        &[("u", "0", "1"), ("v", "1", "2"), ("w", "0", "2")],
        &[("v", "u", "w")],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_validate() {
        for cat in [one(), two(), disc2(), idem(), par2(), three()] {
            cat.check().unwrap();
        }
    }

    #[test]
    fn idem_has_a_real_idempotent() {
        let c = idem();
        let e = crate::cat::Mor::new("e");
        assert!(!c.is_identity(&e));
        assert_eq!(c.compose(&e, &e), Some(&e));
    }
}
