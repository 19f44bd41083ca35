//! Brute-force enumeration of functors between small categories.
//!
//! Used by the uniqueness checks for bo-ff fills, pullback and product
//! universal properties, and 2-cell hom-set enumeration. Enumeration
//! backtracks over object and morphism tables, pruning with the composition
//! table as soon as a pair of assigned morphisms composes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::functor::Functor;

/// All functors from `dom` to `cod`.
pub fn all_functors(dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Vec<Functor> {
    all_functors_with(dom, cod, |_| None)
}

/// All functors whose object assignment respects the given candidate
/// restriction; `None` means any codomain object is allowed.
pub fn all_functors_with(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    object_candidates: impl Fn(&Obj) -> Option<Vec<Obj>>,
) -> Vec<Functor> {
    let objects: Vec<Obj> = dom.objects().to_vec();
    let mut out = Vec::new();
    let mut ob_map: BTreeMap<Obj, Obj> = BTreeMap::new();
    assign_objects(dom, cod, &objects, 0, &object_candidates, &mut ob_map, &mut out);
    out
}

fn assign_objects(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    objects: &[Obj],
    idx: usize,
    object_candidates: &impl Fn(&Obj) -> Option<Vec<Obj>>,
    ob_map: &mut BTreeMap<Obj, Obj>,
    out: &mut Vec<Functor>,
) {
    if idx == objects.len() {
        let morphisms: Vec<Mor> = dom
            .morphism_names()
            .filter(|m| !dom.is_identity(m))
            .cloned()
            .collect();
        let mut mor_map: BTreeMap<Mor, Mor> = dom
            .objects()
            .iter()
            .map(|a| (dom.identity(a).clone(), cod.identity(&ob_map[a]).clone()))
            .collect();
        assign_morphisms(dom, cod, &morphisms, 0, ob_map, &mut mor_map, out);
        return;
    }
    let a = &objects[idx];
    let candidates = match object_candidates(a) {
        Some(cs) => cs,
        None => cod.objects().to_vec(),
    };
    for b in candidates {
        if !cod.has_object(&b) {
            continue;
        }
        ob_map.insert(a.clone(), b);
        assign_objects(dom, cod, objects, idx + 1, object_candidates, ob_map, out);
    }
    ob_map.remove(a);
}

fn assign_morphisms(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    morphisms: &[Mor],
    idx: usize,
    ob_map: &BTreeMap<Obj, Obj>,
    mor_map: &mut BTreeMap<Mor, Mor>,
    out: &mut Vec<Functor>,
) {
    if idx == morphisms.len() {
        if let Ok(f) = Functor::validate(
            dom_arc(dom),
            dom_arc(cod),
            ob_map.clone(),
            mor_map.clone(),
        ) {
            out.push(f);
        }
        return;
    }
    let m = &morphisms[idx];
    let src = &ob_map[dom.src(m)];
    let tgt = &ob_map[dom.tgt(m)];
    for cand in cod.hom(src, tgt) {
        mor_map.insert(m.clone(), cand.clone());
        if consistent_so_far(dom, cod, m, mor_map) {
            assign_morphisms(dom, cod, morphisms, idx + 1, ob_map, mor_map, out);
        }
    }
    mor_map.remove(m);
}

fn dom_arc(c: &Arc<FinCat>) -> Arc<FinCat> {
    c.clone()
}

/// Check every composition entry all of whose factors are assigned and that
/// involves the morphism just assigned.
fn consistent_so_far(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    just: &Mor,
    mor_map: &BTreeMap<Mor, Mor>,
) -> bool {
    for (f, df) in dom.morphisms() {
        for (g, dg) in dom.morphisms() {
            if df.tgt != dg.src {
                continue;
            }
            if f != just && g != just {
                continue;
            }
            let gf = dom.compose(g, f).unwrap();
            if let (Some(im_f), Some(im_g), Some(im_gf)) =
                (mor_map.get(f), mor_map.get(g), mor_map.get(gf))
            {
                if cod.compose(im_g, im_f) != Some(im_gf) {
                    return false;
                }
            }
        }
    }
    true
}
