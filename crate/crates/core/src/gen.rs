//! Deterministic, seeded generators of small categories, lenses, symmetric
//! lenses and spans for property-based testing.
//!
//! Raw random tables almost never satisfy the lens laws, so every generator
//! builds structured instances — transition systems over a base category —
//! and the validating constructors act as independent oracles.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjunction::{apply_l, apply_r};
use crate::cat::{pair_name, FinCat, Mor, Obj, RawCategory, RawMorphism};
use crate::cofunctor::Cofunctor;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::lens::Lens;
use crate::mealy::{MealyMorphism, State};
use crate::span::LensSpan;
use crate::symlens::SymmetricLens;

/// Configuration for all generators; identical configurations produce
/// identical output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_objects: usize,
    pub max_generators: usize,
    /// Saturation bound used whenever a generator needs a pushout.
    pub closure_bound: usize,
}

impl GenConfig {
    pub fn new(seed: u64) -> GenConfig {
        GenConfig { seed, max_objects: 4, max_generators: 5, closure_bound: 8 }
    }
}

const MORPHISM_CAP: usize = 64;

fn rng_for(cfg: &GenConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// Build a category from owned parts, auto-filling identities and unit
/// composites.
fn build_raw(
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    compose: Vec<(String, String, String)>,
) -> Result<Arc<FinCat>> {
    let mut raw = RawCategory::default();
    for o in &objects {
        let id = format!("id{o}");
        raw.morphisms.push(RawMorphism { name: id.clone(), src: o.clone(), tgt: o.clone() });
        raw.identities.insert(o.clone(), id.clone());
        raw.compose.push([id.clone(), id.clone(), id]);
    }
    for (name, src, tgt) in &morphisms {
        raw.morphisms.push(RawMorphism { name: name.clone(), src: src.clone(), tgt: tgt.clone() });
        raw.compose.push([name.clone(), format!("id{src}"), name.clone()]);
        raw.compose.push([format!("id{tgt}"), name.clone(), name.clone()]);
    }
    raw.objects = objects;
    for (g, f, gf) in compose {
        raw.compose.push([g, f, gf]);
    }
    FinCat::validate(&raw)
}

/// Generate a small category: a random partial order on the objects, plus
/// optional "transparent" idempotent loops that absorb all composites.
pub fn gen_category(cfg: &GenConfig) -> Result<Arc<FinCat>> {
    gen_category_with(&mut rng_for(cfg), cfg)
}

fn gen_category_with(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Result<Arc<FinCat>> {
    if cfg.max_objects < 1 {
        return Err(Error::GenerationFailed { detail: "maxObjects must be at least 1".into() });
    }
    let n = rng.gen_range(1..=cfg.max_objects);
    let mut reach = vec![vec![false; n]; n];
    let mut generators = 0usize;
    for j in 1..n {
        for i in 0..j {
            if generators < cfg.max_generators && rng.gen_bool(0.4) {
                reach[i][j] = true;
                generators += 1;
            }
        }
    }
    // Transitive closure keeps composition total.
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut idem = vec![false; n];
    for flag in idem.iter_mut() {
        if generators < cfg.max_generators && rng.gen_bool(0.25) {
            *flag = true;
            generators += 1;
        }
    }
    let arrow_count = n
        + idem.iter().filter(|b| **b).count()
        + reach.iter().flatten().filter(|b| **b).count();
    if arrow_count > MORPHISM_CAP {
        return Err(Error::GenerationFailed {
            detail: format!("category would have {arrow_count} morphisms (cap {MORPHISM_CAP})"),
        });
    }
    let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let arrow = |i: usize, j: usize| format!("m{i}_{j}");
    let loop_of = |i: usize| format!("e{i}");
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if reach[i][j] {
                morphisms.push((arrow(i, j), objects[i].clone(), objects[j].clone()));
            }
        }
    }
    for i in 0..n {
        if idem[i] {
            morphisms.push((loop_of(i), objects[i].clone(), objects[i].clone()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !reach[i][j] {
                continue;
            }
            for k in 0..n {
                if reach[j][k] {
                    compose.push((arrow(j, k), arrow(i, j), arrow(i, k)));
                }
            }
        }
    }
    for i in 0..n {
        if !idem[i] {
            continue;
        }
        compose.push((loop_of(i), loop_of(i), loop_of(i)));
        for j in 0..n {
            if reach[i][j] {
                compose.push((arrow(i, j), loop_of(i), arrow(i, j)));
            }
            if reach[j][i] {
                compose.push((loop_of(i), arrow(j, i), arrow(j, i)));
            }
        }
    }
    build_raw(objects, morphisms, compose)
        .map_err(|e| Error::GenerationFailed { detail: format!("generated tables invalid: {e}") })
}

/// A randomised functorial action of `base` on state fibers: for every
/// non-identity morphism and every state over its source, a state over its
/// target. Falls back deterministically to the "designated point" action.
fn random_dopf_action(
    rng: &mut ChaCha8Rng,
    base: &Arc<FinCat>,
    assign: &[Obj],
) -> BTreeMap<(Mor, usize), usize> {
    let fiber = |b: &Obj| -> Vec<usize> {
        assign.iter().enumerate().filter(|(_, o)| *o == b).map(|(i, _)| i).collect()
    };
    let cells: Vec<(Mor, usize)> = base
        .non_identity_morphisms()
        .into_iter()
        .flat_map(|u| fiber(base.src(u)).into_iter().map(|s| (u.clone(), s)).collect::<Vec<_>>())
        .collect();
    let mut action: BTreeMap<(Mor, usize), usize> = BTreeMap::new();
    if backtrack_action(rng, base, assign, &cells, 0, &mut action) {
        return action;
    }
    // Designated-point fallback: send everything over b' to the first state
    // of the fiber over b'. Functorial because the designated point is fixed.
    cells
        .iter()
        .map(|(u, s)| ((u.clone(), *s), fiber(base.tgt(u))[0]))
        .collect()
}

fn act(
    base: &Arc<FinCat>,
    action: &BTreeMap<(Mor, usize), usize>,
    u: &Mor,
    s: usize,
) -> Option<usize> {
    if base.is_identity(u) {
        Some(s)
    } else {
        action.get(&(u.clone(), s)).copied()
    }
}

fn backtrack_action(
    rng: &mut ChaCha8Rng,
    base: &Arc<FinCat>,
    assign: &[Obj],
    cells: &[(Mor, usize)],
    idx: usize,
    action: &mut BTreeMap<(Mor, usize), usize>,
) -> bool {
    if idx == cells.len() {
        return true;
    }
    let (u, s) = &cells[idx];
    let mut candidates: Vec<usize> = assign
        .iter()
        .enumerate()
        .filter(|(_, o)| *o == base.tgt(u))
        .map(|(i, _)| i)
        .collect();
    candidates.shuffle(rng);
    for t in candidates {
        action.insert((u.clone(), *s), t);
        if action_consistent(base, action) && backtrack_action(rng, base, assign, cells, idx + 1, action) {
            return true;
        }
        action.remove(&(u.clone(), *s));
    }
    false
}

/// Check every fully-assigned composition constraint of the action.
fn action_consistent(base: &Arc<FinCat>, action: &BTreeMap<(Mor, usize), usize>) -> bool {
    for ((u, s), t) in action {
        for v in base.morphisms_from(base.tgt(u)) {
            let vu = base.compose(v, u).unwrap();
            if let (Some(step), Some(all)) =
                (act(base, action, v, *t), act(base, action, vu, *s))
            {
                if step != all {
                    return false;
                }
            }
        }
    }
    true
}

/// The category of elements of a state action over a base: objects are the
/// states, morphisms are pairs `(state, base morphism)`.
fn elements_category(
    base: &Arc<FinCat>,
    states: &[String],
    assign: &[Obj],
    action: &BTreeMap<(Mor, usize), usize>,
) -> Result<Arc<FinCat>> {
    let mor_of = |s: usize, u: &Mor| pair_name(&states[s], u.as_str());
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    for (s, o) in assign.iter().enumerate() {
        for u in base.morphisms_from(o) {
            if base.is_identity(u) {
                continue;
            }
            let t = act(base, action, u, s).expect("action is total");
            morphisms.push((mor_of(s, u), states[s].clone(), states[t].clone()));
        }
    }
    let full_name = |s: usize, u: &Mor| {
        if base.is_identity(u) {
            format!("id{}", states[s])
        } else {
            mor_of(s, u)
        }
    };
    for (s, o) in assign.iter().enumerate() {
        for u in base.morphisms_from(o) {
            if base.is_identity(u) {
                continue;
            }
            let t = act(base, action, u, s).expect("action is total");
            for v in base.morphisms_from(base.tgt(u)) {
                if base.is_identity(v) {
                    continue;
                }
                let vu = base.compose(v, u).unwrap();
                compose.push((mor_of(t, v), mor_of(s, u), full_name(s, vu)));
            }
        }
    }
    build_raw(states.to_vec(), morphisms, compose)
}

/// A randomised functor with a fixed object assignment, by backtracking over
/// morphism images; `None` when no such functor exists.
fn random_functor(
    rng: &mut ChaCha8Rng,
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    on_objects: BTreeMap<Obj, Obj>,
) -> Option<Functor> {
    let morphisms: Vec<Mor> =
        dom.morphism_names().filter(|m| !dom.is_identity(m)).cloned().collect();
    let mut on_morphisms: BTreeMap<Mor, Mor> = dom
        .objects()
        .iter()
        .map(|a| (dom.identity(a).clone(), cod.identity(&on_objects[a]).clone()))
        .collect();
    if backtrack_functor(rng, dom, cod, &morphisms, 0, &on_objects, &mut on_morphisms) {
        Functor::validate(dom.clone(), cod.clone(), on_objects, on_morphisms).ok()
    } else {
        None
    }
}

fn backtrack_functor(
    rng: &mut ChaCha8Rng,
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    morphisms: &[Mor],
    idx: usize,
    on_objects: &BTreeMap<Obj, Obj>,
    on_morphisms: &mut BTreeMap<Mor, Mor>,
) -> bool {
    if idx == morphisms.len() {
        return true;
    }
    let m = &morphisms[idx];
    let mut candidates: Vec<Mor> = cod
        .hom(&on_objects[dom.src(m)], &on_objects[dom.tgt(m)])
        .into_iter()
        .cloned()
        .collect();
    candidates.shuffle(rng);
    for cand in candidates {
        on_morphisms.insert(m.clone(), cand);
        if functor_consistent(dom, cod, m, on_morphisms)
            && backtrack_functor(rng, dom, cod, morphisms, idx + 1, on_objects, on_morphisms)
        {
            return true;
        }
    }
    on_morphisms.remove(m);
    false
}

fn functor_consistent(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    just: &Mor,
    on_morphisms: &BTreeMap<Mor, Mor>,
) -> bool {
    for (f, df) in dom.morphisms() {
        for (g, dg) in dom.morphisms() {
            if df.tgt != dg.src || (f != just && g != just) {
                continue;
            }
            let gf = dom.compose(g, f).unwrap();
            if let (Some(im_f), Some(im_g), Some(im_gf)) =
                (on_morphisms.get(f), on_morphisms.get(g), on_morphisms.get(gf))
            {
                if cod.compose(im_g, im_f) != Some(im_gf) {
                    return false;
                }
            }
        }
    }
    true
}

/// A transparent idempotent loop at `o` (absorbing all composites) keeps the
/// category associative iff no pair of non-identity morphisms composes
/// through `o` to the identity.
fn transparent_loop_safe(cat: &Arc<FinCat>, o: &Obj) -> bool {
    for f in cat.morphisms_from(o) {
        if cat.is_identity(f) {
            continue;
        }
        for g in cat.hom(cat.tgt(f), o) {
            if !cat.is_identity(g) && cat.compose(g, f) == Some(cat.identity(o)) {
                return false;
            }
        }
    }
    true
}

/// Generate a lens into `b`: a random transition system over `b` gives the
/// put apex; transparent idempotents on random states extend it into the
/// lens's source category, with the get sending them to identities.
pub fn gen_lens(cfg: &GenConfig, b: &Arc<FinCat>) -> Result<Lens> {
    gen_lens_with(&mut rng_for(cfg), cfg, b)
}

fn gen_lens_with(rng: &mut ChaCha8Rng, cfg: &GenConfig, b: &Arc<FinCat>) -> Result<Lens> {
    let extra = rng.gen_range(0..=cfg.max_objects);
    let mut assign: Vec<Obj> = b.objects().to_vec();
    for _ in 0..extra {
        assign.push(b.objects()[rng.gen_range(0..b.object_count())].clone());
    }
    let states: Vec<String> = (0..assign.len()).map(|i| format!("x{i}")).collect();
    let action = random_dopf_action(rng, b, &assign);
    // Source category: the category of elements plus transparent idempotents.
    let mor_of = |s: usize, u: &Mor| pair_name(&states[s], u.as_str());
    let elements = elements_category(b, &states, &assign, &action)
        .map_err(|e| Error::GenerationFailed { detail: format!("put apex invalid: {e}") })?;
    let mut idem: Vec<bool> = states
        .iter()
        .map(|s| rng.gen_bool(0.3) && transparent_loop_safe(&elements, &Obj::new(s)))
        .collect();
    if elements.morphism_count() + idem.iter().filter(|x| **x).count() > MORPHISM_CAP {
        idem = vec![false; states.len()];
    }
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    for m in elements.non_identity_morphisms() {
        morphisms.push((
            m.as_str().to_string(),
            elements.src(m).as_str().to_string(),
            elements.tgt(m).as_str().to_string(),
        ));
    }
    for (g, f) in elements
        .morphisms()
        .flat_map(|(f, df)| {
            elements
                .morphisms()
                .filter(move |(_, dg)| df.tgt == dg.src)
                .map(move |(g, _)| (g.clone(), f.clone()))
        })
        .collect::<Vec<_>>()
    {
        if elements.is_identity(&g) || elements.is_identity(&f) {
            continue;
        }
        let gf = elements.compose(&g, &f).unwrap();
        let gf_name = if elements.is_identity(gf) {
            format!("id{}", elements.src(&f))
        } else {
            gf.as_str().to_string()
        };
        compose.push((g.as_str().to_string(), f.as_str().to_string(), gf_name));
    }
    let loop_of = |s: usize| format!("e{s}");
    for (s, flag) in idem.iter().enumerate() {
        if !*flag {
            continue;
        }
        morphisms.push((loop_of(s), states[s].clone(), states[s].clone()));
        compose.push((loop_of(s), loop_of(s), loop_of(s)));
        for m in elements.non_identity_morphisms() {
            if elements.src(m) == &Obj::new(&states[s]) {
                compose.push((m.as_str().to_string(), loop_of(s), m.as_str().to_string()));
            }
            if elements.tgt(m) == &Obj::new(&states[s]) {
                compose.push((loop_of(s), m.as_str().to_string(), m.as_str().to_string()));
            }
        }
    }
    let a = build_raw(states.clone(), morphisms, compose)
        .map_err(|e| Error::GenerationFailed { detail: format!("source category invalid: {e}") })?;
    // Get and Put tables.
    let on_objects: BTreeMap<Obj, Obj> = states
        .iter()
        .enumerate()
        .map(|(s, name)| (Obj::new(name), assign[s].clone()))
        .collect();
    let mut on_morphisms: BTreeMap<Mor, Mor> = BTreeMap::new();
    let mut lifts: BTreeMap<(Obj, Mor), Mor> = BTreeMap::new();
    for (s, name) in states.iter().enumerate() {
        let x = Obj::new(name);
        on_morphisms.insert(a.identity(&x).clone(), b.identity(&assign[s]).clone());
        if idem[s] {
            on_morphisms.insert(Mor::new(loop_of(s)), b.identity(&assign[s]).clone());
        }
        for u in b.morphisms_from(&assign[s]) {
            let lift = if b.is_identity(u) {
                a.identity(&x).clone()
            } else {
                Mor::new(mor_of(s, u))
            };
            if !b.is_identity(u) {
                on_morphisms.insert(lift.clone(), u.clone());
            }
            lifts.insert((x.clone(), u.clone()), lift);
        }
    }
    Lens::from_tables(a, b.clone(), on_objects, on_morphisms, lifts)
        .map_err(|e| Error::GenerationFailed { detail: format!("generated lens invalid: {e}") })
}

/// The "product" symmetric lens between any two categories: states are all
/// object pairs; each direction updates its own component and outputs an
/// identity.
pub fn product_symlens(a: &Arc<FinCat>, b: &Arc<FinCat>) -> SymmetricLens {
    let direction = |from: &Arc<FinCat>, to: &Arc<FinCat>, swap: bool| -> MealyMorphism {
        let mut states = Vec::new();
        let mut g0 = BTreeMap::new();
        let mut f0 = BTreeMap::new();
        let mut transitions = BTreeMap::new();
        for x in a.objects() {
            for y in b.objects() {
                let st = State::new(pair_name(x.as_str(), y.as_str()));
                let (own, other) = if swap { (y, x) } else { (x, y) };
                g0.insert(st.clone(), own.clone());
                f0.insert(st.clone(), other.clone());
                for u in from.morphisms_from(own) {
                    let next = if swap {
                        State::new(pair_name(x.as_str(), from.tgt(u).as_str()))
                    } else {
                        State::new(pair_name(from.tgt(u).as_str(), y.as_str()))
                    };
                    transitions
                        .insert((st.clone(), u.clone()), (next, to.identity(other).clone()));
                }
                states.push(st);
            }
        }
        MealyMorphism::validate(from.clone(), to.clone(), states, g0, f0, transitions)
            .expect("product symmetric lens direction is a Mealy morphism")
    };
    SymmetricLens::validate(direction(a, b, false), direction(b, a, true))
        .expect("product symmetric lens validates")
}

/// Generate a symmetric lens between `a` and `b`: either the product lens or
/// a randomised pair of transition systems with randomised output functors,
/// falling back to the product lens when the random search fails.
pub fn gen_symlens(cfg: &GenConfig, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Result<SymmetricLens> {
    gen_symlens_with(&mut rng_for(cfg), cfg, a, b)
}

fn gen_symlens_with(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
) -> Result<SymmetricLens> {
    if rng.gen_bool(0.34) {
        return Ok(product_symlens(a, b));
    }
    for _ in 0..12 {
        if let Some(s) = random_symlens(rng, cfg, a, b) {
            return Ok(s);
        }
    }
    Ok(product_symlens(a, b))
}

fn random_symlens(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
) -> Option<SymmetricLens> {
    let base = a.object_count().max(b.object_count());
    let k = base + rng.gen_range(0..=cfg.max_objects.min(3));
    // Surjective anchor assignments on both sides keep all fibers inhabited.
    let surjective = |rng: &mut ChaCha8Rng, cat: &Arc<FinCat>| -> Vec<Obj> {
        let mut v: Vec<Obj> = cat.objects().to_vec();
        while v.len() < k {
            v.push(cat.objects()[rng.gen_range(0..cat.object_count())].clone());
        }
        v.shuffle(rng);
        v
    };
    let g0 = surjective(rng, a);
    let f0 = surjective(rng, b);
    let states: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let state_objs: Vec<State> = states.iter().map(|s| State::new(s)).collect();
    let direction = |rng: &mut ChaCha8Rng,
                     from: &Arc<FinCat>,
                     to: &Arc<FinCat>,
                     own: &[Obj],
                     other: &[Obj]|
     -> Option<MealyMorphism> {
        let action = random_dopf_action(rng, from, own);
        let apex = elements_category(from, &states, own, &action).ok()?;
        let on_objects: BTreeMap<Obj, Obj> = states
            .iter()
            .enumerate()
            .map(|(s, name)| (Obj::new(name), other[s].clone()))
            .collect();
        let outputs = random_functor(rng, &apex, to, on_objects)?;
        let mut transitions = BTreeMap::new();
        for (s, name) in states.iter().enumerate() {
            let x = State::new(name);
            for u in from.morphisms_from(&own[s]) {
                let t = act(from, &action, u, s).expect("action is total");
                let lifted = if from.is_identity(u) {
                    apex.identity(&Obj::new(name)).clone()
                } else {
                    Mor::new(pair_name(name, u.as_str()))
                };
                transitions.insert(
                    (x.clone(), u.clone()),
                    (State::new(&states[t]), outputs.mor(&lifted).clone()),
                );
            }
        }
        MealyMorphism::validate(
            from.clone(),
            to.clone(),
            state_objs.clone(),
            states.iter().enumerate().map(|(s, n)| (State::new(n), own[s].clone())).collect(),
            states.iter().enumerate().map(|(s, n)| (State::new(n), other[s].clone())).collect(),
            transitions,
        )
        .ok()
    };
    let forward = direction(rng, a, b, &g0, &f0)?;
    let backward = direction(rng, b, a, &f0, &g0)?;
    SymmetricLens::validate(forward, backward).ok()
}

/// Generate a span of lenses between `a` and `b`: the image of a generated
/// symmetric lens under `R` or `L`, or an `R`-image whose apex is extended
/// by transparent idempotents (which makes the get pairing non-fully
/// faithful and the unit non-invertible).
pub fn gen_span(cfg: &GenConfig, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Result<LensSpan> {
    let rng = &mut rng_for(cfg);
    let sym = gen_symlens_with(rng, cfg, a, b)?;
    match rng.gen_range(0..3u8) {
        0 => apply_r(&sym),
        1 => apply_l(&sym, cfg.closure_bound).or_else(|_| apply_r(&sym)),
        _ => {
            let span = apply_r(&sym)?;
            extend_span_with_idempotents(rng, &span)
        }
    }
    .map_err(|e| Error::GenerationFailed { detail: format!("span construction failed: {e}") })
}

/// Extend the apex of a span by transparent idempotent loops on a random
/// non-empty subset of objects; gets send them to identities and the puts
/// are unchanged.
pub fn extend_span_with_idempotents(
    rng: &mut ChaCha8Rng,
    span: &LensSpan,
) -> Result<LensSpan> {
    let apex = span.apex();
    let safe: Vec<bool> =
        apex.objects().iter().map(|o| transparent_loop_safe(apex, o)).collect();
    if !safe.iter().any(|x| *x) {
        return Ok(span.clone());
    }
    let mut chosen: Vec<bool> =
        safe.iter().map(|s| *s && rng.gen_bool(0.5)).collect();
    if !chosen.iter().any(|x| *x) {
        let eligible: Vec<usize> =
            safe.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect();
        chosen[eligible[rng.gen_range(0..eligible.len())]] = true;
    }
    let mut raw = apex.to_raw();
    for (i, o) in apex.objects().iter().enumerate() {
        if !chosen[i] {
            continue;
        }
        let e = format!("loop_{o}");
        raw.morphisms.push(RawMorphism {
            name: e.clone(),
            src: o.as_str().to_string(),
            tgt: o.as_str().to_string(),
        });
        raw.compose.push([e.clone(), e.clone(), e.clone()]);
        let id = apex.identity(o).as_str().to_string();
        raw.compose.push([e.clone(), id.clone(), e.clone()]);
        raw.compose.push([id, e.clone(), e.clone()]);
        for (m, d) in apex.morphisms() {
            if apex.is_identity(m) {
                continue;
            }
            if &d.src == o {
                raw.compose.push([m.as_str().to_string(), e.clone(), m.as_str().to_string()]);
            }
            if &d.tgt == o {
                raw.compose.push([e.clone(), m.as_str().to_string(), m.as_str().to_string()]);
            }
        }
    }
    let extended = FinCat::validate(&raw)?;
    let extend_lens = |lens: &Lens| -> Result<Lens> {
        let mut on_morphisms = lens.get().on_morphisms().clone();
        for (i, o) in apex.objects().iter().enumerate() {
            if chosen[i] {
                on_morphisms.insert(
                    Mor::new(format!("loop_{o}")),
                    lens.cod().identity(lens.get().ob(o)).clone(),
                );
            }
        }
        let get = Functor::validate(
            extended.clone(),
            lens.cod().clone(),
            lens.get().on_objects().clone(),
            on_morphisms,
        )?;
        let put = Cofunctor::validate(
            extended.clone(),
            lens.cod().clone(),
            lens.put().obj_assign().clone(),
            lens.put().lifts().clone(),
        )?;
        Lens::validate(get, put)
    };
    LensSpan::validate(extend_lens(span.left())?, extend_lens(span.right())?)
}
