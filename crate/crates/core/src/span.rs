//! Spans of lenses, the fake pullback, morphisms over a fixed base, and the
//! product of lenses over a base.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{pair_name, FinCat, Mor, Obj};
use crate::cofunctor::Cofunctor;
use crate::error::{Error, Result};
use crate::functor::{pullback, Functor};
use crate::lens::{lens_diagram_rep, Lens};

/// A span of lenses `A <- P -> B` with a shared apex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LensSpan {
    left: Lens,
    right: Lens,
}

impl LensSpan {
    pub fn validate(left: Lens, right: Lens) -> Result<LensSpan> {
        if left.dom().as_ref() != right.dom().as_ref() {
            return Err(Error::shape("span legs do not share the apex"));
        }
        Ok(LensSpan { left, right })
    }

    pub fn apex(&self) -> &Arc<FinCat> {
        self.left.dom()
    }

    /// Left endpoint category.
    pub fn left_base(&self) -> &Arc<FinCat> {
        self.left.cod()
    }

    /// Right endpoint category.
    pub fn right_base(&self) -> &Arc<FinCat> {
        self.right.cod()
    }

    pub fn left(&self) -> &Lens {
        &self.left
    }

    pub fn right(&self) -> &Lens {
        &self.right
    }

    pub fn identity(cat: Arc<FinCat>) -> LensSpan {
        LensSpan { left: Lens::identity(cat.clone()), right: Lens::identity(cat) }
    }
}

/// Embed an asymmetric lens `A -> B` as the span `A <- A -> B` whose left
/// leg is the identity lens.
pub fn embed_lens_spn(l: &Lens) -> LensSpan {
    LensSpan { left: Lens::identity(l.dom().clone()), right: l.clone() }
}

/// The fake pullback of a cospan of lenses `A -> B <- C`: the genuine
/// pullback of the Get functors, with projection lenses whose puts fill the
/// other component using the other lens's put.
pub fn fake_pullback(f: &Lens, g: &Lens) -> Result<LensSpan> {
    if f.cod().as_ref() != g.cod().as_ref() {
        return Err(Error::precondition("fake pullback: codomains differ"));
    }
    let (p, pa, pc) = pullback(f.get(), g.get())?;
    let mut left_lifts: BTreeMap<(Obj, Mor), Mor> = BTreeMap::new();
    let mut right_lifts: BTreeMap<(Obj, Mor), Mor> = BTreeMap::new();
    for x in p.objects() {
        let a = pa.ob(x);
        let c = pc.ob(x);
        for u in f.dom().morphisms_from(a) {
            let other = g.put().lift(c, f.get().mor(u));
            left_lifts.insert(
                (x.clone(), u.clone()),
                Mor::new(pair_name(u.as_str(), other.as_str())),
            );
        }
        for w in g.dom().morphisms_from(c) {
            let other = f.put().lift(a, g.get().mor(w));
            right_lifts.insert(
                (x.clone(), w.clone()),
                Mor::new(pair_name(other.as_str(), w.as_str())),
            );
        }
    }
    let left_put =
        Cofunctor::validate(p.clone(), f.dom().clone(), pa.on_objects().clone(), left_lifts)?;
    let right_put =
        Cofunctor::validate(p.clone(), g.dom().clone(), pc.on_objects().clone(), right_lifts)?;
    LensSpan::validate(Lens::validate(pa, left_put)?, Lens::validate(pc, right_put)?)
}

/// Horizontal composition of spans of lenses via the fake pullback of the
/// middle cospan.
pub fn spnlens_hcompose(first: &LensSpan, second: &LensSpan) -> Result<LensSpan> {
    if first.right_base().as_ref() != second.left_base().as_ref() {
        return Err(Error::precondition("span composition: middle categories differ"));
    }
    let middle = fake_pullback(first.right(), second.left())?;
    LensSpan::validate(
        Lens::compose(middle.left(), first.left())?,
        Lens::compose(middle.right(), second.right())?,
    )
}

/// Check that a functor between the domains of two lenses over the same
/// base commutes with Get and Put, and return the induced functor between
/// the diagram apexes, sending `(a, u)` to `(h(a), u)`.
pub fn lensb_hom_check(src: &Lens, tgt: &Lens, h: &Functor) -> Result<Functor> {
    if h.dom().as_ref() != src.dom().as_ref() || h.cod().as_ref() != tgt.dom().as_ref() {
        return Err(Error::precondition("lens morphism: endpoints differ"));
    }
    if src.cod().as_ref() != tgt.cod().as_ref() {
        return Err(Error::precondition("lens morphism: base categories differ"));
    }
    let composite = Functor::compose(tgt.get(), h)?;
    if &composite != src.get() {
        return Err(Error::shape("lens morphism does not commute with Get"));
    }
    for ((a, u), w) in src.put().lifts() {
        let expected = tgt.put().lift(h.ob(a), u);
        if h.mor(w) != expected {
            return Err(Error::shape(format!(
                "lens morphism does not commute with Put at ({a}, {u})"
            )));
        }
    }
    let src_diagram = lens_diagram_rep(src);
    let tgt_diagram = lens_diagram_rep(tgt);
    let on_objects: BTreeMap<Obj, Obj> = h.on_objects().clone();
    let mut on_morphisms: BTreeMap<Mor, Mor> = BTreeMap::new();
    for ((a, u), _) in src.put().lifts() {
        on_morphisms.insert(
            Mor::new(pair_name(a.as_str(), u.as_str())),
            Mor::new(pair_name(h.ob(a).as_str(), u.as_str())),
        );
    }
    Functor::validate(src_diagram.apex, tgt_diagram.apex, on_objects, on_morphisms)
}

/// A morphism of spans of lenses: a functor between the apexes that is a
/// lens morphism over both bases.
pub fn spnlens_2cell_check(src: &LensSpan, tgt: &LensSpan, h: &Functor) -> Result<()> {
    lensb_hom_check(src.left(), tgt.left(), h)?;
    lensb_hom_check(src.right(), tgt.right(), h)?;
    Ok(())
}

/// A validated morphism of spans of lenses. Only the apex functor is
/// stored; the induced functors on the put-diagram apexes are recomputed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanLensMorphism {
    h: Functor,
}

impl SpanLensMorphism {
    pub fn validate(src: &LensSpan, tgt: &LensSpan, h: Functor) -> Result<SpanLensMorphism> {
        spnlens_2cell_check(src, tgt, &h)?;
        Ok(SpanLensMorphism { h })
    }

    pub fn identity(s: &LensSpan) -> SpanLensMorphism {
        SpanLensMorphism { h: Functor::identity(s.apex().clone()) }
    }

    pub fn h(&self) -> &Functor {
        &self.h
    }

    /// The induced functor between the left put-diagram apexes.
    pub fn induced_left(&self, src: &LensSpan, tgt: &LensSpan) -> Result<Functor> {
        lensb_hom_check(src.left(), tgt.left(), &self.h)
    }

    /// The induced functor between the right put-diagram apexes.
    pub fn induced_right(&self, src: &LensSpan, tgt: &LensSpan) -> Result<Functor> {
        lensb_hom_check(src.right(), tgt.right(), &self.h)
    }

    /// The inverse 2-cell, if the apex functor is an isomorphism whose
    /// inverse is itself a 2-cell.
    pub fn inverse(&self, src: &LensSpan, tgt: &LensSpan) -> Result<SpanLensMorphism> {
        SpanLensMorphism::validate(tgt, src, self.h.inverse()?)
    }
}

/// The product of two lenses over the same base, with projection functors
/// that are lens morphisms over the base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LensProduct {
    pub product: Lens,
    pub span: LensSpan,
    pub proj_left: Functor,
    pub proj_right: Functor,
}

/// Build the product of `f : A -> B` and `g : C -> B` in the category of
/// lenses over `B`: the apex of the fake pullback with the diagonal Get and
/// the componentwise Put.
pub fn lensb_product(f: &Lens, g: &Lens) -> Result<LensProduct> {
    let span = fake_pullback(f, g)?;
    let p = span.apex().clone();
    let pa = span.left().get().clone();
    let pc = span.right().get().clone();
    let get = Functor::compose(f.get(), &pa)?;
    let mut lifts: BTreeMap<(Obj, Mor), Mor> = BTreeMap::new();
    for x in p.objects() {
        let a = pa.ob(x);
        let c = pc.ob(x);
        for u in f.cod().morphisms_from(get.ob(x)) {
            let wa = f.put().lift(a, u);
            let wc = g.put().lift(c, u);
            lifts.insert((x.clone(), u.clone()), Mor::new(pair_name(wa.as_str(), wc.as_str())));
        }
    }
    let put = Cofunctor::validate(p, f.cod().clone(), get.on_objects().clone(), lifts)?;
    let product = Lens::validate(get, put)?;
    lensb_hom_check(&product, f, &pa)?;
    lensb_hom_check(&product, g, &pc)?;
    Ok(LensProduct { product, span, proj_left: pa, proj_right: pc })
}

/// The mediating lens morphism into a product: the pairing of two lens
/// morphisms, checked to be a lens morphism itself.
pub fn lensb_product_mediate(
    prod: &LensProduct,
    m: &Lens,
    h_left: &Functor,
    h_right: &Functor,
) -> Result<Functor> {
    let on_objects: BTreeMap<Obj, Obj> = m
        .dom()
        .objects()
        .iter()
        .map(|x| {
            (x.clone(), Obj::new(pair_name(h_left.ob(x).as_str(), h_right.ob(x).as_str())))
        })
        .collect();
    let on_morphisms: BTreeMap<Mor, Mor> = m
        .dom()
        .morphism_names()
        .map(|w| {
            (w.clone(), Mor::new(pair_name(h_left.mor(w).as_str(), h_right.mor(w).as_str())))
        })
        .collect();
    let mediator = Functor::validate(
        m.dom().clone(),
        prod.product.dom().clone(),
        on_objects,
        on_morphisms,
    )?;
    lensb_hom_check(m, &prod.product, &mediator)?;
    Ok(mediator)
}

/// The two apexes named by a coherence cell, with the renaming functor
/// between them validated as an invertible 2-cell.
fn coherence_cell(
    src: &LensSpan,
    tgt: &LensSpan,
    on_objects: BTreeMap<Obj, Obj>,
    mut on_morphisms: BTreeMap<Mor, Mor>,
) -> Result<SpanLensMorphism> {
    for (a, b) in &on_objects {
        on_morphisms.insert(src.apex().identity(a).clone(), tgt.apex().identity(b).clone());
    }
    let h = Functor::validate(src.apex().clone(), tgt.apex().clone(), on_objects, on_morphisms)?;
    let cell = SpanLensMorphism::validate(src, tgt, h)?;
    cell.inverse(src, tgt)?;
    Ok(cell)
}

/// The associator: an invertible 2-cell from `(s1 ∘ s2) ∘ s3` to
/// `s1 ∘ (s2 ∘ s3)`, renaming `((x,y),z)` to `(x,(y,z))`.
pub fn spnlens_associator(
    s1: &LensSpan,
    s2: &LensSpan,
    s3: &LensSpan,
) -> Result<(LensSpan, LensSpan, SpanLensMorphism)> {
    let left = spnlens_hcompose(&spnlens_hcompose(s1, s2)?, s3)?;
    let right = spnlens_hcompose(s1, &spnlens_hcompose(s2, s3)?)?;
    let mut on_objects = BTreeMap::new();
    for x in s1.apex().objects() {
        for y in s2.apex().objects() {
            let xy = pair_name(x.as_str(), y.as_str());
            for z in s3.apex().objects() {
                let nested = Obj::new(pair_name(&xy, z.as_str()));
                if left.apex().has_object(&nested) {
                    let yz = pair_name(y.as_str(), z.as_str());
                    on_objects.insert(nested, Obj::new(pair_name(x.as_str(), &yz)));
                }
            }
        }
    }
    let mut on_morphisms = BTreeMap::new();
    for u in s1.apex().morphism_names() {
        for v in s2.apex().morphism_names() {
            let uv = pair_name(u.as_str(), v.as_str());
            for w in s3.apex().morphism_names() {
                let nested = Mor::new(pair_name(&uv, w.as_str()));
                if left.apex().has_morphism(&nested) && !left.apex().is_identity(&nested) {
                    let vw = pair_name(v.as_str(), w.as_str());
                    on_morphisms.insert(nested, Mor::new(pair_name(u.as_str(), &vw)));
                }
            }
        }
    }
    let cell = coherence_cell(&left, &right, on_objects, on_morphisms)?;
    Ok((left, right, cell))
}

/// The left unitor: an invertible 2-cell from `id ∘ s` to `s`, dropping the
/// redundant first component of each pair.
pub fn spnlens_left_unitor(s: &LensSpan) -> Result<(LensSpan, SpanLensMorphism)> {
    let id = LensSpan::identity(s.left_base().clone());
    let composite = spnlens_hcompose(&id, s)?;
    let mut on_objects = BTreeMap::new();
    for a in s.left_base().objects() {
        for x in s.apex().objects() {
            let pair = Obj::new(pair_name(a.as_str(), x.as_str()));
            if composite.apex().has_object(&pair) {
                on_objects.insert(pair, x.clone());
            }
        }
    }
    let mut on_morphisms = BTreeMap::new();
    for u in s.left_base().morphism_names() {
        for m in s.apex().morphism_names() {
            let pair = Mor::new(pair_name(u.as_str(), m.as_str()));
            if composite.apex().has_morphism(&pair) && !composite.apex().is_identity(&pair) {
                on_morphisms.insert(pair, m.clone());
            }
        }
    }
    let cell = coherence_cell(&composite, s, on_objects, on_morphisms)?;
    Ok((composite, cell))
}

/// The right unitor: an invertible 2-cell from `s ∘ id` to `s`.
pub fn spnlens_right_unitor(s: &LensSpan) -> Result<(LensSpan, SpanLensMorphism)> {
    let id = LensSpan::identity(s.right_base().clone());
    let composite = spnlens_hcompose(s, &id)?;
    let mut on_objects = BTreeMap::new();
    for x in s.apex().objects() {
        for c in s.right_base().objects() {
            let pair = Obj::new(pair_name(x.as_str(), c.as_str()));
            if composite.apex().has_object(&pair) {
                on_objects.insert(pair, x.clone());
            }
        }
    }
    let mut on_morphisms = BTreeMap::new();
    for m in s.apex().morphism_names() {
        for u in s.right_base().morphism_names() {
            let pair = Mor::new(pair_name(m.as_str(), u.as_str()));
            if composite.apex().has_morphism(&pair) && !composite.apex().is_identity(&pair) {
                on_morphisms.insert(pair, m.clone());
            }
        }
    }
    let cell = coherence_cell(&composite, s, on_objects, on_morphisms)?;
    Ok((composite, cell))
}
