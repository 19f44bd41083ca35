//! JSON document schemas for every structure in the crate, with kind
//! auto-detection, path or inline references, and deterministic
//! serialisation (sorted keys, sorted entry lists, trailing newline).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{FinCat, Mor, Obj, RawCategory};
use crate::cofunctor::Cofunctor;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::lens::Lens;
use crate::mealy::{MealyMorphism, State};
use crate::span::{LensSpan, SpanLensMorphism};
use crate::symlens::{SymLensMorphism, SymmetricLens};

/// A reference to a sub-document: either a path (relative to the referring
/// file) or the document inline.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum DocRef<T> {
    Path(String),
    Inline(T),
}

impl<T: serde::de::DeserializeOwned + Clone> DocRef<T> {
    fn resolve(&self, base: &Path) -> Result<T> {
        match self {
            DocRef::Inline(t) => Ok(t.clone()),
            DocRef::Path(p) => {
                let full = base.join(p);
                let text = std::fs::read_to_string(&full).map_err(|e| Error::Document {
                    detail: format!("{}: {e}", full.display()),
                })?;
                parse_with_context(&full, &text)
            }
        }
    }
}

fn parse_with_context<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document {
        detail: format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FunctorDoc {
    pub dom: DocRef<RawCategory>,
    pub cod: DocRef<RawCategory>,
    #[serde(rename = "onObjects")]
    pub on_objects: BTreeMap<String, String>,
    #[serde(rename = "onMorphisms")]
    pub on_morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CofunctorDoc {
    /// The category whose morphisms are lifted (codomain of the cofunctor).
    pub b: DocRef<RawCategory>,
    /// The category in which lifts live (domain of the lifting data).
    pub a: DocRef<RawCategory>,
    #[serde(rename = "objAssign")]
    pub obj_assign: BTreeMap<String, String>,
    /// Triples `[a, u, lift]`.
    pub lifts: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MealyDoc {
    pub a: DocRef<RawCategory>,
    pub b: DocRef<RawCategory>,
    pub states: Vec<String>,
    pub g0: BTreeMap<String, String>,
    pub f0: BTreeMap<String, String>,
    /// Quadruples `[x, u, q, f]`: in state `x` on input `u`, go to `q`
    /// emitting `f`.
    pub transitions: Vec<[String; 4]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LensDoc {
    pub get: DocRef<FunctorDoc>,
    pub put: DocRef<CofunctorDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpanDoc {
    pub apex: DocRef<RawCategory>,
    #[serde(rename = "left-lens")]
    pub left: DocRef<LensDoc>,
    #[serde(rename = "right-lens")]
    pub right: DocRef<LensDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SymLensDoc {
    pub states: Vec<String>,
    #[serde(rename = "forward-mealy")]
    pub forward: DocRef<MealyDoc>,
    #[serde(rename = "backward-mealy")]
    pub backward: DocRef<MealyDoc>,
}

/// A 2-cell document: exactly one of `h` (a functor between span apexes) or
/// `stateMap` (a state assignment between symmetric lenses).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TwoCellDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<DocRef<FunctorDoc>>,
    #[serde(rename = "stateMap", skip_serializing_if = "Option::is_none")]
    pub state_map: Option<BTreeMap<String, String>>,
}

/// Any document the tools read or write, tagged by detected kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Category(RawCategory),
    Functor(FunctorDoc),
    Cofunctor(CofunctorDoc),
    Mealy(MealyDoc),
    Lens(LensDoc),
    Span(SpanDoc),
    SymLens(SymLensDoc),
    TwoCell(TwoCellDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::Cofunctor(_) => "cofunctor",
            Document::Mealy(_) => "mealy",
            Document::Lens(_) => "lens",
            Document::Span(_) => "lens-span",
            Document::SymLens(_) => "symmetric-lens",
            Document::TwoCell(_) => "2-cell",
        }
    }
}

/// Decide what kind of document a JSON value is from its distinguishing
/// keys.
pub fn detect_kind(value: &serde_json::Value) -> Option<&'static str> {
    let obj = value.as_object()?;
    let has = |k: &str| obj.contains_key(k);
    if has("forward-mealy") {
        Some("symmetric-lens")
    } else if has("left-lens") {
        Some("lens-span")
    } else if has("transitions") {
        Some("mealy")
    } else if has("objAssign") {
        Some("cofunctor")
    } else if has("get") && has("put") {
        Some("lens")
    } else if has("onObjects") {
        Some("functor")
    } else if has("compose") && has("objects") {
        Some("category")
    } else if has("h") || has("stateMap") {
        Some("2-cell")
    } else {
        None
    }
}

/// Parse a string as a document of auto-detected kind. `path` is used only
/// in error messages.
pub fn parse_document(path: &Path, text: &str) -> Result<Document> {
    let value: serde_json::Value = parse_with_context(path, text)?;
    let kind = detect_kind(&value).ok_or_else(|| Error::Document {
        detail: format!("{}: unrecognised document kind", path.display()),
    })?;
    let again = |detail: serde_json::Error| Error::Document {
        detail: format!("{}: {detail}", path.display()),
    };
    Ok(match kind {
        "category" => Document::Category(serde_json::from_value(value).map_err(again)?),
        "functor" => Document::Functor(serde_json::from_value(value).map_err(again)?),
        "cofunctor" => Document::Cofunctor(serde_json::from_value(value).map_err(again)?),
        "mealy" => Document::Mealy(serde_json::from_value(value).map_err(again)?),
        "lens" => Document::Lens(serde_json::from_value(value).map_err(again)?),
        "lens-span" => Document::Span(serde_json::from_value(value).map_err(again)?),
        "symmetric-lens" => Document::SymLens(serde_json::from_value(value).map_err(again)?),
        _ => Document::TwoCell(serde_json::from_value(value).map_err(again)?),
    })
}

/// Read and parse a document file.
pub fn load_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document { detail: format!("{}: {e}", path.display()) })?;
    parse_document(path, &text)
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

// ---------------------------------------------------------------------------
// Documents -> validated structures
// ---------------------------------------------------------------------------

pub fn category_from_doc(raw: &RawCategory) -> Result<Arc<FinCat>> {
    FinCat::validate(raw)
}

pub fn functor_from_doc(doc: &FunctorDoc, base: &Path) -> Result<Functor> {
    let dom = category_from_doc(&doc.dom.resolve(base)?)?;
    let cod = category_from_doc(&doc.cod.resolve(base)?)?;
    Functor::validate(
        dom,
        cod,
        doc.on_objects.iter().map(|(k, v)| (Obj::new(k), Obj::new(v))).collect(),
        doc.on_morphisms.iter().map(|(k, v)| (Mor::new(k), Mor::new(v))).collect(),
    )
}

pub fn cofunctor_from_doc(doc: &CofunctorDoc, base: &Path) -> Result<Cofunctor> {
    let a = category_from_doc(&doc.a.resolve(base)?)?;
    let b = category_from_doc(&doc.b.resolve(base)?)?;
    Cofunctor::validate(
        a,
        b,
        doc.obj_assign.iter().map(|(k, v)| (Obj::new(k), Obj::new(v))).collect(),
        doc.lifts
            .iter()
            .map(|[x, u, l]| ((Obj::new(x), Mor::new(u)), Mor::new(l)))
            .collect(),
    )
}

pub fn mealy_from_doc(doc: &MealyDoc, base: &Path) -> Result<MealyMorphism> {
    let a = category_from_doc(&doc.a.resolve(base)?)?;
    let b = category_from_doc(&doc.b.resolve(base)?)?;
    MealyMorphism::validate(
        a,
        b,
        doc.states.iter().map(State::new).collect(),
        doc.g0.iter().map(|(k, v)| (State::new(k), Obj::new(v))).collect(),
        doc.f0.iter().map(|(k, v)| (State::new(k), Obj::new(v))).collect(),
        doc.transitions
            .iter()
            .map(|[x, u, q, f]| ((State::new(x), Mor::new(u)), (State::new(q), Mor::new(f))))
            .collect(),
    )
}

pub fn lens_from_doc(doc: &LensDoc, base: &Path) -> Result<Lens> {
    let get = functor_from_doc(&doc.get.resolve(base)?, base)?;
    let put = cofunctor_from_doc(&doc.put.resolve(base)?, base)?;
    Lens::validate(get, put)
}

pub fn span_from_doc(doc: &SpanDoc, base: &Path) -> Result<LensSpan> {
    let apex = category_from_doc(&doc.apex.resolve(base)?)?;
    let left = lens_from_doc(&doc.left.resolve(base)?, base)?;
    let right = lens_from_doc(&doc.right.resolve(base)?, base)?;
    if left.dom() != &apex {
        return Err(Error::Document {
            detail: "span apex differs from the left lens source".into(),
        });
    }
    LensSpan::validate(left, right)
}

pub fn symlens_from_doc(doc: &SymLensDoc, base: &Path) -> Result<SymmetricLens> {
    let forward = mealy_from_doc(&doc.forward.resolve(base)?, base)?;
    let backward = mealy_from_doc(&doc.backward.resolve(base)?, base)?;
    let sl = SymmetricLens::validate(forward, backward)?;
    let declared: Vec<State> = doc.states.iter().map(State::new).collect();
    if sl.states() != declared.as_slice() {
        return Err(Error::Document {
            detail: "declared state list differs from the Mealy state lists".into(),
        });
    }
    Ok(sl)
}

/// Resolve a 2-cell document against a source and target span.
pub fn span_2cell_from_doc(
    doc: &TwoCellDoc,
    base: &Path,
    src: &LensSpan,
    tgt: &LensSpan,
) -> Result<SpanLensMorphism> {
    let h_doc = doc.h.as_ref().ok_or_else(|| Error::Document {
        detail: "expected a span 2-cell document with an `h` field".into(),
    })?;
    let h = functor_from_doc(&h_doc.resolve(base)?, base)?;
    SpanLensMorphism::validate(src, tgt, h)
}

/// Resolve a 2-cell document against a source and target symmetric lens.
pub fn sym_2cell_from_doc(
    doc: &TwoCellDoc,
    src: &SymmetricLens,
    tgt: &SymmetricLens,
) -> Result<SymLensMorphism> {
    let map = doc.state_map.as_ref().ok_or_else(|| Error::Document {
        detail: "expected a symmetric-lens 2-cell document with a `stateMap` field".into(),
    })?;
    SymLensMorphism::validate(
        src,
        tgt,
        map.iter().map(|(k, v)| (State::new(k), State::new(v))).collect(),
    )
}

// ---------------------------------------------------------------------------
// Validated structures -> documents
// ---------------------------------------------------------------------------

pub fn doc_for_category(cat: &FinCat) -> RawCategory {
    cat.to_raw()
}

pub fn doc_for_functor(f: &Functor) -> FunctorDoc {
    FunctorDoc {
        dom: DocRef::Inline(f.dom().to_raw()),
        cod: DocRef::Inline(f.cod().to_raw()),
        on_objects: f
            .on_objects()
            .iter()
            .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
            .collect(),
        on_morphisms: f
            .on_morphisms()
            .iter()
            .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
            .collect(),
    }
}

pub fn doc_for_cofunctor(c: &Cofunctor) -> CofunctorDoc {
    CofunctorDoc {
        b: DocRef::Inline(c.dom().to_raw()),
        a: DocRef::Inline(c.cod().to_raw()),
        obj_assign: c
            .obj_assign()
            .iter()
            .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
            .collect(),
        lifts: c
            .lifts()
            .iter()
            .map(|((x, u), l)| [x.as_str().into(), u.as_str().into(), l.as_str().into()])
            .collect(),
    }
}

pub fn doc_for_mealy(m: &MealyMorphism) -> MealyDoc {
    MealyDoc {
        a: DocRef::Inline(m.dom().to_raw()),
        b: DocRef::Inline(m.cod().to_raw()),
        states: m.states().iter().map(|s| s.as_str().into()).collect(),
        g0: m
            .anchors_dom()
            .iter()
            .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
            .collect(),
        f0: m
            .anchors_cod()
            .iter()
            .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
            .collect(),
        transitions: m
            .transitions()
            .iter()
            .map(|((x, u), (q, f))| {
                [x.as_str().into(), u.as_str().into(), q.as_str().into(), f.as_str().into()]
            })
            .collect(),
    }
}

pub fn doc_for_lens(l: &Lens) -> LensDoc {
    LensDoc {
        get: DocRef::Inline(doc_for_functor(l.get())),
        put: DocRef::Inline(doc_for_cofunctor(l.put())),
    }
}

pub fn doc_for_span(s: &LensSpan) -> SpanDoc {
    SpanDoc {
        apex: DocRef::Inline(s.apex().to_raw()),
        left: DocRef::Inline(doc_for_lens(s.left())),
        right: DocRef::Inline(doc_for_lens(s.right())),
    }
}

pub fn doc_for_symlens(s: &SymmetricLens) -> SymLensDoc {
    SymLensDoc {
        states: s.states().iter().map(|x| x.as_str().into()).collect(),
        forward: DocRef::Inline(doc_for_mealy(s.forward())),
        backward: DocRef::Inline(doc_for_mealy(s.backward())),
    }
}

pub fn doc_for_span_2cell(cell: &SpanLensMorphism) -> TwoCellDoc {
    TwoCellDoc { h: Some(DocRef::Inline(doc_for_functor(cell.h()))), state_map: None }
}

pub fn doc_for_sym_2cell(cell: &SymLensMorphism) -> TwoCellDoc {
    TwoCellDoc {
        h: None,
        state_map: Some(
            cell.map()
                .iter()
                .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
                .collect(),
        ),
    }
}

/// Serialise a document to its canonical byte representation: two-space
/// pretty JSON with a trailing newline. Key order is fixed by the schema
/// structs and `BTreeMap` ordering, so the output is deterministic.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialise");
    s.push('\n');
    s
}

/// Serialise a detected document.
pub fn document_to_json(doc: &Document) -> String {
    match doc {
        Document::Category(d) => to_canonical_json(d),
        Document::Functor(d) => to_canonical_json(d),
        Document::Cofunctor(d) => to_canonical_json(d),
        Document::Mealy(d) => to_canonical_json(d),
        Document::Lens(d) => to_canonical_json(d),
        Document::Span(d) => to_canonical_json(d),
        Document::SymLens(d) => to_canonical_json(d),
        Document::TwoCell(d) => to_canonical_json(d),
    }
}

/// Resolve a loaded document of any kind into its validated structure,
/// reporting the kind; 2-cells cannot be resolved standalone.
pub fn validate_document(doc: &Document, path: &Path) -> Result<&'static str> {
    let base = base_dir(path);
    match doc {
        Document::Category(d) => category_from_doc(d).map(|_| "category"),
        Document::Functor(d) => functor_from_doc(d, &base).map(|_| "functor"),
        Document::Cofunctor(d) => cofunctor_from_doc(d, &base).map(|_| "cofunctor"),
        Document::Mealy(d) => mealy_from_doc(d, &base).map(|_| "mealy"),
        Document::Lens(d) => lens_from_doc(d, &base).map(|_| "lens"),
        Document::Span(d) => span_from_doc(d, &base).map(|_| "lens-span"),
        Document::SymLens(d) => symlens_from_doc(d, &base).map(|_| "symmetric-lens"),
        Document::TwoCell(_) => Err(Error::Document {
            detail: "a 2-cell document needs a source and target to validate against".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{gen_span, gen_symlens, GenConfig};

    fn here() -> PathBuf {
        PathBuf::from("unused.json")
    }

    #[test]
    fn category_round_trips_through_json() {
        let two = fixtures::two();
        let json = to_canonical_json(&doc_for_category(&two));
        let doc = parse_document(&here(), &json).unwrap();
        assert_eq!(doc.kind(), "category");
        match doc {
            Document::Category(raw) => assert_eq!(FinCat::validate(&raw).unwrap(), two),
            _ => unreachable!(),
        }
    }

    #[test]
    fn lens_and_span_and_symlens_round_trip() {
        let cfg = GenConfig::new(9);
        let two = fixtures::two();
        let three = fixtures::three();
        let lens = crate::gen::gen_lens(&cfg, &three).unwrap();
        let json = to_canonical_json(&doc_for_lens(&lens));
        match parse_document(&here(), &json).unwrap() {
            Document::Lens(d) => {
                assert_eq!(lens_from_doc(&d, Path::new(".")).unwrap(), lens)
            }
            other => panic!("detected {}", other.kind()),
        }
        let sym = gen_symlens(&cfg, &two, &three).unwrap();
        let json = to_canonical_json(&doc_for_symlens(&sym));
        match parse_document(&here(), &json).unwrap() {
            Document::SymLens(d) => {
                assert_eq!(symlens_from_doc(&d, Path::new(".")).unwrap(), sym)
            }
            other => panic!("detected {}", other.kind()),
        }
        let span = gen_span(&cfg, &two, &three).unwrap();
        let json = to_canonical_json(&doc_for_span(&span));
        match parse_document(&here(), &json).unwrap() {
            Document::Span(d) => {
                assert_eq!(span_from_doc(&d, Path::new(".")).unwrap(), span)
            }
            other => panic!("detected {}", other.kind()),
        }
    }

    #[test]
    fn serialisation_is_deterministic() {
        let cfg = GenConfig::new(4);
        let two = fixtures::two();
        let span = gen_span(&cfg, &two, &two).unwrap();
        assert_eq!(
            to_canonical_json(&doc_for_span(&span)),
            to_canonical_json(&doc_for_span(&span))
        );
    }

    #[test]
    fn path_references_resolve_relative_to_the_referring_file() {
        let dir = std::env::temp_dir().join(format!("lenscalc-doc-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let two = fixtures::two();
        std::fs::write(dir.join("two.json"), to_canonical_json(&doc_for_category(&two)))
            .unwrap();
        let f = Functor::identity(two.clone());
        let doc = FunctorDoc {
            dom: DocRef::Path("two.json".into()),
            cod: DocRef::Path("two.json".into()),
            on_objects: f
                .on_objects()
                .iter()
                .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
                .collect(),
            on_morphisms: f
                .on_morphisms()
                .iter()
                .map(|(k, v)| (k.as_str().into(), v.as_str().into()))
                .collect(),
        };
        assert_eq!(functor_from_doc(&doc, &dir).unwrap(), f);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn parse_errors_name_file_and_position() {
        let err = parse_document(Path::new("bad.json"), "{ nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.json"), "{msg}");
    }

    #[test]
    fn malformed_known_kind_is_rejected() {
        let text = r#"{"objects": ["a"], "morphisms": [], "identities": {}, "compose": "no"}"#;
        assert!(parse_document(Path::new("x.json"), text).is_err());
    }
}
