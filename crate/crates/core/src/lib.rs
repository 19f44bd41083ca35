//! A computational calculus for delta lenses over finite categories.
//!
//! The crate provides validated constructors for finite categories, functors,
//! cofunctors, Mealy morphisms and asymmetric lenses, the hom-categories of
//! spans of lenses and symmetric lenses, and the adjoint triple `L -| M -| R`
//! relating them, with every law checkable by exhaustive enumeration at desk
//! scale.

pub mod adjunction;
pub mod cat;
pub mod cofunctor;
pub mod doc;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod gen;
pub mod lens;
pub mod mealy;
pub mod pushout;
pub mod span;
pub mod symlens;

pub use cat::{FinCat, Mor, Obj, RawCategory, RawMorphism};
pub use error::{Error, Result};
pub use functor::{boff_factorize, boff_fill, pullback, Functor, FunctorClass};
