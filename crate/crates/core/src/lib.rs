//! FreezeML: ML-style type inference with first-class polymorphism made
//! explicit by freezing, generalising and instantiating operators.
//!
//! The pipeline is [`parser`] to [`syntax`] terms, [`infer`] for principal
//! types, [`declcheck`] for the declarative typing judgement, and
//! [`translate`] for elaboration to and import from [`systemf`].

pub mod cli;
pub mod corpus;
pub mod declcheck;
pub mod infer;
pub mod parser;
pub mod prelude;
pub mod statics;
pub mod subst;
pub mod syntax;
pub mod systemf;
pub mod translate;
pub mod unify;
