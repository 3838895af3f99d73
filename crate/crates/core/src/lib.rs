//! Finite presentations of (iterated) wreath products.
//!
//! Given presentations of two finite groups `H` and `G`, the wreath product
//! `H wr G` has a presentation on the union of the generator sets whose extra
//! relators are commutators `[y, t^-1 z t]` ranging over the `H`-generators
//! and a set of transversal elements `t` of `G`. This crate builds those
//! presentations (and their iterated, cyclic and Sylow specializations),
//! checks them against concrete permutation/table realizations, and analyses
//! minimality and conormality of the resulting generating sets.
//!
//! The pieces:
//!
//! - [`words`]: freely reduced words over an indexed alphabet.
//! - [`presentation`]: the `⟨generators | relators⟩` record and its JSON form.
//! - [`grouptable`]: explicit finite groups, permutations, closures.
//! - [`transversal`]: inverse-pair representatives and involutions of a group.
//! - [`builders`]: the presentation constructions.
//! - [`enumeration`]: Todd-Coxeter coset enumeration.
//! - [`oracle`]: concrete wreath products and homomorphism certificates.
//! - [`analysis`]: conormality, free-product witnesses, relator minimality.
//! - [`cli`]: the `wreath` command-line tool.

pub mod analysis;
pub mod builders;
pub mod cli;
pub mod enumeration;
pub mod fileio;
pub mod grouptable;
pub mod oracle;
pub mod presentation;
pub mod transversal;
pub mod words;
