//! Inverse-pair transversals of a finite group.
//!
//! The commutator relators of a wreath presentation range over a set of
//! nonidentity elements containing exactly one of each pair `{t, t^-1}`.
//! A clean such choice cannot exist when the group has involutions, since
//! `t = t^-1` puts the element in both halves, so involutions are kept as a
//! separate class: they still enter the relator range, but a builder emits
//! only unordered generator pairs for them (the relations `[y, t^-1 z t]` and
//! `[z, t y t^-1]` coincide when `t = t^-1`).

use crate::grouptable::{FiniteGroup, Group};

/// One representative per inverse pair of nonidentity elements, plus the
/// involutions, both in increasing element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pair_reps: Vec<usize>,
    involutions: Vec<usize>,
}

impl Transversal {
    /// Representatives of the two-element pairs `{t, t^-1}`, smallest index
    /// of each pair, ascending.
    pub fn pair_reps(&self) -> &[usize] {
        &self.pair_reps
    }

    /// Self-inverse nonidentity elements, ascending.
    pub fn involutions(&self) -> &[usize] {
        &self.involutions
    }

    /// Emission order used by the builders: pair representatives first, then
    /// involutions. The flag marks involutions.
    pub fn iter_all(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.pair_reps
            .iter()
            .map(|&t| (t, false))
            .chain(self.involutions.iter().map(|&t| (t, true)))
    }

    pub fn len(&self) -> usize {
        self.pair_reps.len() + self.involutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Splits the nonidentity elements of `g` into inverse-pair representatives
/// (the smaller canonical index of each pair) and involutions. Deterministic
/// for a fixed element order.
pub fn build_transversal(g: &FiniteGroup) -> Transversal {
    let mut pair_reps = Vec::new();
    let mut involutions = Vec::new();
    for t in 1..g.order() {
        let ti = g.inv(t);
        if ti == t {
            involutions.push(t);
        } else if t < ti {
            pair_reps.push(t);
        }
    }
    Transversal {
        pair_reps,
        involutions,
    }
}
