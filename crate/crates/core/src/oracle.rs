//! Ground-truth concrete constructions.
//!
//! The wreath product `H wr G` is realized on elements `(f, g)` where `f`
//! maps each element of `G` to an element of `H` and `g` lies in `G`.
//! Elements are encoded as mixed-radix integers (the `f` digits base `|H|`
//! over the canonical element order of `G`, then `g`), and products are
//! computed on the fly from the codes, so no multiplication table is ever
//! materialized and the realization scales to the configured size limit.
//!
//! The product rule is
//!
//! ```text
//! (f1, g1) (f2, g2) = (a -> f1(a) f2(a g1), g1 g2)
//! ```
//!
//! which realizes the conjugation `t^-1 h(a) t = h(a t)` for `t` in the top
//! group; the associativity scan plus the conjugation spot check in the test
//! suite pin the convention down and guard regressions.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::builders::WreathMeta;
use crate::enumeration::{todd_coxeter, verify_table, Enumeration, EnumError, EnumStats};
use crate::grouptable::{from_coset_table, FiniteGroup, Group, GroupError};
use crate::presentation::Presentation;
use crate::words::Word;

/// Default upper bound on the order of a concrete wreath realization.
pub const DEFAULT_ORACLE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("concrete wreath product would exceed the size limit of {limit}")]
    SizeLimit { limit: usize },
    #[error("word references generator {gen} but only {assigned} images are assigned")]
    UnassignedGenerator { gen: usize, assigned: usize },
    #[error("metadata names {expected} factors but {got} realizations were supplied")]
    FactorCountMismatch { expected: usize, got: usize },
    #[error("factor {factor} enumeration hit the coset cap ({stats:?})")]
    FactorCapped { factor: usize, stats: EnumStats },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// A group element source for oracle constructions: either an explicit table
/// or a nested concrete wreath product.
#[derive(Debug, Clone)]
pub enum ConcreteGroup {
    Table(FiniteGroup),
    Wreath(Box<ConcreteWreath>),
}

impl Group for ConcreteGroup {
    fn order(&self) -> usize {
        match self {
            ConcreteGroup::Table(g) => g.order(),
            ConcreteGroup::Wreath(w) => w.order(),
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            ConcreteGroup::Table(g) => g.mul(a, b),
            ConcreteGroup::Wreath(w) => w.mul(a, b),
        }
    }

    fn inv(&self, a: usize) -> usize {
        match self {
            ConcreteGroup::Table(g) => g.inv(a),
            ConcreteGroup::Wreath(w) => w.inv(a),
        }
    }
}

/// The concrete wreath product of a bottom group by a finite top group.
#[derive(Debug, Clone)]
pub struct ConcreteWreath {
    bottom: ConcreteGroup,
    top: FiniteGroup,
    order: usize,
}

impl ConcreteWreath {
    /// Builds `bottom wr top`, refusing if `|bottom|^|top| * |top|` exceeds
    /// `limit`.
    pub fn new(bottom: ConcreteGroup, top: FiniteGroup, limit: usize) -> Result<Self, OracleError> {
        let b = bottom.order() as u128;
        let t = top.order() as u128;
        let order = b
            .checked_pow(t.min(u32::MAX as u128) as u32)
            .and_then(|base| base.checked_mul(t))
            .filter(|&o| o <= limit as u128)
            .ok_or(OracleError::SizeLimit { limit })?;
        Ok(ConcreteWreath {
            bottom,
            top,
            order: order as usize,
        })
    }

    pub fn bottom(&self) -> &ConcreteGroup {
        &self.bottom
    }

    pub fn top(&self) -> &FiniteGroup {
        &self.top
    }

    /// Decodes a coded element into its function table and top component.
    pub fn decode(&self, code: usize) -> (Vec<usize>, usize) {
        let t = self.top.order();
        let b = self.bottom.order();
        let g = code % t;
        let mut rest = code / t;
        let mut f = Vec::with_capacity(t);
        for _ in 0..t {
            f.push(rest % b);
            rest /= b;
        }
        (f, g)
    }

    /// Encodes a function table plus top component into the element code.
    pub fn encode(&self, f: &[usize], g: usize) -> usize {
        let b = self.bottom.order();
        let mut rest = 0;
        for &digit in f.iter().rev() {
            rest = rest * b + digit;
        }
        rest * self.top.order() + g
    }

    /// The element `h(a)`: `h` in the copy of the bottom group at position
    /// `a`, identity elsewhere.
    pub fn base_elem(&self, a: usize, h: usize) -> usize {
        let mut f = vec![0; self.top.order()];
        f[a] = h;
        self.encode(&f, 0)
    }

    /// The element `(1, g)` of the top group inside the wreath product.
    pub fn top_elem(&self, g: usize) -> usize {
        self.encode(&vec![0; self.top.order()], g)
    }
}

impl Group for ConcreteWreath {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (f1, g1) = self.decode(a);
        let (f2, g2) = self.decode(b);
        let f: Vec<usize> = (0..self.top.order())
            .map(|p| self.bottom.mul(f1[p], f2[self.top.mul(p, g1)]))
            .collect();
        self.encode(&f, self.top.mul(g1, g2))
    }

    fn inv(&self, a: usize) -> usize {
        let (f, g) = self.decode(a);
        let gi = self.top.inv(g);
        let fi: Vec<usize> = (0..self.top.order())
            .map(|p| self.bottom.inv(f[self.top.mul(p, gi)]))
            .collect();
        self.encode(&fi, gi)
    }
}

/// Builds the concrete wreath product `h wr g` of two explicit finite groups.
pub fn build_concrete_wreath(
    h: &FiniteGroup,
    g: &FiniteGroup,
    limit: usize,
) -> Result<ConcreteWreath, OracleError> {
    ConcreteWreath::new(ConcreteGroup::Table(h.clone()), g.clone(), limit)
}

/// Homomorphic evaluation of a word under a generator assignment.
pub fn evaluate_word<G: Group + ?Sized>(
    k: &G,
    assignment: &[usize],
    w: &Word,
) -> Result<usize, OracleError> {
    let mut acc = k.identity();
    for s in w.syllables() {
        let img = *assignment
            .get(s.gen)
            .ok_or(OracleError::UnassignedGenerator {
                gen: s.gen,
                assigned: assignment.len(),
            })?;
        acc = k.mul(acc, k.pow(img, s.exp));
    }
    Ok(acc)
}

/// Per-relator outcome of evaluating a presentation's relators in a concrete
/// group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorReport {
    pub results: Vec<bool>,
}

impl RelatorReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|&b| b)
    }
}

/// Evaluates every relator of `p` under the assignment; an entry is true iff
/// the relator maps to the identity.
pub fn check_relators<G: Group + ?Sized>(
    p: &Presentation,
    k: &G,
    assignment: &[usize],
) -> Result<RelatorReport, OracleError> {
    let results = p
        .relators()
        .iter()
        .map(|r| Ok(evaluate_word(k, assignment, r)? == k.identity()))
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(RelatorReport { results })
}

/// True iff the closure of `images` is all of `k` (breadth-first closure on
/// element codes).
pub fn check_generates<G: Group + ?Sized>(k: &G, images: &[usize]) -> bool {
    let mut seen = HashSet::from([k.identity()]);
    let mut queue = VecDeque::from([k.identity()]);
    while let Some(a) = queue.pop_front() {
        for &img in images {
            let b = k.mul(a, img);
            if seen.insert(b) {
                queue.push_back(b);
            }
        }
    }
    seen.len() == k.order()
}

/// A concrete realization of a wreath presentation: the iterated wreath
/// product group and the canonical image of each output generator (bottom
/// generators map to their element in the copy at the identity position, top
/// generators to their image in the acting group).
#[derive(Debug, Clone)]
pub struct WreathOracle {
    pub group: ConcreteGroup,
    pub assignment: Vec<usize>,
}

/// Assembles the concrete iterated wreath product described by `meta` from
/// per-factor realizations `(group, generator images)`, bottom-up, together
/// with the canonical generator assignment in output-generator order.
pub fn build_oracle(
    meta: &WreathMeta,
    realizations: &[(FiniteGroup, Vec<usize>)],
    limit: usize,
) -> Result<WreathOracle, OracleError> {
    if realizations.len() != meta.factors.len() {
        return Err(OracleError::FactorCountMismatch {
            expected: meta.factors.len(),
            got: realizations.len(),
        });
    }
    let ngens = meta
        .gen_ranges
        .iter()
        .map(|&(_, end)| end)
        .max()
        .unwrap_or(0);
    let mut assignment = vec![0usize; ngens];

    let (g0, imgs0) = &realizations[0];
    let mut group = ConcreteGroup::Table(g0.clone());
    let (start0, _) = meta.gen_ranges[0];
    for (k, &img) in imgs0.iter().enumerate() {
        assignment[start0 + k] = img;
    }
    for (level, (top, top_imgs)) in realizations.iter().enumerate().skip(1) {
        let w = ConcreteWreath::new(group, top.clone(), limit)?;
        // previously assigned generators move into the copy at the identity
        for j in 0..meta.gen_ranges[level - 1].1 {
            assignment[j] = w.base_elem(0, assignment[j]);
        }
        let (start, _) = meta.gen_ranges[level];
        for (k, &img) in top_imgs.iter().enumerate() {
            assignment[start + k] = w.top_elem(img);
        }
        group = ConcreteGroup::Wreath(Box::new(w));
    }
    Ok(WreathOracle { group, assignment })
}

/// Realizes a factor presentation concretely by coset enumeration: the
/// regular representation of its group plus the generator images.
pub fn realize_factor(
    p: &Presentation,
    cap: usize,
) -> Result<(FiniteGroup, Vec<usize>), OracleError> {
    match todd_coxeter(p, &[], cap)? {
        Enumeration::Closed(ct) => {
            verify_table(p, &[], &ct).expect("enumerator returned an unsound table");
            Ok(from_coset_table(&ct)?)
        }
        Enumeration::Capped(stats) => Err(OracleError::FactorCapped { factor: 0, stats }),
    }
}

/// The three conjuncts of the isomorphism certificate for a wreath
/// presentation against its concrete oracle: all relators hold, the canonical
/// images generate, and the enumerated order equals the oracle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub relators: RelatorReport,
    pub generates: bool,
    pub presented_order: Option<usize>,
    pub oracle_order: usize,
}

impl HomReport {
    pub fn pass(&self) -> bool {
        self.relators.all_pass()
            && self.generates
            && self.presented_order == Some(self.oracle_order)
    }
}

/// Runs the full homomorphism certificate for a wreath presentation with
/// metadata: realizes every factor by enumeration, builds the concrete
/// iterated wreath product, checks the relators and generation, and compares
/// the enumerated order of the presentation with the oracle order.
pub fn hom_certificate(
    p: &Presentation,
    meta: &WreathMeta,
    cap: usize,
    limit: usize,
) -> Result<HomReport, OracleError> {
    let mut realizations = Vec::with_capacity(meta.factors.len());
    for (i, f) in meta.factors.iter().enumerate() {
        match todd_coxeter(f, &[], cap)? {
            Enumeration::Closed(ct) => {
                verify_table(f, &[], &ct).expect("enumerator returned an unsound table");
                realizations.push(from_coset_table(&ct)?);
            }
            Enumeration::Capped(stats) => {
                return Err(OracleError::FactorCapped { factor: i, stats })
            }
        }
    }
    let oracle = build_oracle(meta, &realizations, limit)?;
    let relators = check_relators(p, &oracle.group, &oracle.assignment)?;
    let generates = check_generates(&oracle.group, &oracle.assignment);
    let presented_order = match todd_coxeter(p, &[], cap)? {
        Enumeration::Closed(ct) => {
            verify_table(p, &[], &ct).expect("enumerator returned an unsound table");
            Some(ct.rows())
        }
        Enumeration::Capped(_) => None,
    };
    Ok(HomReport {
        relators,
        generates,
        presented_order,
        oracle_order: oracle.group.order(),
    })
}
