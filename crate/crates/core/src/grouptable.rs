//! Explicit finite group realizations and permutation machinery.
//!
//! A [`FiniteGroup`] is a multiplication table with identity at index 0. The
//! canonical element order of any realization is its construction order:
//! power order for cyclic groups, coset index order for regular
//! representations recovered from a closed coset table. Downstream transversal
//! choices inherit their determinism from this ordering.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::enumeration::CosetTable;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    EmptyGroup,
    #[error("multiplication table has wrong shape")]
    BadTable,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("identity axiom fails at element {0}")]
    BadIdentity(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} exceeds the configured point limit {1}")]
    TooManyPoints(u128, usize),
    #[error("coset table is not a regular (trivial-subgroup) table")]
    NotRegular,
    #[error("generator images do not generate the group")]
    NotGenerated,
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("images is not a bijection on its points")]
    NotBijective,
}

/// Group operations on elements encoded as `usize` indices with identity 0.
/// Implemented by table-backed groups and by on-the-fly realizations such as
/// concrete wreath products.
pub trait Group {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }
}

/// Checks the group axioms through the [`Group`] interface: identity and
/// two-sided inverses always in full, associativity by full scan for orders
/// up to 256 and by a deterministic strided sample above that.
pub fn check_axioms<G: Group + ?Sized>(g: &G) -> Result<(), GroupError> {
    let n = g.order();
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let e = g.identity();
    for a in 0..n {
        if g.mul(e, a) != a || g.mul(a, e) != a {
            return Err(GroupError::BadIdentity(a));
        }
        let b = g.inv(a);
        if b >= n || g.mul(a, b) != e || g.mul(b, a) != e {
            return Err(GroupError::NoInverse(a));
        }
        if g.inv(b) != a {
            return Err(GroupError::NoInverse(b));
        }
    }
    let step = if n <= 256 { 1 } else { n / 64 + 1 };
    let mut a = 0;
    while a < n {
        let mut b = 0;
        while b < n {
            let mut c = 0;
            while c < n {
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
                c += step;
            }
            b += step;
        }
        a += step;
    }
    Ok(())
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    elem_names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Wraps an `order x order` row-major multiplication table. The identity
    /// must be element 0; inverses are derived from the table.
    pub fn from_mul_table(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if mul.len() != order * order || mul.iter().any(|&x| x >= order) {
            return Err(GroupError::BadTable);
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 && mul[b * order + a] == 0 {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(GroupError::NoInverse(a));
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            elem_names: None,
        })
    }

    /// The cyclic group of order `n`; element `i` is the `i`-th power of the
    /// generator, so `mul(i, j) = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let mut mul = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mul.push((i + j) % n);
            }
        }
        let inv = (0..n).map(|i| (n - i) % n).collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            elem_names: None,
        })
    }

    pub fn with_elem_names(mut self, names: Vec<String>) -> Self {
        self.elem_names = Some(names);
        self
    }

    pub fn elem_names(&self) -> Option<&[String]> {
        self.elem_names.as_deref()
    }

    /// Full axiom check for this table (see [`check_axioms`]).
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        check_axioms(self)
    }
}

impl Group for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
}

/// Recovers the regular representation from a closed trivial-subgroup coset
/// table: the group of order `rows` whose element `i` is coset `i`, together
/// with the images of the presentation's generators.
pub fn from_coset_table(ct: &CosetTable) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    if ct.subgroup_words() != 0 {
        return Err(GroupError::NotRegular);
    }
    let n = ct.rows();
    let words = element_words(ct)?;
    let mut mul = vec![0usize; n * n];
    for i in 0..n {
        for (j, w) in words.iter().enumerate() {
            mul[i * n + j] = ct.apply_word(i, w);
        }
    }
    let group = FiniteGroup::from_mul_table(n, mul)?;
    let images = (0..ct.ngens()).map(|g| ct.apply(0, g, false)).collect();
    Ok((group, images))
}

/// One word per coset of a closed trivial-subgroup table, taken along the
/// breadth-first spanning tree of the coset graph using positive generator
/// letters in generator order. The word for coset `i` carries coset 0 to `i`;
/// the identity coset gets the empty word.
pub fn element_words(ct: &CosetTable) -> Result<Vec<Word>, GroupError> {
    if ct.subgroup_words() != 0 {
        return Err(GroupError::NotRegular);
    }
    let n = ct.rows();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..ct.ngens() {
            let next = ct.apply(c, g, false);
            if words[next].is_none() {
                let w = words[c].as_ref().unwrap().concat(&Word::generator(g));
                words[next] = Some(w);
                queue.push_back(next);
            }
        }
    }
    words
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(GroupError::NotGenerated)
}

/// Breadth-first words for each element of `g` over the given generator
/// images, positive letters only, generator order. Mirrors [`element_words`]
/// on the abstract group; fails if the images do not generate.
pub fn element_words_in_group<G: Group + ?Sized>(
    g: &G,
    images: &[usize],
) -> Result<Vec<Word>, GroupError> {
    let n = g.order();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[g.identity()] = Some(Word::identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(c) = queue.pop_front() {
        for (k, &img) in images.iter().enumerate() {
            let next = g.mul(c, img);
            if words[next].is_none() {
                let w = words[c].as_ref().unwrap().concat(&Word::generator(k));
                words[next] = Some(w);
                queue.push_back(next);
            }
        }
    }
    words
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(GroupError::NotGenerated)
}

/// A permutation of the points `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || seen[p] {
                return Err(GroupError::NotBijective);
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition `self` then `other`: `(self * other)(p) = other(self(p))`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&p| other.images[p]).collect(),
        })
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Order of the subgroup generated by `gens`, by naive breadth-first closure.
/// Returns `CapExceeded` once more than `cap` elements have been found.
pub fn perm_closure(gens: &[Permutation], cap: usize) -> Result<usize, GroupError> {
    if gens.is_empty() {
        return Ok(1);
    }
    let degree = gens[0].degree();
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.images.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g)?;
            if seen.insert(q.images.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Hard limit on permutation degrees accepted by the Sylow construction.
pub const MAX_SYLOW_POINTS: usize = 1 << 20;

/// Generators of the Sylow p-subgroup of the symmetric group on `p^n` points,
/// with blocks nested leftward: generator `i` (1-based) cycles the `p`
/// sub-blocks of size `p^(i-1)` inside the first block of size `p^i`, i.e. it
/// maps `j` to `j + p^(i-1) mod p^i` for `j < p^i` and fixes all other points.
pub fn sylow_perm_generators(p: u64, n: u32) -> Result<Vec<Permutation>, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let degree = (p as u128).pow(n);
    if degree > MAX_SYLOW_POINTS as u128 {
        return Err(GroupError::TooManyPoints(degree, MAX_SYLOW_POINTS));
    }
    let degree = degree as usize;
    let mut gens = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let block = (p as usize).pow(i);
        let step = (p as usize).pow(i - 1);
        let images = (0..degree)
            .map(|j| if j < block { (j + step) % block } else { j })
            .collect();
        gens.push(Permutation::new(images).expect("construction is a bijection"));
    }
    Ok(gens)
}

/// Order of the Sylow p-subgroup of the symmetric group on `p^n` points:
/// `p^((p^n - 1)/(p - 1))`. `None` when it does not fit in `u128`.
pub fn sylow_group_order(p: u64, n: u32) -> Option<u128> {
    let exponent = ((p as u128).pow(n) - 1) / (p as u128 - 1);
    let exponent: u32 = exponent.try_into().ok()?;
    (p as u128).checked_pow(exponent)
}
