//! Presentation constructions: semidirect products, wreath products,
//! iterated wreath products, and their cyclic/Sylow specializations.
//!
//! Output conventions are fixed so results reproduce byte for byte:
//!
//! - Two-factor wreath `H wr G`: generators of the acting group `G` first,
//!   then the generators of `H`; relators in the order `R(x)`, `S(y)`,
//!   commutators. Commutator blocks iterate the transversal (pair
//!   representatives ascending, then involutions ascending); within a block,
//!   pair representatives get all ordered generator pairs `(y, z)` while
//!   involutions get unordered pairs `y <= z` only, since `t = t^-1` makes
//!   `[y, t^-1 z t] = 1` and `[z, t y t^-1] = 1` the same relation.
//! - Multi-factor wreath `(..(G_1 wr G_2)..) wr G_m`: generators bottom-up
//!   `x_1, ..., x_m`; relators all factor blocks first, then one commutator
//!   block per level `j = 2..m` over the union of the lower generator sets.
//!
//! [`flattened_wreath_fold`] derives the multi-factor output by iterating the
//! two-factor builder and renumbering into the bottom-up convention; it must
//! agree with [`multi_wreath_presentation`] exactly, which is the flattening
//! cross-check exercised by the acceptance suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grouptable::{element_words_in_group, FiniteGroup, Group, GroupError};
use crate::presentation::{rename_disjoint, Presentation, PresentationDoc, PresentationError};
use crate::transversal::build_transversal;
use crate::words::{parse_word, GenSym, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("action table has no entry for (x{x}, y{y})")]
    MissingAction { x: usize, y: usize },
    #[error("action word for (x{x}, y{y}) references a generator outside the acted-on factor")]
    ActionOutOfRange { x: usize, y: usize },
    #[error("{images} generator images supplied for {generators} generators")]
    ImageCountMismatch { images: usize, generators: usize },
    #[error("generator image {image} out of range for a group of order {order}")]
    ImageOutOfRange { image: usize, order: usize },
    #[error("relator {relator} of the factor presentation does not hold in the supplied group")]
    RelatorNotSatisfied { relator: usize },
    #[error("factors of order 1 (or without generators) are rejected")]
    TrivialFactor,
    #[error("at least one factor is required")]
    EmptyParts,
    #[error("cyclic factor order {0} is below 2")]
    FactorOrderTooSmall(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("metadata is inconsistent with the presentation: {0}")]
    BadMeta(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The action data of a semidirect product: for each acting generator `x` and
/// acted-on generator `y`, a word `w` over the acted-on generators with
/// `x^-1 y x = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    nx: usize,
    ny: usize,
    images: Vec<Option<Word>>,
}

impl ActionTable {
    pub fn new(nx: usize, ny: usize) -> Self {
        ActionTable {
            nx,
            ny,
            images: vec![None; nx * ny],
        }
    }

    /// The trivial action `x^-1 y x = y` on every pair.
    pub fn trivial(nx: usize, ny: usize) -> Self {
        let mut t = ActionTable::new(nx, ny);
        for x in 0..nx {
            for y in 0..ny {
                t.set(x, y, Word::generator(y)).expect("in range");
            }
        }
        t
    }

    /// Sets `x^-1 y x` to `word` (over the acted-on factor's own indices).
    pub fn set(&mut self, x: usize, y: usize, word: Word) -> Result<(), BuildError> {
        if x >= self.nx || y >= self.ny {
            return Err(BuildError::MissingAction { x, y });
        }
        if word.max_gen_index().is_some_and(|g| g >= self.ny) {
            return Err(BuildError::ActionOutOfRange { x, y });
        }
        self.images[x * self.ny + y] = Some(word);
        Ok(())
    }

    fn get(&self, x: usize, y: usize) -> Result<&Word, BuildError> {
        self.images[x * self.ny + y]
            .as_ref()
            .ok_or(BuildError::MissingAction { x, y })
    }
}

/// One wreathing level of a (possibly iterated) wreath presentation: the
/// acting factor's generator range in the output, the word representing each
/// transversal element (over output indices), and which of those elements
/// are involutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMeta {
    pub top_gens: (usize, usize),
    pub t_words: BTreeMap<usize, Word>,
    pub involutions: Vec<usize>,
}

/// Construction metadata emitted next to a wreath presentation. Factors are
/// listed bottom-up with their (possibly renamed) presentations and their
/// generator ranges inside the output; `levels[k]` describes the wreathing by
/// `factors[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathMeta {
    pub factors: Vec<Presentation>,
    pub gen_ranges: Vec<(usize, usize)>,
    pub levels: Vec<LevelMeta>,
}

impl WreathMeta {
    /// Generator range of the bottom factor (`H` in a two-factor `H wr G`).
    pub fn left_gens(&self) -> (usize, usize) {
        self.gen_ranges[0]
    }

    /// Generator range of the top acting factor (`G` in `H wr G`).
    pub fn right_gens(&self) -> (usize, usize) {
        *self.gen_ranges.last().expect("at least one factor")
    }

    pub fn to_doc(&self, output: &Presentation) -> WreathMetaDoc {
        WreathMetaDoc {
            factors: self
                .factors
                .iter()
                .map(PresentationDoc::from_presentation)
                .collect(),
            gen_ranges: self.gen_ranges.iter().map(|&(a, b)| [a, b]).collect(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelMetaDoc {
                    top_gens: [l.top_gens.0, l.top_gens.1],
                    t_words: l
                        .t_words
                        .iter()
                        .map(|(&t, w)| (t, output.word_text(w)))
                        .collect(),
                    involutions: l.involutions.clone(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &WreathMetaDoc, output: &Presentation) -> Result<Self, BuildError> {
        let factors = doc
            .factors
            .iter()
            .map(|d| d.clone().into_presentation())
            .collect::<Result<Vec<_>, _>>()?;
        let gen_ranges: Vec<(usize, usize)> =
            doc.gen_ranges.iter().map(|&[a, b]| (a, b)).collect();
        if factors.is_empty() || factors.len() != gen_ranges.len() {
            return Err(BuildError::BadMeta("factor/range count mismatch".into()));
        }
        if doc.levels.len() + 1 != factors.len() {
            return Err(BuildError::BadMeta("level count mismatch".into()));
        }
        for (f, &(a, b)) in factors.iter().zip(&gen_ranges) {
            if b > output.gen_count() || a > b || b - a != f.gen_count() {
                return Err(BuildError::BadMeta("generator range mismatch".into()));
            }
        }
        let names = output.generators();
        let levels = doc
            .levels
            .iter()
            .map(|l| {
                let t_words = l
                    .t_words
                    .iter()
                    .map(|(&t, text)| Ok((t, parse_word(text, names)?)))
                    .collect::<Result<BTreeMap<_, _>, WordError>>()?;
                Ok(LevelMeta {
                    top_gens: (l.top_gens[0], l.top_gens[1]),
                    t_words,
                    involutions: l.involutions.clone(),
                })
            })
            .collect::<Result<Vec<_>, BuildError>>()?;
        Ok(WreathMeta {
            factors,
            gen_ranges,
            levels,
        })
    }
}

/// Serialized form of [`WreathMeta`] (the `wreath_meta` key of a presentation
/// file). Transversal words are keyed by element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathMetaDoc {
    pub factors: Vec<PresentationDoc>,
    pub gen_ranges: Vec<[usize; 2]>,
    pub levels: Vec<LevelMetaDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMetaDoc {
    pub top_gens: [usize; 2],
    pub t_words: BTreeMap<usize, String>,
    pub involutions: Vec<usize>,
}

/// A factor of a multi-wreath construction: its presentation together with a
/// concrete realization and the generator images establishing that the
/// presentation presents the group.
#[derive(Debug, Clone)]
pub struct WreathFactor {
    pub presentation: Presentation,
    pub group: FiniteGroup,
    pub images: Vec<usize>,
}

fn eval(g: &FiniteGroup, images: &[usize], w: &Word) -> usize {
    w.syllables()
        .iter()
        .fold(g.identity(), |acc, s| g.mul(acc, g.pow(images[s.gen], s.exp)))
}

/// Checks that `images` realize `p` inside `g` (right counts, relators hold,
/// images generate) and returns breadth-first words for every element.
fn realization_words(
    p: &Presentation,
    g: &FiniteGroup,
    images: &[usize],
) -> Result<Vec<Word>, BuildError> {
    if images.len() != p.gen_count() {
        return Err(BuildError::ImageCountMismatch {
            images: images.len(),
            generators: p.gen_count(),
        });
    }
    if let Some(&bad) = images.iter().find(|&&i| i >= g.order()) {
        return Err(BuildError::ImageOutOfRange {
            image: bad,
            order: g.order(),
        });
    }
    for (i, r) in p.relators().iter().enumerate() {
        if eval(g, images, r) != g.identity() {
            return Err(BuildError::RelatorNotSatisfied { relator: i });
        }
    }
    Ok(element_words_in_group(g, images)?)
}

/// Presentation of the semidirect product `N x| G` from presentations of the
/// factors and the action table `x^-1 y x = w(y)`. Generator names are made
/// disjoint first (acting factor renamed as part 1); the output lists the
/// `G`-generators first, then relators `R(x)`, `S(y)` and one relator
/// `x^-1 y x w^-1` per action entry in `x`-major order.
pub fn semidirect_presentation(
    pn: &Presentation,
    pg: &Presentation,
    act: &ActionTable,
) -> Result<Presentation, BuildError> {
    let renamed = rename_disjoint(&[pg.clone(), pn.clone()]);
    let (pg2, pn2) = (&renamed[0], &renamed[1]);
    let nx = pg2.gen_count();
    let ny = pn2.gen_count();
    if act.nx != nx || act.ny != ny {
        return Err(BuildError::MissingAction {
            x: act.nx.min(nx),
            y: act.ny.min(ny),
        });
    }
    let mut gens = pg2.generators().to_vec();
    gens.extend(pn2.generators().iter().cloned());
    let mut relators = pg2.relators().to_vec();
    relators.extend(pn2.relators().iter().map(|r| r.shift_gens(nx)));
    for x in 0..nx {
        for y in 0..ny {
            let w = act.get(x, y)?;
            let conj = Word::generator(nx + y).conjugate(&Word::generator(x));
            relators.push(conj.concat(&w.shift_gens(nx).inverse()));
        }
    }
    Ok(Presentation::new(gens, relators, None))
}

fn commutator_block(
    relators: &mut Vec<Word>,
    t_word: &Word,
    lower: std::ops::Range<usize>,
    involution: bool,
) {
    for u in lower.clone() {
        for v in lower.clone() {
            if involution && v < u {
                continue;
            }
            let conj = Word::generator(v).conjugate(t_word);
            relators.push(Word::commutator(&Word::generator(u), &conj));
        }
    }
}

/// Presentation of the wreath product `H wr G` from a presentation of `H`, a
/// presentation of `G`, and a concrete realization of `G` with generator
/// images (the caller establishes that `pg` presents `g_real`, typically by
/// coset enumeration). Returns the presentation and its construction
/// metadata.
pub fn wreath_presentation(
    ph: &Presentation,
    pg: &Presentation,
    g_real: &FiniteGroup,
    g_images: &[usize],
) -> Result<(Presentation, WreathMeta), BuildError> {
    if ph.gen_count() == 0 || pg.gen_count() == 0 || g_real.order() <= 1 {
        return Err(BuildError::TrivialFactor);
    }
    let words = realization_words(pg, g_real, g_images)?;
    let renamed = rename_disjoint(&[pg.clone(), ph.clone()]);
    let (pg2, ph2) = (&renamed[0], &renamed[1]);
    let nx = pg2.gen_count();
    let ny = ph2.gen_count();

    let mut gens = pg2.generators().to_vec();
    gens.extend(ph2.generators().iter().cloned());
    let mut relators = pg2.relators().to_vec();
    relators.extend(ph2.relators().iter().map(|r| r.shift_gens(nx)));

    let tv = build_transversal(g_real);
    let mut t_words = BTreeMap::new();
    let mut involutions = Vec::new();
    for (t, is_inv) in tv.iter_all() {
        t_words.insert(t, words[t].clone());
        if is_inv {
            involutions.push(t);
        }
    }
    for (t, is_inv) in tv.iter_all() {
        commutator_block(&mut relators, &words[t], nx..nx + ny, is_inv);
    }

    let pres = Presentation::new(gens, relators, None);
    let meta = WreathMeta {
        factors: vec![ph2.clone(), pg2.clone()],
        gen_ranges: vec![(nx, nx + ny), (0, nx)],
        levels: vec![LevelMeta {
            top_gens: (0, nx),
            t_words,
            involutions,
        }],
    };
    Ok((pres, meta))
}

/// Presentation of the left-nested multiple wreath product
/// `(..(G_1 wr G_2)..) wr G_m`, emitted directly: generators bottom-up, all
/// factor relator blocks first, then for each level `j >= 2` the commutators
/// `[u, t^-1 v t]` over the union of the generators below `j`.
pub fn multi_wreath_presentation(
    parts: &[WreathFactor],
) -> Result<(Presentation, WreathMeta), BuildError> {
    if parts.is_empty() {
        return Err(BuildError::EmptyParts);
    }
    let mut part_words = Vec::with_capacity(parts.len());
    for part in parts {
        if part.presentation.gen_count() == 0 || part.group.order() <= 1 {
            return Err(BuildError::TrivialFactor);
        }
        part_words.push(realization_words(
            &part.presentation,
            &part.group,
            &part.images,
        )?);
    }
    let renamed = rename_disjoint(
        &parts
            .iter()
            .map(|p| p.presentation.clone())
            .collect::<Vec<_>>(),
    );

    let mut gens = Vec::new();
    let mut gen_ranges = Vec::new();
    for rp in &renamed {
        let start = gens.len();
        gens.extend(rp.generators().iter().cloned());
        gen_ranges.push((start, gens.len()));
    }
    let mut relators = Vec::new();
    for (j, rp) in renamed.iter().enumerate() {
        let off = gen_ranges[j].0;
        relators.extend(rp.relators().iter().map(|r| r.shift_gens(off)));
    }
    let mut levels = Vec::new();
    for j in 1..parts.len() {
        let start_j = gen_ranges[j].0;
        let lower_end = gen_ranges[j - 1].1;
        let tv = build_transversal(&parts[j].group);
        let mut t_words = BTreeMap::new();
        let mut involutions = Vec::new();
        for (t, is_inv) in tv.iter_all() {
            t_words.insert(t, part_words[j][t].shift_gens(start_j));
            if is_inv {
                involutions.push(t);
            }
        }
        for (t, is_inv) in tv.iter_all() {
            let tw = part_words[j][t].shift_gens(start_j);
            commutator_block(&mut relators, &tw, 0..lower_end, is_inv);
        }
        levels.push(LevelMeta {
            top_gens: gen_ranges[j],
            t_words,
            involutions,
        });
    }
    let pres = Presentation::new(gens, relators, None);
    let meta = WreathMeta {
        factors: renamed,
        gen_ranges,
        levels,
    };
    Ok((pres, meta))
}

/// Derives the multiple wreath presentation by left-folding the two-factor
/// builder over the parts, renumbering each intermediate result into the
/// bottom-up convention and finally regrouping the relator blocks (factor
/// blocks first). This exercises the per-level transversal and commutator
/// machinery of [`wreath_presentation`] and must reproduce
/// [`multi_wreath_presentation`] exactly.
pub fn flattened_wreath_fold(
    parts: &[WreathFactor],
) -> Result<(Presentation, WreathMeta), BuildError> {
    if parts.is_empty() {
        return Err(BuildError::EmptyParts);
    }
    for part in parts {
        if part.presentation.gen_count() == 0 || part.group.order() <= 1 {
            return Err(BuildError::TrivialFactor);
        }
        realization_words(&part.presentation, &part.group, &part.images)?;
    }
    let renamed = rename_disjoint(
        &parts
            .iter()
            .map(|p| p.presentation.clone())
            .collect::<Vec<_>>(),
    );

    let mut acc_gens: Vec<GenSym> = renamed[0].generators().to_vec();
    let mut factor_blocks: Vec<Vec<Word>> = vec![renamed[0].relators().to_vec()];
    let mut comm_blocks: Vec<Vec<Word>> = Vec::new();
    let mut gen_ranges = vec![(0, acc_gens.len())];
    let mut levels: Vec<LevelMeta> = Vec::new();
    // The accumulator carries its relators in already-regrouped order; only
    // its generator list affects the next fold step's commutators.
    let mut acc = Presentation::new(acc_gens.clone(), factor_blocks[0].clone(), None);

    for j in 1..parts.len() {
        let top = &renamed[j];
        let (w, m) = wreath_presentation(&acc, top, &parts[j].group, &parts[j].images)?;
        let nx = top.gen_count();
        let nacc = acc.gen_count();
        // The two-factor output has top generators at 0..nx and accumulated
        // generators at nx..nx+nacc; renumber back to bottom-up order.
        let remap = |g: usize| if g < nx { nacc + g } else { g - nx };

        let n_top_rels = top.relators().len();
        let n_acc_rels = acc.relators().len();
        let top_block: Vec<Word> = w.relators()[..n_top_rels]
            .iter()
            .map(|r| r.map_gens(remap))
            .collect();
        let carried: Vec<Word> = w.relators()[n_top_rels..n_top_rels + n_acc_rels]
            .iter()
            .map(|r| r.map_gens(remap))
            .collect();
        debug_assert_eq!(
            carried.as_slice(),
            acc.relators(),
            "fold must carry the accumulator verbatim"
        );
        let comm_block: Vec<Word> = w.relators()[n_top_rels + n_acc_rels..]
            .iter()
            .map(|r| r.map_gens(remap))
            .collect();

        let level = &m.levels[0];
        levels.push(LevelMeta {
            top_gens: (nacc, nacc + nx),
            t_words: level
                .t_words
                .iter()
                .map(|(&t, tw)| (t, tw.map_gens(remap)))
                .collect(),
            involutions: level.involutions.clone(),
        });

        acc_gens.extend(top.generators().iter().cloned());
        gen_ranges.push((nacc, nacc + nx));
        factor_blocks.push(top_block);
        comm_blocks.push(comm_block);

        let mut acc_rels: Vec<Word> = factor_blocks.iter().flatten().cloned().collect();
        acc_rels.extend(comm_blocks.iter().flatten().cloned());
        acc = Presentation::new(acc_gens.clone(), acc_rels, None);
    }
    let meta = WreathMeta {
        factors: renamed,
        gen_ranges,
        levels,
    };
    Ok((acc, meta))
}

/// The wreath product of two cyclic groups `C_n wr C_m`, emitted in its
/// closed form `< x, y | x^m, y^n, [y, x^-k y x^k] for 1 <= k <= m/2 >`.
/// Must coincide with routing `< y | y^n >` and `< x | x^m >` through
/// [`wreath_presentation`].
pub fn cyclic_wreath_presentation(
    n: usize,
    m: usize,
) -> Result<(Presentation, WreathMeta), BuildError> {
    if n < 2 {
        return Err(BuildError::FactorOrderTooSmall(n));
    }
    if m < 2 {
        return Err(BuildError::FactorOrderTooSmall(m));
    }
    let x = Word::generator(0);
    let y = Word::generator(1);
    let mut relators = vec![x.pow(m as i64), y.pow(n as i64)];
    let mut t_words = BTreeMap::new();
    let mut involutions = Vec::new();
    for k in 1..=m / 2 {
        relators.push(Word::commutator(&y, &y.conjugate(&x.pow(k as i64))));
        t_words.insert(k, x.pow(k as i64));
        if m == 2 * k {
            involutions.push(k);
        }
    }
    let gens = vec![GenSym::new("x").unwrap(), GenSym::new("y").unwrap()];
    let pres = Presentation::new(gens, relators, None);
    let meta = WreathMeta {
        factors: vec![
            Presentation::parse(&["y"], &[format!("y^{n}")])?,
            Presentation::parse(&["x"], &[format!("x^{m}")])?,
        ],
        gen_ranges: vec![(1, 2), (0, 1)],
        levels: vec![LevelMeta {
            top_gens: (0, 1),
            t_words,
            involutions,
        }],
    };
    Ok((pres, meta))
}

/// The iterated wreath product of cyclic groups of the given orders,
/// bottom-up, with generators named `x_1, ..., x_s`.
pub fn iterated_cyclic_presentation(
    orders: &[usize],
) -> Result<(Presentation, WreathMeta), BuildError> {
    if orders.is_empty() {
        return Err(BuildError::EmptyParts);
    }
    let parts = cyclic_factors(orders)?;
    multi_wreath_presentation(&parts)
}

/// Cyclic [`WreathFactor`]s named `x_1, ..., x_s` for the given orders.
pub fn cyclic_factors(orders: &[usize]) -> Result<Vec<WreathFactor>, BuildError> {
    orders
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            if n < 2 {
                return Err(BuildError::FactorOrderTooSmall(n));
            }
            let name = format!("x_{}", i + 1);
            let presentation =
                Presentation::parse(&[name.as_str()], &[format!("{name}^{n}")])?;
            Ok(WreathFactor {
                presentation,
                group: FiniteGroup::cyclic(n)?,
                images: vec![1],
            })
        })
        .collect()
}

/// Presentation of the Sylow p-subgroup of the symmetric group on `p^n`
/// points: the n-fold iterated wreath power of the cyclic group of order `p`.
pub fn sylow_presentation(p: u64, n: u32) -> Result<(Presentation, WreathMeta), BuildError> {
    if !crate::grouptable::is_prime(p) {
        return Err(BuildError::NotPrime(p));
    }
    if n == 0 {
        return Err(BuildError::EmptyParts);
    }
    iterated_cyclic_presentation(&vec![p as usize; n as usize])
}
