//! Todd-Coxeter coset enumeration.
//!
//! Felsch-style strategy: the first undefined table entry (in row, then
//! column order) is defined, and consequences are propagated through a
//! deduction stack that rescans every relator rotation passing through a new
//! edge. Coincidences are resolved with the usual union-find-plus-row-merge
//! discipline. Before a table is accepted as closed, every relator is
//! rescanned from every live coset; anything that still deduces or collapses
//! sends the enumeration back to the fill loop, so a returned table is closed
//! by construction, not by trust in the bookkeeping.
//!
//! A `CapExceeded` outcome is a normal result, not a failure: the minimality
//! harness leans on it. The cap counts cosets ever defined.

use std::fmt::Write as _;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::Word;

const UNDEF: usize = usize::MAX;

/// Default coset cap used by the command-line tool (overridable per run).
pub const DEFAULT_COSET_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("word references generator index {gen}, but the presentation has {ngens}")]
    GeneratorOutOfRange { gen: usize, ngens: usize },
}

/// Counters reported alongside every enumeration outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumStats {
    /// Cosets ever defined, including coset 0.
    pub defined: usize,
    /// Cosets removed again by coincidences.
    pub deleted: usize,
}

/// Outcome of a coset enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Closed(CosetTable),
    Capped(EnumStats),
}

/// Result of [`group_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    /// The enumeration hit its cap; the order is unknown (possibly infinite).
    Unknown(EnumStats),
}

/// A closed coset table. Rows are cosets (row 0 is the subgroup coset),
/// columns come in pairs per generator: column `2g` is the action of
/// generator `g`, column `2g + 1` the action of its inverse. Rows are
/// renumbered breadth-first from coset 0 along positive generator columns,
/// so identical inputs produce identical tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: usize,
    entries: Vec<usize>,
    subgroup_words: usize,
    stats: EnumStats,
}

impl CosetTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of subgroup generator words the enumeration was run with;
    /// zero means a regular (trivial-subgroup) table.
    pub fn subgroup_words(&self) -> usize {
        self.subgroup_words
    }

    pub fn stats(&self) -> EnumStats {
        self.stats
    }

    /// Image of `coset` under generator `gen` (or its inverse).
    pub fn apply(&self, coset: usize, gen: usize, inverse: bool) -> usize {
        self.entries[coset * 2 * self.ngens + 2 * gen + inverse as usize]
    }

    /// Image of `coset` under a whole word, letter by letter.
    pub fn apply_word(&self, coset: usize, w: &Word) -> usize {
        let mut c = coset;
        for (gen, inv) in w.to_letters() {
            c = self.apply(c, gen, inv);
        }
        c
    }

    /// Debug dump: one line per coset, entries space-separated in column
    /// order `g0 g0^-1 g1 g1^-1 ...`, `-` for undefined. Not a stable format.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let _ = write!(out, "{r}:");
            for c in 0..2 * self.ngens {
                let v = self.entries[r * 2 * self.ngens + c];
                if v == UNDEF {
                    let _ = write!(out, " -");
                } else {
                    let _ = write!(out, " {v}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Structural defects reported by [`verify_table`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableDefect {
    #[error("table has {table} generators but the presentation has {presentation}")]
    GeneratorCountMismatch { table: usize, presentation: usize },
    #[error("entry ({coset}, column {col}) is out of range")]
    EntryOutOfRange { coset: usize, col: usize },
    #[error("mirror entries disagree at ({coset}, column {col})")]
    MirrorMismatch { coset: usize, col: usize },
    #[error("column {col} is not a permutation of the rows")]
    NotPermutation { col: usize },
    #[error("relator {relator} does not close at coset {coset}")]
    RelatorOpen { relator: usize, coset: usize },
    #[error("subgroup word {word} does not fix coset 0")]
    SubgroupWordOpen { word: usize },
}

/// Independent post-hoc check of a closed table against its presentation:
/// every entry in range, mirror columns consistent, each column a
/// permutation, every relator closing at every coset, every subgroup word
/// fixing coset 0. Shares no state with the enumerator.
pub fn verify_table(
    p: &Presentation,
    subgroup: &[Word],
    ct: &CosetTable,
) -> Result<(), TableDefect> {
    if ct.ngens() != p.gen_count() {
        return Err(TableDefect::GeneratorCountMismatch {
            table: ct.ngens(),
            presentation: p.gen_count(),
        });
    }
    let n = ct.rows();
    let ncols = 2 * ct.ngens();
    for r in 0..n {
        for c in 0..ncols {
            let v = ct.entries[r * ncols + c];
            if v >= n {
                return Err(TableDefect::EntryOutOfRange { coset: r, col: c });
            }
            if ct.entries[v * ncols + (c ^ 1)] != r {
                return Err(TableDefect::MirrorMismatch { coset: r, col: c });
            }
        }
    }
    for c in 0..ncols {
        let mut seen = vec![false; n];
        for r in 0..n {
            let v = ct.entries[r * ncols + c];
            if seen[v] {
                return Err(TableDefect::NotPermutation { col: c });
            }
            seen[v] = true;
        }
    }
    for (i, rel) in p.relators().iter().enumerate() {
        for r in 0..n {
            if ct.apply_word(r, rel) != r {
                return Err(TableDefect::RelatorOpen { relator: i, coset: r });
            }
        }
    }
    for (i, w) in subgroup.iter().enumerate() {
        if ct.apply_word(0, w) != 0 {
            return Err(TableDefect::SubgroupWordOpen { word: i });
        }
    }
    Ok(())
}

fn word_cols(w: &Word, ngens: usize) -> Result<Vec<usize>, EnumError> {
    if let Some(max) = w.max_gen_index() {
        if max >= ngens {
            return Err(EnumError::GeneratorOutOfRange { gen: max, ngens });
        }
    }
    Ok(w.to_letters()
        .into_iter()
        .map(|(g, inv)| 2 * g + inv as usize)
        .collect())
}

/// What a scan is tracing: a cyclic rotation of a relator (which must close
/// at every coset) or a subgroup generator word (which must close at coset 0).
#[derive(Debug, Clone, Copy)]
enum WordSource {
    Relator { idx: usize, start: usize },
    Subgroup(usize),
}

struct Enumerator {
    ncols: usize,
    cap: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    defined: usize,
    deleted: usize,
    deductions: Vec<(usize, usize)>,
    relators: Vec<Vec<usize>>,
    subgroup_cols: Vec<Vec<usize>>,
    /// For each column value, the `(relator, position)` pairs carrying it.
    positions: Vec<Vec<(usize, usize)>>,
    /// All live rows below this index are completely defined.
    fill_cursor: usize,
    capped: bool,
}

impl Enumerator {
    fn new(ngens: usize, relators: Vec<Vec<usize>>, subgroup_cols: Vec<Vec<usize>>, cap: usize) -> Self {
        let ncols = 2 * ngens;
        let mut positions = vec![Vec::new(); ncols.max(1)];
        for (ri, rel) in relators.iter().enumerate() {
            for (pos, &col) in rel.iter().enumerate() {
                positions[col].push((ri, pos));
            }
        }
        Enumerator {
            ncols,
            cap,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            defined: 1,
            deleted: 0,
            deductions: Vec::new(),
            relators,
            subgroup_cols,
            positions,
            fill_cursor: 0,
            capped: false,
        }
    }

    fn nrows(&self) -> usize {
        self.parent.len()
    }

    fn entry(&self, row: usize, col: usize) -> usize {
        self.table[row * self.ncols + col]
    }

    fn set(&mut self, row: usize, col: usize, v: usize) {
        self.table[row * self.ncols + col] = v;
    }

    fn rep(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Sets both directions of an edge and queues the rescans.
    fn set_edge(&mut self, a: usize, col: usize, b: usize) {
        self.set(a, col, b);
        self.set(b, col ^ 1, a);
        self.deductions.push((a, col));
        self.deductions.push((b, col ^ 1));
    }

    /// Allocates a new coset as the image of `(a, col)`.
    fn define(&mut self, a: usize, col: usize) -> Option<usize> {
        if self.defined >= self.cap {
            self.capped = true;
            return None;
        }
        let b = self.nrows();
        self.parent.push(b);
        self.table.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.defined += 1;
        self.live += 1;
        self.set_edge(a, col, b);
        Some(b)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, die) = if a < b { (a, b) } else { (b, a) };
        self.parent[die] = keep;
        self.live -= 1;
        self.deleted += 1;
        queue.push(die);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let dead = queue[qi];
            qi += 1;
            for col in 0..self.ncols {
                let delta = self.entry(dead, col);
                if delta == UNDEF {
                    continue;
                }
                // Drop the mirror entry; it pointed back at the dead coset.
                self.set(delta, col ^ 1, UNDEF);
                self.fill_cursor = self.fill_cursor.min(delta);
                let mu = self.rep(dead);
                let nu = self.rep(delta);
                let mu_img = self.entry(mu, col);
                if mu_img != UNDEF {
                    self.merge(nu, mu_img, &mut queue);
                } else {
                    let nu_pre = self.entry(nu, col ^ 1);
                    if nu_pre != UNDEF {
                        self.merge(mu, nu_pre, &mut queue);
                    } else {
                        self.set_edge(mu, col, nu);
                    }
                }
            }
        }
    }

    fn word_col(&self, src: WordSource, k: usize) -> usize {
        match src {
            WordSource::Relator { idx, start } => {
                let rel = &self.relators[idx];
                rel[(start + k) % rel.len()]
            }
            WordSource::Subgroup(idx) => self.subgroup_cols[idx][k],
        }
    }

    fn word_len(&self, src: WordSource) -> usize {
        match src {
            WordSource::Relator { idx, .. } => self.relators[idx].len(),
            WordSource::Subgroup(idx) => self.subgroup_cols[idx].len(),
        }
    }

    /// Scans a closed path labelled by `src` from coset `alpha` back to
    /// itself. Completes a one-edge gap as a deduction; a fully defined scan
    /// with mismatched endpoints triggers a coincidence.
    fn scan(&mut self, src: WordSource, alpha: usize) {
        let len = self.word_len(src);
        if len == 0 {
            return;
        }
        let mut f = alpha;
        let mut i = 0;
        while i < len {
            let next = self.entry(f, self.word_col(src, i));
            if next == UNDEF {
                break;
            }
            f = self.rep(next);
            i += 1;
        }
        if i == len {
            if f != alpha {
                self.coincidence(f, alpha);
            }
            return;
        }
        let mut b = alpha;
        let mut j = len - 1;
        loop {
            let prev = self.entry(b, self.word_col(src, j) ^ 1);
            if prev == UNDEF {
                break;
            }
            b = self.rep(prev);
            if j == i {
                // Backward scan consumed the gap edge from the other side:
                // the two path endpoints at the gap must coincide.
                self.coincidence(f, b);
                return;
            }
            j -= 1;
        }
        if j == i {
            self.set_edge(f, self.word_col(src, i), b);
        }
    }

    /// Scans subgroup generator word `idx` from coset 0, defining new cosets
    /// to fill any gap wider than one edge.
    fn scan_and_fill(&mut self, idx: usize) {
        let src = WordSource::Subgroup(idx);
        let len = self.word_len(src);
        if len == 0 {
            return;
        }
        loop {
            let alpha = self.rep(0);
            let mut f = alpha;
            let mut i = 0;
            while i < len {
                let next = self.entry(f, self.word_col(src, i));
                if next == UNDEF {
                    break;
                }
                f = self.rep(next);
                i += 1;
            }
            if i == len {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return;
            }
            let mut b = alpha;
            let mut j = len - 1;
            let mut coincided = false;
            loop {
                let prev = self.entry(b, self.word_col(src, j) ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = self.rep(prev);
                if j == i {
                    self.coincidence(f, b);
                    coincided = true;
                    break;
                }
                j -= 1;
            }
            if coincided {
                return;
            }
            if j == i {
                let col = self.word_col(src, i);
                self.set_edge(f, col, b);
                self.process_deductions();
                return;
            }
            // Gap wider than one edge: extend the forward path by a fresh
            // coset and rescan.
            let col = self.word_col(src, i);
            if self.define(f, col).is_none() {
                return;
            }
            self.process_deductions();
            if self.capped {
                return;
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((a, col)) = self.deductions.pop() {
            let a = self.rep(a);
            if self.entry(a, col) == UNDEF {
                continue;
            }
            for k in 0..self.positions[col].len() {
                let (idx, start) = self.positions[col][k];
                self.scan(WordSource::Relator { idx, start }, a);
                if self.rep(a) != a || self.entry(a, col) == UNDEF {
                    break;
                }
            }
        }
    }

    /// One full pass scanning every relator at every live coset and every
    /// subgroup word at coset 0. Returns true if the pass changed anything
    /// (so closure must be re-examined).
    fn full_check_pass(&mut self) -> bool {
        let before = (self.defined, self.deleted);
        let mut r = 0;
        while r < self.nrows() {
            if self.parent[r] == r {
                for idx in 0..self.relators.len() {
                    self.scan(WordSource::Relator { idx, start: 0 }, r);
                    if self.parent[r] != r {
                        break;
                    }
                }
                self.process_deductions();
            }
            r += 1;
        }
        for idx in 0..self.subgroup_cols.len() {
            let alpha = self.rep(0);
            self.scan(WordSource::Subgroup(idx), alpha);
            self.process_deductions();
        }
        (self.defined, self.deleted) != before || !self.deductions.is_empty()
    }

    /// First live row with an undefined entry, if any.
    fn next_undefined(&mut self) -> Option<(usize, usize)> {
        let mut r = self.fill_cursor;
        while r < self.nrows() {
            if self.parent[r] == r {
                for col in 0..self.ncols {
                    if self.entry(r, col) == UNDEF {
                        self.fill_cursor = r;
                        return Some((r, col));
                    }
                }
            }
            r += 1;
        }
        self.fill_cursor = r;
        None
    }

    fn run(&mut self) {
        for idx in 0..self.subgroup_cols.len() {
            self.scan_and_fill(idx);
            if self.capped {
                return;
            }
        }
        loop {
            self.process_deductions();
            match self.next_undefined() {
                Some((r, col)) => {
                    if self.define(r, col).is_none() {
                        return;
                    }
                }
                None => {
                    if !self.full_check_pass() {
                        return;
                    }
                }
            }
        }
    }

    /// Compacts the closed table: live rows renumbered breadth-first from
    /// coset 0 along positive generator columns.
    fn into_table(mut self, ngens: usize, subgroup_words: usize) -> CosetTable {
        let nrows = self.nrows();
        let mut order = Vec::with_capacity(self.live);
        let mut new_index = vec![UNDEF; nrows];
        new_index[0] = 0;
        order.push(0);
        let mut qi = 0;
        while qi < order.len() {
            let r = order[qi];
            qi += 1;
            for g in 0..ngens {
                let raw = self.entry(r, 2 * g);
                let v = self.rep(raw);
                if new_index[v] == UNDEF {
                    new_index[v] = order.len();
                    order.push(v);
                }
            }
        }
        assert_eq!(order.len(), self.live, "closed table must be connected");
        let ncols = self.ncols;
        let mut entries = vec![UNDEF; self.live * ncols];
        for (new_r, &old_r) in order.iter().enumerate() {
            for c in 0..ncols {
                let v = self.rep(self.table[old_r * ncols + c]);
                entries[new_r * ncols + c] = new_index[v];
            }
        }
        CosetTable {
            ngens,
            rows: self.live,
            entries,
            subgroup_words,
            stats: EnumStats {
                defined: self.defined,
                deleted: self.deleted,
            },
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`, giving up once `cap` cosets have been defined. For an
/// empty subgroup the closed table is the regular representation and its row
/// count is the group order. Deterministic: identical inputs yield identical
/// tables, including row numbering.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    cap: usize,
) -> Result<Enumeration, EnumError> {
    let ngens = p.gen_count();
    let mut relators = Vec::new();
    for r in p.relators() {
        let reduced = r.cyclically_reduced();
        if reduced.is_identity() {
            continue;
        }
        relators.push(word_cols(&reduced, ngens)?);
    }
    let subgroup_cols = subgroup
        .iter()
        .map(|w| word_cols(w, ngens))
        .collect::<Result<Vec<_>, _>>()?;
    let mut e = Enumerator::new(ngens, relators, subgroup_cols, cap);
    e.run();
    if e.capped {
        return Ok(Enumeration::Capped(EnumStats {
            defined: e.defined,
            deleted: e.deleted,
        }));
    }
    Ok(Enumeration::Closed(e.into_table(ngens, subgroup.len())))
}

/// Order of the group presented by `p`: the row count of a closed
/// trivial-subgroup enumeration, or `Unknown` once the cap is hit.
pub fn group_order(p: &Presentation, cap: usize) -> Result<GroupOrder, EnumError> {
    Ok(match todd_coxeter(p, &[], cap)? {
        Enumeration::Closed(ct) => GroupOrder::Finite(ct.rows()),
        Enumeration::Capped(stats) => GroupOrder::Unknown(stats),
    })
}
