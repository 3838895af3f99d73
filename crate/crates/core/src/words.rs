//! Freely reduced words over an indexed generator alphabet.
//!
//! Words are stored as run-length syllables `(generator index, exponent)` so
//! relators like `x^128` stay compact. Every [`Word`] is freely reduced by
//! construction: adjacent syllables use distinct generators and no exponent
//! is zero. The empty word is the identity.

use std::fmt;

use thiserror::Error;

/// Characters that carry meaning in the word grammar and are therefore
/// forbidden inside generator names.
const META_CHARS: &[char] = &['*', '^', '[', ']', '(', ')', ','];

/// Errors from generator-name validation and word parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`: {1}")]
    InvalidName(String, &'static str),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// A named generator symbol. The index of a generator is its position in the
/// presentation's generator list; words refer to generators by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym {
    name: String,
}

impl GenSym {
    /// Validates and wraps a generator name: nonempty, no whitespace, none of
    /// the grammar metacharacters `* ^ [ ] ( ) ,`.
    pub fn new(name: impl Into<String>) -> Result<Self, WordError> {
        let name = name.into();
        if name.is_empty() {
            return Err(WordError::InvalidName(name, "empty"));
        }
        if name.chars().any(char::is_whitespace) {
            return Err(WordError::InvalidName(name, "contains whitespace"));
        }
        if name.chars().any(|c| META_CHARS.contains(&c)) {
            return Err(WordError::InvalidName(name, "contains a reserved character"));
        }
        Ok(GenSym { name })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl AsRef<str> for GenSym {
    fn as_ref(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// One maximal run `g^e` inside a word; `e` is never zero in a stored word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word in the free group on an indexed alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Word {
        Word::default()
    }

    /// The single-letter word `g`.
    pub fn generator(gen: usize) -> Word {
        Word::syllable(gen, 1)
    }

    /// The word `g^exp` (identity when `exp == 0`).
    pub fn syllable(gen: usize, exp: i64) -> Word {
        if exp == 0 {
            Word::identity()
        } else {
            Word {
                syllables: vec![Syllable { gen, exp }],
            }
        }
    }

    /// Builds a word from raw `(generator, exponent)` pairs, freely reducing:
    /// zero exponents are dropped and adjacent runs on the same generator are
    /// merged, cascading cancellations.
    pub fn from_syllables<I>(syllables: I) -> Word
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut word = Word::identity();
        for (gen, exp) in syllables {
            word.push(gen, exp);
        }
        word
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { gen, exp });
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length: the sum of absolute exponents.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    /// Largest generator index used, if any.
    pub fn max_gen_index(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.gen, s.exp);
        }
        out
    }

    /// The inverse word: syllables reversed, exponents negated.
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// `self` raised to an integer power.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// The conjugate `t^-1 self t`.
    pub fn conjugate(&self, t: &Word) -> Word {
        t.inverse().concat(self).concat(t)
    }

    /// The commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Total signed exponent of `gen` in the word. Invariant under free
    /// reduction and conjugation; this is the abelianized image coordinate.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp)
            .sum()
    }

    /// Rebuilds the word with every generator index mapped through `f`.
    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_syllables(self.syllables.iter().map(|s| (f(s.gen), s.exp)))
    }

    /// Shifts every generator index by `offset`.
    pub fn shift_gens(&self, offset: usize) -> Word {
        self.map_gens(|g| g + offset)
    }

    /// Expands the word into single letters `(generator, inverted)`.
    pub fn to_letters(&self) -> Vec<(usize, bool)> {
        let mut letters = Vec::with_capacity(self.letter_len());
        for s in &self.syllables {
            let inv = s.exp < 0;
            for _ in 0..s.exp.unsigned_abs() {
                letters.push((s.gen, inv));
            }
        }
        letters
    }

    /// Cyclic reduction: repeatedly strips a leading letter that cancels the
    /// trailing letter. The result is a conjugate of `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.clone();
        loop {
            let n = w.syllables.len();
            if n < 2 {
                return w;
            }
            let first = w.syllables[0];
            let last = w.syllables[n - 1];
            if first.gen != last.gen || (first.exp > 0) == (last.exp > 0) {
                return w;
            }
            // Strip min(|first|, |last|) letters from each end, then re-reduce
            // in case the new ends meet.
            let k = first.exp.abs().min(last.exp.abs());
            let mut middle: Vec<(usize, i64)> = Vec::with_capacity(n);
            let head = Syllable {
                gen: first.gen,
                exp: first.exp - k * first.exp.signum(),
            };
            if head.exp != 0 {
                middle.push((head.gen, head.exp));
            }
            for s in &w.syllables[1..n - 1] {
                middle.push((s.gen, s.exp));
            }
            let tail = Syllable {
                gen: last.gen,
                exp: last.exp - k * last.exp.signum(),
            };
            if tail.exp != 0 {
                middle.push((tail.gen, tail.exp));
            }
            w = Word::from_syllables(middle);
        }
    }

    /// Renders the word in the text grammar using the given generator names.
    /// The identity word renders as `1`, which is display-only: it never
    /// appears in serialized presentations because empty relators and empty
    /// transversal words are forbidden upstream.
    pub fn to_text(&self, names: &[impl AsRef<str>]) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.syllables.len());
        for s in &self.syllables {
            let name = names
                .get(s.gen)
                .map(|n| n.as_ref())
                .unwrap_or("<?>");
            if s.exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}^{}", name, s.exp));
            }
        }
        parts.join("*")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Star,
    Caret,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Atom(&'a str),
}

fn lex(text: &str) -> Result<Vec<(Tok<'_>, usize)>, WordError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = tok {
            toks.push((tok, i));
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() || META_CHARS.contains(&c) {
                break;
            }
            i += 1;
        }
        toks.push((Tok::Atom(&text[start..i]), start));
    }
    Ok(toks)
}

struct Parser<'a, S: AsRef<str>> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
    names: &'a [S],
    end: usize,
}

impl<'a, S: AsRef<str>> Parser<'a, S> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> WordError {
        WordError::Syntax {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: Tok<'a>, what: &str) -> Result<(), WordError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn lookup(&self, atom: &str) -> Result<usize, WordError> {
        self.names
            .iter()
            .position(|n| n.as_ref() == atom)
            .ok_or_else(|| WordError::UnknownGenerator(atom.to_string()))
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut w = self.factor()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let base = match self.bump() {
            Some(Tok::Atom(atom)) => {
                let gen = self.lookup(atom)?;
                Word::generator(gen)
            }
            Some(Tok::LBrack) => {
                let a = self.word()?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let b = self.word()?;
                self.expect(Tok::RBrack, "`]` closing commutator")?;
                Word::commutator(&a, &b)
            }
            Some(Tok::LParen) => {
                let w = self.word()?;
                self.expect(Tok::RParen, "`)` closing group")?;
                w
            }
            _ => return Err(self.err("expected generator, `[` or `(`")),
        };
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Tok::Atom(digits)) => {
                    let exp: i64 = digits
                        .parse()
                        .map_err(|_| self.err(format!("bad exponent `{digits}`")))?;
                    Ok(base.pow(exp))
                }
                _ => Err(self.err("expected integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parses the word grammar
/// `word := factor ('*' factor)*; factor := base ('^' int)?;
/// base := gen | '[' word ',' word ']' | '(' word ')'`
/// over the given generator names. Whitespace is insignificant. Commutator
/// brackets expand to `[a, b] = a^-1 b^-1 a b`; canonical output only ever
/// uses the `gen^int` form, the rest is input sugar.
pub fn parse_word(text: &str, names: &[impl AsRef<str>]) -> Result<Word, WordError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: text.len(),
    };
    if p.toks.is_empty() {
        return Err(p.err("empty word"));
    }
    let w = p.word()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(pairs: &[(usize, i64)]) -> Word {
        Word::from_syllables(pairs.iter().copied())
    }

    #[test]
    fn reduction_cancels_and_merges() {
        // x x^-1 -> identity
        assert!(w(&[(0, 1), (0, -1)]).is_identity());
        // x y y^-1 x -> x^2
        assert_eq!(w(&[(0, 1), (1, 1), (1, -1), (0, 1)]), w(&[(0, 2)]));
        // already reduced words are fixpoints
        let fixed = w(&[(0, 2), (1, 1)]);
        assert_eq!(Word::from_syllables(fixed.syllables().iter().map(|s| (s.gen, s.exp))), fixed);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(w(&[(0, 1), (1, 1)]).inverse(), w(&[(1, -1), (0, -1)]));
        assert_eq!(w(&[(0, 2)]).inverse(), w(&[(0, -2)]));
    }

    #[test]
    fn commutator_examples() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        assert!(Word::commutator(&x, &x).is_identity());
        assert!(Word::commutator(&Word::identity(), &w(&[(0, 3), (1, -2)])).is_identity());
        // [y, x^-1 y x] is the 8-letter word y^-1 x^-1 y^-1 x y x^-1 y x
        let c = Word::commutator(&y, &y.conjugate(&x));
        assert_eq!(c.letter_len(), 8);
        assert_eq!(
            c,
            w(&[(1, -1), (0, -1), (1, -1), (0, 1), (1, 1), (0, -1), (1, 1), (0, 1)])
        );
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w(&[(0, 1), (1, 1), (0, -1), (1, 1)]).exponent_sum(1), 2);
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert_eq!(Word::commutator(&a, &b).exponent_sum(0), 0);
        assert_eq!(w(&[(0, 3)]).exponent_sum(0), 3);
    }

    #[test]
    fn parse_basic() {
        let names = ["x", "y"];
        assert_eq!(
            parse_word("x^-1*y*x", &names).unwrap(),
            w(&[(0, -1), (1, 1), (0, 1)])
        );
        let y = Word::generator(1);
        let x = Word::generator(0);
        assert_eq!(
            parse_word("[y, x^-1*y*x]", &names).unwrap(),
            Word::commutator(&y, &y.conjugate(&x))
        );
        assert_eq!(
            parse_word("z", &names),
            Err(WordError::UnknownGenerator("z".to_string()))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        let names = ["x"];
        assert!(matches!(parse_word("", &names), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("x*", &names), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("x^", &names), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("[x]", &names), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("x)", &names), Err(WordError::Syntax { .. })));
        // nonempty text over an empty alphabet
        let none: [&str; 0] = [];
        assert!(matches!(
            parse_word("x", &none),
            Err(WordError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn parse_parens_and_whitespace() {
        let names = ["x", "y"];
        assert_eq!(
            parse_word(" ( x * y ) * y^-1 ", &names).unwrap(),
            Word::generator(0)
        );
        // x^0 reduces to the identity
        assert!(parse_word("x^0", &names).unwrap().is_identity());
    }

    #[test]
    fn gensym_validation() {
        assert!(GenSym::new("x_1").is_ok());
        assert!(GenSym::new("").is_err());
        assert!(GenSym::new("a b").is_err());
        assert!(GenSym::new("a*b").is_err());
    }

    #[test]
    fn cyclic_reduction() {
        // x y x^-1 -> y
        assert_eq!(w(&[(0, 1), (1, 1), (0, -1)]).cyclically_reduced(), w(&[(1, 1)]));
        // x^2 y x^-1 -> x y (partial strip)
        assert_eq!(
            w(&[(0, 2), (1, 1), (0, -1)]).cyclically_reduced(),
            w(&[(0, 1), (1, 1)])
        );
        // cascades: x y^-1 z y x^-1 stays, but x y z y^-1 x^-1 -> z
        assert_eq!(
            w(&[(0, 1), (1, 1), (2, 1), (1, -1), (0, -1)]).cyclically_reduced(),
            w(&[(2, 1)])
        );
    }

    fn raw_word() -> impl Strategy<Value = Vec<(usize, i64)>> {
        prop::collection::vec((0usize..5, -4i64..=4), 0..64)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_nonincreasing(pairs in raw_word()) {
            let reduced = Word::from_syllables(pairs.iter().copied());
            let raw_len: usize = pairs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum();
            prop_assert!(reduced.letter_len() <= raw_len);
            let again = Word::from_syllables(
                reduced.syllables().iter().map(|s| (s.gen, s.exp)),
            );
            prop_assert_eq!(again, reduced);
        }

        #[test]
        fn word_times_inverse_is_identity(pairs in raw_word()) {
            let word = Word::from_syllables(pairs.iter().copied());
            prop_assert!(word.concat(&word.inverse()).is_identity());
            prop_assert_eq!(word.inverse().inverse(), word);
        }

        #[test]
        fn exponent_sum_survives_reduction(pairs in raw_word(), g in 0usize..5) {
            let raw: i64 = pairs.iter().filter(|(gen, _)| *gen == g).map(|(_, e)| e).sum();
            let word = Word::from_syllables(pairs.iter().copied());
            prop_assert_eq!(word.exponent_sum(g), raw);
        }

        #[test]
        fn commutators_abelianize_to_zero(a in raw_word(), b in raw_word(), g in 0usize..5) {
            let a = Word::from_syllables(a);
            let b = Word::from_syllables(b);
            prop_assert_eq!(Word::commutator(&a, &b).exponent_sum(g), 0);
        }

        #[test]
        fn text_round_trip(pairs in raw_word()) {
            let names = ["a", "b", "c", "d", "e"];
            let word = Word::from_syllables(pairs);
            prop_assume!(!word.is_identity());
            let text = word.to_text(&names);
            prop_assert_eq!(parse_word(&text, &names).unwrap(), word);
        }
    }
}
