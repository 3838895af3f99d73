//! Conormality decision procedures, free-product normal forms, and the
//! relator minimality harness.
//!
//! A generating set is conormal when no generator lies in the normal closure
//! of the others. Killing every generator except `y` retracts the group onto
//! a cyclic quotient generated by the image of `y`, and each relator
//! collapses to `y` raised to its exponent sum, so that quotient is the
//! integers modulo the gcd of the exponent sums. The generator is conormal
//! exactly when that gcd is not 1 (0 means an infinite cyclic quotient, which
//! also counts as conormal). An independent cross-check enumerates the
//! quotient presentation directly.
//!
//! Dropping a relator can only enlarge the presented group. The minimality
//! harness re-enumerates the presentation with each relator removed: a larger
//! finite order proves the relator needed, a cap-exceeded enumeration is
//! consistent with (but not proof of) an infinite quotient and is reported
//! one-sidedly as "needed (cap)".

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{group_order, EnumError, EnumStats, GroupOrder};
use crate::grouptable::is_prime;
use crate::presentation::Presentation;
use crate::words::Word;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("baseline order {actual} does not match the expected order {expected}")]
    BaselineMismatch { expected: usize, actual: usize },
    #[error("baseline enumeration hit the coset cap ({stats:?})")]
    BaselineCapped { stats: EnumStats },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("generator `{generator}` fails the conormality hypothesis (cyclic quotient is trivial)")]
    HypothesisFailure { generator: String },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Conormality data for one generator: the order of the cyclic quotient
/// obtained by killing all other generators (0 = infinite cyclic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalityEntry {
    pub generator: String,
    pub cyclic_quotient_order: u64,
    pub conormal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalityReport {
    pub entries: Vec<ConormalityEntry>,
}

impl ConormalityReport {
    pub fn all_conormal(&self) -> bool {
        self.entries.iter().all(|e| e.conormal)
    }

    pub fn quotient_order(&self, gen: usize) -> u64 {
        self.entries[gen].cyclic_quotient_order
    }
}

/// Decides conormality of every generator through exponent sums: the cyclic
/// quotient order of `y` is the gcd of `|exponent_sum(relator, y)|` over all
/// relators, and `y` is conormal iff that order differs from 1.
pub fn conormality_gcd(p: &Presentation) -> ConormalityReport {
    let entries = p
        .generators()
        .iter()
        .enumerate()
        .map(|(g, sym)| {
            let d = p
                .relators()
                .iter()
                .fold(0u64, |acc, r| gcd(acc, r.exponent_sum(g).unsigned_abs()));
            ConormalityEntry {
                generator: sym.name().to_string(),
                cyclic_quotient_order: d,
                conormal: d != 1,
            }
        })
        .collect();
    ConormalityReport { entries }
}

/// Independent cross-check of [`conormality_gcd`]: enumerates the quotient of
/// `p` by the normal closure of all generators except `gen` (one extra
/// length-1 relator per killed generator). A closed enumeration returns the
/// cyclic quotient order; hitting the cap is consistent with order 0.
pub fn conormality_enum(
    p: &Presentation,
    gen: usize,
    cap: usize,
) -> Result<GroupOrder, AnalysisError> {
    if gen >= p.gen_count() {
        return Err(AnalysisError::GeneratorOutOfRange(gen));
    }
    let mut relators = p.relators().to_vec();
    for z in 0..p.gen_count() {
        if z != gen {
            relators.push(Word::generator(z));
        }
    }
    let quotient = Presentation::new(p.generators().to_vec(), relators, None);
    Ok(group_order(&quotient, cap)?)
}

/// True iff every relator has all exponent sums divisible by the prime `q`,
/// i.e. the presentation's abelianization modulo `q` is the full elementary
/// abelian group of rank `|generators|` and the generating set is minimal.
pub fn frattini_check(p: &Presentation, q: u64) -> Result<bool, AnalysisError> {
    if !is_prime(q) {
        return Err(AnalysisError::NotPrime(q));
    }
    let m = p.exponent_matrix();
    Ok(m.rows()
        .iter()
        .all(|row| row.iter().all(|&e| e.rem_euclid(q as i64) == 0)))
}

/// Which factor of a free product `C * C'` a syllable lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorSide {
    Left,
    Right,
}

/// A word in the free product of two cyclic groups, as a syllable sequence.
/// Normal forms strictly alternate sides and carry no zero exponents; the
/// empty sequence is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeProductWord {
    syllables: Vec<(FactorSide, i64)>,
}

impl FreeProductWord {
    pub fn identity() -> Self {
        FreeProductWord::default()
    }

    pub fn new(syllables: Vec<(FactorSide, i64)>) -> Self {
        FreeProductWord { syllables }
    }

    pub fn syllables(&self) -> &[(FactorSide, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &FreeProductWord) -> FreeProductWord {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().copied());
        FreeProductWord { syllables }
    }
}

fn reduce_exp(exp: i64, modulus: u64) -> i64 {
    if modulus == 0 {
        exp
    } else {
        exp.rem_euclid(modulus as i64)
    }
}

/// Normal form in `C_d * C_e` (`d`, `e` cyclic orders, 0 meaning infinite
/// cyclic): exponents reduced into `[0, d)` resp. `[0, e)`, zero syllables
/// deleted with neighbor merging cascaded. The result is empty iff the word
/// represents the identity.
pub fn free_product_normal_form(w: &FreeProductWord, d: u64, e: u64) -> FreeProductWord {
    let mut stack: Vec<(FactorSide, i64)> = Vec::with_capacity(w.syllables.len());
    for &(side, exp) in &w.syllables {
        let modulus = match side {
            FactorSide::Left => d,
            FactorSide::Right => e,
        };
        let mut exp = reduce_exp(exp, modulus);
        loop {
            if exp == 0 {
                break;
            }
            match stack.last_mut() {
                Some((top_side, top_exp)) if *top_side == side => {
                    exp = reduce_exp(*top_exp + exp, modulus);
                    stack.pop();
                }
                _ => {
                    stack.push((side, exp));
                    break;
                }
            }
        }
    }
    FreeProductWord { syllables: stack }
}

/// Constructive witness that a commutator of conormal generators survives:
/// the normal form of `[u, v']` in the free product of the cyclic quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub left_order: u64,
    pub right_order: u64,
    pub normal_form: FreeProductWord,
}

impl CommutatorWitness {
    pub fn nontrivial(&self) -> bool {
        !self.normal_form.is_identity()
    }
}

/// Certifies that the commutator `[u, v']` of generator `u` and the primed
/// copy of generator `v` is nontrivial modulo all other mixed commutators:
/// in the free product of the two cyclic quotients `C_{d_u} * C_{d_v}` the
/// image is the alternating word `u^-1 v'^-1 u v'`, whose normal form is
/// nonempty whenever both quotients are nontrivial. Fails (as a hypothesis
/// violation, not a witness result) when either generator is not conormal.
pub fn commutator_witness(
    p: &Presentation,
    u: usize,
    v: usize,
) -> Result<CommutatorWitness, AnalysisError> {
    if u >= p.gen_count() {
        return Err(AnalysisError::GeneratorOutOfRange(u));
    }
    if v >= p.gen_count() {
        return Err(AnalysisError::GeneratorOutOfRange(v));
    }
    let report = conormality_gcd(p);
    for gen in [u, v] {
        if report.quotient_order(gen) == 1 {
            return Err(AnalysisError::HypothesisFailure {
                generator: p.generators()[gen].name().to_string(),
            });
        }
    }
    let d_u = report.quotient_order(u);
    let d_v = report.quotient_order(v);
    let commutator = FreeProductWord::new(vec![
        (FactorSide::Left, -1),
        (FactorSide::Right, -1),
        (FactorSide::Left, 1),
        (FactorSide::Right, 1),
    ]);
    Ok(CommutatorWitness {
        left_order: d_u,
        right_order: d_v,
        normal_form: free_product_normal_form(&commutator, d_u, d_v),
    })
}

/// Verdict for one relator of a minimality drop test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DropVerdict {
    /// Dropping the relator yields a strictly larger finite group.
    #[serde(rename = "needed")]
    Needed,
    /// Dropping the relator left an enumeration that did not close within the
    /// cap: consistent with, but not proof of, an infinite quotient.
    #[serde(rename = "needed (cap)")]
    NeededCap,
    /// Dropping the relator does not change the group order.
    #[serde(rename = "redundant")]
    Redundant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropReport {
    pub relator: String,
    pub verdict: DropVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
}

/// Re-enumerates `p` with each relator removed in turn. The baseline order of
/// `p` must close within `cap` and equal `expected_order`; each drop then
/// gets a [`DropVerdict`]. Jobs are independent and run in relator order.
pub fn minimality_drop_test(
    p: &Presentation,
    expected_order: usize,
    cap: usize,
) -> Result<Vec<DropReport>, AnalysisError> {
    match group_order(p, cap)? {
        GroupOrder::Finite(n) if n == expected_order => {}
        GroupOrder::Finite(n) => {
            return Err(AnalysisError::BaselineMismatch {
                expected: expected_order,
                actual: n,
            })
        }
        GroupOrder::Unknown(stats) => return Err(AnalysisError::BaselineCapped { stats }),
    }
    let mut reports = Vec::with_capacity(p.relators().len());
    for i in 0..p.relators().len() {
        let mut relators = p.relators().to_vec();
        relators.remove(i);
        let dropped = Presentation::new(p.generators().to_vec(), relators, None);
        let (verdict, order) = match group_order(&dropped, cap)? {
            GroupOrder::Finite(n) if n == expected_order => (DropVerdict::Redundant, Some(n)),
            GroupOrder::Finite(n) => {
                assert!(
                    n > expected_order,
                    "dropping a relator cannot shrink the group"
                );
                (DropVerdict::Needed, Some(n))
            }
            GroupOrder::Unknown(_) => (DropVerdict::NeededCap, None),
        };
        reports.push(DropReport {
            relator: p.word_text(&p.relators()[i]),
            verdict,
            order,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(names: &[&str], relators: &[&str]) -> Presentation {
        Presentation::parse(names, relators).unwrap()
    }

    #[test]
    fn conormality_gcd_examples() {
        let r = conormality_gcd(&pres(&["y"], &["y^3"]));
        assert_eq!(r.quotient_order(0), 3);
        assert!(r.all_conormal());

        let r = conormality_gcd(&pres(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]));
        assert_eq!(r.quotient_order(0), 3);
        assert_eq!(r.quotient_order(1), 3);
        assert!(r.all_conormal());

        let r = conormality_gcd(&pres(&["a", "b"], &["a*b^-1"]));
        assert_eq!(r.quotient_order(0), 1);
        assert_eq!(r.quotient_order(1), 1);
        assert!(!r.entries[0].conormal);
    }

    #[test]
    fn conormality_gcd_zero_means_infinite() {
        let r = conormality_gcd(&pres(&["a", "b"], &["[a,b]"]));
        assert_eq!(r.quotient_order(0), 0);
        assert!(r.all_conormal());
    }

    #[test]
    fn enum_cross_check_matches_gcd() {
        let corpus = [
            pres(&["y"], &["y^3"]),
            pres(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]),
            pres(&["a", "b"], &["a*b^-1"]),
            pres(&["x", "y"], &["x^2", "y^2", "[x,y]"]),
            pres(&["x"], &["x^2", "x^4"]),
        ];
        for p in &corpus {
            let by_gcd = conormality_gcd(p);
            for g in 0..p.gen_count() {
                match conormality_enum(p, g, 10_000).unwrap() {
                    GroupOrder::Finite(n) => {
                        assert_eq!(n as u64, by_gcd.quotient_order(g), "{p:?} gen {g}")
                    }
                    GroupOrder::Unknown(_) => assert_eq!(by_gcd.quotient_order(g), 0),
                }
            }
        }
    }

    #[test]
    fn frattini_examples() {
        assert!(frattini_check(&pres(&["x", "y"], &["x^2", "y^2", "[x,y]"]), 2).unwrap());
        assert!(!frattini_check(&pres(&["x"], &["x^2"]), 3).unwrap());
        assert!(matches!(
            frattini_check(&pres(&["x"], &["x^2"]), 6),
            Err(AnalysisError::NotPrime(6))
        ));
    }

    fn fp(sylls: &[(FactorSide, i64)]) -> FreeProductWord {
        FreeProductWord::new(sylls.to_vec())
    }

    use FactorSide::{Left, Right};

    #[test]
    fn normal_form_examples() {
        // in C2 * C3: a a -> identity
        assert!(free_product_normal_form(&fp(&[(Left, 1), (Left, 1)]), 2, 3).is_identity());
        // a b^4 -> a b
        assert_eq!(
            free_product_normal_form(&fp(&[(Left, 1), (Right, 4)]), 2, 3),
            fp(&[(Left, 1), (Right, 1)])
        );
        // a b^3 a -> identity (b^3 deletes, a a merges and deletes)
        assert!(
            free_product_normal_form(&fp(&[(Left, 1), (Right, 3), (Left, 1)]), 2, 3)
                .is_identity()
        );
        // negative exponents land in [0, d)
        assert_eq!(
            free_product_normal_form(&fp(&[(Left, -1)]), 3, 0),
            fp(&[(Left, 2)])
        );
        // infinite factors keep their exponents
        assert_eq!(
            free_product_normal_form(&fp(&[(Right, -5)]), 2, 0),
            fp(&[(Right, -5)])
        );
    }

    #[test]
    fn witness_examples() {
        let p = pres(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]);
        let w = commutator_witness(&p, 0, 1).unwrap();
        assert!(w.nontrivial());
        assert_eq!(w.normal_form.len(), 4);
        assert_eq!((w.left_order, w.right_order), (3, 3));

        // u = v is fine: the primed copy is a separate free factor
        let p = pres(&["y"], &["y^2"]);
        let w = commutator_witness(&p, 0, 0).unwrap();
        assert!(w.nontrivial());
        assert_eq!(w.normal_form.len(), 4);

        let p = pres(&["a", "b"], &["a*b^-1"]);
        assert!(matches!(
            commutator_witness(&p, 0, 1),
            Err(AnalysisError::HypothesisFailure { .. })
        ));
    }

    #[test]
    fn drop_test_control_case() {
        let p = pres(&["x"], &["x^2", "x^4"]);
        let reports = minimality_drop_test(&p, 2, 1000).unwrap();
        assert_eq!(reports[0].verdict, DropVerdict::Needed);
        assert_eq!(reports[0].order, Some(4));
        assert_eq!(reports[1].verdict, DropVerdict::Redundant);
        assert_eq!(reports[1].order, Some(2));
        assert_eq!(reports[1].relator, "x^4");
    }

    #[test]
    fn drop_test_wreath_case() {
        let p = pres(&["x", "y"], &["x^2", "y^2", "[y, x^-1*y*x]"]);
        let reports = minimality_drop_test(&p, 8, 10_000).unwrap();
        for r in &reports {
            assert_eq!(r.verdict, DropVerdict::NeededCap, "{r:?}");
        }
    }

    #[test]
    fn drop_test_rejects_bad_baseline() {
        let p = pres(&["x"], &["x^2"]);
        assert!(matches!(
            minimality_drop_test(&p, 3, 100),
            Err(AnalysisError::BaselineMismatch { expected: 3, actual: 2 })
        ));
        let d = pres(&["x", "y"], &["x^2", "y^2"]);
        assert!(matches!(
            minimality_drop_test(&d, 8, 100),
            Err(AnalysisError::BaselineCapped { .. })
        ));
    }

    #[test]
    fn drop_report_serialization() {
        let p = pres(&["x"], &["x^2", "x^4"]);
        let reports = minimality_drop_test(&p, 2, 1000).unwrap();
        let json = serde_json::to_string(&reports).unwrap();
        assert!(json.contains("\"verdict\":\"needed\""));
        assert!(json.contains("\"verdict\":\"redundant\""));
        let p = pres(&["x", "y"], &["x^2", "y^2", "[y, x^-1*y*x]"]);
        let reports = minimality_drop_test(&p, 8, 1000).unwrap();
        let json = serde_json::to_string(&reports).unwrap();
        assert!(json.contains("\"verdict\":\"needed (cap)\""));
    }

    fn side() -> impl Strategy<Value = FactorSide> {
        prop_oneof![Just(Left), Just(Right)]
    }

    fn raw_fp_word() -> impl Strategy<Value = FreeProductWord> {
        prop::collection::vec((side(), -9i64..=9), 0..24).prop_map(FreeProductWord::new)
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent(w in raw_fp_word(), d in 2u64..=5, e in 2u64..=5) {
            let nf = free_product_normal_form(&w, d, e);
            prop_assert_eq!(free_product_normal_form(&nf, d, e), nf.clone());
            // alternation and exponent ranges hold
            for pair in nf.syllables().windows(2) {
                prop_assert_ne!(pair[0].0, pair[1].0);
            }
            for &(side, exp) in nf.syllables() {
                let m = if side == Left { d } else { e } as i64;
                prop_assert!(exp > 0 && exp < m);
            }
        }

        #[test]
        fn concat_then_normalize_is_associative(
            a in raw_fp_word(), b in raw_fp_word(), c in raw_fp_word(),
            d in 2u64..=5, e in 2u64..=5,
        ) {
            let ab_c = free_product_normal_form(&a.concat(&b).concat(&c), d, e);
            let nf = |w: &FreeProductWord| free_product_normal_form(w, d, e);
            let left = nf(&nf(&a.concat(&b)).concat(&c));
            let right = nf(&a.concat(&nf(&b.concat(&c))));
            prop_assert_eq!(left.clone(), ab_c.clone());
            prop_assert_eq!(right, ab_c);
        }
    }
}
