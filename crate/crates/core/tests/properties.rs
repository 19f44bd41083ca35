//! Randomised invariants: word-reduction confluence in pushout
//! presentations, and algebraic laws of the generators' output.

use lenscalc::cat::Obj;
use lenscalc::fixtures;
use lenscalc::gen::{gen_symlens, GenConfig};
use lenscalc::pushout::{enumerate_words, PresentedCategory, Side, Word};
use lenscalc::symlens::SymmetricLens;
use proptest::prelude::*;

/// Build a random composable word as a list of one-letter words, driven by
/// an index stream.
fn random_walk(p: &PresentedCategory, start: usize, choices: &[u8]) -> Vec<Word> {
    let mut at: Obj = p.objects()[start % p.objects().len()].clone();
    let mut out = Vec::new();
    for c in choices {
        let mut steps: Vec<Word> = Vec::new();
        for side in [Side::Plus, Side::Minus] {
            let cat = p.summand(side);
            for m in cat.morphisms_from(&at) {
                if !cat.is_identity(m) {
                    steps.push(p.include(side, m));
                }
            }
        }
        if steps.is_empty() {
            break;
        }
        let w = steps[*c as usize % steps.len()].clone();
        at = w.tgt.clone();
        out.push(w);
    }
    out
}

fn fold_left(p: &PresentedCategory, ws: &[Word], start: Obj) -> Word {
    let mut acc = Word::empty(start);
    for w in ws {
        acc = p.compose_words(&acc, w).unwrap();
    }
    acc
}

fn fold_random(p: &PresentedCategory, ws: &[Word], start: Obj, order: &[u8]) -> Word {
    let mut parts: Vec<Word> = ws.to_vec();
    let mut order = order.iter().cycle();
    while parts.len() > 1 {
        let i = *order.next().unwrap() as usize % (parts.len() - 1);
        let merged = p.compose_words(&parts[i], &parts[i + 1]).unwrap();
        parts[i] = merged;
        parts.remove(i + 1);
    }
    parts.pop().unwrap_or_else(|| Word::empty(start))
}

fn zigzag_presentation() -> PresentedCategory {
    let two = fixtures::two();
    let two_rev = fixtures::build(&["0", "1"], &[("d", "1", "0")], &[]);
    enumerate_words(&two.objects().to_vec(), &two, &two_rev, 12)
}

fn loops_presentation() -> PresentedCategory {
    let idem = fixtures::idem();
    enumerate_words(&idem.objects().to_vec(), &idem, &idem, 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Reducing a word by merging adjacent letters in any order gives the
    /// same normal form as the left-to-right stack reduction.
    #[test]
    fn word_reduction_is_confluent(
        start in 0usize..2,
        choices in proptest::collection::vec(any::<u8>(), 0..10),
        order in proptest::collection::vec(any::<u8>(), 1..12),
        loops in any::<bool>(),
    ) {
        let p = if loops { loops_presentation() } else { zigzag_presentation() };
        let ws = random_walk(&p, start, &choices);
        let src = ws
            .first()
            .map(|w| w.src.clone())
            .unwrap_or_else(|| p.objects()[start % p.objects().len()].clone());
        let left = fold_left(&p, &ws, src.clone());
        let random = fold_random(&p, &ws, src, &order);
        prop_assert_eq!(left, random);
    }

    /// Normal forms never contain adjacent letters from the same side.
    #[test]
    fn normal_forms_are_alternating(
        start in 0usize..2,
        choices in proptest::collection::vec(any::<u8>(), 0..10),
        loops in any::<bool>(),
    ) {
        let p = if loops { loops_presentation() } else { zigzag_presentation() };
        let ws = random_walk(&p, start, &choices);
        let src = ws
            .first()
            .map(|w| w.src.clone())
            .unwrap_or_else(|| p.objects()[start % p.objects().len()].clone());
        let w = fold_left(&p, &ws, src);
        for pair in w.letters.windows(2) {
            prop_assert_ne!(pair[0].side, pair[1].side);
        }
    }

    /// The dagger of a symmetric lens is an involution, exactly.
    #[test]
    fn dagger_is_an_involution(seed in any::<u64>()) {
        let two = fixtures::two();
        let three = fixtures::three();
        let s = gen_symlens(&GenConfig::new(seed), &two, &three).unwrap();
        prop_assert_eq!(s.dagger().dagger(), s);
    }

    /// Composing a generated symmetric lens with the identity changes
    /// nothing but state names.
    #[test]
    fn identity_is_a_unit_up_to_state_count(seed in any::<u64>()) {
        let two = fixtures::two();
        let s = gen_symlens(&GenConfig::new(seed), &two, &two).unwrap();
        let id = SymmetricLens::identity(two.clone());
        let left = SymmetricLens::compose(&id, &s).unwrap();
        let right = SymmetricLens::compose(&s, &id).unwrap();
        prop_assert_eq!(left.states().len(), s.states().len());
        prop_assert_eq!(right.states().len(), s.states().len());
    }
}
