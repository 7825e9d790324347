use std::collections::BTreeSet;

use cea_core::conditional::ConditionalObject;
use cea_core::coset::{expand, recognize};
use cea_core::semantics::ProbabilityMeasure;
use cea_core::{Event, Exact, IteratedConditional, Scalar};
use proptest::prelude::*;

fn truncate(width: usize, m: u64) -> u64 {
    if width == 64 {
        m
    } else {
        m & ((1u64 << width) - 1)
    }
}

fn events(max_width: usize, count: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1..=max_width).prop_flat_map(move |w| {
        (
            Just(w),
            prop::collection::vec(any::<u64>(), count)
                .prop_map(move |v| v.into_iter().map(|m| truncate(w, m)).collect()),
        )
    })
}

fn ev(w: usize, m: u64) -> Event {
    Event::from_mask(w, m)
}

fn cond(w: usize, a: u64, b: u64) -> ConditionalObject {
    ConditionalObject::new(&ev(w, a), &ev(w, b)).unwrap()
}

/// `{x : x·b = a·b}` on `w` atoms.
fn coset(w: usize, a: u64, b: u64) -> BTreeSet<u64> {
    (0..1u64 << w).filter(|x| x & b == a & b).collect()
}

fn members_of(w: usize, c: &ConditionalObject) -> BTreeSet<u64> {
    coset(w, c.consequent().mask(), c.antecedent().mask())
}

proptest! {
    #[test]
    fn event_ops_match_bitwise((w, m) in events(64, 3)) {
        let (a, b, c) = (ev(w, m[0]), ev(w, m[1]), ev(w, m[2]));
        let full = truncate(w, u64::MAX);
        prop_assert_eq!((&a & &b).mask(), m[0] & m[1]);
        prop_assert_eq!((&a | &b).mask(), m[0] | m[1]);
        prop_assert_eq!((&a ^ &b).mask(), m[0] ^ m[1]);
        prop_assert_eq!((!&a).mask(), full & !m[0]);
        prop_assert_eq!(b.implies(&a).mask(), (full & !m[1]) | m[0]);
        prop_assert_eq!(&a & &(&b ^ &c), &(&a & &b) ^ &(&a & &c));
        prop_assert_eq!(a.len(), m[0].count_ones() as usize);
    }

    #[test]
    fn conditional_is_canonical_and_brackets_its_coset((w, m) in events(64, 2)) {
        let c = cond(w, m[0], m[1]);
        prop_assert!(c.consequent().leq(c.antecedent()));
        prop_assert_eq!(c.consequent().mask(), m[0] & m[1]);
        let (lo, hi) = c.bounds();
        prop_assert_eq!(lo.mask(), m[0] & m[1]);
        prop_assert_eq!(hi, ev(w, m[1]).implies(&ev(w, m[0])));
        prop_assert!(c.contains(&ev(w, m[0])));
    }

    #[test]
    fn compact_ops_equal_memberwise_ops((w, m) in events(5, 4)) {
        let (x, y) = (cond(w, m[0], m[1]), cond(w, m[2], m[3]));
        let (sx, sy) = (members_of(w, &x), members_of(w, &y));
        let pairwise = |op: fn(u64, u64) -> u64| -> BTreeSet<u64> {
            sx.iter().flat_map(|&p| sy.iter().map(move |&q| op(p, q))).collect()
        };
        prop_assert_eq!(pairwise(|p, q| p | q), members_of(w, &x.or(&y)));
        prop_assert_eq!(pairwise(|p, q| p & q), members_of(w, &x.and(&y)));
        prop_assert_eq!(pairwise(|p, q| p ^ q), members_of(w, &x.sum(&y)));
        let full = truncate(w, u64::MAX);
        let neg: BTreeSet<u64> = sx.iter().map(|p| full & !p).collect();
        prop_assert_eq!(neg, members_of(w, &x.complement()));
        prop_assert_eq!(recognize(&expand(&x).unwrap()), Some(x));
    }

    #[test]
    fn lattice_laws_hold_beyond_exhaustive_range((w, m) in events(64, 6)) {
        let (a, c, e) = (cond(w, m[0], m[1]), cond(w, m[2], m[3]), cond(w, m[4], m[5]));
        prop_assert_eq!(a.and(&c.or(&e)), a.and(&c).or(&a.and(&e)));
        prop_assert_eq!(a.or(&c).complement(), a.complement().and(&c.complement()));
        prop_assert_eq!(a.or(&a.and(&c)), a.clone());
        prop_assert_eq!(a.sum(&c.sum(&e)), a.sum(&c).sum(&e));
        prop_assert_eq!(a.leq(&c), a.and(&c) == a);
        prop_assert_eq!(a.leq(&c), a.leq_by_meet(&c));
    }

    #[test]
    fn n_ary_ops_equal_folds((w, m) in events(64, 8)) {
        let items: Vec<_> = m.chunks(2).map(|p| cond(w, p[0], p[1])).collect();
        let or_fold = items[1..].iter().fold(items[0].clone(), |acc, x| acc.or(x));
        let and_fold = items[1..].iter().fold(items[0].clone(), |acc, x| acc.and(x));
        prop_assert_eq!(ConditionalObject::or_n(&items).unwrap(), or_fold);
        prop_assert_eq!(ConditionalObject::and_n(&items).unwrap(), and_fold);
    }

    #[test]
    fn reduction_closed_form_matches_union((w, m) in events(4, 4)) {
        let it = IteratedConditional::new(&cond(w, m[0], m[1]), &cond(w, m[2], m[3])).unwrap();
        prop_assert_eq!(it.reduce_literal().unwrap(), it.reduce_closed());
        prop_assert_eq!(it.reduce_closed(), it.reduce_alpha());
        prop_assert!(it.members().contains(it.numerator()));
    }

    #[test]
    fn conditioning_never_exceeds_implication(
        (w, m) in events(12, 2),
        weights in prop::collection::vec(1u32..100, 12),
    ) {
        let total: u64 = weights[..w].iter().map(|&x| u64::from(x)).sum();
        let p = ProbabilityMeasure::<Exact>::new(
            weights[..w].iter().map(|&x| Exact::ratio(u64::from(x), total)).collect(),
        ).unwrap();
        let (a, b) = (ev(w, m[0]), ev(w, m[1]));
        if b.is_empty() {
            prop_assert!(p.cpl_eval(&ConditionalObject::new(&a, &b).unwrap()).is_err());
        } else {
            let gap = p.lewis_gap(&a, &b).unwrap();
            prop_assert!(gap.p_cond <= gap.p_implies);
            let direct: u64 = weights[..w]
                .iter()
                .enumerate()
                .filter(|(i, _)| !b.contains(*i) || a.contains(*i))
                .map(|(_, &x)| u64::from(x))
                .sum();
            prop_assert_eq!(gap.p_implies, Exact::ratio(direct, total));
        }
    }

    #[test]
    fn conditional_probability_is_monotone((w, m) in events(6, 4), seed in any::<u64>()) {
        let (x, y) = (cond(w, m[0], m[1]), cond(w, m[2], m[3]));
        let lower = x.and(&y);
        let p = ProbabilityMeasure::<f64>::random(w, &mut cea_core::Sweep::new(seed, 0).rng());
        if let (Ok(pl), Ok(px)) = (p.cpl_eval(&lower), p.cpl_eval(&x)) {
            prop_assert!(pl <= px + 1e-12, "{} > {}", pl, px);
        }
    }
}
