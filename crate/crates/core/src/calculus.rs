//! Law and identity suites for the algebra of conditional objects: the
//! operation laws, the partial order, the identities relating conditionals
//! to events, and the comparisons between conditioning and material
//! implication.
//!
//! Each side of an identity is computed independently by the compact
//! operations. Where a candidate form of an identity does not hold, the
//! suite checks the corrected form and keeps the candidate as a note.

use crate::algebra::{rejected_form, AtomSpace, Event};
use crate::conditional::{bayes_decompose, chain, ConditionalObject};
use crate::coset::expand;
use crate::report::{check_all, check_detail, fallible, CheckResult, Report, Sweep, Tuples};

type Co = ConditionalObject;

fn co(a: &Event, b: &Event) -> Co {
    Co::new(a, b).expect("events of one sweep share a space")
}

fn ev(a: &Event) -> Co {
    Co::embed(a)
}

/// Operation laws of the conditional algebra, and the failure of additive
/// inverses.
pub fn law_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "conditional algebra laws, {} atoms",
        space.atom_count()
    ));
    let zero = ev(&space.empty());
    let one = ev(&space.full());
    let singles = || sweep.conditionals::<1>(space);
    let pairs = || sweep.conditionals::<2>(space);
    let triples = || sweep.conditionals::<3>(space);

    report.push(check_all(
        "A+C = C+A, A∨C = C∨A, A·C = C·A",
        pairs(),
        |[a, c]| a.sum(c) == c.sum(a) && a.or(c) == c.or(a) && a.and(c) == c.and(a),
    ));
    report.push(check_all("A+(C+E) = (A+C)+E", triples(), |[a, c, e]| {
        a.sum(&c.sum(e)) == a.sum(c).sum(e)
    }));
    report.push(check_all(
        "A∨(C∨E) = (A∨C)∨E",
        triples(),
        |[a, c, e]| a.or(&c.or(e)) == a.or(c).or(e),
    ));
    report.push(check_all("A·(C·E) = (A·C)·E", triples(), |[a, c, e]| {
        a.and(&c.and(e)) == a.and(c).and(e)
    }));
    report.push(check_all("A+0 = A, A∨0 = A, A·1 = A", singles(), |[a]| {
        a.sum(&zero) == *a && a.or(&zero) == *a && a.and(&one) == *a
    }));
    report.push(check_all(
        "A·(C∨E) = A·C ∨ A·E",
        triples(),
        |[a, c, e]| a.and(&c.or(e)) == a.and(c).or(&a.and(e)),
    ));
    report.push(check_all(
        "A∨(C·E) = (A∨C)·(A∨E)",
        triples(),
        |[a, c, e]| a.or(&c.and(e)) == a.or(c).and(&a.or(e)),
    ));
    report.push(check_all("A∨A = A, A·A = A", singles(), |[a]| {
        a.or(a) == *a && a.and(a) == *a
    }));
    report.push(check_all(
        "(A∨C)′ = A′·C′, (A·C)′ = A′∨C′",
        pairs(),
        |[a, c]| {
            a.or(c).complement() == a.complement().and(&c.complement())
                && a.and(c).complement() == a.complement().or(&c.complement())
        },
    ));
    report.push(check_all(
        "A∨(A·C) = A, A·(A∨C) = A",
        pairs(),
        |[a, c]| a.or(&a.and(c)) == *a && a.and(&a.or(c)) == *a,
    ));
    report.push(check_all("A″ = A", singles(), |[a]| {
        a.complement().complement() == *a
    }));

    // A + X has antecedent at most that of A, so it is never the embedded 0
    // when A's antecedent is not 1.
    let all: Vec<Co> = sweep.conditionals::<1>(space).iter.map(|[a]| a).collect();
    let witness = all
        .iter()
        .find(|a| all.iter().all(|x| a.sum(x) != zero))
        .cloned();
    report.push(CheckResult::single(
        "additive inverses fail: some A has A+X ≠ 0 for every X",
        witness.is_some(),
        || "every conditional has an additive inverse".into(),
    ));
    if let Some(a) = witness {
        report.push(CheckResult::note(
            "additive-inverse failure witness",
            format!("A = {a}"),
        ));
    }
    report
}

/// The partial order: both characterizations against the definition,
/// order axioms, meets and joins, order reversal, and monotonicity.
pub fn order_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!("partial order, {} atoms", space.atom_count()));
    let pairs = || sweep.conditionals::<2>(space);
    let triples = || sweep.conditionals::<3>(space);

    report.push(check_all(
        "A ≤ C by a·b ≤ c·d and c′·d ≤ a′·b agrees with A = A·C",
        pairs(),
        |[a, c]| a.leq(c) == a.leq_by_meet(c),
    ));
    report.push(check_all("A ≤ C iff C = A∨C", pairs(), |[a, c]| {
        a.leq(c) == (a.or(c) == *c)
    }));
    report.push(check_all("A ≤ A", sweep.conditionals::<1>(space), |[a]| {
        a.leq(a)
    }));
    report.push(check_all(
        "A ≤ C and C ≤ A imply A = C",
        pairs(),
        |[a, c]| !(a.leq(c) && c.leq(a)) || a == c,
    ));
    report.push(check_all(
        "A ≤ C and C ≤ E imply A ≤ E",
        triples(),
        |[a, c, e]| !(a.leq(c) && c.leq(e)) || a.leq(e),
    ));
    report.push(check_all(
        "A ≤ C, E iff A ≤ C·E; C, E ≤ A iff C∨E ≤ A",
        triples(),
        |[a, c, e]| {
            (a.leq(c) && a.leq(e)) == a.leq(&c.and(e)) && (c.leq(a) && e.leq(a)) == c.or(e).leq(a)
        },
    ));
    report.push(check_all(
        "A ≤ C implies C′ ≤ A′",
        pairs(),
        |[a, c]| !a.leq(c) || c.complement().leq(&a.complement()),
    ));
    report.push(check_all(
        "A ≤ C and E ≤ G imply A·E ≤ C·G and A∨E ≤ C∨G",
        sweep.conditionals::<4>(space),
        |[a, c, e, g]| {
            !(a.leq(c) && e.leq(g)) || (a.and(e).leq(&c.and(g)) && a.or(e).leq(&c.or(g)))
        },
    ));
    report
}

/// Identities between conditionals and events: degenerate antecedents,
/// complements, mixed event and conditional operations, chaining, and the
/// Bayes decomposition over every partition of the atoms.
pub fn identity_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "conditional identities, {} atoms",
        space.atom_count()
    ));
    let zero = space.empty();
    let one = space.full();
    let singles = || sweep.events::<1>(space);
    let pairs = || sweep.events::<2>(space);
    let triples = || sweep.events::<3>(space);

    report.push(check_detail("(a|0) = (0|0) = Ω", singles(), |[a]| {
        fallible(expand(&co(a, &zero)).map(|set| {
            let whole = set.len() == 1usize << space.atom_count();
            (co(a, &zero) != co(&zero, &zero) || !whole).then(|| format!("a={a:?}"))
        }))
    }));
    report.push(check_detail("(1|b) = (b|b) = Ω∨b", singles(), |[b]| {
        fallible(expand(&co(&one, b)).map(|set| {
            let joins = singles().iter.all(|[x]| set.contains(&(&x | b)))
                && set.elements().iter().all(|y| b.leq(y));
            (co(&one, b) != co(b, b) || !joins).then(|| format!("b={b:?}"))
        }))
    }));
    report.push(check_detail(
        "(a|b)·(a|b′) = (0|a′) = Ω·a",
        pairs(),
        |[a, b]| {
            let lhs = co(a, b).and(&co(a, &!b));
            fallible(expand(&lhs).map(|set| {
                let multiples = singles().iter.all(|[x]| set.contains(&(&x & a)))
                    && set.elements().iter().all(|y| y.leq(a));
                (lhs != co(&zero, &!a) || !multiples).then(|| format!("a={a:?} b={b:?}"))
            }))
        },
    ));
    report.push(check_all("(a|b)∨(a|b′) = (a|a)", pairs(), |[a, b]| {
        co(a, b).or(&co(a, &!b)) == co(a, a)
    }));
    report.push(rejected_form(check_all(
        "candidate: (a|b)∨(a|b′) = (b|b)",
        pairs(),
        |[a, b]| co(a, b).or(&co(a, &!b)) == co(b, b),
    )));
    report.push(check_all("(a|b)∨(a|b)′ = (b|b)", pairs(), |[a, b]| {
        co(a, b).or(&co(a, b).complement()) == co(b, b)
    }));
    report.push(rejected_form(check_all(
        "candidate: (a|b)′ = a+(0|b)",
        pairs(),
        |[a, b]| co(a, b).complement() == ev(a).sum(&co(&zero, b)),
    )));
    report.push(check_all(
        "(a|b) = a+(0|b), (a|b)′ = a′+(0|b)",
        pairs(),
        |[a, b]| {
            co(a, b) == ev(a).sum(&co(&zero, b))
                && co(a, b).complement() == ev(&!a).sum(&co(&zero, b))
        },
    ));
    report.push(check_all(
        "c∨(a|b) = (a∨c|b∨c), c·(a|b) = (c·a|b∨c′)",
        triples(),
        |[a, b, c]| {
            ev(c).or(&co(a, b)) == co(&(a | c), &(b | c))
                && ev(c).and(&co(a, b)) == co(&(c & a), &(b | &!c))
        },
    ));
    report.push(check_all("c+(a|b) = (c+a|b)", triples(), |[a, b, c]| {
        ev(c).sum(&co(a, b)) == co(&(c ^ a), b)
    }));
    report.push(rejected_form(check_all(
        "candidate: A+C = A·C ∨ A′·C",
        sweep.conditionals::<2>(space),
        |[a, c]| a.sum(c) == a.and(c).or(&a.complement().and(c)),
    )));
    report.push(check_all(
        "A+C = A·C′ ∨ A′·C",
        sweep.conditionals::<2>(space),
        |[a, c]| a.sum(c) == a.and(&c.complement()).or(&a.complement().and(c)),
    ));
    report.push(check_all(
        "chaining: (a|b·c)·(b|c) = (a·b|c)",
        triples(),
        |[a, b, c]| co(a, &(b & c)).and(&co(b, c)) == co(&(a & b), c),
    ));
    report.push(chain_check(space, sweep));
    report.push(bayes_check(space, sweep));
    report.push(check_all(
        "same antecedent: (a|b)+(c|b) = (a+c|b), ∨, ·, and (a|b)′ = (a′|b)",
        triples(),
        |[a, c, b]| {
            co(a, b).sum(&co(c, b)) == co(&(a ^ c), b)
                && co(a, b).or(&co(c, b)) == co(&(a | c), b)
                && co(a, b).and(&co(c, b)) == co(&(a & c), b)
                && co(a, b).complement() == co(&!a, b)
        },
    ));
    report
}

/// `(a₁|a₂)·(a₂|a₃)⋯(aₘ₋₁|aₘ) = (a₁|aₘ)` for chains `a₁ ≤ … ≤ aₘ`, m = 3, 4.
fn chain_check(space: &AtomSpace, sweep: &Sweep) -> CheckResult {
    let holds = |links: &[Event]| {
        let factors: Vec<Co> = links.windows(2).map(|w| co(&w[0], &w[1])).collect();
        chain(&factors).ok() == Some(co(&links[0], &links[links.len() - 1]))
    };
    let three = check_all(
        "chain (a₁|a₂)·(a₂|a₃) = (a₁|a₃) for a₁ ≤ a₂ ≤ a₃",
        sweep
            .events::<3>(space)
            .filter(|[a, b, c]| a.leq(b) && b.leq(c)),
        |links| holds(links),
    );
    if !three.passed() {
        return three;
    }
    let four = check_all(
        "chain of m links multiplies to (a₁|aₘ) for increasing a₁ ≤ … ≤ aₘ, m = 3, 4",
        sweep
            .events::<4>(space)
            .filter(|[a, b, c, d]| a.leq(b) && b.leq(c) && c.leq(d)),
        |links| holds(links),
    );
    CheckResult {
        cases: three.cases + four.cases,
        ..four
    }
}

/// Bayes decomposition over every partition of the atoms into blocks, for
/// every event `b`, including `(aⱼ|b) = ((b|aⱼ)·aⱼ | b)`.
fn bayes_check(space: &AtomSpace, sweep: &Sweep) -> CheckResult {
    let partitions = set_partitions(space.atom_count());
    let width = space.atom_count();
    let cases = Tuples {
        exhaustive: sweep.events::<1>(space).exhaustive,
        iter: sweep.events::<1>(space).iter.flat_map(move |[b]| {
            partitions.clone().into_iter().map(move |blocks| {
                let parts: Vec<Event> = blocks
                    .iter()
                    .map(|block| {
                        Event::from_indices(width, block.iter().copied()).expect("in range")
                    })
                    .collect();
                (b.clone(), parts)
            })
        }),
    };
    check_detail(
        "Bayes: (aⱼ|b) = ((b|aⱼ)·aⱼ|b), (aⱼ|b)·b = (b|aⱼ)·aⱼ = aⱼ·b, b = Σ (b|aⱼ)·aⱼ over every partition",
        cases,
        |(b, parts)| {
            fallible(bayes_decompose(b, parts).map(|components| {
                let forward = parts.iter().zip(&components).all(|(a, comp)| {
                    match comp.and(&ev(a)).as_event() {
                        Some(weighted) => co(a, b) == co(weighted, b),
                        None => false,
                    }
                });
                (!forward).then(|| format!("b={b:?} partition={parts:?}"))
            }))
        },
    )
}

/// All partitions of `{0, …, n−1}` into nonempty blocks, by restricted
/// growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let blocks = labels.iter().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (atom, &label) in labels.iter().enumerate() {
                parts[label].push(atom);
            }
            out.push(parts);
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            labels.push(label);
            grow(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

/// Conditioning compared with material implication.
pub fn comparison_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "conditioning versus implication, {} atoms",
        space.atom_count()
    ));
    let zero = space.empty();
    let one = space.full();
    let singles = || sweep.events::<1>(space);
    let pairs = || sweep.events::<2>(space);
    let triples = || sweep.events::<3>(space);
    let quads = || sweep.events::<4>(space);
    let iff = |a: &Event, b: &Event| (a & b) | (&!a & &!b);

    report.push(check_all("(a|b) = (b⇒a|b)", pairs(), |[a, b]| {
        co(a, b) == co(&b.implies(a), b)
    }));
    report.push(check_all("a·b ≤ (a|b) ≤ (b⇒a)", pairs(), |[a, b]| {
        ev(&(a & b)).leq(&co(a, b)) && co(a, b).leq(&ev(&b.implies(a)))
    }));
    report.push(check_all(
        "(b⇒a) = (a|b)∨b′ = (a′⇒b′) = (b′|a′)∨a",
        pairs(),
        |[a, b]| {
            let imp = ev(&b.implies(a));
            imp == co(a, b).or(&ev(&!b))
                && b.implies(a) == (!a).implies(&!b)
                && imp == co(&!b, &!a).or(&ev(a))
        },
    ));
    report.push(check_all(
        "(a|b) = (b⇒a)·(b|b) = ((b′|a′)∨a)·(b|b)",
        pairs(),
        |[a, b]| {
            co(a, b) == ev(&b.implies(a)).and(&co(b, b))
                && co(a, b) == co(&!b, &!a).or(&ev(a)).and(&co(b, b))
        },
    ));
    report.push(check_all(
        "(b′|a′) = (b⇒a)·(a′|a′) = ((a|b)∨b′)·(a′|a′)",
        pairs(),
        |[a, b]| {
            let target = co(&!b, &!a);
            target == ev(&b.implies(a)).and(&co(&!a, &!a))
                && target == co(a, b).or(&ev(&!b)).and(&co(&!a, &!a))
        },
    ));
    report.push(rejected_form(check_all(
        "candidate: (a⇒b) = (a⇒b)·(b⇒a)",
        pairs(),
        |[a, b]| a.implies(b) == a.implies(b) & b.implies(a),
    )));
    report.push(check_all(
        "(a⇔b) = (a⇒b)·(b⇒a) = a·b ∨ a′·b′ = (a|b)·(b|a) ∨ a′·b′",
        pairs(),
        |[a, b]| {
            let both = iff(a, b);
            both == a.implies(b) & b.implies(a)
                && both == (a & b) | (&!a & &!b)
                && ev(&both) == co(a, b).and(&co(b, a)).or(&ev(&(&!a & &!b)))
        },
    ));
    report.push(rejected_form(check_all(
        "candidate: (a|b)·(b|a) = (a⇒b)·(a·b|a·b)",
        pairs(),
        |[a, b]| co(a, b).and(&co(b, a)) == ev(&a.implies(b)).and(&co(&(a & b), &(a & b))),
    )));
    report.push(check_all(
        "(a|b)·(b|a) = (a·b|a∨b) = (a⇔b)·(a·b|a·b)",
        pairs(),
        |[a, b]| {
            let product = co(a, b).and(&co(b, a));
            product == co(&(a & b), &(a | b))
                && product == ev(&iff(a, b)).and(&co(&(a & b), &(a & b)))
                && product.bounds() == (a & b, iff(a, b))
        },
    ));
    report.push(check_all(
        "(a|b) = (a·b|b) while (b⇒a) = (b⇒a·b)",
        pairs(),
        |[a, b]| co(a, b) == co(&(a & b), b) && b.implies(a) == b.implies(&(a & b)),
    ));
    report.push(check_detail(
        "(1|b) = (b|b) = Ω∨b while (b⇒1) = (b⇒b) = 1",
        singles(),
        |[b]| {
            fallible(expand(&co(&one, b)).map(|set| {
                let ok = co(&one, b) == co(b, b)
                    && set.len() == 1usize << (space.atom_count() - b.len())
                    && set.elements().iter().all(|y| b.leq(y))
                    && b.implies(&one) == one
                    && b.implies(b) == one;
                (!ok).then(|| format!("b={b:?}"))
            }))
        },
    ));
    report.push(check_all("(b|1) = b while (1⇒b) = b", singles(), |[b]| {
        co(b, &one) == ev(b) && co(b, &one).as_event() == Some(b) && one.implies(b) == *b
    }));
    report.push(check_detail(
        "(b|0) = Ω while (0⇒b) = 1",
        singles(),
        |[b]| {
            fallible(expand(&co(b, &zero)).map(|set| {
                let ok = set.len() == 1usize << space.atom_count() && zero.implies(b) == one;
                (!ok).then(|| format!("b={b:?}"))
            }))
        },
    ));
    report.push(check_all(
        "(a|b)′ = (a′·b|b) while (b⇒a)′ = a′·b",
        pairs(),
        |[a, b]| co(a, b).complement() == co(&(&!a & b), b) && !b.implies(a) == (&!a & b),
    ));
    report.push(check_detail(
        "(0|b) = (b′|b) = Ω·b′ while (b⇒0) = (b⇒b′) = b′",
        singles(),
        |[b]| {
            fallible(expand(&co(&zero, b)).map(|set| {
                let ok = co(&zero, b) == co(&!b, b)
                    && set.elements().iter().all(|y| y.leq(&!b))
                    && set.len() == 1usize << (space.atom_count() - b.len())
                    && b.implies(&zero) == !b
                    && b.implies(&!b) == !b;
                (!ok).then(|| format!("b={b:?}"))
            }))
        },
    ));
    let q = |a: &Event, b: &Event, c: &Event, d: &Event| (&!a & b) | (&!c & d) | (b & d);
    report.push(check_all(
        "(a|b)·(c|d) = (a·c|q), q = a′·b ∨ c′·d ∨ b·d",
        quads(),
        |[a, b, c, d]| co(a, b).and(&co(c, d)) == co(&(a & c), &q(a, b, c, d)),
    ));
    report.push(rejected_form(check_all(
        "candidate: (b⇒a)·(d⇒c) = (q⇒c)",
        quads(),
        |[a, b, c, d]| b.implies(a) & d.implies(c) == q(a, b, c, d).implies(c),
    )));
    report.push(check_all(
        "(b⇒a)·(d⇒c) = (q⇒a·c)",
        quads(),
        |[a, b, c, d]| b.implies(a) & d.implies(c) == q(a, b, c, d).implies(&(a & c)),
    ));
    report.push(check_all(
        "(a|b)∨(c|d) = (a∨c|r), r = a·b ∨ c·d ∨ b·d, while (b⇒a)∨(d⇒c) = (b·d ⇒ a∨c)",
        quads(),
        |[a, b, c, d]| {
            let r = (a & b) | (c & d) | (b & d);
            co(a, b).or(&co(c, d)) == co(&(a | c), &r)
                && (b.implies(a) | d.implies(c)) == (b & d).implies(&(a | c))
        },
    ));
    report.push(check_all(
        "for a ≤ b ≤ c: (a|b)·(b|c) = (a|c) while (c⇒b)·(b⇒a) ≤ (c⇒a)",
        triples().filter(|[a, b, c]| a.leq(b) && b.leq(c)),
        |[a, b, c]| {
            co(a, b).and(&co(b, c)) == co(a, c) && (c.implies(b) & b.implies(a)).leq(&c.implies(a))
        },
    ));
    report.push(check_all(
        "for a ≤ b·c: (a|b) ≤ (a|b·c) while (b⇒a) ≤ (b·c⇒a)",
        triples().filter(|[a, b, c]| a.leq(&(b & c))),
        |[a, b, c]| co(a, b).leq(&co(a, &(b & c))) && b.implies(a).leq(&(b & c).implies(a)),
    ));
    report.push(check_all(
        "((d⇒c)⇒(b⇒a)) = (γ⇒a), γ = b·(c·d ∨ d′)",
        quads(),
        |[a, b, c, d]| {
            let gamma = b & &((c & d) | !d);
            d.implies(c).implies(&b.implies(a)) == gamma.implies(a)
        },
    ));
    report.push(check_all(
        "((b⇒c)⇒(b⇒a)) = (c⇒(b⇒a)) = (b·c⇒a)",
        triples(),
        |[a, b, c]| {
            let nested = b.implies(c).implies(&b.implies(a));
            nested == c.implies(&b.implies(a)) && nested == (b & c).implies(a)
        },
    ));
    report
}
