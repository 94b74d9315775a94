use spatemp::domain::ConcreteDomain;
use spatemp::reasoner::{check_witness, decide, decide_with, SearchOptions};
use spatemp::tbox::{parse_tbox, Concept};
use spatemp_testkit::oracle::brute_force_sat;
use spatemp_testkit::rng;
use spatemp_testkit::tbox::{random_tbox, TBoxShape};

fn agree_with_oracle(domain: ConcreteDomain, seed: u64, count: usize) {
    let mut rng = rng(seed);
    let shape = TBoxShape::small(domain);
    let mut sat = 0;
    for k in 0..count {
        let t = random_tbox(&mut rng, &shape);
        let v = decide(&t).unwrap();
        let expected = brute_force_sat(&t);
        assert_eq!(v.sat, expected, "case {k}:\n{t}");
        if let Some(w) = &v.witness {
            check_witness(&t, w).unwrap_or_else(|e| panic!("case {k}: {e}\n{t}"));
            sat += 1;
        }
    }
    // Both verdicts should be well represented.
    assert!(sat > count / 10 && sat < count * 9 / 10, "{sat} of {count} sat");
}

#[test]
fn rcc8_tboxes_match_oracle() {
    agree_with_oracle(ConcreteDomain::Rcc8, 11, 200);
}

#[test]
fn cyct_tboxes_match_oracle() {
    agree_with_oracle(ConcreteDomain::Cyct, 12, 100);
}

#[test]
fn adding_conjuncts_keeps_unsat() {
    let mut rng = rng(21);
    let shape = TBoxShape::small(ConcreteDomain::Rcc8);
    let extra = [
        Concept::Primitive("p0".into()),
        Concept::NegPrimitive("p1".into()),
        Concept::Exists {
            role: spatemp::allen::translate_atom(spatemp::AllenAtom::During),
            target: "C1".into(),
        },
    ];
    let mut checked = 0;
    while checked < 60 {
        let t = random_tbox(&mut rng, &shape);
        if decide(&t).unwrap().sat {
            continue;
        }
        checked += 1;
        for k in 0..t.axioms.len() {
            for c in &extra {
                let mut u = t.clone();
                let rhs = u.axioms[k].rhs.clone();
                u.axioms[k].rhs = Concept::And(vec![rhs, c.clone()]);
                assert!(!decide(&u).unwrap().sat, "{u}");
            }
        }
    }
}

#[test]
fn seeds_do_not_change_verdicts() {
    let mut rng = rng(31);
    let shape = TBoxShape::small(ConcreteDomain::Rcc8);
    for _ in 0..40 {
        let t = random_tbox(&mut rng, &shape);
        let base = decide(&t).unwrap().sat;
        for seed in 0..5 {
            let v = decide_with(&t, &SearchOptions { seed: Some(seed), trace: false }).unwrap();
            assert_eq!(v.sat, base, "seed {seed}\n{t}");
            if let Some(w) = v.witness {
                check_witness(&t, &w).unwrap();
            }
        }
    }
}

#[test]
fn example_is_unsat_under_every_seed() {
    let text = include_str!("../../cli/examples/example1.tbox");
    let t = parse_tbox(text).unwrap();
    for seed in 0..100 {
        let v = decide_with(&t, &SearchOptions { seed: Some(seed), trace: false }).unwrap();
        assert!(!v.sat);
    }
}
