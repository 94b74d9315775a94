//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use spatemp::allen::{
    errata, partition_of, partition_role, translate_atom, translation_table, Sign, SignVector,
};
use spatemp::cyct::{realizable_atoms, CyctNetwork, Turn};
use spatemp::domain::ConcreteDomain;
use spatemp::rcc8::{compose, Rcc8Atom, Rcc8Network, Rcc8Relation};
use spatemp::reasoner::{decide, verify_witness, Witness};
use spatemp::stp::StpNetwork;
use spatemp::tbox::parse_tbox;
use spatemp::{AllenAtom, PartitionRelation};
use spatemp_testkit::cyc::{grid_satisfiable, random_network, sample_satisfiable};
use spatemp_testkit::oracle::brute_force_sat;
use spatemp_testkit::rcc8::random_atomic_network;
use spatemp_testkit::rng;
use spatemp_testkit::stp::{inject_strict_zero_cycle, planted_network, satisfies};
use spatemp_testkit::tbox::{random_tbox, TBoxShape};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spatemp(args: &[&str]) -> (std::process::Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_spatemp"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn spatemp");
    (out, start.elapsed())
}

fn example_unsat() -> Outcome {
    let (out, took) = spatemp(&["check", "examples/example1.tbox"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.code() == Some(1), "exit {:?}", out.status.code());
    ensure!(stdout.lines().next() == Some("UNSAT"), "{stdout}");
    ensure!(stdout.contains("spatial conflict C1/C3 on (g1,g3)"), "{stdout}");
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!("UNSAT, C1/C3 on (g1,g3), {took:?}"))
}

fn modified_example_sat() -> Outcome {
    let (out, took) = spatemp(&["check", "examples/example1-tpp.tbox", "--witness", "--format", "json"]);
    ensure!(out.status.code() == Some(0), "exit {:?}", out.status.code());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure!(report["verdict"] == "SAT", "{report}");
    let w: Witness = serde_json::from_value(report["witness"].clone()).map_err(|e| e.to_string())?;
    let t = parse_tbox(include_str!("../examples/example1-tpp.tbox")).map_err(|e| e.to_string())?;
    ensure!(verify_witness(&t, &w), "witness rejected");
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!("SAT, witness verified, {took:?}"))
}

/// Sign vector of `(J_b-I_b, J_e-I_b, J_b-I_e, J_e-I_e)` read off a concrete configuration.
fn observed_signs(atom: AllenAtom) -> SignVector {
    let grid: Vec<i64> = (0..6).collect();
    for &ib in &grid {
        for &ie in &grid {
            for &jb in &grid {
                for &je in &grid {
                    if AllenAtom::classify(&ib, &ie, &jb, &je) == Some(atom) {
                        return [jb - ib, je - ib, jb - ie, je - ie].map(|d| Sign::of(&d));
                    }
                }
            }
        }
    }
    panic!("{atom:?} not realized on the grid");
}

fn translation_fidelity() -> Outcome {
    let rows = translation_table();
    ensure!(rows.len() == 13, "{} rows", rows.len());
    let mut matching = 0;
    for row in &rows {
        ensure!(row.derived == observed_signs(row.atom), "{} derived row is wrong", row.atom.short_name());
        matching += (row.derived == row.published) as usize;
    }
    let flagged: Vec<AllenAtom> = errata().iter().map(|r| r.atom).collect();
    ensure!(matching == 11, "{matching} rows match");
    ensure!(
        flagged == [AllenAtom::OverlappedBy, AllenAtom::Equals],
        "errata {flagged:?}"
    );
    for atom in AllenAtom::ALL {
        ensure!(
            translate_atom(atom.converse()) == translate_atom(atom).converse(),
            "converse of {} incoherent",
            atom.short_name()
        );
    }
    Ok("11/13 rows match, errata {oi, eq}, converse-coherent".into())
}

fn partition_laws() -> Outcome {
    for atom in AllenAtom::ALL {
        let owners: Vec<PartitionRelation> = PartitionRelation::ALL
            .into_iter()
            .filter(|p| p.atoms().contains(&atom))
            .collect();
        ensure!(owners == [partition_of(atom)], "{} in {owners:?}", atom.short_name());

        let mut net = StpNetwork::new();
        net.add_interval("I").unwrap();
        net.add_interval("J").unwrap();
        net.add_role("I", "J", &translate_atom(atom)).unwrap();
        let closed = net.closure();
        ensure!(closed.consistent, "{} inconsistent", atom.short_name());
        let classes = closed.minimal.classify_pair(0, 1);
        ensure!(classes == [partition_of(atom)], "{} classified {classes:?}", atom.short_name());
        let role = partition_role(partition_of(atom));
        ensure!(!role.has_empty_component(), "empty partition role");
    }
    let total: usize = PartitionRelation::ALL.iter().map(|p| p.atoms().len()).sum();
    ensure!(total == 13, "partitions cover {total} atoms");
    Ok("JEPD over 13 atoms, classify_pair exact".into())
}

fn stp_solver() -> Outcome {
    let mut rng = rng(101);
    for k in 0..1000 {
        let p = planted_network(&mut rng, 12);
        let c = p.net.closure();
        ensure!(c.consistent, "planted instance {k} reported inconsistent");
        let s = c.minimal.extract_solution();
        ensure!(satisfies(&p.net, &s), "instance {k}: extracted solution fails");
        if k % 10 == 0 {
            let again = c.minimal.closure();
            ensure!(again.consistent && again.minimal == c.minimal, "instance {k}: closure not idempotent");
        }
    }
    for k in 0..100 {
        let mut p = planted_network(&mut rng, 12);
        inject_strict_zero_cycle(&mut rng, &mut p);
        ensure!(!p.net.closure().consistent, "zero-cycle instance {k} reported consistent");
    }
    Ok("1000 planted solved, 100 strict zero-cycles rejected".into())
}

fn rcc8_algebra() -> Outcome {
    let eq = Rcc8Relation::atom(Rcc8Atom::EQ);
    for a in Rcc8Atom::ALL {
        ensure!(compose(Rcc8Atom::EQ, a) == Rcc8Relation::atom(a), "EQ;{a}");
        ensure!(compose(a, Rcc8Atom::EQ) == Rcc8Relation::atom(a), "{a};EQ");
        ensure!(compose(a, a.converse()).intersect(eq) == eq, "{a};{a}~ lacks EQ");
        for b in Rcc8Atom::ALL {
            ensure!(
                compose(a, b).converse() == compose(b.converse(), a.converse()),
                "({a};{b})~"
            );
        }
    }
    let mut rng = rng(102);
    let mut sat = 0;
    for k in 0..500 {
        let net = random_atomic_network(&mut rng, 2 + k % 4);
        let mut pc = net.clone();
        let pc_ok = pc.path_consistency() && !pc.has_empty();
        let solved = net.consistent();
        ensure!(solved.is_some() == pc_ok, "network {k} disagrees");
        sat += solved.is_some() as usize;
    }

    let mut triangle = Rcc8Network::new(3);
    triangle.constrain(0, 1, Rcc8Relation::atom(Rcc8Atom::EC));
    triangle.constrain(0, 2, Rcc8Relation::atom(Rcc8Atom::TPP));
    triangle.constrain(1, 2, Rcc8Relation::atom(Rcc8Atom::NTPP));
    ensure!(triangle.consistent().is_some(), "EC/TPP/NTPP triangle rejected");
    let mut clash = triangle.clone();
    clash.constrain(0, 2, Rcc8Relation::atom(Rcc8Atom::NTPP));
    ensure!(clash.consistent().is_none(), "TPP vs NTPP accepted");
    Ok(format!("laws on 64 pairs, 500 networks agree ({sat} consistent)"))
}

fn cyct_algebra() -> Outcome {
    let atoms = realizable_atoms();
    ensure!(atoms.len() == 24, "{} atoms", atoms.len());
    let mut rng = rng(103);
    let (mut sampled, mut searched) = (0, 0);
    for k in 0..200 {
        let net: CyctNetwork = random_network(&mut rng, 3 + k % 2, 4, 8);
        let found: Option<Vec<Turn>> = net.consistent();
        if let Some(p) = &found {
            ensure!(net.satisfied_by(p), "network {k}: placement fails");
            searched += 1;
        }
        ensure!(
            found.is_some() == grid_satisfiable(&net, 8).is_some(),
            "network {k}: search disagrees with the exhaustive grid"
        );
        if sample_satisfiable(&mut rng, &net, 100_000).is_some() {
            sampled += 1;
            ensure!(found.is_some(), "network {k}: sampling found a model, search did not");
        }
    }
    Ok(format!("24 atoms, 200 networks agree ({searched} sat, {sampled} witnessed by sampling)"))
}

fn reasoner_vs_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(104);
    let mut sat = 0;
    for k in 0..500 {
        let domain = if k % 5 == 4 { ConcreteDomain::Cyct } else { ConcreteDomain::Rcc8 };
        let t = random_tbox(&mut rng, &TBoxShape::small(domain));
        let v = decide(&t).map_err(|e| e.to_string())?;
        ensure!(v.sat == brute_force_sat(&t), "TBox {k} disagrees:\n{t}");
        if let Some(w) = &v.witness {
            ensure!(verify_witness(&t, w), "TBox {k}: witness rejected\n{t}");
            sat += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(300), "took {took:?}");
    Ok(format!("500 TBoxes agree ({sat} sat), {took:?}"))
}

fn homogeneity_chain() -> Outcome {
    let t = parse_tbox(include_str!("../examples/chain.tbox")).map_err(|e| e.to_string())?;
    let v = decide(&t).map_err(|e| e.to_string())?;
    ensure!(!v.sat, "chain reported SAT");
    let message = v.conflict.map(|c| c.message).unwrap_or_default();
    // Every overlapping pair is fine on its own; only the merged classes clash.
    ensure!(message == "spatial conflict across merged feature classes", "{message}");
    Ok("UNSAT through merged feature classes".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("example 1 is unsat", example_unsat),
        ("modified example 1 is sat", modified_example_sat),
        ("translation table fidelity", translation_fidelity),
        ("partition laws", partition_laws),
        ("stp solver", stp_solver),
        ("rcc8 algebra", rcc8_algebra),
        ("cyct algebra", cyct_algebra),
        ("reasoner vs oracle", reasoner_vs_oracle),
        ("homogeneity chain", homogeneity_chain),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
