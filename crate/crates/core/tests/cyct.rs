use spatemp::cyct::{CyctNetwork, Turn};
use spatemp_testkit::cyc::{grid_satisfiable, random_network, sample_satisfiable};
use spatemp_testkit::rng;

fn check(net: &CyctNetwork) -> Option<Vec<Turn>> {
    let found = net.consistent();
    if let Some(p) = &found {
        assert!(net.satisfied_by(p));
    }
    found
}

#[test]
fn search_agrees_with_exhaustive_grid() {
    let mut rng = rng(10);
    let mut sat = 0;
    for k in 0..300 {
        let net = random_network(&mut rng, 3 + k % 2, 4, 8);
        let found = check(&net);
        assert_eq!(found.is_some(), grid_satisfiable(&net, 8).is_some(), "{net:?}");
        sat += found.is_some() as usize;
    }
    assert!(sat > 30 && sat < 270, "{sat}");
}

#[test]
fn sampled_solutions_are_found_by_search() {
    let mut rng = rng(11);
    for k in 0..100 {
        let net = random_network(&mut rng, 3 + k % 2, 3, 10);
        if sample_satisfiable(&mut rng, &net, 20_000).is_some() {
            assert!(check(&net).is_some(), "{net:?}");
        }
    }
}
