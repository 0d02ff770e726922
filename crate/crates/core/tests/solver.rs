use colordist::generate;
use colordist::{conflict_count, Graph, Mode, SeededRng, Solver, Solver32, Solver64, SolverParams};
use rand::SeedableRng;

fn quick(seed: u64) -> SolverParams {
    SolverParams { seed, time_budget: Some(60.0), max_inner_generations: Some(30), ..Default::default() }
}

fn zero_based(one_based: &[usize]) -> Vec<usize> {
    one_based.iter().map(|c| c - 1).collect()
}

#[test]
fn path_two_coloring() {
    let g = generate::path(10);
    let r = Solver64::new(quick(1)).unwrap().solve_k(&g, 2, "path").unwrap();
    assert!(r.legal);
    assert_eq!(r.conflicts, 0);
    assert_eq!(r.assignment.len(), 10);
    assert_eq!(r.mode, Mode::KColoring);
}

#[test]
fn odd_cycle_needs_three() {
    let g = generate::cycle(7);
    let params = SolverParams { max_inner_generations: Some(2), iter_max: 300, ..quick(2) };
    let r = Solver64::new(params.clone()).unwrap().solve_k(&g, 2, "c7").unwrap();
    assert!(!r.legal);
    assert!(r.conflicts >= 1);
    let r = Solver64::new(params).unwrap().solve_chromatic(&g, "c7").unwrap();
    assert_eq!(r.k, 3);
}

#[test]
fn reported_conflicts_match_assignment() {
    let mut rng = SeededRng::seed_from_u64(3);
    for seed in 0..5 {
        let g = generate::gnp(40, 0.5, &mut rng);
        let params = SolverParams { max_inner_generations: Some(2), iter_max: 100, ..quick(seed) };
        let r = Solver64::new(params).unwrap().solve_k(&g, 5, "gnp").unwrap();
        assert_eq!(r.conflicts, conflict_count(&g, &zero_based(&r.assignment)));
        assert_eq!(r.legal, r.conflicts == 0);
        assert!(r.assignment.iter().all(|&c| (1..=5).contains(&c)));
    }
}

#[test]
fn planted_instance_is_solved() {
    let mut rng = SeededRng::seed_from_u64(4);
    let g = generate::planted(60, 4, 0.5, &mut rng);
    let r = Solver64::new(quick(4)).unwrap().solve_k(&g, 4, "planted").unwrap();
    assert!(r.legal);
}

#[test]
fn chromatic_k_is_non_increasing_and_witnessed() {
    let mut rng = SeededRng::seed_from_u64(5);
    let g = generate::gnp(50, 0.3, &mut rng);
    let params = SolverParams { max_inner_generations: Some(5), iter_max: 1000, ..quick(5) };
    let mut s = Solver64::new(params).unwrap();
    let r = s.solve_chromatic(&g, "gnp").unwrap();
    let rounds = s.rounds();
    assert_eq!(rounds[0].k, g.max_degree() + 1);
    assert!(rounds[0].success);
    for w in rounds.windows(2) {
        assert_eq!(w[1].k + 1, w[0].k);
        assert!(w[0].success);
    }
    assert!(r.legal);
    assert_eq!(conflict_count(&g, &zero_based(&r.assignment)), 0);
    assert!(r.assignment.iter().all(|&c| c <= r.k));
    assert_eq!(r.outer_generations as usize, rounds.len());
}

#[test]
fn target_k_stops_descent() {
    let g = generate::complete(6);
    let params = SolverParams { target_k: Some(100), ..quick(6) };
    let mut s = Solver64::new(params).unwrap();
    let r = s.solve_chromatic(&g, "k6").unwrap();
    assert_eq!(r.k, 6);
    assert_eq!(s.rounds().len(), 1);
}

#[test]
fn same_seed_same_result() {
    let mut rng = SeededRng::seed_from_u64(7);
    let g = generate::gnp(45, 0.4, &mut rng);
    let params = SolverParams { max_inner_generations: Some(5), iter_max: 500, ..quick(7) };
    let run = |mode: Mode| {
        let mut s = Solver64::new(params.clone()).unwrap();
        let mut r = match mode {
            Mode::KColoring => s.solve_k(&g, 7, "g").unwrap(),
            Mode::Chromatic => s.solve_chromatic(&g, "g").unwrap(),
        };
        r.time_s = 0.0;
        r
    };
    assert_eq!(run(Mode::KColoring), run(Mode::KColoring));
    assert_eq!(run(Mode::Chromatic), run(Mode::Chromatic));
}

#[test]
fn norm_audit_covers_every_generation() {
    let mut rng = SeededRng::seed_from_u64(8);
    let g = generate::gnp(60, 0.5, &mut rng);
    let params = SolverParams { max_inner_generations: Some(4), iter_max: 200, ..quick(8) };
    let mut s = Solver64::new(params).unwrap().with_norm_audit();
    s.solve_k(&g, 6, "g").unwrap();
    let audit = s.norm_audit().unwrap();
    let gens = s.rounds()[0].inner_generations as usize;
    assert_eq!(audit.checks, 1 + 2 * gens);
    assert!(audit.max_deviation <= 1e-9);
    assert!(!audit.non_finite);
}

#[test]
fn single_precision_solver_runs() {
    let g = generate::cycle(9);
    let r = Solver32::new(quick(9)).unwrap().solve_chromatic(&g, "c9").unwrap();
    assert_eq!(r.k, 3);
    let r = Solver::<f32>::new(quick(9)).unwrap().solve_k(&g, 3, "c9").unwrap();
    assert!(r.legal);
}

#[test]
fn empty_graph_and_invalid_k() {
    let g = Graph::from_edges(3, []).unwrap();
    let r = Solver64::new(quick(10)).unwrap().solve_chromatic(&g, "e3").unwrap();
    assert_eq!(r.k, 1);
    assert!(Solver64::new(quick(10)).unwrap().solve_k(&g, 0, "e3").is_err());
    assert!(Solver64::new(SolverParams { np: 1, ..quick(10) }).is_err());
}

#[test]
fn ablations_still_produce_valid_results() {
    let mut rng = SeededRng::seed_from_u64(11);
    let g = generate::planted(40, 3, 0.4, &mut rng);
    for (explore, exploit) in [(false, true), (true, false), (false, false)] {
        let params = SolverParams { explore, exploit, ..quick(11) };
        let r = Solver64::new(params).unwrap().solve_k(&g, 3, "planted").unwrap();
        assert_eq!(r.conflicts, conflict_count(&g, &zero_based(&r.assignment)));
    }
}
