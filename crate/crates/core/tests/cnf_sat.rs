use commplex::decide::cnf::encode;
use commplex::decide::csp::{solve, CanonicalCsp, SolveLimits, SolveOutcome, DEFAULT_MAX_TUPLES};
use commplex::enumerate::enumerate_complexes;
use commplex::{verify_generates, Alphabet, Language, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varisat::{ExtendFormula, Lit, Solver};

fn sat(cnf: &commplex::decide::cnf::Cnf) -> Option<Vec<i32>> {
    let mut solver = Solver::new();
    for clause in &cnf.clauses {
        let lits: Vec<Lit> = clause.iter().map(|&x| Lit::from_dimacs(x as isize)).collect();
        solver.add_clause(&lits);
    }
    if solver.solve().unwrap() {
        Some(solver.model().unwrap().iter().map(|l| l.to_dimacs() as i32).collect())
    } else {
        None
    }
}

#[test]
fn cnf_agrees_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let complexes = enumerate_complexes(3).unwrap();
    let (mut sats, mut unsats) = (0, 0);
    for _ in 0..20 {
        let k = 2 + rng.gen_range(0..2);
        let size = rng.gen_range(1..=5);
        let words: Vec<Word> = (0..size).map(|_| (0..3).map(|_| rng.gen_range(0..k) as Letter).collect()).collect();
        let l = Language::new(3, Alphabet::new(k).unwrap(), words).unwrap();
        let cx = &complexes[rng.gen_range(0..complexes.len())];
        let csp = CanonicalCsp::build(&l, cx, DEFAULT_MAX_TUPLES).unwrap();
        let (outcome, _) = solve(&csp, SolveLimits::default());
        let (cnf, layout) = encode(&csp);
        match (outcome, sat(&cnf)) {
            (SolveOutcome::Satisfiable(_), Some(model)) => {
                sats += 1;
                let assignment = layout.decode(|v| model.contains(&v));
                assert!(csp.check(&assignment), "{l} on {}", cx.compact());
                let p = csp.extract(&assignment, l.alphabet()).unwrap();
                assert!(verify_generates(&p, &l, cx).unwrap());
            }
            (SolveOutcome::Unsatisfiable, None) => unsats += 1,
            (o, m) => panic!("{l} on {}: search {o:?}, sat {}", cx.compact(), m.is_some()),
        }
    }
    assert!(sats > 0 && unsats > 0, "{sats} sat, {unsats} unsat");
}
