use sweno::cases::{accuracy_table, case_spec};
use sweno::solver::SchemeKind;

fn main() {
    let checks: Vec<(u8, SchemeKind, f64, Vec<usize>, Vec<f64>, Vec<usize>)> = vec![
        (4, SchemeKind::FeSweep, 1.0, vec![10, 20, 30, 40],
         vec![6.62e-4, 1.30e-5, 1.84e-6, 4.49e-7], vec![560, 653, 821, 1010]),
        (5, SchemeKind::FeSweep, 1.0, vec![10, 20, 30, 40],
         vec![1.65e-3, 2.37e-5, 3.37e-6, 8.28e-7], vec![112, 130, 155, 186]),
        (1, SchemeKind::FeSweep, 1.0, vec![10, 20, 40, 80, 160],
         vec![6.27e-7, 1.93e-8, 8.91e-10, 3.32e-11, 1.12e-12], vec![130, 142, 155, 210, 328]),
        (3, SchemeKind::FeSweep, 1.0, vec![10, 20, 40],
         vec![1.81e-8, 6.87e-10, 2.35e-11], vec![120, 137, 182]),
    ];
    for (id, kind, cfl, meshes, l1s, iters) in checks {
        let case = case_spec::<f64>(id).unwrap();
        println!("case {id} {:?} cfl={cfl}:", kind);
        let rows = accuracy_table(&case, kind, cfl, &meshes).unwrap();
        for (idx, r) in rows.iter().enumerate() {
            match &r.norms {
                Some(n) => println!(
                    "  N={:<4} L1={:.3e} (x{:.2}) iters={} (x{:.2})",
                    r.n, n.l1, n.l1 / l1s[idx], r.iterations,
                    r.iterations as f64 / iters[idx] as f64,
                ),
                None => println!("  N={:<4} {:?} iters={}", r.n, r.outcome, r.iterations),
            }
        }
    }
}
