use spencer_core::cartan::{constraint_matrix_by_oracle, KernelMode};
use spencer_core::liealg::builtin;
use spencer_core::spencer::LeibnizConvention;
use spencer_core::workbench::{
    self, catalog, dimension_table, run_claims, sampling, ClaimStatus, Pin, Provenance, RunOptions, Snapshots, Suite,
};

// Seeded λ for `table --algebra su2c-rooted --degrees 2..2 --samples 10 --seed 7`.
const SEED7_LAMBDAS: [[i64; 3]; 10] = [
    [0, -1, -3],
    [3, 1, 3],
    [0, -2, 2],
    [1, 3, -1],
    [3, 3, -2],
    [-3, 0, 1],
    [2, 0, 2],
    [-1, 1, 2],
    [1, 1, -3],
    [0, -3, -2],
];

#[test]
fn su2c_rooted_degree_two_table_is_pinned() {
    let g = builtin::su2c_rooted();
    let lambdas = sampling::sample_lambdas(7, "table", 3, 10, false);
    let ints: Vec<Vec<String>> = SEED7_LAMBDAS
        .iter()
        .map(|l| l.iter().map(|x| x.to_string()).collect())
        .collect();
    let got: Vec<Vec<String>> = lambdas
        .iter()
        .map(|l| l.coords.iter().map(|x| x.to_string()).collect())
        .collect();
    assert_eq!(got, ints);

    // Graded: the single Cartan monomial H² is a square and is killed, so
    // nothing constrains it. Ungraded: ⟨λ, E±iF⟩ ≠ 0 for every sample.
    for (conv, rank) in [(LeibnizConvention::Graded, 0), (LeibnizConvention::Ungraded, 1)] {
        let rows = dimension_table(&g, 2..=2, &lambdas, KernelMode::Linearized, conv).unwrap();
        for (row, l) in rows.iter().zip(&lambdas) {
            assert_eq!(row.sym_dimension, 1);
            assert_eq!(row.constraint_rank, rank, "{conv} {:?}", row.lambda);
            assert_eq!(row.kernel_dimension, 1 - rank);
            assert_eq!(row.bound, -1);
            assert!(!row.bound_holds);
            assert_eq!(constraint_matrix_by_oracle(&g, l, 2, conv).unwrap().rank(), rank);
        }
    }
}

#[test]
fn embedded_snapshots_cover_every_pinned_claim() {
    let results = run_claims(Suite::All).unwrap();
    for r in &results {
        let pinned = catalog().iter().any(|c| c.id == r.catalog_id() && c.pinned);
        assert_eq!(r.snapshot.is_some(), pinned, "{}", r.id);
        if pinned {
            assert_eq!(r.snapshot, Some(Pin::Match), "{}", r.id);
        }
        assert_ne!(r.status, ClaimStatus::Indeterminate, "{}", r.id);
        if matches!(r.status, ClaimStatus::Refuted | ClaimStatus::Indeterminate) {
            assert!(r.witness.is_some(), "{} lacks a witness", r.id);
        }
        if r.provenance == Provenance::Derived {
            assert!(r.oracle.is_some(), "{}", r.id);
        }
    }
    // Registry order: first appearance of each catalogue id follows the catalogue.
    let mut seen: Vec<&str> = Vec::new();
    for r in &results {
        let id = r.catalog_id();
        if seen.last() != Some(&id) {
            assert!(!seen.contains(&id), "{id} split across the report");
            seen.push(id);
        }
    }
    let order: Vec<&str> = catalog()
        .iter()
        .map(|c| c.id.as_str())
        .filter(|id| seen.contains(id))
        .collect();
    assert_eq!(seen, order);
    assert_eq!(seen.len(), catalog().len());
}

#[test]
fn pinned_values_do_not_depend_on_the_seed() {
    let mut snaps = Snapshots::embedded();
    let opts = RunOptions {
        seed: 12345,
        ..RunOptions::default()
    };
    let report = workbench::run(Suite::Nilpotency, &opts, &mut snaps).unwrap();
    assert!(report.claims.iter().all(|c| c.snapshot == Some(Pin::Match)));
}

#[test]
fn reports_are_byte_identical() {
    let run = || {
        let mut snaps = Snapshots::embedded();
        workbench::run(Suite::Cartan, &RunOptions::default(), &mut snaps)
            .unwrap()
            .to_json()
            .unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn known_verdicts() {
    let results = run_claims(Suite::Sl2).unwrap();
    let status = |id: &str| results.iter().find(|r| r.id == id).unwrap().status;
    assert_eq!(status("B4-sigma-HF"), ClaimStatus::Refuted);
    assert_eq!(status("C7-sigma-HF"), ClaimStatus::Confirmed);
    assert_eq!(status("B4-sigma-EF"), ClaimStatus::Confirmed);

    let mut snaps = Snapshots::embedded();
    let mirror = workbench::run(Suite::Mirror, &RunOptions::default(), &mut snaps).unwrap();
    assert!(!mirror.has_refuted_paper_claim());
    assert_eq!(mirror.summary.confirmed, mirror.claims.len());
}
