use std::path::{Path, PathBuf};

use hyperwalk_core::io::{emit_json, emit_text, load_hypergraph, parse_any};
use hyperwalk_core::reduction::{reversibility, sandwich_check};
use hyperwalk_core::spectral::spectral_report;
use hyperwalk_core::stationary::{stationary_direct, stationary_rho};
use hyperwalk_core::walk::transition_matrix;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn both_file_formats_load_the_same_hypergraph() {
    let a = load_hypergraph(data("h3.json")).unwrap();
    let b = load_hypergraph(data("h3.txt")).unwrap();
    assert_eq!(a.to_spec(), b.to_spec());

    let spec = a.to_spec();
    assert_eq!(parse_any(&emit_json(&spec)).unwrap(), spec);
    assert_eq!(parse_any(&emit_text(&spec).unwrap()).unwrap(), spec);
}

#[test]
fn file_to_report() {
    let h = load_hypergraph(data("h3.json")).unwrap();
    let p = transition_matrix(&h).unwrap();
    let rho = stationary_rho(&h).unwrap();
    let direct = stationary_direct(&p).unwrap();
    for (i, want) in [7.0, 2.0, 5.0, 3.0].into_iter().enumerate() {
        assert!((rho.pi[i] - want / 17.0).abs() < 1e-12);
        assert!((direct.pi[i] - want / 17.0).abs() < 1e-12);
    }

    let verdict = reversibility(&p, &direct.pi).unwrap();
    assert!(!verdict.reversible);

    let report = spectral_report(&h, 0.25).unwrap();
    assert!((report.cheeger - 89.0 / 192.0).abs() < 1e-12);
    assert_eq!(report.cheeger_subset, ["v3", "v4"]);
    assert!(report.eigenvalues[0].abs() < 1e-12);
    assert!(report.lambda > 0.0);

    let s = sandwich_check(&h).unwrap();
    assert!(s.holds);
    assert!(s.lambda1_h >= s.lambda1_g - 1e-12);
}

#[test]
fn trivial_weights_are_reversible() {
    let h = load_hypergraph(data("triangle_trivial.json")).unwrap();
    let p = transition_matrix(&h).unwrap();
    let pi = stationary_direct(&p).unwrap().pi;
    assert!(reversibility(&p, &pi).unwrap().reversible);
}
