use building::model::{fl_field, ToyModel, VertexFunction};
use building::{build_window, BuildingError};
use exactmath::{Coeffs, QField};

const SQUARE: &str = r#"{
  "n": 2,
  "p": 2,
  "vertices": [10, 20, 30],
  "t_edges": [[10, 20], [20, 30], [10, 30]],
  "a_pairs": [[1, 0], [1, 2]]
}"#;

#[test]
fn json_round_trip_is_identity() {
    let m = ToyModel::parse_json(SQUARE).unwrap();
    let again = ToyModel::parse_json(&m.to_json()).unwrap();
    assert_eq!(m, again);

    let w = build_window(2, 2, 1).unwrap();
    let wm = ToyModel::from_window(&w);
    let parsed = ToyModel::parse_json(&wm.to_json()).unwrap();
    assert_eq!(parsed.edges, wm.edges);
    assert_eq!(parsed.a_next, wm.a_next);
    // masks and scaling are window data, not part of the file format
    assert!(parsed.t_row_complete.iter().all(|&b| b));
    assert!(parsed.sp_vertex.is_none());
}

#[test]
fn file_models_get_full_masks_and_identity_scaling() {
    let m = ToyModel::parse_json(SQUARE).unwrap();
    assert_eq!(m.num_vertices(), 3);
    assert_eq!(m.num_edges(), 3);
    assert_eq!(m.ids, vec![10, 20, 30]);
    assert_eq!(m.edges, vec![(0, 1), (1, 2), (0, 2)]);
    assert_eq!(m.a_next[1], vec![0, 2]);
    assert!(m.t_row_complete.iter().all(|&b| b));
    assert!(m.pr_row_complete.iter().all(|&b| b));
    assert!(m.a_edge_complete.iter().all(|&b| b));
    for v in 0..3 {
        assert_eq!(m.sp_of_vertex(v), Some(v as u32));
    }
    for e in 0..3 {
        assert_eq!(m.sp_of_edge(e), Some(e as u32));
    }
    assert!(m.a_chain_complete(1, 4));
}

#[test]
fn parse_rejects_malformed_models() {
    let dup = r#"{"n":2,"p":2,"vertices":[1,1],"t_edges":[],"a_pairs":[]}"#;
    assert!(matches!(
        ToyModel::parse_json(dup),
        Err(BuildingError::Model(_))
    ));

    let unknown = r#"{"n":2,"p":2,"vertices":[1,2],"t_edges":[[1,7]],"a_pairs":[]}"#;
    assert!(matches!(
        ToyModel::parse_json(unknown),
        Err(BuildingError::Model(_))
    ));

    let range = r#"{"n":2,"p":2,"vertices":[1,2],"t_edges":[[1,2]],"a_pairs":[[0,3]]}"#;
    assert!(matches!(
        ToyModel::parse_json(range),
        Err(BuildingError::Model(_))
    ));

    let zero_n = r#"{"n":0,"p":2,"vertices":[],"t_edges":[],"a_pairs":[]}"#;
    assert!(matches!(
        ToyModel::parse_json(zero_n),
        Err(BuildingError::Model(_))
    ));

    assert!(matches!(
        ToyModel::parse_json("not json"),
        Err(BuildingError::Model(_))
    ));
}

#[test]
fn window_models_report_boundary_irregularity() {
    let w = build_window(2, 2, 1).unwrap();
    let m = ToyModel::from_window(&w);
    let reg = m.regularity();
    assert!(!reg.t_regular);
    assert!(!reg.a_regular);
    // masks stay honest: complete exactly where the window says so
    for v in 0..m.num_vertices() {
        assert_eq!(m.t_row_complete[v], w.t_complete(v));
        assert_eq!(m.out_edges[v].len() == 5, m.t_row_complete[v]);
    }

    let toy = ToyModel::parse_json(SQUARE).unwrap();
    let toy_reg = toy.regularity();
    assert!(!toy_reg.t_regular);
}

#[test]
fn coefficient_guard_tracks_the_forbidden_order() {
    // p^(2n-2) - 1 = 3 at n = 2, p = 2
    assert!(matches!(
        fl_field(2, 2, 3),
        Err(BuildingError::BadCoefficient { l: 3, n: 2, p: 2 })
    ));
    assert!(fl_field(2, 2, 5).is_ok());

    // p = 3: q - 1 = 8
    assert!(fl_field(2, 3, 2).is_err());
    assert!(fl_field(2, 3, 5).is_ok());

    // n = 3, p = 2: p^4 - 1 = 15 kills 3 and 5
    assert!(fl_field(3, 2, 3).is_err());
    assert!(fl_field(3, 2, 5).is_err());

    // non-prime, equal to p, and tiny moduli
    assert!(fl_field(2, 2, 9).is_err());
    assert!(fl_field(2, 2, 2).is_err());
    assert!(fl_field(2, 2, 1).is_err());
    assert!(fl_field(2, 2, 0).is_err());

    // 7, 11, 13 work for every window this crate builds
    for (n, p) in [(2usize, 2u64), (2, 3), (3, 2)] {
        for l in [7u64, 11, 13] {
            assert!(fl_field(n, p, l).is_ok(), "l={l} n={n} p={p}");
        }
    }
}

#[test]
fn functions_inherit_the_coefficient_guard() {
    let m = ToyModel::parse_json(SQUARE).unwrap();
    let bad = exactmath::FlField::new(3);
    assert!(matches!(
        VertexFunction::zero(&m, &bad),
        Err(BuildingError::BadCoefficient { .. })
    ));
    let ok = fl_field(2, 2, 7).unwrap();
    let f = VertexFunction::constant(&m, &ok, ok.from_int(5)).unwrap();
    assert_eq!(f.vals.len(), 3);
    let g = VertexFunction::zero(&m, &QField).unwrap();
    assert!(g.vals.iter().all(|v| QField.is_zero(v)));
}
