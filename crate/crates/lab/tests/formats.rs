use stoc_core::construct::clique_partition_code;
use stoc_core::design::{builtin_family_3x5, example_family_2x3};
use stoc_core::graph::Graph;
use stoc_lab::formats::{parse, to_line, AnyCode, CodeFile, FamilyFile, GraphFile, TilingFile};
use stoc_lab::LabError;

#[test]
fn graph_file_round_trip() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (3, 0)], true).unwrap();
    let line = to_line(&GraphFile::from_graph(&g));
    let back: GraphFile = parse("g", &line).unwrap();
    assert_eq!(back.to_graph().unwrap(), g);
    assert_eq!(to_line(&back), line);
}

#[test]
fn linear_code_file_round_trip() {
    let code = clique_partition_code(&Graph::complete(3), &[vec![0, 1, 2]], 3).unwrap();
    let line = to_line(&CodeFile::from_linear(&code));
    let back: CodeFile = parse("c", &line).unwrap();
    match back.to_code().unwrap() {
        AnyCode::Linear(c) => assert_eq!(c.rate().exact, code.rate().exact),
        AnyCode::Explicit(_) => panic!("expected a linear code"),
    }
}

#[test]
fn family_file_round_trip() {
    for fam in [example_family_2x3(), builtin_family_3x5()] {
        let line = to_line(&FamilyFile::from(&fam));
        let back: FamilyFile = parse("f", &line).unwrap();
        assert_eq!(to_line(&back), line);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let err = parse::<GraphFile>("g.json", r#"{"directed":false,"n":1,"edges":[],"extra":1}"#)
        .unwrap_err();
    assert!(
        matches!(err, LabError::Schema { .. } | LabError::Syntax { .. }),
        "{err}"
    );
}

#[test]
fn truncated_input_is_a_syntax_error() {
    let err = parse::<GraphFile>("g.json", "{\"directed\":false,\n\"n\":").unwrap_err();
    match err {
        LabError::Syntax { line, .. } => assert_eq!(line, 2),
        other => panic!("{other}"),
    }
}

#[test]
fn tiling_must_partition_its_region() {
    let ok: TilingFile = parse(
        "t",
        r#"{"n":2,"tiles":[[[0,0],[1,0]],[[0,1],[1,1]]],"region":[[0,0],[1,0],[0,1],[1,1]]}"#,
    )
    .unwrap();
    assert!(ok.to_tiling().is_ok());
    let overlap: TilingFile = parse(
        "t",
        r#"{"n":2,"tiles":[[[0,0],[1,0]],[[1,0],[1,1]]],"region":[[0,0],[1,0],[0,1],[1,1]]}"#,
    )
    .unwrap();
    assert!(overlap.to_tiling().is_err());
}
