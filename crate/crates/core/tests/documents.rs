mod support;

use foon_core::{
    export_tree_document, parse_goal_list, parse_motion_profile, parse_tree_document, retrieve,
    Algorithm, DocumentError, ObjectSpec, RetrievalConfig,
};

use support::*;

#[test]
fn tree_document_round_trip() {
    let network = network_from(SWEET_POTATO);
    for algorithm in Algorithm::ALL {
        let tree = retrieve(
            &network,
            &chopped_goal(),
            &sweet_potato_kitchen(),
            &RetrievalConfig::new(algorithm),
        )
        .unwrap();
        let document = export_tree_document(&tree);
        let back = parse_tree_document(&document).unwrap();
        assert_eq!(back, tree);
        assert_eq!(export_tree_document(&back), document);
        let value: serde_json::Value = serde_json::from_str(&document).unwrap();
        assert_eq!(value["units"].as_array().unwrap().len(), 3);
        assert_eq!(value["stats"]["distinct_object_count"], 7);
    }
}

#[test]
fn empty_tree_document() {
    let network = network_from(SWEET_POTATO);
    let goal = ObjectSpec::new("sweet potato")
        .unwrap()
        .with_states(["whole"]);
    let tree = retrieve(
        &network,
        &goal,
        &sweet_potato_kitchen(),
        &RetrievalConfig::new(Algorithm::Ids),
    )
    .unwrap();
    let back = parse_tree_document(&export_tree_document(&tree)).unwrap();
    assert!(back.is_empty());
    assert_eq!(back.depth_reached, Some(0));
}

#[test]
fn goal_list_entries() {
    let (goals, diagnostics) = parse_goal_list(
        r#"[{"label": "sweet potato", "states": ["chopped"], "container": "cutting board"},
            {"states": ["x"]},
            {"label": "salad", "colour": "green"}]"#,
    )
    .unwrap();
    assert_eq!(
        goals,
        vec![chopped_goal(), ObjectSpec::new("salad").unwrap()]
    );
    let rendered: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
    assert_eq!(
        rendered,
        [
            "entry 1: error: missing \"label\"",
            "entry 2: warning: unknown field \"colour\" ignored"
        ]
    );
    assert!(matches!(
        parse_goal_list("{}"),
        Err(DocumentError::Shape { .. })
    ));
    assert!(matches!(
        parse_goal_list("[1,"),
        Err(DocumentError::Syntax { .. })
    ));
    assert_eq!(parse_goal_list("").unwrap().0, vec![]);
}

#[test]
fn motion_profile_document() {
    let profile = parse_motion_profile(r#"{"pour": 0.9, "default": 0.1}"#).unwrap();
    assert_eq!(profile.probability("pour"), 0.9);
    assert_eq!(profile.probability("stir"), 0.1);
    assert!(matches!(
        parse_motion_profile(r#"{"pour": 1.5}"#),
        Err(DocumentError::Probability { .. })
    ));
    assert!(matches!(
        parse_motion_profile(r#"{"pour": "high"}"#),
        Err(DocumentError::NotANumber { .. })
    ));
}
