use std::path::PathBuf;

use nonlocal::document::{
    from_json, to_json, Alphabets, ClassicalStrategyDocument, GameDocument, LoadedStrategy,
    PovmDocument, StrategyDocument,
};
use nonlocal::CliError;
use nonlocal_core::games::ghz_mermin_promise_game;
use nonlocal_core::povm::trine;
use nonlocal_core::sampling::{random_winning_bundle, StrategyShape};
use nonlocal_core::{fold_promise, verify_winning, DeterministicStrategy, Game};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn fixture(name: &str) -> (String, String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    (
        path.display().to_string(),
        std::fs::read_to_string(&path).unwrap(),
    )
}

fn assert_byte_round_trip<T: Serialize + DeserializeOwned>(name: &str) -> T {
    let (path, text) = fixture(name);
    let doc: T = from_json(&path, &text).unwrap();
    assert_eq!(to_json(&doc), text, "{name}");
    doc
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    assert_byte_round_trip::<GameDocument>("ghz_game.json");
    assert_byte_round_trip::<GameDocument>("all_winning_game.json");
    assert_byte_round_trip::<GameDocument>("empty_game.json");
    assert_byte_round_trip::<GameDocument>("chsh_game.json");
    assert_byte_round_trip::<StrategyDocument>("ghz_strategy.json");
    assert_byte_round_trip::<PovmDocument>("trine_povm.json");
}

#[test]
fn ghz_fixtures_match_library_game_and_win() {
    let game = assert_byte_round_trip::<GameDocument>("ghz_game.json")
        .parse()
        .unwrap();
    let pg = ghz_mermin_promise_game();
    assert_eq!(
        game.promise.as_ref().map(|p| p.promise()),
        Some(pg.promise())
    );
    assert_eq!(game.game, fold_promise(&pg));
    let doc = assert_byte_round_trip::<StrategyDocument>("ghz_strategy.json");
    let LoadedStrategy::Three(s) = doc.to_strategy(&game.alphabets).unwrap() else {
        panic!("expected three players");
    };
    assert!(verify_winning(&s, &game.game, 1e-9).unwrap().wins());
}

#[test]
fn trine_fixture_matches_library() {
    let (_, povm) = assert_byte_round_trip::<PovmDocument>("trine_povm.json")
        .to_povm()
        .unwrap();
    let lib = trine();
    for (a, b) in povm.elements().iter().zip(lib.elements()) {
        assert!(a.max_abs_diff(b) < 1e-15);
    }
}

#[test]
fn generated_strategy_documents_round_trip() {
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = if seed % 2 == 0 { (2, 2) } else { (2, 3) };
        let shape = StrategyShape::random(&mut rng, dims);
        let b = random_winning_bundle(&mut rng, shape);
        let a = Alphabets::numbered(b.game.input_sizes(), b.game.output_sizes());
        let game_doc = GameDocument::from_game(&b.game, None);
        let text = to_json(&game_doc);
        let parsed: GameDocument = from_json("game", &text).unwrap();
        assert_eq!(to_json(&parsed), text);
        assert_eq!(parsed.parse().unwrap().game, b.game);

        let doc = StrategyDocument::from_two(&b.strategy, &a);
        let text = to_json(&doc);
        let parsed: StrategyDocument = from_json("strategy", &text).unwrap();
        assert_eq!(to_json(&parsed), text);
        match parsed.to_strategy(&a).unwrap() {
            LoadedStrategy::Two(s) => assert_eq!(s, b.strategy),
            LoadedStrategy::Three(_) => panic!("expected two players"),
        }
    }
}

#[test]
fn classical_strategy_document_round_trips() {
    let g = Game::all_winning(&[3, 2], &[2, 3]).unwrap();
    let a = Alphabets::numbered(g.input_sizes(), g.output_sizes());
    let s = DeterministicStrategy::new(vec![vec![1, 0, 1], vec![2, 0]]);
    let doc = ClassicalStrategyDocument::from_strategy(&s, &a);
    let text = to_json(&doc);
    let parsed: ClassicalStrategyDocument = from_json("c", &text).unwrap();
    assert_eq!(to_json(&parsed), text);
    assert_eq!(parsed.to_strategy(&a).unwrap(), s);
}

#[test]
fn malformed_documents_report_positions() {
    let err =
        from_json::<GameDocument>("g.json", "{\n  \"players\": 2,\n  \"inputs\": [\n").unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err:?}");
    let err = from_json::<StrategyDocument>(
        "s.json",
        "{\"dims\": [2], \"state\": [], \"players\": [], \"x\": 0}",
    )
    .unwrap_err();
    assert!(err.to_string().contains("unknown field"), "{err}");
    assert!(err.to_string().starts_with("s.json:1:"), "{err}");
}

#[test]
fn invalid_povm_is_rejected() {
    let (_, text) = fixture("trine_povm.json");
    let mut doc: PovmDocument = from_json("t", &text).unwrap();
    doc.elements.pop();
    let err = doc.to_povm().unwrap_err();
    assert!(matches!(err, CliError::Invalid { .. }), "{err:?}");
}

#[test]
fn answers_must_cover_every_element() {
    let (_, gtext) = fixture("ghz_game.json");
    let game = from_json::<GameDocument>("g", &gtext)
        .unwrap()
        .parse()
        .unwrap();
    let (_, stext) = fixture("ghz_strategy.json");
    let mut doc: StrategyDocument = from_json("s", &stext).unwrap();
    doc.players[1].measurements[0].answers.remove("1");
    let err = doc.to_strategy(&game.alphabets).unwrap_err();
    assert!(
        err.to_string()
            .contains("players[1].measurements[0].answers"),
        "{err}"
    );
}
