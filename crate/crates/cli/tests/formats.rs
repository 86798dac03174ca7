use std::path::Path;

use folcalc::random::random_movie;
use folcalc::*;
use folcalc_cli::format::{normalize_fol, parse_fol, parse_mov, serialize_fol, serialize_mov, FolDocument};
use proptest::prelude::*;

fn fixtures() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn valid_fixtures_are_normalized() {
    for (name, text) in fixtures() {
        if !name.ends_with(".fol") || name.starts_with("census") || name == "unknown_directive.fol" {
            continue;
        }
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        if parse_fol(&text).unwrap().to_movie().validate().ok() {
            assert_eq!(normalize_fol(&text).unwrap(), body, "{name}");
        }
    }
}

#[test]
fn mov_fixtures_round_trip() {
    for (name, text) in fixtures().into_iter().filter(|(n, _)| n.ends_with(".mov")) {
        assert_eq!(serialize_mov(&parse_mov(&text).unwrap().to_script()), text, "{name}");
    }
}

#[test]
fn normalization_keeps_the_movie_class() {
    for m in enumerate_movies(3).unwrap() {
        let text = serialize_fol(&m);
        let back = parse_fol(&text).unwrap().to_movie();
        assert!(back.validate().ok());
        assert!(is_isomorphic(&m, &back).unwrap());
        assert_eq!(normalize_fol(&text).unwrap(), text);
    }
}

#[test]
fn invalid_movies_survive_a_round_trip() {
    let mut m = base_movie();
    m.genus = 1;
    m.events.push(SaddleEvent::new(7, Sign::Positive, "a1".into(), "zz".into()));
    let back = parse_fol(&serialize_fol(&m)).unwrap().to_movie();
    assert_eq!(back, m.renumbered());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_movies_round_trip(k in 1usize..=6, extra in 0usize..=4, seed in any::<u64>()) {
        let m = random_movie(k, extra, seed).unwrap();
        let text = serialize_fol(&m);
        let doc = parse_fol(&text).unwrap();
        prop_assert!(is_isomorphic(&m, &doc.to_movie()).unwrap());
        prop_assert_eq!(serialize_fol(&doc.to_movie()), text.clone());
        prop_assert_eq!(parse_fol(&FolDocument::from_movie(&m).single_line()).unwrap(), doc);
    }

    #[test]
    fn scripts_round_trip(k in 1usize..=5, extra in 0usize..=3, seed in any::<u64>()) {
        let m = random_movie(k, extra, seed).unwrap();
        let script = realize(&m).unwrap().script().unwrap().clone();
        let text = serialize_mov(&script);
        prop_assert_eq!(parse_mov(&text).unwrap().to_script(), script);
    }
}
