//! Replays the checked-in fuzz seeds through the same decode/encode round
//! trip the fuzz targets run.

use std::fs;
use std::path::Path;

use hecke_core::gl_hecke::GlHeckeElement;
use hecke_core::heis::{HeisClass, HeisElement};
use hecke_core::heis_hecke::{AdelicHeckeElement, HeisHeckeElement};
use hecke_core::json::{from_str, to_canonical_string};
use hecke_core::linalg::IntMatrix;

fn replay<T>(target: &str)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let x: T = from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let back: T = from_str(&to_canonical_string(&x).unwrap()).unwrap();
        assert_eq!(back, x, "{}", path.display());
        seen += 1;
    }
    assert!(seen > 0, "no seeds for {target}");
}

#[test]
fn seeds_decode_and_round_trip() {
    replay::<IntMatrix>("int_matrix");
    replay::<HeisElement>("heis_element");
    replay::<HeisClass>("heis_class");
    replay::<HeisHeckeElement>("heis_hecke_element");
    replay::<AdelicHeckeElement>("adelic_element");
    replay::<GlHeckeElement>("gl_hecke_element");
}
