#![no_main]

use hecke_core::json::{from_str, to_canonical_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = from_str::<hecke_core::heis::HeisClass>(s) {
        let out = to_canonical_string(&x).unwrap();
        let back: hecke_core::heis::HeisClass = from_str(&out).unwrap();
        assert_eq!(back, x);
    }
});
