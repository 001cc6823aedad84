#![no_main]

use graphcurv::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(q) = text.parse::<Rational>() else { return };
    let shown = q.to_string();
    assert_eq!(shown.parse::<Rational>().unwrap(), q);
    let (_, den) = shown.split_once('/').expect("always p/q");
    assert!(!den.starts_with(['-', '0']), "non-canonical {shown}");
    assert!((q.clone() - q).is_zero());
});
