#![no_main]

use graphcurv::{generate, validate, Family};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(family) = text.parse::<Family>() else { return };
    let again: Family = family.to_string().parse().expect("displayed spec reparses");
    assert_eq!(family, again);

    let small = match family {
        Family::Hypercube(d) => d <= 6,
        Family::Grid(r, c) => r.saturating_mul(c) <= 64,
        Family::Gnp { n, .. } => n <= 64,
        Family::Path(n) | Family::Cycle(n) | Family::Complete(n) | Family::Star(n) => n <= 64,
    };
    if small {
        if let Ok(g) = generate(&family, 0) {
            assert!(validate(&g).connected);
        }
    }
});
