#![no_main]

use graphcurv::{apsp, parse_edge_list, solve_curvature, validate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = parse_edge_list(text) else { return };
    let again = parse_edge_list(&g.to_edge_list()).expect("serialized graph reparses");
    assert_eq!(g, again);

    let report = validate(&g);
    assert_eq!(report.connected, apsp(&g).is_ok());
    if report.connected && g.n() <= 12 {
        let d = apsp(&g).unwrap();
        let sol = solve_curvature(&d);
        if let Some(w) = &sol.w {
            let residual = graphcurv::curvature::residual(&d, w);
            assert!(residual.iter().all(|r| r.is_zero()));
        }
    }
});
