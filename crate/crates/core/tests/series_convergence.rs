use foldy_core::coeffs::{closed_form, partial_sum, SeriesKind};

const XS: [f64; 6] = [-0.7, -0.5, -0.1, 0.1, 0.5, 0.7];

#[test]
fn partial_sums_converge_monotonically() {
    for kind in SeriesKind::ALL {
        for x in XS {
            let exact = closed_form(kind, x);
            let errs: Vec<f64> = (1..=16)
                .map(|k| (partial_sum(kind, x, 4 * k) - exact).abs())
                .collect();
            assert!(errs.len() >= 12);
            for w in errs.windows(2) {
                assert!(w[1] <= w[0] || w[1] < 1e-15, "{kind:?} at {x}: {errs:?}");
            }
            let last = *errs.last().unwrap();
            assert!(last <= 1e-9 * exact.abs().max(1e-300), "{kind:?} at {x}: {last}");
        }
    }
}

#[test]
fn partial_sums_diverge_outside_radius() {
    for kind in SeriesKind::ALL {
        let x = 1.2;
        let exact = closed_form(kind, x);
        let e1 = (partial_sum(kind, x, 10) - exact).abs();
        let e2 = (partial_sum(kind, x, 30) - exact).abs();
        assert!(exact.is_finite());
        assert!(e2 > e1, "{kind:?}: {e1} {e2}");
    }
}
