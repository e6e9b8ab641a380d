mod common;

use qldi_core::ldi::{is_ldi, ldi_transform, LVariant};
use qldi_core::linalg::{apply_script, in_rowspace, Op, OpScript};
use qldi_core::symplectic::gram;

#[test]
fn every_variant_is_ldi_and_regenerates_the_group() {
    for (idx, code) in common::corpus().iter().enumerate() {
        let q = code.q();
        for variant in LVariant::ALL {
            let ldi = ldi_transform(code, variant).unwrap();
            assert!(is_ldi(&ldi.tableau), "code #{idx} {variant}");
            let reduced = ldi.at_prime(q).unwrap();
            assert_eq!(reduced, ldi.canonical.tableau, "code #{idx} {variant}");
            // Row operations keep the row space; only the column moves change
            // which registers the group acts on.
            let column_moves = OpScript(
                ldi.canonical
                    .script
                    .ops()
                    .iter()
                    .filter(|op| matches!(op, Op::RegisterSwap(..) | Op::HadamardSwap(_)))
                    .cloned()
                    .collect(),
            );
            let moved = apply_script(code.tableau(), &column_moves).unwrap();
            for i in 0..code.num_generators() {
                assert!(in_rowspace(reduced.row(i), &moved, q).unwrap().is_some());
                assert!(in_rowspace(moved.row(i), &reduced, q).unwrap().is_some());
            }
            assert_eq!(ldi.b, ldi.tableau.max_abs_entry());
        }
    }
}

#[test]
fn entry_bounds_hold() {
    for (idx, code) in common::corpus().iter().enumerate() {
        let q = code.q();
        let k = code.k() as u64;
        let minus = ldi_transform(code, LVariant::MinusOnly).unwrap();
        assert!(minus.b <= (1 + k * (q - 1)) * (q - 1), "code #{idx}: B = {}", minus.b);
        for variant in LVariant::ALL {
            let ldi = ldi_transform(code, variant).unwrap();
            let residue = gram(&ldi.canonical.tableau.lift()).max_abs();
            assert!(ldi.b <= (q - 1) + residue, "code #{idx} {variant}");
        }
    }
}

#[test]
fn plus_variant_never_goes_negative() {
    for code in common::corpus() {
        let ldi = ldi_transform(&code, LVariant::PlusOnly).unwrap();
        assert!(ldi.tableau.rows().iter().flatten().all(|&v| v >= 0));
    }
}

#[test]
fn transform_is_idempotent_on_its_own_output() {
    for code in common::corpus() {
        let first = ldi_transform(&code, LVariant::Full).unwrap();
        let again = ldi_transform(&code, LVariant::Full).unwrap();
        assert_eq!(first, again);
    }
}
