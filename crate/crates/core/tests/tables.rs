//! Reference coefficient tables and the entry missing from them.

mod common;

use hartogs_core::bergman::coefficient_table;
use hartogs_core::exact::{parse_rational, rat};
use hartogs_core::DomainDescriptor;

#[test]
fn rank_two_exceptional_table() {
    let d = DomainDescriptor::parse("V", &[]).unwrap();
    let t = coefficient_table(&d, &rat(12, 17)).unwrap();
    let json = t.to_json();
    assert_eq!(json.index_order, "descending");
    assert_eq!(json.rising_coeffs, common::TABLE_V);
    assert_eq!(t.rising_coeffs, common::rising_coeffs_oracle(&d, &rat(12, 17)));
}

#[test]
fn rank_three_exceptional_table() {
    let d = DomainDescriptor::parse("VI", &[]).unwrap();
    let t = coefficient_table(&d, &rat(9, 14)).unwrap();
    assert_eq!(t.rising_coeffs.len(), 28);
    for (j, num, pow3) in common::TABLE_VI {
        assert_eq!(t.rising_coeffs[j], common::vi_entry(num, pow3), "index {j}");
    }
    // absent from the reference list; frozen from the triangular-solve oracle
    assert_eq!(t.rising_coeffs[22], parse_rational("927554810/243").unwrap());
    assert_eq!(t.rising_coeffs, common::rising_coeffs_oracle(&d, &rat(9, 14)));
    assert_eq!(t.kernel_coeffs, common::kernel_from_rising(&d, &rat(9, 14), &t.rising_coeffs));
}
