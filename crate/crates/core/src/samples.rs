//! Built-in coefficient tables.
//!
//! These encode standard computations of the K-theory of common coefficient
//! rings (Quillen's finite fields, low-degree K-groups of the integers, Bott
//! periodicity for the complex numbers). They are inputs, not results of this
//! crate.

use crate::ktable::KTable;

pub const FINITE_FIELD_5: &str = include_str!("../data/f5.ktable");
pub const FINITE_FIELD_7: &str = include_str!("../data/f7.ktable");
pub const INTEGERS: &str = include_str!("../data/integers.ktable");
pub const COMPLEX: &str = include_str!("../data/complex.ktable");
pub const COMPLEX_TOPOLOGICAL: &str = include_str!("../data/complex_top.ktable");
pub const STABLE_CSTAR: &str = include_str!("../data/stable_cstar.ktable");

/// `(name, file contents)` for every shipped table.
pub const ALL: &[(&str, &str)] = &[
    ("f5", FINITE_FIELD_5),
    ("f7", FINITE_FIELD_7),
    ("integers", INTEGERS),
    ("complex", COMPLEX),
    ("complex_top", COMPLEX_TOPOLOGICAL),
    ("stable_cstar", STABLE_CSTAR),
];

pub fn load(name: &str) -> Option<KTable> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, text)| KTable::parse(text).expect("shipped tables parse"))
}

/// Algebraic K-theory of the finite field with `q` elements in degrees
/// `-1..=2 * half_degrees`: `K_{-1} = 0`, `K_0 = Z`, `K_{2i-1} = Z/(q^i - 1)`, `K_{2i} = 0`.
pub fn finite_field(q: u64, half_degrees: u32) -> KTable {
    use crate::group::FgAbGroup;
    use crate::ktable::{DefaultRule, Mode};
    use num_bigint::BigInt;

    let mut t = KTable::new(Mode::AlgebraicK)
        .with_flag("field")
        .with_flag("pid")
        .with_entry(-1, FgAbGroup::zero())
        .with_entry(0, FgAbGroup::free(1))
        .with_defaults(Some(DefaultRule::Zero), None);
    for i in 1..=half_degrees {
        let order = BigInt::from(q).pow(i) - 1;
        t = t.with_entry(2 * i as i64 - 1, FgAbGroup::cyclic(order)).with_entry(2 * i as i64, FgAbGroup::zero());
    }
    t
}
