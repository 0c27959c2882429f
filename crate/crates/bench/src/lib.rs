//! Fixtures shared by the benchmarks.

use weylchar_core::exact::qr;
use weylchar_core::torus::{alcove_strata, StratumKind};
use weylchar_core::{RootSystem, TorusPoint, WeightVec};

pub fn system(name: &str) -> RootSystem {
    RootSystem::new(name.parse().expect("valid spec")).expect("constructible")
}

/// Regular point with pairings `(i + 1) / 7 pi`, nudged off the walls.
pub fn regular_point(rs: &RootSystem) -> TorusPoint {
    let t: Vec<_> = (0..rs.rank())
        .map(|i| qr(2 * i as i64 + 3, 13 * (i as i64 + 2)))
        .collect();
    TorusPoint::from_simple_pairings(rs, &t).expect("rank-sized")
}

/// The proper stratum with the most degenerate roots.
pub fn deepest_stratum(rs: &RootSystem) -> TorusPoint {
    alcove_strata(rs)
        .expect("simple")
        .into_iter()
        .filter(|s| s.kind == StratumKind::Proper)
        .max_by_key(|s| {
            rs.degenerate_split(&s.point)
                .map(|d| d.deg.len())
                .unwrap_or(0)
        })
        .expect("has a proper stratum")
        .point
}

pub fn multiple_of_rho(rs: &RootSystem, k: i64) -> WeightVec {
    rs.weyl_vector().scale(&qr(k, 1))
}
