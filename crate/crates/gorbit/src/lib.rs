//! Exact certification engine for geodesic-orbit metrics on compact simple
//! Lie groups. Builds compact forms from root data, analyzes subalgebras,
//! decomposes invariant modules, and certifies or refutes the geodesic-orbit
//! property of left-invariant metrics with exact linear algebra over real
//! quadratic field towers.

pub mod exactmath;
pub mod liecore;
pub mod par;
pub mod subalg;
pub mod repth;
pub mod gomet;
pub mod dynamics;
pub mod catalog;
pub mod report;
pub mod driver;
