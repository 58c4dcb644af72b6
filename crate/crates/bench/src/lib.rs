//! Shared fixtures for the criterion benches.

use fourfold::zoo::by_name;
use fourfold::{Point, ZooEntry};

/// A zoo entry together with a fixed batch of sample points.
pub struct Fixture {
    pub entry: ZooEntry,
    pub points: Vec<Point>,
}

pub fn fixture(name: &str, n: usize) -> Fixture {
    let entry = by_name(name).expect("known zoo entry");
    let points = entry.samples(n, 7);
    Fixture { entry, points }
}

pub const TOPOLOGY_EXPRS: [&str; 5] = ["K3", "CP2 # 9 ~CP2", "6 ~CP2", "3 CP2 # 30 ~CP2", "T4 # 2 (S2xS2)"];
