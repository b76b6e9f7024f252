//! Segre automorphisms, explicit symmetry generators, group closure, orbits
//! and isotropy transforms.

pub mod generators;
pub mod group;
pub mod isotropy;
pub mod map;

pub use generators::{generators_aut_extended, generators_aut_s, AUT_EXTENDED_NAMES, AUT_S_NAMES};
pub use group::{
    close_group, close_group_parallel, close_group_with_cap, commutator, is_automorphism_of,
    orbit_sizes, orbits, GroupClosure, TensorFamily, DEFAULT_CAP,
};
pub use isotropy::{random_invertible, random_sandwich, sandwich, transform_algorithm};
pub use map::SegreMap;
