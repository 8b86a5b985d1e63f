//! Self-similar groups `G(r)` acting on the binary rooted tree, their
//! normalizers, and the classification of postcritical orbits of quadratic
//! rational maps.

pub mod conjugacy;
pub mod dynamics;
pub mod group;
pub mod inclusions;
pub mod normalizer;
pub mod tree;
