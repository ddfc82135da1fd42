//! Exact linear algebra for Hopf algebras, crossed modules, braided Hopf
//! algebras and bicovariant differential calculi over finite groups.

pub mod braided;
pub mod calculus;
pub mod codiff;
pub mod crossed;
pub mod exact;
pub mod group;
pub mod hopf;
pub mod quiver;
pub mod report;
pub mod scenario;
pub mod space;
pub mod superhopf;
