//! Toggle dynamics on graph labelings: promotion, toric, permutoric and
//! broken promotion operators, their orbit structures, cyclic sieving
//! checks, and the stones-and-coins model on path graphs.

pub mod composition;
pub mod cyclic;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod glob;
pub mod graph;
pub mod labeling;
pub mod orientation;
pub mod promotion;
pub mod qpoly;
pub mod registry;
pub mod sieving;
pub mod stones;
pub mod toggle;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use graph::Graph;
pub use labeling::Labeling;
pub use word::{Generator, OperatorWord};
