//! Schnyder woods of toroidal maps and the periodic drawings they induce.
//!
//! The crate works on maps embedded on the flat torus, stored as dart tables
//! with integer offsets (see [`torus_map`]). It computes Schnyder woods of
//! essentially 3-connected toroidal maps ([`wood_builder`]), checks and
//! dualises them ([`wood`]), places the universal cover on a periodic
//! orthogonal surface through region vectors ([`cover`]), and checks and
//! projects the result into straight-line or one-bend drawings
//! ([`embed`]). Text formats for maps and woods live in [`io`].
//!
//! ```
//! use torwood::{fixtures, wood_builder, wood};
//!
//! let g = fixtures::three_loops();
//! let w = wood_builder::compute_wood(&g).unwrap();
//! assert_eq!(wood::check_schnyder(&g, &w).unwrap(), wood::WoodType::Type1);
//! ```

pub mod cover;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod torus_map;
pub mod wood;
pub mod wood_builder;

pub use error::{Error, Result};
pub use torus_map::{Offset, TorusMap};
pub use wood::{Wood, WoodType};
