pub mod cli;
pub mod constructions;
pub mod document;
pub mod error;
pub mod geom;
pub mod plfn;
pub mod projection;
pub mod rat;
pub mod sawtooth;
pub mod svg;
pub mod verify;
