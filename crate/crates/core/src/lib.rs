pub mod align;
pub mod formats;
pub mod genes;
pub mod pmf;
pub mod seq;
pub mod store;
pub mod structure;
