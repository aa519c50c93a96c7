//! Document layer of the command-line front end: JSON parsing of ring
//! descriptors, matrices and elements, and the rendering that makes every
//! report round-trip through the same syntax.

pub mod input;
pub mod render;
