pub mod model;
pub mod json;
pub use model::*;
pub use json::{quiver_from_json, quiver_to_json, ComponentDoc, ElementDoc, JsonError};
