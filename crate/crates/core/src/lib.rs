pub mod algebra;
pub mod closed_form;
pub mod complete_graph;
pub mod error;
pub mod genfun;
pub mod model;
pub mod oracle;
pub mod par;
pub mod sensitivity;
pub mod transfer;
pub mod zeros;

pub use error::{Error, Result};
