pub mod algebra;
pub mod chain;
pub mod linalg;
pub mod paths;
pub mod verify;
