pub mod demo;
pub mod lambda;
pub mod models;
pub mod reduce;
pub mod session;
pub mod stdlib;
pub mod syntax;
pub mod term;
pub mod turing;
