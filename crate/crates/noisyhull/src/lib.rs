pub mod cli;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod gen;
pub mod geom;
pub mod hull2d;
pub mod hull3d;
pub mod io;
pub mod noise;
pub mod sweep;
pub mod toolkit;
pub mod walk;
