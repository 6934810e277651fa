pub mod atlas;
pub mod bench;
pub mod cli;
pub mod engine;
pub mod equations;
pub mod graph;
pub mod matrix;
pub mod oracle;
mod przulj;
pub mod small;
