pub mod graded;
pub mod weyl;
pub mod cofrob;
pub mod cobar;
pub mod homology;
pub mod correspondence;
pub mod cli;
