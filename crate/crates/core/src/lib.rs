pub mod bitset;
pub mod cli;
pub mod config;
pub mod lang;
pub mod oracle;
pub mod order;
pub mod profinite;
pub mod resalg;
