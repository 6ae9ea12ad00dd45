//! Line-delimited JSON protocol that runs a guidance session on behalf of an
//! external inference runtime. Each request line gets exactly one response line.

mod protocol;
mod server;

pub use protocol::{ErrorCode, Request, Response, TokenTable, WireEntry, MASK_SENTINEL};
pub use server::serve;

#[cfg(test)]
mod tests;
