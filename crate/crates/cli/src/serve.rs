use std::io::{self, BufReader};
use std::net::TcpListener;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use anyhow::Context;
use longform_core::bridge::serve;

pub fn stdio() -> anyhow::Result<()> {
    serve(io::stdin().lock(), io::stdout().lock(), 1).context("bridge session on stdio")
}

/// One thread and one independent session per connection.
pub fn listen(addr: &str) -> anyhow::Result<()> {
    let listener = TcpListener::bind(addr).with_context(|| format!("binding {addr}"))?;
    eprintln!("bridge listening on {}", listener.local_addr()?);
    let next_id = Arc::new(AtomicU64::new(1));
    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                eprintln!("accept failed: {e}");
                continue;
            }
        };
        let id = next_id.fetch_add(1, Ordering::Relaxed);
        std::thread::spawn(move || {
            let reader = match stream.try_clone() {
                Ok(r) => BufReader::new(r),
                Err(e) => return eprintln!("session {id}: {e}"),
            };
            if let Err(e) = serve(reader, stream, id) {
                eprintln!("session {id}: {e}");
            }
        });
    }
    Ok(())
}
