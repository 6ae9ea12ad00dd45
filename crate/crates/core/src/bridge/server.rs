use std::io::{self, BufRead, Write};

use super::protocol::{ErrorCode, Request, Response};
use crate::guidance::GuidanceSession;

enum Flow {
    Continue,
    Stop,
}

struct Connection {
    session_id: u64,
    session: Option<GuidanceSession>,
}

impl Connection {
    fn handle(&mut self, line: &str) -> (Response, Flow) {
        let request: Request = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(e) => return (error(ErrorCode::Malformed, e.to_string()), Flow::Continue),
        };
        match (request, self.session.as_mut()) {
            (Request::Init { .. }, Some(_)) => {
                (error(ErrorCode::AlreadyInitialized, "init received twice".into()), Flow::Stop)
            }
            (Request::Init { mut config, tokens }, None) => {
                tokens.apply(&mut config);
                match GuidanceSession::new(*config) {
                    Ok(s) => {
                        self.session = Some(s);
                        (Response::Ready { session_id: self.session_id }, Flow::Continue)
                    }
                    Err(e) => (error(ErrorCode::InvalidConfig, e.to_string()), Flow::Continue),
                }
            }
            (Request::Step { .. }, None) => (error(ErrorCode::NotInitialized, "step before init".into()), Flow::Stop),
            (Request::Step { last_token_id }, Some(session)) => match session.step(last_token_id) {
                Ok(_) if session.is_finished() => (Response::Done, Flow::Stop),
                Ok(adj) => (Response::adjust(&adj), Flow::Continue),
                Err(e) => (error(ErrorCode::Controller, e.to_string()), Flow::Stop),
            },
            (Request::Close, _) => (Response::Done, Flow::Stop),
        }
    }
}

fn error(code: ErrorCode, detail: String) -> Response {
    Response::Error { code, detail }
}

/// Runs one session over a line stream: one response line per request line,
/// until close, a finished controller, a protocol-order violation, or EOF.
pub fn serve<R: BufRead, W: Write>(reader: R, mut writer: W, session_id: u64) -> io::Result<()> {
    let mut conn = Connection { session_id, session: None };
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (response, flow) = conn.handle(&line);
        writeln!(writer, "{}", response.to_line())?;
        writer.flush()?;
        if let Flow::Stop = flow {
            break;
        }
    }
    Ok(())
}
