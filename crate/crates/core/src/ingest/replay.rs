//! Local HTTP server that replays recorded API payloads.
//!
//! A request for `/some/path` is answered from `<root>/some/path`:
//!
//! - if that is a file, its contents are served on every request;
//! - if it is a directory, its files are served one per request in name
//!   order, repeating the last file once the sequence is exhausted.
//!
//! Fault injection is driven by query parameters on the request:
//!
//! - `fault=malformed` serves a truncated, unparsable JSON body;
//! - `fault=error` answers with HTTP 500;
//! - `fault=drop:<field>` removes `<field>` from the JSON payload;
//! - `fault_at=<n>` restricts the fault to the n-th request (1-based) for
//!   that path; without it every request is faulted.

use std::collections::HashMap;
use std::io;
use std::net::SocketAddr;
use std::path::{Component, Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use serde_json::Value;
use tiny_http::{Header, Response, Server};

pub struct ReplayServer {
    addr: SocketAddr,
    server: Arc<Server>,
    handle: Option<JoinHandle<()>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Fault {
    Malformed,
    Error,
    Drop(String),
}

impl ReplayServer {
    /// Serve `root` on an ephemeral localhost port.
    pub fn start(root: impl Into<PathBuf>) -> io::Result<Self> {
        Self::start_on(root, "127.0.0.1:0")
    }

    pub fn start_on(root: impl Into<PathBuf>, addr: &str) -> io::Result<Self> {
        let root = root.into();
        if !root.is_dir() {
            return Err(io::Error::new(
                io::ErrorKind::NotFound,
                format!("fixtures directory {} not found", root.display()),
            ));
        }
        let server = Server::http(addr).map_err(io::Error::other)?;
        let addr = server
            .server_addr()
            .to_ip()
            .ok_or_else(|| io::Error::other("replay server has no IP address"))?;
        let server = Arc::new(server);
        let worker = Arc::clone(&server);
        let counters = Mutex::new(HashMap::<String, usize>::new());
        let handle = std::thread::spawn(move || {
            for request in worker.incoming_requests() {
                let response = respond(&root, &counters, request.url());
                if let Err(e) = request.respond(response) {
                    log::debug!("replay: failed to respond: {e}");
                }
            }
        });
        Ok(Self {
            addr,
            server,
            handle: Some(handle),
        })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// Absolute URL for `path` (leading slash optional).
    pub fn url(&self, path: &str) -> String {
        format!("http://{}/{}", self.addr, path.trim_start_matches('/'))
    }
}

impl Drop for ReplayServer {
    fn drop(&mut self) {
        self.server.unblock();
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

fn respond(
    root: &Path,
    counters: &Mutex<HashMap<String, usize>>,
    raw_url: &str,
) -> Response<io::Cursor<Vec<u8>>> {
    let (path, query) = raw_url.split_once('?').unwrap_or((raw_url, ""));
    let Some(target) = resolve(root, path) else {
        return text(404, "not found");
    };

    let index = {
        let mut counters = counters.lock().unwrap_or_else(|e| e.into_inner());
        let n = counters.entry(path.to_string()).or_insert(0);
        *n += 1;
        *n
    };

    let file = if target.is_dir() {
        let mut files: Vec<PathBuf> = match std::fs::read_dir(&target) {
            Ok(entries) => entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file() && !is_hidden(p))
                .collect(),
            Err(_) => return text(500, "unreadable fixture directory"),
        };
        files.sort();
        match files.get((index - 1).min(files.len().saturating_sub(1))) {
            Some(f) => f.clone(),
            None => return text(404, "empty fixture directory"),
        }
    } else {
        target
    };
    let Ok(body) = std::fs::read(&file) else {
        return text(500, "unreadable fixture");
    };

    let (fault, fault_at) = parse_query(query);
    let fault = fault.filter(|_| fault_at.is_none_or(|at| at == index));
    let body = match fault {
        None => body,
        Some(Fault::Error) => return text(500, "injected fault"),
        Some(Fault::Malformed) => {
            let cut = body.len() / 2;
            body[..cut].to_vec()
        }
        Some(Fault::Drop(field)) => match serde_json::from_slice::<Value>(&body) {
            Ok(mut value) => {
                drop_field(&mut value, &field);
                serde_json::to_vec(&value).unwrap_or(body)
            }
            Err(_) => body,
        },
    };

    let content_type = match file.extension().and_then(|e| e.to_str()) {
        Some("json") => "application/json",
        Some("csv") => "text/csv; charset=utf-8",
        _ => "text/plain; charset=utf-8",
    };
    Response::from_data(body).with_header(header("Content-Type", content_type))
}

/// Map a request path under `root`, refusing anything that escapes it.
fn resolve(root: &Path, path: &str) -> Option<PathBuf> {
    let rel = Path::new(path.trim_start_matches('/'));
    if rel
        .components()
        .any(|c| !matches!(c, Component::Normal(_)))
    {
        return None;
    }
    let target = root.join(rel);
    target.exists().then_some(target)
}

fn is_hidden(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with('.'))
}

fn parse_query(query: &str) -> (Option<Fault>, Option<usize>) {
    let mut fault = None;
    let mut at = None;
    for (key, value) in url::form_urlencoded::parse(query.as_bytes()) {
        match key.as_ref() {
            "fault" => {
                fault = match value.as_ref() {
                    "malformed" => Some(Fault::Malformed),
                    "error" => Some(Fault::Error),
                    v => v.strip_prefix("drop:").map(|f| Fault::Drop(f.to_string())),
                }
            }
            "fault_at" => at = value.parse().ok(),
            _ => {}
        }
    }
    (fault, at)
}

fn drop_field(value: &mut Value, field: &str) {
    match value {
        Value::Object(map) => {
            map.remove(field);
            map.values_mut().for_each(|v| drop_field(v, field));
        }
        Value::Array(items) => items.iter_mut().for_each(|v| drop_field(v, field)),
        _ => {}
    }
}

fn header(name: &str, value: &str) -> Header {
    Header::from_bytes(name.as_bytes(), value.as_bytes()).expect("static header is valid")
}

fn text(status: u16, body: &str) -> Response<io::Cursor<Vec<u8>>> {
    Response::from_string(body)
        .with_status_code(status)
        .with_header(header("Content-Type", "text/plain; charset=utf-8"))
}
