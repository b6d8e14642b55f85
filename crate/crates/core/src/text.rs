//! Small helpers shared by the response parsers.

const THINK_OPEN: &str = "<think>";
const THINK_CLOSE: &str = "</think>";

/// Removes reasoning blocks from a model response.
///
/// Complete `<think>…</think>` spans are dropped. A dangling `</think>` (some
/// hosts strip the opening tag) drops everything before it, and a dangling
/// `<think>` drops everything after it.
pub fn strip_think_blocks(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    loop {
        match (rest.find(THINK_OPEN), rest.find(THINK_CLOSE)) {
            (Some(open), Some(close)) if open < close => {
                out.push_str(&rest[..open]);
                rest = &rest[close + THINK_CLOSE.len()..];
            }
            (_, Some(close)) => {
                out.clear();
                rest = &rest[close + THINK_CLOSE.len()..];
            }
            (Some(open), None) => {
                out.push_str(&rest[..open]);
                return out;
            }
            (None, None) => {
                out.push_str(rest);
                return out;
            }
        }
    }
}

/// Lowercase hex SHA-256 of `text`.
pub fn sha256_hex(text: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(text.as_bytes()))
}
