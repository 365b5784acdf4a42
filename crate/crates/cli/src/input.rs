//! Parsing of integer sets: a JSON array, or whitespace/newline separated
//! integers. The format is chosen from the first non-whitespace byte.

pub fn parse_set(text: &str) -> Result<Vec<u64>, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str::<Vec<u64>>(trimmed).map_err(|e| format!("invalid JSON array: {e}"));
    }
    trimmed
        .split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| format!("not a nonnegative integer: {tok:?}")))
        .collect()
}
