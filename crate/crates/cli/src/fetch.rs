//! Thin client for the YouTube Data API `commentThreads` endpoint.
//!
//! Items are written as raw provider JSON, one per line. Labels and POS
//! tags are added by annotators afterwards.

use std::sync::atomic::{AtomicUsize, Ordering};

use anyhow::{bail, Context, Result};
use serde_json::Value;

pub const ENDPOINT: &str = "https://www.googleapis.com/youtube/v3/commentThreads";

static REQUESTS: AtomicUsize = AtomicUsize::new(0);

/// Number of real network requests made by this process.
pub fn network_requests() -> usize {
    REQUESTS.load(Ordering::SeqCst)
}

pub trait HttpGet {
    /// GETs `url` with `query` parameters and returns the response body.
    fn get(&self, url: &str, query: &[(&str, &str)]) -> Result<String>;
}

/// Blocking HTTPS client.
pub struct UreqClient {
    agent: ureq::Agent,
}

impl Default for UreqClient {
    fn default() -> Self {
        UreqClient {
            agent: ureq::AgentBuilder::new()
                .timeout(std::time::Duration::from_secs(30))
                .build(),
        }
    }
}

impl HttpGet for UreqClient {
    fn get(&self, url: &str, query: &[(&str, &str)]) -> Result<String> {
        REQUESTS.fetch_add(1, Ordering::SeqCst);
        let mut req = self.agent.get(url);
        for (k, v) in query {
            req = req.query(k, v);
        }
        match req.call() {
            Ok(resp) => resp.into_string().context("reading response body"),
            Err(ureq::Error::Status(code, resp)) => {
                let body = resp.into_string().unwrap_or_default();
                let reason = serde_json::from_str::<Value>(&body)
                    .ok()
                    .and_then(|v| v["error"]["message"].as_str().map(str::to_string))
                    .unwrap_or(body);
                bail!("HTTP {code}: {}", reason.replace('\n', " "))
            }
            Err(e) => Err(e).context("request failed"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FetchRequest {
    pub video_id: String,
    pub api_key: String,
    /// Pages of up to 100 threads each.
    pub max_pages: usize,
}

/// Fetches comment threads page by page, following `nextPageToken`.
/// Returns one serialized JSON item per element.
pub fn fetch_comments(client: &dyn HttpGet, req: &FetchRequest) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    let mut token: Option<String> = None;
    for page in 0..req.max_pages {
        let mut query = vec![
            ("part", "snippet,replies"),
            ("videoId", req.video_id.as_str()),
            ("maxResults", "100"),
            ("textFormat", "plainText"),
            ("key", req.api_key.as_str()),
        ];
        if let Some(t) = &token {
            query.push(("pageToken", t.as_str()));
        }
        let body = client
            .get(ENDPOINT, &query)
            .with_context(|| format!("fetching page {}", page + 1))?;
        let v: Value = serde_json::from_str(&body)
            .with_context(|| format!("page {} is not JSON", page + 1))?;
        let Some(items) = v.get("items").and_then(Value::as_array) else {
            bail!("page {} has no `items` array", page + 1);
        };
        for item in items {
            lines.push(serde_json::to_string(item)?);
        }
        token = v
            .get("nextPageToken")
            .and_then(Value::as_str)
            .map(str::to_string);
        if token.is_none() {
            break;
        }
    }
    Ok(lines)
}
