//! In-memory game sessions with idle expiry.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use untangle_core::game::GameState;
use uuid::Uuid;

pub const TTL_ENV: &str = "UNTANGLE_SESSION_TTL";
pub const DEFAULT_TTL: Duration = Duration::from_secs(3600);

pub struct Session {
    pub game: GameState,
    pub created: Instant,
    pub last_active: Instant,
}

/// Session handle; holding the lock makes the caller the session's single
/// writer.
pub type SessionHandle = Arc<Mutex<Session>>;

pub struct SessionRegistry {
    sessions: Mutex<HashMap<String, SessionHandle>>,
    ttl: Duration,
}

impl SessionRegistry {
    pub fn new(ttl: Duration) -> Self {
        SessionRegistry {
            sessions: Mutex::new(HashMap::new()),
            ttl,
        }
    }

    /// TTL in seconds from `UNTANGLE_SESSION_TTL`, else one hour.
    pub fn from_env() -> Self {
        let ttl = std::env::var(TTL_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map(Duration::from_secs)
            .unwrap_or(DEFAULT_TTL);
        SessionRegistry::new(ttl)
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn insert(&self, game: GameState) -> (String, SessionHandle) {
        let now = Instant::now();
        let handle = Arc::new(Mutex::new(Session {
            game,
            created: now,
            last_active: now,
        }));
        let mut map = self.sessions.lock().unwrap();
        let id = loop {
            let id = Uuid::new_v4().simple().to_string();
            if !map.contains_key(&id) {
                break id;
            }
        };
        map.insert(id.clone(), handle.clone());
        (id, handle)
    }

    /// Looks up a live session and refreshes its activity time.
    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        self.evict_expired();
        let handle = self.sessions.lock().unwrap().get(id).cloned()?;
        handle.lock().unwrap().last_active = Instant::now();
        Some(handle)
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn evict_expired(&self) -> usize {
        let now = Instant::now();
        let mut map = self.sessions.lock().unwrap();
        let before = map.len();
        map.retain(|_, s| match s.try_lock() {
            Ok(s) => now.duration_since(s.last_active) < self.ttl,
            // busy sessions are in use, hence alive
            Err(_) => true,
        });
        before - map.len()
    }
}
