//! In-memory design sessions with immutable revisions.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use lk_core::document::LkmDocument;
use lk_core::LabeledMesh;
use lru::LruCache;

use crate::error::ApiError;

/// One mesh being edited. Revision 0 is the mesh as loaded; every edit
/// appends a new revision, and old revisions stay readable.
pub struct Session {
    pub id: u64,
    revisions: RwLock<Vec<Arc<LabeledMesh>>>,
}

impl Session {
    fn new(id: u64, base: LabeledMesh) -> Self {
        Session { id, revisions: RwLock::new(vec![Arc::new(base)]) }
    }

    pub fn latest(&self) -> u64 {
        self.revisions.read().expect("revision lock").len() as u64 - 1
    }

    /// The mesh at `rev`, or at the latest revision.
    pub fn at(&self, rev: Option<u64>) -> Result<(u64, Arc<LabeledMesh>), ApiError> {
        let revs = self.revisions.read().expect("revision lock");
        let r = rev.unwrap_or(revs.len() as u64 - 1);
        revs.get(r as usize)
            .map(|m| (r, Arc::clone(m)))
            .ok_or_else(|| ApiError::not_found(format!("session {} has no revision {r}", self.id)))
    }

    /// Apply `edit` to the latest revision and publish the result. With
    /// `expected`, the edit only goes through if the latest revision is still
    /// the one the client saw.
    pub fn edit<F>(&self, expected: Option<u64>, edit: F) -> Result<(u64, Arc<LabeledMesh>), ApiError>
    where
        F: FnOnce(&LabeledMesh) -> Result<LabeledMesh, ApiError>,
    {
        let mut revs = self.revisions.write().expect("revision lock");
        let latest = revs.len() as u64 - 1;
        if let Some(r) = expected {
            if r != latest {
                return Err(ApiError::conflict(format!("revision {r} is stale; latest is {latest}")));
            }
        }
        let next = Arc::new(edit(&revs[latest as usize])?);
        revs.push(Arc::clone(&next));
        Ok((latest + 1, next))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct GeometryKey {
    pub session: u64,
    pub revision: u64,
    pub inset: u64,
    pub radius: u64,
}

/// Shared service state.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    sessions: RwLock<BTreeMap<u64, Arc<Session>>>,
    next_id: AtomicU64,
    save_dir: Option<PathBuf>,
    geometry: Mutex<LruCache<GeometryKey, Arc<String>>>,
}

impl AppState {
    pub fn new(save_dir: Option<PathBuf>, cache_entries: usize) -> Self {
        let cap = std::num::NonZeroUsize::new(cache_entries.max(1)).expect("nonzero");
        AppState {
            inner: Arc::new(Inner {
                sessions: RwLock::new(BTreeMap::new()),
                next_id: AtomicU64::new(1),
                save_dir,
                geometry: Mutex::new(LruCache::new(cap)),
            }),
        }
    }

    pub fn create(&self, mesh: LabeledMesh) -> Arc<Session> {
        let id = self.inner.next_id.fetch_add(1, Ordering::Relaxed);
        let session = Arc::new(Session::new(id, mesh));
        self.snapshot(&session, 0);
        self.inner.sessions.write().expect("session lock").insert(id, Arc::clone(&session));
        session
    }

    pub fn session(&self, id: u64) -> Result<Arc<Session>, ApiError> {
        self.inner
            .sessions
            .read()
            .expect("session lock")
            .get(&id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no session {id}")))
    }

    /// Write revision `rev` of `session` to the save directory, if any.
    pub fn snapshot(&self, session: &Session, rev: u64) {
        let Some(dir) = &self.inner.save_dir else { return };
        let Ok((_, mesh)) = session.at(Some(rev)) else { return };
        let path = dir.join(format!("session-{}-rev-{rev}.lkm", session.id));
        if let Err(e) = LkmDocument::from_mesh(&mesh).write(&path) {
            log::warn!("could not save {}: {e}", path.display());
        }
    }

    pub(crate) fn cached_geometry(&self, key: &GeometryKey) -> Option<Arc<String>> {
        self.inner.geometry.lock().expect("cache lock").get(key).cloned()
    }

    pub(crate) fn store_geometry(&self, key: GeometryKey, body: Arc<String>) {
        self.inner.geometry.lock().expect("cache lock").put(key, body);
    }
}
