//! Optional log of every certified sequent, used by the soundness checks in
//! the test suites. Off unless [`enable`] is called.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use crate::logic::Sequent;

static ENABLED: AtomicBool = AtomicBool::new(false);
static LOG: Mutex<Vec<Sequent>> = Mutex::new(Vec::new());

pub fn enable() {
    ENABLED.store(true, Ordering::SeqCst);
}

pub fn disable() {
    ENABLED.store(false, Ordering::SeqCst);
}

/// Take everything recorded so far.
pub fn drain() -> Vec<Sequent> {
    std::mem::take(&mut *LOG.lock().unwrap_or_else(|e| e.into_inner()))
}

pub(super) fn record(s: &Sequent) {
    if ENABLED.load(Ordering::Relaxed) {
        LOG.lock()
            .unwrap_or_else(|e| e.into_inner())
            .push(s.clone());
    }
}
