use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::carlitz::{mat_identity, next_exp_coeff, next_log_coeff, RatMatrix};
use crate::ff::Field;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    Exp,
    Log,
}

type Key = (u64, u32, u32, Vec<u64>, usize, Kind);

static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<RatMatrix>>>>> = OnceLock::new();

/// The first `count` exp or log coefficient matrices of C^⊗n, memoized per
/// field and n.
pub(crate) fn coefficients(field: &Field, n: usize, kind: Kind, count: usize) -> Arc<Vec<RatMatrix>> {
    let key = (field.p(), field.e(), field.m(), field.modulus().to_vec(), n, kind);
    let cache = CACHE.get_or_init(Default::default);
    let have = cache.lock().expect("cache lock").get(&key).cloned();
    if let Some(v) = &have {
        if v.len() >= count {
            return v.clone();
        }
    }
    let mut mats: Vec<RatMatrix> = have.map(|v| v.as_ref().clone()).unwrap_or_else(|| vec![mat_identity(field, n)]);
    while mats.len() < count {
        let i = mats.len();
        let next = match kind {
            Kind::Exp => next_exp_coeff(field, &mats[i - 1], i),
            Kind::Log => next_log_coeff(field, &mats[i - 1], i),
        };
        mats.push(next);
    }
    let out = Arc::new(mats);
    let mut guard = cache.lock().expect("cache lock");
    let slot = guard.entry(key).or_insert_with(|| out.clone());
    if slot.len() < out.len() {
        *slot = out.clone();
    }
    out
}
