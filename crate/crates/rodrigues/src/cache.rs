//! Reduced kernels shared between commands, keyed by the family's canonical
//! JSON form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rodrigues_core::kernel::PolyFamily;
use rodrigues_core::{FamilySpec, Poly, Result, SymCoeff};

use crate::json::family_to_json;

#[derive(Default)]
pub struct KernelCache {
    entries: Mutex<HashMap<String, Arc<Vec<Poly<SymCoeff>>>>>,
}

impl KernelCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `q_0 … q_{n_max}`, extending a cached run when one exists.
    pub fn kernels(&self, family: &FamilySpec, n_max: usize) -> Result<Arc<Vec<Poly<SymCoeff>>>> {
        let key = family_to_json(family).to_string();
        if let Some(hit) = self.entries.lock().expect("cache lock").get(&key) {
            if hit.len() > n_max {
                return Ok(hit.clone());
            }
        }
        let pf = PolyFamily::from_spec(family)?;
        let prefix = self.entries.lock().expect("cache lock").get(&key).cloned();
        let mut ks = match prefix {
            Some(p) => p.as_ref().clone(),
            None => vec![pf.psi.clone()],
        };
        while ks.len() <= n_max {
            let next = pf.ladder_step(ks.last().expect("nonempty"));
            ks.push(next);
        }
        let ks = Arc::new(ks);
        self.entries.lock().expect("cache lock").insert(key, ks.clone());
        Ok(ks)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
