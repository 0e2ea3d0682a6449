//! Collapsing `d * k` automata into `k` by taking the product of each
//! consecutive group of `d`.

use rayon::prelude::*;
use thiserror::Error;

use crate::automata::{product, AutomataError, Dfa, IntersectionInstance, ProductOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmplifyError {
    #[error("target automaton count must be at least 1, got {0}")]
    InvalidTarget(usize),
    #[error("group {group}: {source}")]
    Group {
        group: usize,
        #[source]
        source: AutomataError,
    },
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

#[derive(Debug, Clone)]
pub struct Amplified {
    pub instance: IntersectionInstance,
    /// Members per group, `ceil(count / k)`.
    pub group_size: usize,
    /// Universal automata appended before grouping.
    pub padding: usize,
}

/// Pads `instance` with one-state universal automata up to `d * k`
/// members, `d = ceil(len / k)`, then replaces each consecutive group of
/// `d` with its product. `cap` bounds each group product.
pub fn amplify(instance: &IntersectionInstance, k: usize, cap: u64) -> Result<Amplified, AmplifyError> {
    if k == 0 {
        return Err(AmplifyError::InvalidTarget(k));
    }
    let group_size = instance.len().div_ceil(k);
    let padding = group_size * k - instance.len();
    let mut members = instance.dfas().to_vec();
    members.extend((0..padding).map(|i| Dfa::universal(instance.alphabet().clone()).with_name(format!("pad{i}"))));

    let opts = ProductOptions {
        cap,
        prune_unreachable: false,
    };
    let dfas = members
        .par_chunks(group_size)
        .enumerate()
        .map(|(group, chunk)| {
            if chunk.len() == 1 {
                return Ok(chunk[0].clone());
            }
            let wrap = |source| AmplifyError::Group { group, source };
            let part = IntersectionInstance::new(chunk.to_vec()).map_err(wrap)?;
            product(&part, opts).map_err(wrap)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Amplified {
        instance: IntersectionInstance::new(dfas)?,
        group_size,
        padding,
    })
}
