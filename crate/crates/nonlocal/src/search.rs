//! Classical search split across threads.

use std::ops::Range;
use std::thread;

use nonlocal_core::classical::{finish_report, merge, prepare_search, search_range, PartialSearch};
use nonlocal_core::{ClassicalValueReport, Game, Result};

/// Contiguous chunks per thread, for load balance.
const CHUNKS_PER_THREAD: u64 = 4;

/// Exhaustive classical value. The report does not depend on `threads`.
pub fn classical_value_parallel(g: &Game, threads: usize) -> Result<ClassicalValueReport> {
    let range = prepare_search(g)?;
    let threads = threads.max(1);
    let n = range.end;
    let chunks = (threads as u64 * CHUNKS_PER_THREAD).clamp(1, n.max(1));
    let bounds: Vec<Range<u64>> = (0..chunks)
        .map(|k| {
            let cut = |k: u64| ((n as u128 * k as u128) / chunks as u128) as u64;
            cut(k)..cut(k + 1)
        })
        .collect();
    let partials: Vec<Option<PartialSearch>> = if threads == 1 {
        bounds.iter().map(|r| search_range(g, r.clone())).collect()
    } else {
        let mut slots: Vec<Option<PartialSearch>> = vec![None; bounds.len()];
        thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let bounds = &bounds;
                    scope.spawn(move || {
                        (w..bounds.len())
                            .step_by(threads)
                            .map(|k| (k, search_range(g, bounds[k].clone())))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (k, p) in h.join().expect("search worker panicked") {
                    slots[k] = p;
                }
            }
        });
        slots
    };
    let merged = partials
        .into_iter()
        .flatten()
        .reduce(merge)
        .expect("nonempty strategy space");
    Ok(finish_report(g, merged))
}
