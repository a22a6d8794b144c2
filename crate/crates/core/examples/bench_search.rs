use ekr_core::codes::LinearCode;
use ekr_core::search::{max_intersecting_family, SearchConfig};
use std::time::Instant;

fn main() {
    for (q, k, t) in [(4u32, 3usize, 1usize), (5, 2, 1), (5, 2, 2), (5, 3, 3)] {
        let code = LinearCode::ers(q, k).unwrap();
        let cfg = SearchConfig::default();
        let start = Instant::now();
        let r = max_intersecting_family(&code, t, &cfg).unwrap();
        println!(
            "hom_{k} q={q} t={t}: max={} nodes={} elapsed={:?}",
            r.max_size, r.node_count, start.elapsed()
        );
    }
}
