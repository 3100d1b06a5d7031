use std::time::Instant;
use morita_core::cohomology::qz_boundary;
use morita_core::group::catalog;
use morita_core::linalg::dense::{rows_from_triplets, sparse_row_echelon};

fn main() {
    let g = catalog().by_key("16.C").unwrap().group.clone();
    let t = qz_boundary(&g, 3);
    println!("T3: {}x{} nnz={}", t.rows, t.cols, t.triplets.len());
    let rows = rows_from_triplets(t.rows, &t.triplets, 16);
    let t0 = Instant::now();
    let ech = sparse_row_echelon(rows, t.cols, 16);
    let nnz: usize = ech.iter().map(|r| r.len()).sum();
    println!("echelon: {} rows, nnz {} (avg {:.1}) in {:?}", ech.len(), nnz, nnz as f64 / ech.len() as f64, t0.elapsed());
}
