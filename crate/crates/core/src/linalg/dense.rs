//! Exact linear algebra over ℤ/N.
//!
//! Everything the cohomology engine needs reduces to two primitives built on
//! a Smith-style diagonalization over ℤ/N with only the column transforms
//! recorded: kernels of sparse integer matrices modulo N, and solving
//! `T x ≡ b (mod N)` (done through the kernel of the augmented matrix).
//! Entries stay in `[0, N)` throughout, so there is no coefficient growth.

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    egcd(a, b).0
}

/// Sparse rows in (column, value) form, kept sorted by column.
pub type SparseRow = Vec<(u32, i64)>;

/// r1 <- (a·r1 + b·r2) mod n, merging sorted rows.
fn row_combine(r1: &SparseRow, a: i64, r2: &SparseRow, b: i64, n: i64) -> SparseRow {
    let mut out = Vec::with_capacity(r1.len() + r2.len());
    let (mut i, mut j) = (0, 0);
    while i < r1.len() || j < r2.len() {
        let (col, val) = if j >= r2.len() || (i < r1.len() && r1[i].0 < r2[j].0) {
            let v = (col_val(r1, i).1 * a).rem_euclid(n);
            let c = r1[i].0;
            i += 1;
            (c, v)
        } else if i >= r1.len() || r2[j].0 < r1[i].0 {
            let v = (col_val(r2, j).1 * b).rem_euclid(n);
            let c = r2[j].0;
            j += 1;
            (c, v)
        } else {
            let v = (r1[i].1 * a + r2[j].1 * b).rem_euclid(n);
            let c = r1[i].0;
            i += 1;
            j += 1;
            (c, v)
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    out
}

fn col_val(r: &SparseRow, i: usize) -> (u32, i64) {
    r[i]
}

/// Row-echelon reduction over ℤ/N using row operations only (which leave the
/// kernel unchanged). Returns the nonzero echelon rows; at most one pivot per
/// column survives.
pub fn sparse_row_echelon(rows: Vec<SparseRow>, cols: usize, n: i64) -> Vec<SparseRow> {
    if n == 1 {
        return Vec::new();
    }
    let mut buckets: Vec<Vec<SparseRow>> = (0..=cols).map(|_| Vec::new()).collect();
    for mut r in rows {
        r.retain(|&(_, v)| v.rem_euclid(n) != 0);
        for e in r.iter_mut() {
            e.1 = e.1.rem_euclid(n);
        }
        if !r.is_empty() {
            let lead = r[0].0 as usize;
            buckets[lead].push(r);
        }
    }
    let mut echelon: Vec<SparseRow> = Vec::new();
    for c in 0..cols {
        let mut pivot: Option<SparseRow> = None;
        while let Some(row) = buckets[c].pop() {
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let pv = p[0].1;
                    let rv = row[0].1;
                    let (new_p, reduced) = if rv % pv == 0 {
                        let r2 = row_combine(&row, 1, &p, -(rv / pv), n);
                        (p, r2)
                    } else {
                        let (g, x, y) = egcd(pv, rv);
                        let np = row_combine(&p, x, &row, y, n);
                        let nr = row_combine(&row, pv / g, &p, -(rv / g), n);
                        debug_assert!(np.first().map(|e| e.0 as usize) == Some(c));
                        (np, nr)
                    };
                    pivot = Some(new_p);
                    if let Some(&(lead, _)) = reduced.first() {
                        buckets[lead as usize].push(reduced);
                    }
                }
            }
        }
        if let Some(p) = pivot {
            echelon.push(p);
        }
    }
    echelon
}

/// Result of diagonalizing a matrix over ℤ/N with recorded column
/// transforms: `U · A · V = diag`, kernel(A) = V · kernel(diag).
pub struct SmithMod {
    pub n: i64,
    pub cols: usize,
    /// Per input column: gcd(diagonal entry, N); columns past the rank get N
    /// for a zero diagonal. Order of the kernel generator at column i is
    /// exactly this value.
    pub col_order: Vec<i64>,
    v: Vec<i64>,
    vinv: Vec<i64>,
}

impl SmithMod {
    /// Kernel generators as (vector mod n, order), skipping trivial ones.
    pub fn kernel_generators(&self) -> Vec<(Vec<i64>, i64)> {
        let mut out = Vec::new();
        for i in 0..self.cols {
            let g = self.col_order[i];
            if g == 1 {
                continue;
            }
            let mult = self.n / g;
            let gen: Vec<i64> = (0..self.cols)
                .map(|r| (self.v[r * self.cols + i] * mult).rem_euclid(self.n))
                .collect();
            out.push((gen, g));
        }
        out
    }

    /// Indices of columns contributing nontrivial kernel generators.
    pub fn kernel_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&i| self.col_order[i] != 1).collect()
    }

    /// Express a kernel element in generator coordinates: x = Σ c_i gen_i
    /// with c_i modulo the generator order. Returns None when x is not in
    /// the kernel.
    pub fn kernel_coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        debug_assert_eq!(x.len(), self.cols);
        let mut coords = Vec::new();
        for i in 0..self.cols {
            let mut acc: i64 = 0;
            for c in 0..self.cols {
                acc = (acc + self.vinv[i * self.cols + c] * x[c].rem_euclid(self.n))
                    .rem_euclid(self.n);
            }
            let g = self.col_order[i];
            if g == 1 {
                if acc != 0 {
                    return None;
                }
            } else {
                let mult = self.n / g;
                if acc % mult != 0 {
                    return None;
                }
                coords.push((acc / mult).rem_euclid(g));
            }
        }
        Some(coords)
    }
}

/// Diagonalize `rows` (sparse, over ℤ/N on `cols` columns) recording column
/// transforms. Row operations are applied without recording.
pub fn smith_mod(rows: Vec<SparseRow>, cols: usize, n: i64) -> SmithMod {
    if n == 1 {
        return SmithMod {
            n,
            cols,
            col_order: vec![1; cols],
            v: identity(cols),
            vinv: identity(cols),
        };
    }
    // Sparse pre-pass, then densify.
    let echelon = sparse_row_echelon(rows, cols, n);
    let r = echelon.len();
    let mut a = vec![0i64; r * cols];
    for (i, row) in echelon.iter().enumerate() {
        for &(c, v) in row {
            a[i * cols + c as usize] = v;
        }
    }
    let mut v = identity(cols);
    let mut vinv = identity(cols);
    let mut diag = vec![0i64; cols];
    let lim = r.min(cols);
    let mut t = 0usize;
    while t < lim {
        // Pivot with minimal gcd with n, then position order.
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..r {
            for j in t..cols {
                let val = a[i * cols + j];
                if val != 0 {
                    let g = gcd(val, n);
                    if best.map_or(true, |(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                        if g == 1 {
                            break;
                        }
                    }
                }
            }
            if matches!(best, Some((1, _, _))) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        swap_rows(&mut a, cols, t, pi);
        if pj != t {
            swap_cols(&mut a, r, cols, t, pj);
            swap_cols(&mut v, cols, cols, t, pj);
            swap_rows(&mut vinv, cols, t, pj);
        }
        loop {
            // Clear column t below the pivot with row operations.
            for i in t + 1..r {
                let b = a[i * cols + t];
                if b == 0 {
                    continue;
                }
                let p = a[t * cols + t];
                if b % p == 0 {
                    let q = b / p;
                    for j in t..cols {
                        a[i * cols + j] = (a[i * cols + j] - q * a[t * cols + j]).rem_euclid(n);
                    }
                } else {
                    let (g, x, y) = egcd(p, b);
                    let (c1, c2) = (p / g, b / g);
                    for j in t..cols {
                        let pt = a[t * cols + j];
                        let it = a[i * cols + j];
                        a[t * cols + j] = (x * pt + y * it).rem_euclid(n);
                        a[i * cols + j] = (c1 * it - c2 * pt).rem_euclid(n);
                    }
                }
            }
            // Clear row t to the right with column operations (recorded).
            let mut row_clear = true;
            for j in t + 1..cols {
                let b = a[t * cols + j];
                if b == 0 {
                    continue;
                }
                let p = a[t * cols + t];
                if b % p == 0 {
                    let q = b / p;
                    col_axpy(&mut a, r, cols, j, t, -q, n);
                    col_axpy(&mut v, cols, cols, j, t, -q, n);
                    row_axpy(&mut vinv, cols, t, j, q, n);
                } else {
                    let (g, x, y) = egcd(p, b);
                    let (c1, c2) = (p / g, b / g);
                    col_2x2(&mut a, r, cols, t, j, x, y, -c2, c1, n);
                    col_2x2(&mut v, cols, cols, t, j, x, y, -c2, c1, n);
                    // Inverse block [[c1, c2·?]]: E = [[x, -c2],[y, c1]],
                    // E^{-1} = [[c1, c2],[-y, x]] applied to rows of vinv.
                    row_2x2(&mut vinv, cols, t, j, c1, c2, -y, x, n);
                    row_clear = false;
                }
            }
            // Column ops may have reintroduced entries below the pivot.
            let col_dirty = (t + 1..r).any(|i| a[i * cols + t] != 0);
            if !col_dirty && row_clear {
                break;
            }
        }
        diag[t] = a[t * cols + t];
        t += 1;
    }
    let col_order = (0..cols)
        .map(|i| if diag[i] == 0 { n } else { gcd(diag[i], n) })
        .collect();
    SmithMod {
        n,
        cols,
        col_order,
        v,
        vinv,
    }
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn swap_rows(a: &mut [i64], cols: usize, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..cols {
        a.swap(r1 * cols + j, r2 * cols + j);
    }
}

fn swap_cols(a: &mut [i64], rows: usize, cols: usize, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..rows {
        a.swap(i * cols + c1, i * cols + c2);
    }
}

/// col_j += q · col_t
fn col_axpy(a: &mut [i64], rows: usize, cols: usize, j: usize, t: usize, q: i64, n: i64) {
    for i in 0..rows {
        a[i * cols + j] = (a[i * cols + j] + q * a[i * cols + t]).rem_euclid(n);
    }
}

/// row_t += q · row_j
fn row_axpy(a: &mut [i64], cols: usize, t: usize, j: usize, q: i64, n: i64) {
    for c in 0..cols {
        a[t * cols + c] = (a[t * cols + c] + q * a[j * cols + c]).rem_euclid(n);
    }
}

/// Columns (t, j) <- (x·t + y·j, u·t + w·j)
fn col_2x2(
    a: &mut [i64],
    rows: usize,
    cols: usize,
    t: usize,
    j: usize,
    x: i64,
    y: i64,
    u: i64,
    w: i64,
    n: i64,
) {
    for i in 0..rows {
        let vt = a[i * cols + t];
        let vj = a[i * cols + j];
        a[i * cols + t] = (x * vt + y * vj).rem_euclid(n);
        a[i * cols + j] = (u * vt + w * vj).rem_euclid(n);
    }
}

/// Rows (t, j) <- (x·t + y·j, u·t + w·j)
fn row_2x2(a: &mut [i64], cols: usize, t: usize, j: usize, x: i64, y: i64, u: i64, w: i64, n: i64) {
    for c in 0..cols {
        let vt = a[t * cols + c];
        let vj = a[j * cols + c];
        a[t * cols + c] = (x * vt + y * vj).rem_euclid(n);
        a[j * cols + c] = (u * vt + w * vj).rem_euclid(n);
    }
}

/// Solve T x ≡ b (mod n) through the kernel of [T | -b]. Returns the
/// deterministic witness derived from the kernel generator combination with
/// unit last coordinate, or None when no solution exists.
pub fn solve_mod(rows: &[SparseRow], cols: usize, b: &[i64], n: i64) -> Option<Vec<i64>> {
    if n == 1 || b.iter().all(|&v| v.rem_euclid(n) == 0) {
        return Some(vec![0; cols]);
    }
    let mut aug: Vec<SparseRow> = rows.to_vec();
    // Rows of the augmented matrix indexed like T's rows; add -b column.
    for (i, row) in aug.iter_mut().enumerate() {
        let bv = (-b[i]).rem_euclid(n);
        if bv != 0 {
            row.push((cols as u32, bv));
        }
    }
    let sm = smith_mod(aug, cols + 1, n);
    // Combine kernel generators to make the last coordinate 1.
    let mut acc: Option<(i64, Vec<i64>)> = None;
    for (gen, _) in sm.kernel_generators() {
        let t = gen[cols];
        if t == 0 {
            continue;
        }
        acc = Some(match acc {
            None => (gcd(t, n), {
                let (g, x, _) = egcd_mod_pair(t, n);
                debug_assert_eq!(g, gcd(t, n));
                scale(&gen, x, n)
            }),
            Some((g0, v0)) => {
                let (g, x, y) = egcd(g0, t);
                let mut v = vec![0i64; cols + 1];
                for i in 0..=cols {
                    v[i] = (x * v0[i] * 1 + y * gen[i]).rem_euclid(n);
                }
                (gcd(g, n), v)
            }
        });
    }
    let (g, v) = acc?;
    if gcd(g, n) != 1 {
        return None;
    }
    // v has last coordinate with gcd(·, n) = 1 after accumulation; scale so
    // it becomes exactly 1.
    let t = v[cols];
    let inv = mod_inverse(t, n)?;
    let x: Vec<i64> = (0..cols).map(|i| (v[i] * inv).rem_euclid(n)).collect();
    debug_assert_eq!((v[cols] * inv).rem_euclid(n), 1);
    Some(x)
}

fn egcd_mod_pair(t: i64, n: i64) -> (i64, i64, i64) {
    egcd(t, n)
}

fn scale(v: &[i64], s: i64, n: i64) -> Vec<i64> {
    v.iter().map(|&x| (x * s).rem_euclid(n)).collect()
}

pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (g, x, _) = egcd(a.rem_euclid(n), n);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(n))
    }
}

/// Dense triplet-to-sparse-row conversion helper.
pub fn rows_from_triplets(rows: usize, triplets: &[(u32, u32, i64)], n: i64) -> Vec<SparseRow> {
    let mut out: Vec<SparseRow> = vec![Vec::new(); rows];
    for &(r, c, v) in triplets {
        out[r as usize].push((c, v));
    }
    for row in out.iter_mut() {
        row.sort_unstable_by_key(|e| e.0);
        // Merge duplicate columns.
        let mut merged: SparseRow = Vec::with_capacity(row.len());
        for &(c, v) in row.iter() {
            if let Some(last) = merged.last_mut() {
                if last.0 == c {
                    last.1 += v;
                    continue;
                }
            }
            merged.push((c, v));
        }
        merged.retain_mut(|e| {
            e.1 = e.1.rem_euclid(n);
            e.1 != 0
        });
        *row = merged;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_to_rows(m: &[&[i64]], n: i64) -> Vec<SparseRow> {
        m.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, &v)| {
                        let v = v.rem_euclid(n);
                        (v != 0).then_some((c as u32, v))
                    })
                    .collect()
            })
            .collect()
    }

    fn apply(rows: &[SparseRow], nrows: usize, x: &[i64], n: i64) -> Vec<i64> {
        let mut out = vec![0i64; nrows];
        for (i, row) in rows.iter().enumerate() {
            for &(c, v) in row {
                out[i] = (out[i] + v * x[c as usize]).rem_euclid(n);
            }
        }
        out
    }

    #[test]
    fn kernel_of_diag_matrix_mod_8() {
        // T = diag(2, 4): kernel mod 8 generated by 4·e0 (order 2) and
        // 2·e1 (order 4).
        let rows = dense_to_rows(&[&[2, 0], &[0, 4]], 8);
        let sm = smith_mod(rows.clone(), 2, 8);
        let gens = sm.kernel_generators();
        let total: i64 = gens.iter().map(|(_, o)| o).product();
        assert_eq!(total, 8);
        for (g, _) in &gens {
            assert!(apply(&rows, 2, g, 8).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn kernel_coordinates_round_trip() {
        let rows = dense_to_rows(&[&[2, 6, 1], &[0, 4, 2]], 8);
        let sm = smith_mod(rows.clone(), 3, 8);
        let gens = sm.kernel_generators();
        for (g, _) in &gens {
            assert!(apply(&rows, 2, g, 8).iter().all(|&v| v == 0), "{g:?}");
            let coords = sm.kernel_coordinates(g).expect("generator is in kernel");
            // Rebuild from coordinates.
            let mut rebuilt = vec![0i64; 3];
            for (ci, (gen, _)) in coords.iter().zip(gens.iter()) {
                for k in 0..3 {
                    rebuilt[k] = (rebuilt[k] + ci * gen[k]).rem_euclid(8);
                }
            }
            assert_eq!(&rebuilt, g);
        }
    }

    #[test]
    fn solve_mod_finds_witness_and_rejects() {
        let rows = dense_to_rows(&[&[2, 0], &[0, 2]], 4);
        // 2x = 2 solvable mod 4.
        let x = solve_mod(&rows, 2, &[2, 0], 4).expect("solvable");
        assert_eq!(apply(&rows, 2, &x, 4), vec![2, 0]);
        // 2x = 1 not solvable mod 4.
        assert!(solve_mod(&rows, 2, &[1, 0], 4).is_none());
    }

    #[test]
    fn randomized_kernel_members_annihilate() {
        // Deterministic pseudo-random matrices over Z/12.
        let mut state: u64 = 42;
        let mut rng = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 12) as i64
        };
        for _ in 0..50 {
            let rows_n = 5;
            let cols = 4;
            let dense: Vec<Vec<i64>> = (0..rows_n)
                .map(|_| (0..cols).map(|_| rng()).collect())
                .collect();
            let rows: Vec<SparseRow> = dense
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter_map(|(c, &v)| (v != 0).then_some((c as u32, v)))
                        .collect()
                })
                .collect();
            let sm = smith_mod(rows.clone(), cols, 12);
            let mut count = 1i64;
            for (g, o) in sm.kernel_generators() {
                count *= o;
                assert!(apply(&rows, rows_n, &g, 12).iter().all(|&v| v == 0));
            }
            // Exhaustive kernel count must match the generator orders.
            let mut brute = 0i64;
            let mut x = vec![0i64; cols];
            loop {
                if apply(&rows, rows_n, &x, 12).iter().all(|&v| v == 0) {
                    brute += 1;
                }
                let mut k = 0;
                loop {
                    if k == cols {
                        break;
                    }
                    x[k] += 1;
                    if x[k] < 12 {
                        break;
                    }
                    x[k] = 0;
                    k += 1;
                }
                if k == cols {
                    break;
                }
            }
            assert_eq!(brute, count, "kernel size mismatch");
        }
    }
}
