//! Integer lattice computations: column Hermite echelon for membership
//! tests, and Smith normal form with recorded row transforms for finite
//! presentations.
//!
//! The echelon reduction uses euclidean subtraction with smallest-lead
//! pivoting and checked i128 arithmetic; callers fall back to a modular
//! route if entries ever overflow (`Overflow`), which does not happen for
//! the bar matrices this crate produces at catalog sizes.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

type SparseCol = Vec<(u32, i128)>;

/// c1 <- c1 - q·c2, with overflow checking.
fn col_sub(c1: &SparseCol, c2: &SparseCol, q: i128) -> Result<SparseCol, Overflow> {
    let mut out = Vec::with_capacity(c1.len() + c2.len());
    let (mut i, mut j) = (0, 0);
    while i < c1.len() || j < c2.len() {
        let (row, val) = if j >= c2.len() || (i < c1.len() && c1[i].0 < c2[j].0) {
            let e = c1[i];
            i += 1;
            e
        } else if i >= c1.len() || c2[j].0 < c1[i].0 {
            let v = q.checked_mul(c2[j].1).ok_or(Overflow)?;
            let e = (c2[j].0, 0i128.checked_sub(v).ok_or(Overflow)?);
            j += 1;
            e
        } else {
            let v = q.checked_mul(c2[j].1).ok_or(Overflow)?;
            let e = (c1[i].0, c1[i].1.checked_sub(v).ok_or(Overflow)?);
            i += 1;
            j += 1;
            e
        };
        if val != 0 {
            out.push((row, val));
        }
    }
    Ok(out)
}

/// The column lattice of an integer matrix in column-echelon form; supports
/// membership tests (is a vector an integer combination of the columns?).
pub struct IntColumnLattice {
    rows: usize,
    /// (pivot row, column) sorted by pivot row.
    pivots: Vec<(usize, SparseCol)>,
}

pub fn column_lattice(
    rows: usize,
    cols: usize,
    triplets: &[(u32, u32, i64)],
) -> Result<IntColumnLattice, Overflow> {
    let mut columns: Vec<SparseCol> = vec![Vec::new(); cols];
    for &(r, c, v) in triplets {
        columns[c as usize].push((r, v as i128));
    }
    for col in columns.iter_mut() {
        col.sort_unstable_by_key(|e| e.0);
        let mut merged: SparseCol = Vec::with_capacity(col.len());
        for &(r, v) in col.iter() {
            if let Some(last) = merged.last_mut() {
                if last.0 == r {
                    last.1 += v;
                    continue;
                }
            }
            merged.push((r, v));
        }
        merged.retain(|e| e.1 != 0);
        *col = merged;
    }
    let mut buckets: Vec<Vec<SparseCol>> = (0..=rows).map(|_| Vec::new()).collect();
    for col in columns {
        if let Some(&(lead, _)) = col.first() {
            buckets[lead as usize].push(col);
        }
    }
    let mut pivots = Vec::new();
    for r in 0..rows {
        // Reduce all columns leading at row r against each other until one
        // remains, always subtracting multiples of the smallest lead.
        while buckets[r].len() > 1 {
            buckets[r].sort_by_key(|c| std::cmp::Reverse(c[0].1.abs()));
            let small = buckets[r].pop().expect("nonempty");
            let mut rest = std::mem::take(&mut buckets[r]);
            buckets[r].push(small.clone());
            for col in rest.drain(..) {
                let q = col[0].1 / small[0].1;
                let reduced = col_sub(&col, &small, q)?;
                if let Some(&(lead, _)) = reduced.first() {
                    buckets[lead as usize].push(reduced);
                }
            }
        }
        if let Some(mut p) = buckets[r].pop() {
            if p[0].1 < 0 {
                for e in p.iter_mut() {
                    e.1 = -e.1;
                }
            }
            pivots.push((r, p));
        }
    }
    Ok(IntColumnLattice { rows, pivots })
}

impl IntColumnLattice {
    pub fn contains(&self, z: &[i64]) -> Result<bool, Overflow> {
        debug_assert_eq!(z.len(), self.rows);
        let mut z: Vec<i128> = z.iter().map(|&v| v as i128).collect();
        for &(r, ref col) in &self.pivots {
            if z[r] == 0 {
                continue;
            }
            let pv = col[0].1;
            if z[r] % pv != 0 {
                return Ok(false);
            }
            let q = z[r] / pv;
            for &(row, v) in col {
                let prod = q.checked_mul(v).ok_or(Overflow)?;
                z[row as usize] = z[row as usize].checked_sub(prod).ok_or(Overflow)?;
            }
        }
        Ok(z.iter().all(|&v| v == 0))
    }

    /// Largest entry magnitude, for diagnostics.
    pub fn max_entry(&self) -> i128 {
        self.pivots
            .iter()
            .flat_map(|(_, c)| c.iter().map(|e| e.1.abs()))
            .max()
            .unwrap_or(0)
    }
}

/// Smith normal form of a dense integer matrix with the row transform
/// recorded: `U · A · W = diag(d)` with d₁ | d₂ | …; only U and U⁻¹ are kept.
pub struct SnfInt {
    pub rows: usize,
    pub diag: Vec<i128>,
    pub u: Vec<i128>,
    pub uinv: Vec<i128>,
}

pub fn snf_int(mut a: Vec<i128>, rows: usize, cols: usize) -> SnfInt {
    let mut u = vec![0i128; rows * rows];
    let mut uinv = vec![0i128; rows * rows];
    for i in 0..rows {
        u[i * rows + i] = 1;
        uinv[i * rows + i] = 1;
    }
    let lim = rows.min(cols);

    'outer: loop {
        let mut t = 0usize;
        while t < lim {
            // Smallest nonzero pivot in the remaining submatrix.
            let mut best: Option<(i128, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = a[i * cols + j].abs();
                    if v != 0 && best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            // Move pivot to (t, t).
            if pi != t {
                for j in 0..cols {
                    a.swap(t * cols + j, pi * cols + j);
                }
                for j in 0..rows {
                    u.swap(t * rows + j, pi * rows + j);
                    uinv.swap(j * rows + t, j * rows + pi);
                }
            }
            if pj != t {
                for i in 0..rows {
                    a.swap(i * cols + t, i * cols + pj);
                }
            }
            loop {
                for i in t + 1..rows {
                    let b = a[i * cols + t];
                    if b == 0 {
                        continue;
                    }
                    let p = a[t * cols + t];
                    if b % p == 0 {
                        let q = b / p;
                        for j in 0..cols {
                            a[i * cols + j] -= q * a[t * cols + j];
                        }
                        for j in 0..rows {
                            u[i * rows + j] -= q * u[t * rows + j];
                            let add = q * uinv[j * rows + i];
                            uinv[j * rows + t] += add;
                        }
                    } else {
                        let (g, x, y) = egcd(p, b);
                        let (c1, c2) = (p / g, b / g);
                        for j in 0..cols {
                            let vt = a[t * cols + j];
                            let vi = a[i * cols + j];
                            a[t * cols + j] = x * vt + y * vi;
                            a[i * cols + j] = c1 * vi - c2 * vt;
                        }
                        for j in 0..rows {
                            let vt = u[t * rows + j];
                            let vi = u[i * rows + j];
                            u[t * rows + j] = x * vt + y * vi;
                            u[i * rows + j] = c1 * vi - c2 * vt;
                        }
                        // E = [[x, y], [-c2, c1]] on rows (t,i);
                        // E^{-1} = [[c1, -y], [c2, x]] applied to columns.
                        for j in 0..rows {
                            let ct = uinv[j * rows + t];
                            let ci = uinv[j * rows + i];
                            uinv[j * rows + t] = c1 * ct + c2 * ci;
                            uinv[j * rows + i] = -y * ct + x * ci;
                        }
                    }
                }
                let mut row_clear = true;
                for j in t + 1..cols {
                    let b = a[t * cols + j];
                    if b == 0 {
                        continue;
                    }
                    let p = a[t * cols + t];
                    if b % p == 0 {
                        let q = b / p;
                        for i in 0..rows {
                            a[i * cols + j] -= q * a[i * cols + t];
                        }
                    } else {
                        let (g, x, y) = egcd(p, b);
                        let (c1, c2) = (p / g, b / g);
                        for i in 0..rows {
                            let vt = a[i * cols + t];
                            let vj = a[i * cols + j];
                            a[i * cols + t] = x * vt + y * vj;
                            a[i * cols + j] = c1 * vj - c2 * vt;
                        }
                        row_clear = false;
                    }
                }
                let col_dirty = (t + 1..rows).any(|i| a[i * cols + t] != 0);
                if !col_dirty && row_clear {
                    break;
                }
            }
            if a[t * cols + t] < 0 {
                for j in 0..cols {
                    a[t * cols + j] = -a[t * cols + j];
                }
                for j in 0..rows {
                    u[t * rows + j] = -u[t * rows + j];
                    uinv[j * rows + t] = -uinv[j * rows + t];
                }
            }
            t += 1;
        }
        // Enforce the divisibility chain d_i | d_j for i < j.
        for i in 0..lim {
            let di = a[i * cols + i];
            if di == 0 {
                continue;
            }
            for j in i + 1..lim {
                let dj = a[j * cols + j];
                if dj != 0 && dj % di != 0 {
                    // col_i += col_j introduces dj below the diagonal; rerun.
                    for r in 0..rows {
                        a[r * cols + i] += a[r * cols + j];
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    let diag = (0..lim).map(|i| a[i * cols + i]).collect();
    SnfInt {
        rows,
        diag,
        u,
        uinv,
    }
}
