use crate::error::{Error, Result};

use crate::numtheory::lcm;

use super::element::{CycloElement, Trig};

/// Dense row-major matrix over one cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycloElement>,
}

impl CycloMatrix {
    /// Entries are lifted to `conductor`, which must be a multiple of each
    /// entry's own conductor.
    pub fn new(rows: usize, cols: usize, conductor: u32, entries: Vec<CycloElement>) -> Result<Self> {
        if (rows == 0) != (cols == 0) || entries.len() != rows * cols {
            return Err(Error::Shape(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        let entries = entries.into_iter().map(|e| e.lift_conductor(conductor)).collect::<Result<Vec<_>>>()?;
        Ok(CycloMatrix { rows, cols, conductor, entries })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CycloElement,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(rows, cols, conductor, entries)
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::from_fn(n, n, conductor, |r, c| {
            if r == c {
                CycloElement::one(conductor)
            } else {
                CycloElement::zero(conductor)
            }
        })
        .expect("identity shape is valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[CycloElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn to_rows(&self) -> Vec<Vec<CycloElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<CycloElement> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(CycloElement::one(self.conductor));
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev_inv: Option<CycloElement> = None;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(CycloElement::zero(self.conductor));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            bareiss_step(&mut m, k, n, prev_inv.as_ref());
            if k + 1 < n {
                prev_inv = Some(m[k][k].invert()?);
            }
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

/// `[trig(a_l · j · π / n)]` for `l, j = 1..=⌊(n-1)/2⌋`, with nodes
/// `a_l = 2l-1` or, when `even_nodes`, `a_l = 2l`.
pub fn node_matrix(kind: Trig, even_nodes: bool, n: u32) -> Result<CycloMatrix> {
    if n < 2 {
        return Err(Error::Shape(format!("node matrix needs n >= 2, got {n}")));
    }
    let size = ((n - 1) / 2) as usize;
    let conductor = lcm(2 * n, 4);
    CycloMatrix::from_fn(size, size, conductor, |r, c| {
        let l = r as i64 + 1;
        let a = if even_nodes { 2 * l } else { 2 * l - 1 };
        CycloElement::trig_in(kind, a * (c as i64 + 1), n, conductor)
    })
}

/// One Bareiss elimination step below pivot `(k, k)` over columns `k+1..width`.
fn bareiss_step(m: &mut [Vec<CycloElement>], k: usize, width: usize, prev_inv: Option<&CycloElement>) {
    let (top, bottom) = m.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in bottom.iter_mut() {
        let factor = row[k].clone();
        for j in k + 1..width {
            let mut v = &(pivot * &row[j]) - &(&factor * &pivot_row[j]);
            if let Some(inv) = prev_inv {
                v = &v * inv;
            }
            row[j] = v;
        }
        row[k] = CycloElement::zero(pivot.conductor());
    }
}

/// Solve `A x = b` exactly for square or overdetermined (`rows ≥ cols`) `A`.
///
/// Row pivoting picks the first row with a nonzero entry in each column, so
/// the pivot rows form a maximal nonsingular square subsystem. Every other
/// row is then checked for an exactly zero residual.
pub fn solve_linear_system(a: &CycloMatrix, b: &[CycloElement]) -> Result<Vec<CycloElement>> {
    let (rows, cols) = (a.rows(), a.cols());
    if b.len() != rows {
        return Err(Error::Shape(format!("{rows} rows but {} right-hand sides", b.len())));
    }
    if rows < cols {
        return Err(Error::Shape(format!("underdetermined {rows}x{cols} system")));
    }
    let n = a.conductor();
    let mut m: Vec<Vec<CycloElement>> = (0..rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].lift_conductor(n)?);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..rows).collect();
    let width = cols + 1;
    let mut prev_inv: Option<CycloElement> = None;
    for k in 0..cols {
        let Some(p) = (k..rows).find(|&r| !m[r][k].is_zero()) else {
            return Err(Error::Singular { column: k });
        };
        m.swap(p, k);
        order.swap(p, k);
        bareiss_step(&mut m, k, width, prev_inv.as_ref());
        prev_inv = Some(m[k][k].invert()?);
    }
    if let Some(r) = (cols..rows).find(|&r| !m[r][cols].is_zero()) {
        return Err(Error::Inconsistent { row: order[r] });
    }
    let mut x: Vec<CycloElement> = vec![CycloElement::zero(n); cols];
    for k in (0..cols).rev() {
        let mut acc = m[k][cols].clone();
        for j in k + 1..cols {
            acc = &acc - &(&m[k][j] * &x[j]);
        }
        x[k] = &acc * &m[k][k].invert()?;
    }
    Ok(x)
}
