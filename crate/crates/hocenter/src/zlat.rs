//! Integer lattice algebra over column vectors.
//!
//! Cochain groups are presented as ⊕ Z/dᵢ and their homomorphisms as
//! integer matrices. Kernels, images, and subquotients then reduce to
//! lattice computations in Zⁿ: every subgroup of ⊕ Z/dᵢ is L/diag(d)Zⁿ
//! for a full-rank lattice L, and the structure of a quotient of two
//! such lattices is read off a Smith normal form.

/// Column-major integer matrix; `cols[j][i]` is the entry in row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: Vec<Vec<i128>>,
}

impl Mat {
    pub fn from_cols(rows: usize, cols: Vec<Vec<i128>>) -> Mat {
        debug_assert!(cols.iter().all(|c| c.len() == rows));
        Mat { rows, cols }
    }

    pub fn identity(n: usize) -> Mat {
        Mat {
            rows: n,
            cols: (0..n)
                .map(|j| (0..n).map(|i| if i == j { 1 } else { 0 }).collect())
                .collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols: vec![vec![0; rows]; cols] }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        debug_assert_eq!(self.n_cols(), rhs.rows);
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut out = vec![0i128; self.rows];
                for (j, &coef) in rc.iter().enumerate() {
                    if coef != 0 {
                        for i in 0..self.rows {
                            out[i] += coef * self.cols[j][i];
                        }
                    }
                }
                out
            })
            .collect();
        Mat { rows: self.rows, cols }
    }

    pub fn apply(&self, v: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.rows];
        for (j, &coef) in v.iter().enumerate() {
            if coef != 0 {
                for i in 0..self.rows {
                    out[i] += coef * self.cols[j][i];
                }
            }
        }
        out
    }

    fn col_sub(&mut self, j: usize, q: i128, p: usize) {
        for i in 0..self.rows {
            let s = self.cols[p][i];
            self.cols[j][i] -= q * s;
        }
    }

    /// Column echelon by unimodular column operations; pivot rows
    /// strictly increase column by column. Applies the same operations
    /// to `track` when given. Returns the rank.
    pub fn col_echelon(&mut self, mut track: Option<&mut Mat>) -> usize {
        let mut next = 0;
        for row in 0..self.rows {
            if next == self.n_cols() {
                break;
            }
            loop {
                // smallest nonzero entry in this row among columns next..
                let mut best: Option<usize> = None;
                for j in next..self.n_cols() {
                    if self.cols[j][row] != 0
                        && best.is_none_or(|b| self.cols[j][row].abs() < self.cols[b][row].abs())
                    {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { break };
                self.cols.swap(next, b);
                if let Some(t) = track.as_deref_mut() {
                    t.cols.swap(next, b);
                }
                let mut done = true;
                for j in next + 1..self.n_cols() {
                    if self.cols[j][row] != 0 {
                        let q = self.cols[j][row].div_euclid(self.cols[next][row]);
                        self.col_sub(j, q, next);
                        if let Some(t) = track.as_deref_mut() {
                            t.col_sub(j, q, next);
                        }
                        if self.cols[j][row] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if self.cols.get(next).is_some_and(|c| c[row] != 0) {
                if self.cols[next][row] < 0 {
                    for v in &mut self.cols[next] {
                        *v = -*v;
                    }
                    if let Some(t) = track.as_deref_mut() {
                        for v in &mut t.cols[next] {
                            *v = -*v;
                        }
                    }
                }
                // reduce pivot-row entries of earlier columns
                for j in 0..next {
                    let q = self.cols[j][row].div_euclid(self.cols[next][row]);
                    if q != 0 {
                        self.col_sub(j, q, next);
                        if let Some(t) = track.as_deref_mut() {
                            t.col_sub(j, q, next);
                        }
                    }
                }
                next += 1;
            }
        }
        next
    }
}

/// Hermite-style basis of the lattice spanned by the given columns
/// (zero columns dropped).
pub fn hnf_basis(rows: usize, gens: &[Vec<i128>]) -> Mat {
    let mut m = Mat::from_cols(rows, gens.to_vec());
    let rank = m.col_echelon(None);
    m.cols.truncate(rank);
    m
}

/// Express `v` in an echelon basis; `None` when `v` is outside the
/// lattice.
pub fn solve_in(basis: &Mat, v: &[i128]) -> Option<Vec<i128>> {
    let mut v = v.to_vec();
    let mut coefs = vec![0i128; basis.n_cols()];
    for j in 0..basis.n_cols() {
        let pivot_row = basis.cols[j].iter().position(|&x| x != 0)?;
        if v[..pivot_row].iter().any(|&x| x != 0) {
            return None;
        }
        let p = basis.cols[j][pivot_row];
        if v[pivot_row] % p != 0 {
            return None;
        }
        let c = v[pivot_row] / p;
        coefs[j] = c;
        for i in 0..basis.rows {
            v[i] -= c * basis.cols[j][i];
        }
    }
    if v.iter().all(|&x| x == 0) {
        Some(coefs)
    } else {
        None
    }
}

/// Basis of the integer kernel {x : Mx = 0}.
pub fn kernel_cols(m: &Mat) -> Vec<Vec<i128>> {
    let mut work = m.clone();
    let mut track = Mat::identity(m.n_cols());
    let rank = work.col_echelon(Some(&mut track));
    track.cols[rank..].to_vec()
}

/// Generators of {x : Mx ≡ 0 mod `moduli` rowwise}, as a sublattice of
/// Z^{n_cols}. The result always contains diag(moduli-of-source)
/// implicitly through its callers; here only the congruence is solved.
pub fn kernel_mod(m: &Mat, moduli: &[i128]) -> Vec<Vec<i128>> {
    debug_assert_eq!(m.rows, moduli.len());
    let n = m.n_cols();
    let mut aug = m.clone();
    for (i, &d) in moduli.iter().enumerate() {
        let mut col = vec![0i128; m.rows];
        col[i] = d;
        aug.cols.push(col);
    }
    kernel_cols(&aug)
        .into_iter()
        .map(|c| c[..n].to_vec())
        .collect()
}

/// Generators of the intersection of two lattices given by generators.
pub fn intersect(rows: usize, a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut aug = Mat::from_cols(rows, a.to_vec());
    for c in b {
        aug.cols.push(c.iter().map(|&x| -x).collect());
    }
    let am = Mat::from_cols(rows, a.to_vec());
    kernel_cols(&aug)
        .into_iter()
        .map(|k| am.apply(&k[..a.len()]))
        .collect()
}

/// Smith normal form diagonal of `m`, together with a matrix `pinv`
/// such that the columns of `pinv` (in the source coordinates of the
/// row space) realize the diagonal: m = pinv · D · (column transform).
pub fn snf_with_left(m: &Mat) -> (Vec<i128>, Mat) {
    let rows = m.rows;
    let cols = m.n_cols();
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.cols[j][i]).collect())
        .collect(); // row-major working copy
    let mut pinv = Mat::identity(rows);
    let t_max = rows.min(cols);
    let mut diag = Vec::new();
    for t in 0..t_max {
        'pivot: loop {
            // locate minimal nonzero entry in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.push(0);
                break 'pivot;
            };
            if bi != t {
                a.swap(t, bi);
                pinv.cols.swap(t, bi);
            }
            if bj != t {
                for row in &mut a {
                    row.swap(t, bj);
                }
            }
            // clear row t and column t
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    if q != 0 {
                        for j in t..cols {
                            let s = a[t][j];
                            a[i][j] -= q * s;
                        }
                        // row_i -= q row_t  =>  pinv col_t += q col_i
                        for r in 0..rows {
                            let s = pinv.cols[i][r];
                            pinv.cols[t][r] += q * s;
                        }
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    if q != 0 {
                        for row in a.iter_mut() {
                            let s = row[t];
                            row[j] -= q * s;
                        }
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot must divide every remaining entry
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % a[t][t] != 0 {
                        // fold that column into column t and restart
                        for row in a.iter_mut() {
                            let s = row[j];
                            row[t] += s;
                        }
                        continue 'pivot;
                    }
                }
            }
            if a[t][t] < 0 {
                for j in t..cols {
                    a[t][j] = -a[t][j];
                }
                for v in &mut pinv.cols[t] {
                    *v = -*v;
                }
            }
            diag.push(a[t][t]);
            break 'pivot;
        }
    }
    (diag, pinv)
}

/// Structure of `span(big) / span(small)` where both lattices have full
/// rank in Z^rows and small ⊆ big. Returns the nontrivial invariant
/// factors (ascending divisibility) with a representative generator of
/// `big` for each.
pub fn quotient_structure(
    rows: usize,
    big: &[Vec<i128>],
    small: &[Vec<i128>],
) -> crate::error::Result<(Vec<i128>, Vec<Vec<i128>>)> {
    let basis = hnf_basis(rows, big);
    if basis.n_cols() != rows {
        return Err(crate::error::Error::Internal(
            "quotient numerator lattice is not full rank".into(),
        ));
    }
    let mut x_cols = Vec::with_capacity(small.len());
    for g in small {
        match solve_in(&basis, g) {
            Some(c) => x_cols.push(c),
            None => {
                return Err(crate::error::Error::Internal(
                    "quotient denominator is not contained in the numerator".into(),
                ))
            }
        }
    }
    let x = Mat::from_cols(rows, x_cols);
    let (diag, pinv) = snf_with_left(&x);
    let adapted = basis.mul(&pinv);
    let mut invariants = Vec::new();
    let mut reps = Vec::new();
    for (i, &d) in diag.iter().enumerate() {
        if d == 0 {
            return Err(crate::error::Error::Internal(
                "quotient of full-rank lattices has an infinite factor".into(),
            ));
        }
        if d != 1 {
            invariants.push(d);
            reps.push(adapted.cols[i].clone());
        }
    }
    if diag.len() < rows {
        return Err(crate::error::Error::Internal(
            "quotient denominator lattice is not full rank".into(),
        ));
    }
    Ok((invariants, reps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_cols(d: &[i128]) -> Vec<Vec<i128>> {
        (0..d.len())
            .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
            .collect()
    }

    #[test]
    fn kernel_of_simple_maps() {
        // map Z^2 -> Z, (x,y) -> 2x + 4y
        let m = Mat::from_cols(1, vec![vec![2], vec![4]]);
        let k = kernel_cols(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(m.apply(&k[0]), vec![0]);
        assert_eq!(k[0][0].abs() * 1 + 0, 2); // primitive kernel vector (2,-1) up to sign
    }

    #[test]
    fn snf_known_values() {
        let m = Mat::from_cols(2, vec![vec![2, 6], vec![4, 8]]);
        let (d, pinv) = snf_with_left(&m);
        assert_eq!(d, vec![2, 4]);
        // pinv columns are integral and pinv is unimodular (det ±1)
        let det = pinv.cols[0][0] * pinv.cols[1][1] - pinv.cols[1][0] * pinv.cols[0][1];
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn quotient_invariants() {
        // Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
        let big = diag_cols(&[1, 1]);
        let small = diag_cols(&[2, 4]);
        let (inv, reps) = quotient_structure(2, &big, &small).unwrap();
        assert_eq!(inv, vec![2, 4]);
        assert_eq!(reps.len(), 2);

        // <(1,0),(0,2)> / <(2,0),(0,4)> = Z/2 + Z/2
        let big2 = vec![vec![1, 0], vec![0, 2]];
        let (inv2, _) = quotient_structure(2, &big2, &small).unwrap();
        assert_eq!(inv2, vec![2, 2]);

        // trivial quotient
        let (inv3, reps3) = quotient_structure(2, &small, &small).unwrap();
        assert!(inv3.is_empty() && reps3.is_empty());
    }

    #[test]
    fn kernel_mod_cyclic() {
        // reduction Z/4 -> Z/2 has kernel Z/2 generated by 2
        let m = Mat::from_cols(1, vec![vec![1]]);
        let mut gens = kernel_mod(&m, &[2]);
        gens.push(vec![4]); // source relations
        let (inv, reps) = quotient_structure(1, &gens, &[vec![4]]).unwrap();
        assert_eq!(inv, vec![2]);
        assert_eq!(reps[0][0].rem_euclid(4), 2);
    }

    #[test]
    fn intersection_of_lattices() {
        // 2Z ∩ 3Z = 6Z
        let a = vec![vec![2]];
        let b = vec![vec![3]];
        let i = intersect(1, &a, &b);
        let h = hnf_basis(1, &i);
        assert_eq!(h.cols, vec![vec![6]]);
    }

    #[test]
    fn solve_in_membership() {
        let basis = hnf_basis(2, &[vec![2, 0], vec![1, 3]]);
        assert!(solve_in(&basis, &[3, 3]).is_some());
        assert!(solve_in(&basis, &[1, 1]).is_none());
        let c = solve_in(&basis, &[4, 6]).unwrap();
        assert_eq!(basis.apply(&c), vec![4, 6]);
    }
}
