//! The π₁-row of the cosimplicial replacement of an enriched category,
//! its normalized cochain complex, and the second-page entries in total
//! degrees 0 and 1.
//!
//! Level s is a product over (object tuple, hom-component tuple) of
//! small abelian groups: the automorphisms of the composition basepoint
//! μ_s that commute with every whiskered automorphism of the tuple's
//! base 1-cells. Cofaces and codegeneracies become integer matrices
//! between the cyclic coordinates of these factors, and the page
//! entries are lattice subquotients.

use std::collections::HashMap;

use crate::enriched::GEnrichedCategory;
use crate::error::{Error, Result};
use crate::finab::FinAb;
use crate::group::validate_group;
use crate::zlat::{self, Mat};

/// One factor of π₁Π^s: a tuple of objects, a component of each hom
/// slot, and the abelian automorphism group at the composition
/// basepoint.
#[derive(Debug, Clone)]
pub struct Factor {
    /// Objects x₀…x_s; slot i carries a 1-cell xᵢ → xᵢ₋₁.
    pub tuple: Vec<usize>,
    /// Component index per slot (empty when s = 0).
    pub comps: Vec<usize>,
    /// Canonical base 1-cell per slot.
    pub base: Vec<usize>,
    /// Left-nested composite of the base 1-cells, in H(x_s, x₀).
    pub mu_base: usize,
    /// The factor group in cyclic coordinates.
    pub aut: FinAb,
    /// 2-cell id in H(x_s, x₀) per element of `aut`.
    pub cells: Vec<usize>,
    /// Reverse of `cells`.
    pub cell_index: HashMap<usize, usize>,
    /// First coordinate row of this factor in the assembled level.
    pub gen_offset: usize,
}

#[derive(Debug, Clone)]
pub struct PiLevel {
    pub s: usize,
    pub factors: Vec<Factor>,
    /// Total number of cyclic coordinates.
    pub n_gens: usize,
    /// Order of each coordinate.
    pub orders: Vec<i128>,
    /// (tuple, comps) → factor index.
    pub index: HashMap<(Vec<usize>, Vec<usize>), usize>,
}

fn enumerate_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for x in 0..n {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// π₁ of cosimplicial level `s` at the composition basepoint.
pub fn build_pi_level(c: &GEnrichedCategory, s: usize, budget: u128) -> Result<PiLevel> {
    let mut factors = Vec::new();
    let mut index = HashMap::new();
    let mut n_gens = 0usize;
    let mut orders = Vec::new();
    let mut count: u128 = 0;
    for tuple in enumerate_tuples(c.n_objects, s + 1) {
        // component choices per slot
        let slot_comps: Vec<usize> =
            (1..=s).map(|i| c.hom[tuple[i]][tuple[i - 1]].components.len()).collect();
        if slot_comps.contains(&0) {
            continue;
        }
        let mut comps = vec![0usize; s];
        'comps: loop {
            count += 1;
            if count > budget {
                return Err(Error::BudgetExceeded { size: count, budget });
            }
            let base: Vec<usize> = (0..s)
                .map(|i| c.hom[tuple[i + 1]][tuple[i]].components[comps[i]][0])
                .collect();
            let factor = build_factor(c, &tuple, &comps, &base, n_gens)?;
            n_gens += factor.aut.rank();
            orders.extend(factor.aut.invariants.iter().map(|&d| d as i128));
            index.insert((tuple.clone(), comps.clone()), factors.len());
            factors.push(factor);
            let mut i = s;
            loop {
                if i == 0 {
                    break 'comps;
                }
                i -= 1;
                comps[i] += 1;
                if comps[i] < slot_comps[i] {
                    continue 'comps;
                }
                comps[i] = 0;
            }
        }
    }
    Ok(PiLevel { s, factors, n_gens, orders, index })
}

fn build_factor(
    c: &GEnrichedCategory,
    tuple: &[usize],
    comps: &[usize],
    base: &[usize],
    gen_offset: usize,
) -> Result<Factor> {
    let s = comps.len();
    let mu_base = c.mu1(tuple, base);
    let (xs, x0) = (tuple[s], tuple[0]);
    let outer = &c.hom[xs][x0];
    let aut_cells = outer.loops_at(mu_base);
    // subgroup generated by whiskered automorphisms of the base 1-cells
    let mut in_sub: HashMap<usize, ()> = HashMap::new();
    let mut frontier = vec![outer.identity_of[mu_base]];
    in_sub.insert(outer.identity_of[mu_base], ());
    let whisker_gens: Vec<usize> = (0..s)
        .flat_map(|j| {
            let h = &c.hom[tuple[j + 1]][tuple[j]];
            h.loops_at(base[j])
                .into_iter()
                .map(|u| {
                    let mors: Vec<usize> = (0..s)
                        .map(|i| {
                            if i == j {
                                u
                            } else {
                                c.hom[tuple[i + 1]][tuple[i]].identity_of[base[i]]
                            }
                        })
                        .collect();
                    c.mu2(tuple, &mors)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    while let Some(x) = frontier.pop() {
        for &g in &whisker_gens {
            let y = outer.comp(g, x);
            if in_sub.insert(y, ()).is_none() {
                frontier.push(y);
            }
        }
    }
    // centralizer of that subgroup inside Aut(mu_base)
    let cells: Vec<usize> = aut_cells
        .iter()
        .copied()
        .filter(|&m| in_sub.keys().all(|&g| outer.comp(m, g) == outer.comp(g, m)))
        .collect();
    let idx = |m: usize| cells.iter().position(|&x| x == m).unwrap();
    let table: Vec<Vec<usize>> = cells
        .iter()
        .map(|&a| cells.iter().map(|&b| idx(outer.comp(a, b))).collect())
        .collect();
    let label = format!("pi1 factor at tuple {tuple:?} comps {comps:?}");
    let group = validate_group(table, idx(outer.identity_of[mu_base]), &label)?;
    let aut = FinAb::from_group(group).map_err(|e| match e {
        Error::NotCommutative(_) => Error::NonAbelianEntry(label.clone()),
        other => other,
    })?;
    let cell_index = cells.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(Factor {
        tuple: tuple.to_vec(),
        comps: comps.to_vec(),
        base: base.to_vec(),
        mu_base,
        aut,
        cells,
        cell_index,
        gen_offset,
    })
}

/// Value at an arbitrary 1-cell tuple of the natural automorphism
/// whose value at the factor's base tuple is `cell`: conjugate by the
/// horizontal composite of the canonical in-component paths.
fn eval_at(c: &GEnrichedCategory, f: &Factor, cell: usize, cells_at: &[usize]) -> usize {
    let s = f.comps.len();
    let paths: Vec<usize> = (0..s)
        .map(|i| c.hom[f.tuple[i + 1]][f.tuple[i]].path_to[cells_at[i]])
        .collect();
    let outer = &c.hom[f.tuple[s]][f.tuple[0]];
    let w = c.mu2(&f.tuple, &paths);
    outer.comp(outer.comp(w, cell), outer.inv(w))
}

/// Write a 2-cell automorphism living in `f` into level coordinates.
fn coords_into(f: &Factor, cell: usize, column: &mut [i128]) -> Result<()> {
    let Some(&e) = f.cell_index.get(&cell) else {
        return Err(Error::Internal(
            "induced map image is outside the target factor group".into(),
        ));
    };
    for (i, &v) in f.aut.coords[e].iter().enumerate() {
        column[f.gen_offset + i] += v as i128;
    }
    Ok(())
}

/// The source factor and evaluation tuple seen by coface `k` from a
/// target factor at level s+1.
fn coface_source<'a>(
    c: &GEnrichedCategory,
    src_level: &'a PiLevel,
    tf: &Factor,
    k: usize,
) -> Result<(&'a Factor, Vec<usize>)> {
    let s1 = tf.comps.len(); // = s + 1
    let (tuple, comps, cells): (Vec<usize>, Vec<usize>, Vec<usize>) = if k == 0 {
        (tf.tuple[1..].to_vec(), tf.comps[1..].to_vec(), tf.base[1..].to_vec())
    } else if k == s1 {
        (
            tf.tuple[..s1].to_vec(),
            tf.comps[..s1 - 1].to_vec(),
            tf.base[..s1 - 1].to_vec(),
        )
    } else {
        // merge slots k-1 and k (0-based): composite b_k ∘ b_{k+1}
        let (x_prev, x_mid, x_next) = (tf.tuple[k - 1], tf.tuple[k], tf.tuple[k + 1]);
        let g = c.c1(x_next, x_mid, x_prev, tf.base[k - 1], tf.base[k]);
        let gc = c.hom[x_next][x_prev].component_of[g];
        let mut tuple = tf.tuple.clone();
        tuple.remove(k);
        let mut comps = tf.comps.clone();
        let mut cells = tf.base.clone();
        comps.remove(k);
        cells.remove(k);
        comps[k - 1] = gc;
        cells[k - 1] = g;
        (tuple, comps, cells)
    };
    let idx = src_level
        .index
        .get(&(tuple, comps))
        .ok_or_else(|| Error::Internal("coface source factor missing".into()))?;
    Ok((&src_level.factors[*idx], cells))
}

/// Matrix of the coface d^k: π₁Π^s → π₁Π^{s+1} in level coordinates.
pub fn coface_matrix(
    c: &GEnrichedCategory,
    src: &PiLevel,
    tgt: &PiLevel,
    k: usize,
) -> Result<Mat> {
    debug_assert_eq!(tgt.s, src.s + 1);
    let mut m = Mat::zero(tgt.n_gens, src.n_gens);
    for tf in &tgt.factors {
        let s1 = tf.comps.len();
        let (sf, cells) = coface_source(c, src, tf, k)?;
        for (bi, &belt) in sf.aut.basis.iter().enumerate() {
            let a = eval_at(c, sf, sf.cells[belt], &cells);
            let value = if k == 0 {
                let (x_out, x_mid, x_in) = (tf.tuple[s1], tf.tuple[1], tf.tuple[0]);
                let id_b1 = c.hom[x_mid][x_in].identity_of[tf.base[0]];
                c.c2(x_out, x_mid, x_in, id_b1, a)
            } else if k == s1 {
                let (x_out, x_mid, x_in) = (tf.tuple[s1], tf.tuple[s1 - 1], tf.tuple[0]);
                let id_last = c.hom[x_out][x_mid].identity_of[tf.base[s1 - 1]];
                c.c2(x_out, x_mid, x_in, a, id_last)
            } else {
                a
            };
            let col = sf.gen_offset + bi;
            coords_into(tf, value, &mut col_mut(&mut m, col))?;
        }
    }
    Ok(m)
}

fn col_mut(m: &mut Mat, j: usize) -> &mut [i128] {
    &mut m.cols[j]
}

/// Matrix of the codegeneracy s^k: π₁Π^s → π₁Π^{s-1}.
pub fn codegeneracy_matrix(
    c: &GEnrichedCategory,
    src: &PiLevel,
    tgt: &PiLevel,
    k: usize,
) -> Result<Mat> {
    debug_assert_eq!(tgt.s + 1, src.s);
    let mut m = Mat::zero(tgt.n_gens, src.n_gens);
    for tf in &tgt.factors {
        // insert the unit of object x_k as the (k+1)-th 1-cell
        let xk = tf.tuple[k];
        let unit = c.unit[xk];
        let unit_comp = c.hom[xk][xk].component_of[unit];
        let mut tuple = tf.tuple.clone();
        tuple.insert(k + 1, xk);
        let mut comps = tf.comps.clone();
        comps.insert(k, unit_comp);
        let mut cells = tf.base.clone();
        cells.insert(k, unit);
        let idx = src
            .index
            .get(&(tuple, comps))
            .ok_or_else(|| Error::Internal("codegeneracy source factor missing".into()))?;
        let sf = &src.factors[*idx];
        for (bi, &belt) in sf.aut.basis.iter().enumerate() {
            let value = eval_at(c, sf, sf.cells[belt], &cells);
            let col = sf.gen_offset + bi;
            coords_into(tf, value, &mut col_mut(&mut m, col))?;
        }
    }
    Ok(m)
}

/// The normalized π₁ cochain complex up to `smax`.
#[derive(Debug)]
pub struct Complex {
    pub levels: Vec<PiLevel>,
    /// deltas[s]: level s → level s+1, alternating sum of cofaces.
    pub deltas: Vec<Mat>,
    /// Generators of the normalized sublattice N^s (each contains the
    /// order relations diag(orders)).
    pub normalized: Vec<Vec<Vec<i128>>>,
}

fn diag_cols(d: &[i128]) -> Vec<Vec<i128>> {
    (0..d.len())
        .map(|i| {
            let mut c = vec![0i128; d.len()];
            c[i] = d[i];
            c
        })
        .collect()
}

pub fn build_complex(c: &GEnrichedCategory, smax: usize, budget: u128) -> Result<Complex> {
    let mut levels = Vec::with_capacity(smax + 1);
    for s in 0..=smax {
        levels.push(build_pi_level(c, s, budget)?);
    }
    let mut deltas = Vec::with_capacity(smax);
    for s in 0..smax {
        let mut delta = Mat::zero(levels[s + 1].n_gens, levels[s].n_gens);
        for k in 0..=s + 1 {
            let d = coface_matrix(c, &levels[s], &levels[s + 1], k)?;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for j in 0..delta.n_cols() {
                for i in 0..delta.rows {
                    delta.cols[j][i] += sign * d.cols[j][i];
                }
            }
        }
        deltas.push(delta);
    }
    let mut normalized = Vec::with_capacity(smax + 1);
    for s in 0..=smax {
        let n = levels[s].n_gens;
        if s == 0 {
            normalized.push(Mat::identity(n).cols);
            continue;
        }
        let mut lattice = Mat::identity(n).cols;
        for k in 0..s {
            let sk = codegeneracy_matrix(c, &levels[s], &levels[s - 1], k)?;
            let ker = zlat::kernel_mod(&sk, &levels[s - 1].orders);
            lattice = zlat::intersect(n, &lattice, &ker);
            lattice.extend(diag_cols(&levels[s].orders));
        }
        normalized.push(lattice);
    }
    let cx = Complex { levels, deltas, normalized };
    verify_complex(&cx)?;
    Ok(cx)
}

/// Differentials map normalized cochains to normalized cochains, and
/// δ∘δ vanishes modulo the target orders.
fn verify_complex(cx: &Complex) -> Result<()> {
    for s in 0..cx.deltas.len() {
        let basis = zlat::hnf_basis(cx.levels[s + 1].n_gens, &{
            let mut g = cx.normalized[s + 1].clone();
            g.extend(diag_cols(&cx.levels[s + 1].orders));
            g
        });
        for gen in &cx.normalized[s] {
            let v = cx.deltas[s].apply(gen);
            if zlat::solve_in(&basis, &v).is_none() {
                return Err(Error::Internal(
                    "differential leaves the normalized subcomplex".into(),
                ));
            }
        }
    }
    for s in 0..cx.deltas.len().saturating_sub(1) {
        let dd = cx.deltas[s + 1].mul(&cx.deltas[s]);
        for col in &dd.cols {
            for (i, &v) in col.iter().enumerate() {
                let d = cx.levels[s + 2].orders[i];
                if v.rem_euclid(d) != 0 {
                    return Err(Error::Internal("delta-squared is nonzero".into()));
                }
            }
        }
    }
    Ok(())
}

/// An abelian page entry: nontrivial invariant factors (ascending
/// divisibility) and one representing cocycle per factor, in the
/// coordinates of its level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageEntry {
    pub invariants: Vec<i128>,
    pub representatives: Vec<Vec<i128>>,
}

impl PageEntry {
    pub fn order(&self) -> i128 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SpectralPage {
    pub e01: PageEntry,
    pub e11: PageEntry,
    pub e21: PageEntry,
}

fn cocycles(cx: &Complex, s: usize) -> Vec<Vec<i128>> {
    let n = cx.levels[s].n_gens;
    let ker = zlat::kernel_mod(&cx.deltas[s], &cx.levels[s + 1].orders);
    let mut k = zlat::intersect(n, &cx.normalized[s], &ker);
    k.extend(diag_cols(&cx.levels[s].orders));
    k
}

fn coboundaries(cx: &Complex, s: usize) -> Vec<Vec<i128>> {
    debug_assert!(s >= 1);
    let mut img: Vec<Vec<i128>> = cx.normalized[s - 1]
        .iter()
        .map(|g| cx.deltas[s - 1].apply(g))
        .collect();
    img.extend(diag_cols(&cx.levels[s].orders));
    img
}

/// Cohomology of the normalized complex at degree `s` for the t = 1
/// row: ker δ_s / im δ_{s-1} (pure kernel when s = 0).
pub fn cohomology(cx: &Complex, s: usize) -> Result<PageEntry> {
    let n = cx.levels[s].n_gens;
    let k = cocycles(cx, s);
    let denom = if s == 0 { diag_cols(&cx.levels[0].orders) } else { coboundaries(cx, s) };
    let (invariants, representatives) = zlat::quotient_structure(n, &k, &denom)?;
    Ok(PageEntry { invariants, representatives })
}

/// E₂ entries at (0,1), (1,1), (2,1); needs the complex built to s = 3.
pub fn e2_page(cx: &Complex) -> Result<SpectralPage> {
    if cx.levels.len() < 4 {
        return Err(Error::Malformed("spectral page needs levels up to s = 3".into()));
    }
    Ok(SpectralPage {
        e01: cohomology(cx, 0)?,
        e11: cohomology(cx, 1)?,
        e21: cohomology(cx, 2)?,
    })
}

/// Exhaustive check of the cosimplicial identities on the induced
/// matrices, modulo the target orders.
pub fn check_cosimplicial_identities(c: &GEnrichedCategory, cx: &Complex) -> Result<()> {
    let congruent = |a: &Mat, b: &Mat, orders: &[i128]| -> bool {
        a.rows == b.rows
            && a.n_cols() == b.n_cols()
            && (0..a.n_cols()).all(|j| {
                (0..a.rows).all(|i| (a.cols[j][i] - b.cols[j][i]).rem_euclid(orders[i]) == 0)
            })
    };
    let smax = cx.levels.len() - 1;
    // d^j d^k = d^k d^{j-1} for k < j
    for s in 0..smax.saturating_sub(1) {
        for j in 0..=s + 2 {
            for k in 0..j {
                let djk = coface_matrix(c, &cx.levels[s + 1], &cx.levels[s + 2], j)?
                    .mul(&coface_matrix(c, &cx.levels[s], &cx.levels[s + 1], k)?);
                let dkj = coface_matrix(c, &cx.levels[s + 1], &cx.levels[s + 2], k)?
                    .mul(&coface_matrix(c, &cx.levels[s], &cx.levels[s + 1], j - 1)?);
                if !congruent(&djk, &dkj, &cx.levels[s + 2].orders) {
                    return Err(Error::Internal(format!(
                        "coface identity fails at s={s}, j={j}, k={k}"
                    )));
                }
            }
        }
    }
    // s^j s^k = s^k s^{j+1} for k <= j
    for s in 2..=smax {
        for j in 0..s - 1 {
            for k in 0..=j {
                let sjk = codegeneracy_matrix(c, &cx.levels[s - 1], &cx.levels[s - 2], j)?
                    .mul(&codegeneracy_matrix(c, &cx.levels[s], &cx.levels[s - 1], k)?);
                let skj = codegeneracy_matrix(c, &cx.levels[s - 1], &cx.levels[s - 2], k)?
                    .mul(&codegeneracy_matrix(c, &cx.levels[s], &cx.levels[s - 1], j + 1)?);
                if !congruent(&sjk, &skj, &cx.levels[s - 2].orders) {
                    return Err(Error::Internal(format!(
                        "codegeneracy identity fails at s={s}, j={j}, k={k}"
                    )));
                }
            }
        }
    }
    // s^j d^k relations
    for s in 0..smax {
        let orders = &cx.levels[s].orders;
        let ident = Mat::identity(cx.levels[s].n_gens);
        for j in 0..=s {
            let sj = codegeneracy_matrix(c, &cx.levels[s + 1], &cx.levels[s], j)?;
            for k in 0..=s + 1 {
                let dk = coface_matrix(c, &cx.levels[s], &cx.levels[s + 1], k)?;
                let prod = sj.mul(&dk);
                if k == j || k == j + 1 {
                    if !congruent(&prod, &ident, orders) {
                        return Err(Error::Internal(format!(
                            "s^{j} d^{k} is not the identity at s={s}"
                        )));
                    }
                } else if s >= 1 {
                    let expect = if k < j {
                        coface_matrix(c, &cx.levels[s - 1], &cx.levels[s], k)?
                            .mul(&codegeneracy_matrix(c, &cx.levels[s], &cx.levels[s - 1], j - 1)?)
                    } else {
                        coface_matrix(c, &cx.levels[s - 1], &cx.levels[s], k - 1)?
                            .mul(&codegeneracy_matrix(c, &cx.levels[s], &cx.levels[s - 1], j)?)
                    };
                    if !congruent(&prod, &expect, orders) {
                        return Err(Error::Internal(format!(
                            "mixed identity fails at s={s}, j={j}, k={k}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
