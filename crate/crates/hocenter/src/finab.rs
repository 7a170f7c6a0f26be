//! Finite abelian groups with an explicit cyclic decomposition.
//!
//! Spectral-sequence levels are built out of many small abelian groups
//! (automorphism groups of composition basepoints). Each is decomposed
//! here as ⊕ Z/dᵢ with d₁ | d₂ | …, with a concrete basis and a full
//! element ⇄ coordinate dictionary, so that maps between levels become
//! integer matrices.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// An abelian `FiniteGroup` together with invariant factors, a basis
/// realizing them, and coordinates for every element.
#[derive(Debug, Clone)]
pub struct FinAb {
    pub group: FiniteGroup,
    /// Ascending divisibility, every entry ≥ 2; empty for the trivial group.
    pub invariants: Vec<usize>,
    /// One group element per invariant; together they generate freely.
    pub basis: Vec<usize>,
    /// Per element, its coordinates (0 ≤ cᵢ < dᵢ).
    pub coords: Vec<Vec<i64>>,
}

impl FinAb {
    pub fn from_group(group: FiniteGroup) -> Result<FinAb> {
        if !group.is_abelian() {
            return Err(Error::NotCommutative(format!(
                "group {} is not abelian",
                group.label
            )));
        }
        let invariants = invariant_factors(&group);
        let basis = find_basis(&group, &invariants).ok_or_else(|| {
            Error::Internal(format!("no basis realizing invariant factors of {}", group.label))
        })?;
        // Enumerate all coordinate tuples once; the map is a bijection.
        let mut coords = vec![Vec::new(); group.order];
        let mut seen = vec![false; group.order];
        let mut tuple = vec![0i64; invariants.len()];
        loop {
            let mut x = group.identity;
            for (i, &c) in tuple.iter().enumerate() {
                for _ in 0..c {
                    x = group.mul(x, basis[i]);
                }
            }
            if seen[x] {
                return Err(Error::Internal(format!(
                    "coordinate collision in {}",
                    group.label
                )));
            }
            seen[x] = true;
            coords[x] = tuple.clone();
            let mut i = invariants.len();
            loop {
                if i == 0 {
                    if seen.iter().all(|&s| s) {
                        return Ok(FinAb { group, invariants, basis, coords });
                    }
                    return Err(Error::Internal("coordinate enumeration incomplete".into()));
                }
                i -= 1;
                tuple[i] += 1;
                if (tuple[i] as usize) < invariants[i] {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Element with the given coordinates, reduced mod the invariants.
    pub fn element(&self, coords: &[i128]) -> usize {
        let mut x = self.group.identity;
        for (i, &c) in coords.iter().enumerate() {
            let d = self.invariants[i] as i128;
            let c = c.rem_euclid(d) as usize;
            for _ in 0..c {
                x = self.group.mul(x, self.basis[i]);
            }
        }
        x
    }
}

/// Invariant factors of an abelian group, ascending divisibility,
/// computed by counting element orders prime by prime.
pub fn invariant_factors(g: &FiniteGroup) -> Vec<usize> {
    let mut n = g.order;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    // per prime, the exponent partition sorted descending
    let mut partitions: Vec<(usize, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let mut ppart = 1;
        while g.order % (ppart * p) == 0 {
            ppart *= p;
        }
        // lambda[k] = log_p #{x : order(x) divides p^k}
        let mut lambda = vec![0u32];
        let mut pk = 1usize;
        loop {
            pk *= p;
            let count = (0..g.order)
                .filter(|&x| {
                    let mut y = g.identity;
                    for _ in 0..pk {
                        y = g.mul(y, x);
                    }
                    // x^{p^k} = e  <=>  order(x) | p^k; computed as pk-fold product
                    y == g.identity
                })
                .count();
            let mut l = 0u32;
            let mut c = count;
            while c > 1 {
                c /= p;
                l += 1;
            }
            lambda.push(l);
            if count == ppart {
                break;
            }
        }
        // r_k = # cyclic factors with exponent >= k
        let mut exps: Vec<u32> = Vec::new();
        for k in 1..lambda.len() {
            let r_k = lambda[k] - lambda[k - 1];
            let r_next = if k + 1 < lambda.len() { lambda[k + 1] - lambda[k] } else { 0 };
            for _ in 0..(r_k - r_next) {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        partitions.push((p, exps));
    }
    let width = partitions.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for i in 0..width {
        let mut d = 1usize;
        for (p, exps) in &partitions {
            if i < exps.len() {
                d *= p.pow(exps[i]);
            }
        }
        factors.push(d);
    }
    factors.reverse();
    factors
}

fn subgroup_size(g: &FiniteGroup, gens: &[usize]) -> usize {
    let mut in_sub = vec![false; g.order];
    in_sub[g.identity] = true;
    let mut frontier = vec![g.identity];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !in_sub[y] {
                in_sub[y] = true;
                frontier.push(y);
            }
        }
    }
    in_sub.iter().filter(|&&b| b).count()
}

/// Find elements realizing the invariant factors as a direct sum, by
/// depth-first search largest factor first. In an abelian group the
/// subgroup generated is a direct sum exactly when its order is the
/// product of the chosen element orders.
fn find_basis(g: &FiniteGroup, invariants: &[usize]) -> Option<Vec<usize>> {
    let mut want: Vec<usize> = invariants.to_vec();
    want.reverse(); // largest first
    fn dfs(g: &FiniteGroup, want: &[usize], depth: usize, chosen: &mut Vec<usize>) -> bool {
        if depth == want.len() {
            return true;
        }
        let target: usize = want[..=depth].iter().product();
        for x in 0..g.order {
            if g.element_order(x) != want[depth] {
                continue;
            }
            chosen.push(x);
            if subgroup_size(g, chosen) == target && dfs(g, want, depth + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if dfs(g, &want, 0, &mut chosen) {
        chosen.reverse(); // back to ascending order matching `invariants`
        Some(chosen)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_invariants() {
        assert_eq!(invariant_factors(&FiniteGroup::cyclic(1, "1")), Vec::<usize>::new());
        assert_eq!(invariant_factors(&FiniteGroup::cyclic(6, "Z6")), vec![6]);
        assert_eq!(invariant_factors(&FiniteGroup::cyclic(8, "Z8")), vec![8]);
    }

    #[test]
    fn product_invariants() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let z4 = FiniteGroup::cyclic(4, "Z4");
        let z6 = FiniteGroup::cyclic(6, "Z6");
        let v = FiniteGroup::direct_product(&z2, &z2, "V4");
        assert_eq!(invariant_factors(&v), vec![2, 2]);
        let g = FiniteGroup::direct_product(&z4, &z6, "Z4xZ6");
        assert_eq!(invariant_factors(&g), vec![2, 12]);
        let h = FiniteGroup::direct_product(&v, &z4, "Z2xZ2xZ4");
        assert_eq!(invariant_factors(&h), vec![2, 2, 4]);
    }

    #[test]
    fn basis_and_coordinates_roundtrip() {
        for g in [
            FiniteGroup::cyclic(1, "1"),
            FiniteGroup::cyclic(5, "Z5"),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2, "Z2"),
                &FiniteGroup::cyclic(4, "Z4"),
                "Z2xZ4",
            ),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(6, "Z6"),
                &FiniteGroup::cyclic(2, "Z2"),
                "Z6xZ2",
            ),
        ] {
            let ab = FinAb::from_group(g).unwrap();
            for (i, &d) in ab.invariants.iter().enumerate() {
                assert_eq!(ab.group.element_order(ab.basis[i]), d);
            }
            for x in 0..ab.group.order {
                let c: Vec<i128> = ab.coords[x].iter().map(|&v| v as i128).collect();
                assert_eq!(ab.element(&c), x);
            }
        }
    }

    #[test]
    fn nonabelian_rejected() {
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap();
        assert!(matches!(FinAb::from_group(s3), Err(Error::NotCommutative(_))));
    }
}
