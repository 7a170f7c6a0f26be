//! Finite groups as explicit multiplication tables, together with the
//! hom-set, conjugacy, and centralizer computations the rest of the
//! crate consumes.

use crate::error::{Error, Result};

/// A finite group given by its full Cayley table.
///
/// Elements are the indices `0..order`; `table[a][b]` is the product
/// `a * b`. Validation computes inverses and checks the axioms, so a
/// value of this type is always a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub label: String,
}

impl FiniteGroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, h: usize, g: usize) -> usize {
        // h g h^-1
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The trivial group.
    pub fn trivial(label: &str) -> FiniteGroup {
        FiniteGroup {
            order: 1,
            table: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
            label: label.to_string(),
        }
    }

    /// Cyclic group of order n.
    pub fn cyclic(n: usize, label: &str) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        validate_group(table, 0, label).expect("cyclic table is a group")
    }

    /// Direct product, elements ordered lexicographically (a-major).
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, label: &str) -> FiniteGroup {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        validate_group(table, idx(a.identity, b.identity), label).expect("product table is a group")
    }

    /// Group generated by permutations in one-line notation; elements are
    /// ordered by discovery (identity first, then BFS over products),
    /// which is deterministic for a given generator list.
    pub fn from_permutations(gens: &[Vec<usize>], label: &str) -> Result<FiniteGroup> {
        let degree = match gens.first() {
            Some(g) => g.len(),
            None => 0,
        };
        for g in gens {
            if g.len() != degree {
                return Err(Error::Malformed(format!(
                    "permutation generators of mixed degree in group {label}"
                )));
            }
            let mut seen = vec![false; degree];
            for &i in g {
                if i >= degree || seen[i] {
                    return Err(Error::Malformed(format!(
                        "not a permutation in one-line notation: {g:?}"
                    )));
                }
                seen[i] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![id];
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for g in gens {
                // cur followed by g
                let prod: Vec<usize> = cur.iter().map(|&i| g[i]).collect();
                if !elems.contains(&prod) {
                    elems.push(prod);
                }
            }
            frontier += 1;
            if elems.len() > 10_000 {
                return Err(Error::BudgetExceeded { size: elems.len() as u128, budget: 10_000 });
            }
        }
        let n = elems.len();
        let index_of = |p: &Vec<usize>| elems.iter().position(|q| q == p).unwrap();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elems[b].iter().map(|&i| elems[a][i]).collect();
                table[a][b] = index_of(&prod);
            }
        }
        validate_group(table, 0, label)
    }

    /// Greedy small generating set: repeatedly add the least element
    /// outside the closure of the current set.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = self.closure(&gens);
        for a in 0..self.order {
            if !closure[a] {
                gens.push(a);
                closure = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut in_set = vec![false; self.order];
        in_set[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    stack.push(y);
                }
            }
        }
        in_set
    }
}

/// Validate a raw Cayley table. Errors name the first violating witness.
pub fn validate_group(table: Vec<Vec<usize>>, identity: usize, label: &str) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Malformed("empty multiplication table".into()));
    }
    if identity >= n {
        return Err(Error::NoIdentity(identity));
    }
    for row in &table {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(Error::Malformed(format!(
                "table of group {label} is not square with in-range entries"
            )));
        }
    }
    for a in 0..n {
        if table[identity][a] != a || table[a][identity] != a {
            return Err(Error::NoIdentity(identity));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
    }
    let mut inverse = vec![usize::MAX; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
            Some(b) => inverse[a] = b,
            None => return Err(Error::NoInverse(a)),
        }
    }
    Ok(FiniteGroup { order: n, table, identity, inverse, label: label.to_string() })
}

/// Center of a group: elements commuting with everything.
pub fn center_of_group(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order)
        .filter(|&z| (0..g.order).all(|a| g.mul(z, a) == g.mul(a, z)))
        .collect()
}

/// Conjugacy classes, as a partition of element indices; classes are
/// ordered by least member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order];
    let mut classes = Vec::new();
    for a in 0..g.order {
        if seen[a] {
            continue;
        }
        let mut class: Vec<usize> = (0..g.order).map(|h| g.conj(h, a)).collect();
        class.sort_unstable();
        class.dedup();
        for &x in &class {
            seen[x] = true;
        }
        classes.push(class);
    }
    classes
}

/// A homomorphism between finite groups, stored as the full image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupHom {
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// All homomorphisms source -> target, in lexicographic order on image
/// arrays. The search runs over generator images only; each candidate
/// is expanded along a fixed factorization of the source and verified
/// multiplicative on all pairs.
pub fn enumerate_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: u128,
) -> Result<Vec<GroupHom>> {
    let gens = source.generators();
    let k = gens.len();
    let space = (target.order as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > budget {
        return Err(Error::BudgetExceeded { size: space, budget });
    }

    // Factorization: every element is (previous element) * (generator),
    // found by BFS from the identity.
    let mut defs: Vec<Option<(usize, usize)>> = vec![None; source.order]; // (prev elem, gen slot)
    let mut order_found = vec![source.identity];
    let mut head = 0;
    while head < order_found.len() {
        let x = order_found[head];
        head += 1;
        for (slot, &g) in gens.iter().enumerate() {
            let y = source.mul(x, g);
            if y != source.identity && defs[y].is_none() {
                defs[y] = Some((x, slot));
                order_found.push(y);
            }
        }
    }
    if order_found.len() != source.order {
        return Err(Error::Internal("generator closure does not cover the group".into()));
    }

    let mut homs: Vec<GroupHom> = Vec::new();
    let mut candidate = vec![0usize; k];
    loop {
        if let Some(image) = expand_candidate(source, target, &order_found, &defs, &gens, &candidate)
        {
            homs.push(GroupHom { image });
        }
        // mixed-radix increment
        let mut slot = k;
        loop {
            if slot == 0 {
                // exhausted
                homs.sort();
                homs.dedup();
                return Ok(homs);
            }
            slot -= 1;
            candidate[slot] += 1;
            if candidate[slot] < target.order {
                break;
            }
            candidate[slot] = 0;
        }
        if k == 0 {
            homs.sort();
            homs.dedup();
            return Ok(homs);
        }
    }
}

fn expand_candidate(
    source: &FiniteGroup,
    target: &FiniteGroup,
    order_found: &[usize],
    defs: &[Option<(usize, usize)>],
    _gens: &[usize],
    candidate: &[usize],
) -> Option<Vec<usize>> {
    let mut image = vec![usize::MAX; source.order];
    image[source.identity] = target.identity;
    for &x in &order_found[1..] {
        let (prev, slot) = defs[x].unwrap();
        image[x] = target.mul(image[prev], candidate[slot]);
    }
    for a in 0..source.order {
        for b in 0..source.order {
            if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                return None;
            }
        }
    }
    Some(image)
}

/// Orbits of Hom(G,H) under conjugation by H, each sorted, listed by
/// their canonical (lexicographically least) representative.
pub fn rep_classes(
    source: &FiniteGroup,
    target: &FiniteGroup,
    budget: u128,
) -> Result<Vec<Vec<GroupHom>>> {
    let homs = enumerate_homs(source, target, budget)?;
    Ok(rep_classes_of(&homs, target))
}

pub fn rep_classes_of(homs: &[GroupHom], target: &FiniteGroup) -> Vec<Vec<GroupHom>> {
    let mut assigned = vec![false; homs.len()];
    let mut classes = Vec::new();
    for i in 0..homs.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit: Vec<GroupHom> = (0..target.order)
            .map(|h| GroupHom {
                image: homs[i].image.iter().map(|&x| target.conj(h, x)).collect(),
            })
            .collect();
        orbit.sort();
        orbit.dedup();
        for m in &orbit {
            let j = homs.binary_search(m).expect("conjugate of a hom is a hom");
            assigned[j] = true;
        }
        classes.push(orbit);
    }
    classes
}

/// Centralizer of a homomorphism: target elements fixing it under
/// conjugation.
pub fn centralizer(alpha: &GroupHom, source: &FiniteGroup, target: &FiniteGroup) -> Vec<usize> {
    (0..target.order)
        .filter(|&h| (0..source.order).all(|g| target.conj(h, alpha.image[g]) == alpha.image[g]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap()
    }

    fn d4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 3, 2]], "D4").unwrap()
    }

    #[test]
    fn z2_is_valid() {
        let g = validate_group(vec![vec![0, 1], vec![1, 0]], 0, "Z2").unwrap();
        assert_eq!(g.order, 2);
        assert_eq!(g.inverse, vec![0, 1]);
    }

    #[test]
    fn idempotent_nonidentity_has_no_inverse() {
        let err = validate_group(vec![vec![0, 1], vec![1, 1]], 0, "bad").unwrap_err();
        match err {
            Error::NoInverse(1) => {}
            other => panic!("expected NoInverse(1), got {other:?}"),
        }
    }

    #[test]
    fn s3_from_permutations() {
        let g = s3();
        assert_eq!(g.order, 6);
        let involutions = (0..6).filter(|&a| a != g.identity && g.element_order(a) == 2).count();
        assert_eq!(involutions, 3);
    }

    #[test]
    fn centers() {
        let z6 = FiniteGroup::cyclic(6, "Z6");
        assert_eq!(center_of_group(&z6).len(), 6);
        assert_eq!(center_of_group(&s3()), vec![s3().identity]);
        assert_eq!(center_of_group(&d4()).len(), 2);
    }

    #[test]
    fn conjugacy_class_sizes() {
        assert_eq!(conjugacy_classes(&FiniteGroup::trivial("1")).len(), 1);
        let z4 = FiniteGroup::cyclic(4, "Z4");
        assert!(conjugacy_classes(&z4).iter().all(|c| c.len() == 1));
        let mut sizes: Vec<usize> = conjugacy_classes(&s3()).iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn hom_counts() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let z3 = FiniteGroup::cyclic(3, "Z3");
        assert_eq!(enumerate_homs(&z2, &z3, 1 << 20).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&z2, &z2, 1 << 20).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&s3(), &z2, 1 << 20).unwrap().len(), 2);
    }

    #[test]
    fn hom_budget() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        match enumerate_homs(&z2, &z2, 1) {
            Err(Error::BudgetExceeded { size: 2, budget: 1 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn rep_classes_z2_s3() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let classes = rep_classes(&z2, &s3(), 1 << 20).unwrap();
        assert_eq!(classes.len(), 2);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        // constant endomorphism: centralizer is everything
        let constant = GroupHom { image: vec![g.identity; 6] };
        assert_eq!(centralizer(&constant, &g, &g).len(), 6);
        // identity endomorphism: centralizer is the center
        let ident = GroupHom { image: (0..6).collect() };
        assert_eq!(centralizer(&ident, &g, &g), center_of_group(&g));
        // a Z/2 -> S3 hom hitting a transposition has centralizer of order 2
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let homs = enumerate_homs(&z2, &g, 1 << 20).unwrap();
        let transposition_hom = homs.iter().find(|h| !h.image.iter().all(|&x| x == g.identity)).unwrap();
        assert_eq!(centralizer(transposition_hom, &z2, &g).len(), 2);
    }

    #[test]
    fn orbit_stabilizer() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let g = s3();
        for class in rep_classes(&z2, &g, 1 << 20).unwrap() {
            let stab = centralizer(&class[0], &z2, &g).len();
            assert_eq!(class.len() * stab, g.order);
        }
    }

    // Independent oracle: filter all |H|^|G| set maps by the
    // homomorphism equation, for groups of small order.
    fn all_maps_oracle(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
        let mut out = Vec::new();
        let total = (target.order as u64).pow(source.order as u32);
        for code in 0..total {
            let mut c = code;
            let image: Vec<usize> = (0..source.order)
                .map(|_| {
                    let v = (c % target.order as u64) as usize;
                    c /= target.order as u64;
                    v
                })
                .collect();
            let ok = image[source.identity] == target.identity
                && (0..source.order).all(|a| {
                    (0..source.order)
                        .all(|b| image[source.mul(a, b)] == target.mul(image[a], image[b]))
                });
            if ok {
                out.push(GroupHom { image });
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_enumeration_matches_all_maps_oracle() {
        let groups = vec![
            FiniteGroup::trivial("1"),
            FiniteGroup::cyclic(2, "Z2"),
            FiniteGroup::cyclic(3, "Z3"),
            FiniteGroup::cyclic(4, "Z4"),
            s3(),
            d4(),
        ];
        for a in &groups {
            for b in &groups {
                if (b.order as f64).powi(a.order as i32) > 2e7 {
                    continue;
                }
                assert_eq!(
                    enumerate_homs(a, b, 1 << 30).unwrap(),
                    all_maps_oracle(a, b),
                    "hom mismatch {} -> {}",
                    a.label,
                    b.label
                );
            }
        }
    }

    #[test]
    fn center_contained_in_centralizer() {
        let g = s3();
        let z2 = FiniteGroup::cyclic(2, "Z2");
        for alpha in enumerate_homs(&z2, &g, 1 << 20).unwrap() {
            let c = centralizer(&alpha, &z2, &g);
            for z in center_of_group(&g) {
                assert!(c.contains(&z));
            }
        }
    }
}
