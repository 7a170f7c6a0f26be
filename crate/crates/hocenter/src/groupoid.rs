//! Finite groupoids, functors, and natural transformations. These model
//! the hom-objects of enriched categories and their mapping spaces: a
//! nerve of a groupoid is 1-truncated, so functors and natural
//! transformations carry exactly the homotopy the crate needs.

use crate::error::{Error, Result};
use crate::group::{validate_group, FiniteGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mor {
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid with a validated composition table.
///
/// `compose[g][f]` is `g ∘ f`, defined exactly when `f.dst == g.src`.
/// Navigation data (components, canonical bases, base paths) is
/// precomputed at validation time and deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    pub n_objects: usize,
    pub mor: Vec<Mor>,
    pub identity_of: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub inverse_of: Vec<usize>,
    /// Component index per object; components numbered by least object.
    pub component_of: Vec<usize>,
    /// Objects per component, sorted ascending; the first is the base.
    pub components: Vec<Vec<usize>>,
    /// Per object, a morphism from its component base to it.
    pub path_to: Vec<usize>,
}

impl Groupoid {
    pub fn n_morphisms(&self) -> usize {
        self.mor.len()
    }

    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].expect("composable pair")
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inverse_of[f]
    }

    pub fn base_of_component(&self, c: usize) -> usize {
        self.components[c][0]
    }

    pub fn loops_at(&self, obj: usize) -> Vec<usize> {
        (0..self.mor.len()).filter(|&m| self.mor[m].src == obj && self.mor[m].dst == obj).collect()
    }

    pub fn morphisms_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.mor.len()).filter(|&m| self.mor[m].src == a && self.mor[m].dst == b).collect()
    }

    /// Automorphism group at an object, as a table group; also returns
    /// the loop morphism id backing each group element.
    pub fn vertex_group(&self, obj: usize) -> (FiniteGroup, Vec<usize>) {
        let loops = self.loops_at(obj);
        let index_of = |m: usize| loops.iter().position(|&l| l == m).unwrap();
        let n = loops.len();
        let mut table = vec![vec![0; n]; n];
        for (i, &a) in loops.iter().enumerate() {
            for (j, &b) in loops.iter().enumerate() {
                table[i][j] = index_of(self.comp(a, b));
            }
        }
        let identity = index_of(self.identity_of[obj]);
        let label = format!("Aut(obj {obj})");
        let group = validate_group(table, identity, &label).expect("vertex group of a groupoid");
        (group, loops)
    }

    /// Discrete groupoid: identities only.
    pub fn discrete(n_objects: usize) -> Groupoid {
        let raw = RawGroupoid {
            n_objects,
            morphisms: (0..n_objects).map(|i| (i, i)).collect(),
            identities: (0..n_objects).collect(),
            compose: (0..n_objects).map(|i| (i, i, i)).collect(),
        };
        validate_groupoid(&raw).expect("discrete groupoid")
    }

    /// One object whose automorphisms are the given group.
    pub fn one_object_from_group(g: &FiniteGroup) -> Groupoid {
        let raw = RawGroupoid {
            n_objects: 1,
            morphisms: (0..g.order).map(|_| (0, 0)).collect(),
            identities: vec![g.identity],
            compose: (0..g.order)
                .flat_map(|a| (0..g.order).map(move |b| (a, b, 0)))
                .map(|(a, b, _)| (a, b, g.mul(a, b)))
                .collect(),
        };
        validate_groupoid(&raw).expect("one-object groupoid from a group")
    }

    /// Disjoint union; objects and morphisms renumbered block by block.
    pub fn disjoint_union(parts: &[&Groupoid]) -> Groupoid {
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        let mut compose = Vec::new();
        let mut obj_off = 0;
        let mut mor_off = 0;
        for p in parts {
            for m in &p.mor {
                morphisms.push((m.src + obj_off, m.dst + obj_off));
            }
            for o in 0..p.n_objects {
                identities.push(p.identity_of[o] + mor_off);
            }
            for g in 0..p.mor.len() {
                for f in 0..p.mor.len() {
                    if let Some(h) = p.compose[g][f] {
                        compose.push((g + mor_off, f + mor_off, h + mor_off));
                    }
                }
            }
            obj_off += p.n_objects;
            mor_off += p.mor.len();
        }
        let raw = RawGroupoid { n_objects: obj_off, morphisms, identities, compose };
        validate_groupoid(&raw).expect("disjoint union of groupoids")
    }
}

/// Unvalidated groupoid data as it appears in fixtures.
#[derive(Debug, Clone)]
pub struct RawGroupoid {
    pub n_objects: usize,
    pub morphisms: Vec<(usize, usize)>,
    pub identities: Vec<usize>,
    pub compose: Vec<(usize, usize, usize)>,
}

pub fn validate_groupoid(raw: &RawGroupoid) -> Result<Groupoid> {
    let n_mor = raw.morphisms.len();
    let mor: Vec<Mor> = raw.morphisms.iter().map(|&(src, dst)| Mor { src, dst }).collect();
    for (i, m) in mor.iter().enumerate() {
        if m.src >= raw.n_objects || m.dst >= raw.n_objects {
            return Err(Error::Malformed(format!("morphism {i} has out-of-range endpoints")));
        }
    }
    if raw.identities.len() != raw.n_objects {
        return Err(Error::Malformed("identity list length differs from object count".into()));
    }
    for (o, &e) in raw.identities.iter().enumerate() {
        if e >= n_mor || mor[e].src != o || mor[e].dst != o {
            return Err(Error::MissingIdentity(o));
        }
    }
    let mut compose = vec![vec![None; n_mor]; n_mor];
    for &(g, f, h) in &raw.compose {
        if g >= n_mor || f >= n_mor || h >= n_mor {
            return Err(Error::Malformed(format!("composition triple ({g},{f},{h}) out of range")));
        }
        if compose[g][f].is_some() {
            return Err(Error::Malformed(format!("duplicate composition entry for ({g},{f})")));
        }
        compose[g][f] = Some(h);
    }
    // defined exactly on composable pairs, with correct endpoints
    for g in 0..n_mor {
        for f in 0..n_mor {
            let composable = mor[f].dst == mor[g].src;
            match compose[g][f] {
                Some(h) if composable => {
                    if mor[h].src != mor[f].src || mor[h].dst != mor[g].dst {
                        return Err(Error::NotComposable(g, f));
                    }
                }
                None if !composable => {}
                _ => return Err(Error::NotComposable(g, f)),
            }
        }
    }
    // identity laws
    for f in 0..n_mor {
        if compose[raw.identities[mor[f].dst]][f] != Some(f)
            || compose[f][raw.identities[mor[f].src]] != Some(f)
        {
            return Err(Error::MissingIdentity(mor[f].src));
        }
    }
    // associativity
    for h in 0..n_mor {
        for g in 0..n_mor {
            if mor[g].dst != mor[h].src {
                continue;
            }
            let hg = compose[h][g].unwrap();
            for f in 0..n_mor {
                if mor[f].dst != mor[g].src {
                    continue;
                }
                let gf = compose[g][f].unwrap();
                if compose[hg][f] != compose[h][gf] {
                    return Err(Error::NotAssociative(h, g, f));
                }
            }
        }
    }
    // invertibility
    let mut inverse_of = vec![usize::MAX; n_mor];
    for f in 0..n_mor {
        let want_left = raw.identities[mor[f].dst];
        let want_right = raw.identities[mor[f].src];
        match (0..n_mor)
            .find(|&g| compose[f].get(g).copied().flatten() == Some(want_left) && compose[g][f] == Some(want_right))
        {
            Some(g) => inverse_of[f] = g,
            None => return Err(Error::NotInvertible(f)),
        }
    }
    // components and base paths (BFS over morphisms in id order)
    let mut component_of = vec![usize::MAX; raw.n_objects];
    let mut components = Vec::new();
    let mut path_to = vec![usize::MAX; raw.n_objects];
    for start in 0..raw.n_objects {
        if component_of[start] != usize::MAX {
            continue;
        }
        let c = components.len();
        component_of[start] = c;
        path_to[start] = raw.identities[start];
        let mut members = vec![start];
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for m in 0..n_mor {
                let (next, step) = if mor[m].src == a {
                    (mor[m].dst, m)
                } else if mor[m].dst == a {
                    (mor[m].src, inverse_of[m])
                } else {
                    continue;
                };
                if component_of[next] == usize::MAX {
                    component_of[next] = c;
                    path_to[next] = compose[step][path_to[a]].unwrap();
                    members.push(next);
                    queue.push_back(next);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    Ok(Groupoid {
        n_objects: raw.n_objects,
        mor,
        identity_of: raw.identities.clone(),
        compose,
        inverse_of,
        component_of,
        components,
        path_to,
    })
}

/// Connected components of a groupoid, as a partition of objects.
pub fn pi0(a: &Groupoid) -> Vec<Vec<usize>> {
    a.components.clone()
}

/// Product groupoid. Objects and morphisms are lexicographic tuples
/// (first factor most significant); the empty product is the trivial
/// groupoid.
pub fn product_groupoid(factors: &[&Groupoid], budget: u128) -> Result<Groupoid> {
    let mor_count: u128 = factors.iter().map(|g| g.n_morphisms() as u128).product();
    if mor_count.saturating_mul(mor_count) > budget {
        return Err(Error::BudgetExceeded { size: mor_count * mor_count, budget });
    }
    let obj_dims: Vec<usize> = factors.iter().map(|g| g.n_objects).collect();
    let mor_dims: Vec<usize> = factors.iter().map(|g| g.n_morphisms()).collect();
    let n_objects: usize = obj_dims.iter().product();
    let n_mor: usize = mor_dims.iter().product();

    let unrank = |mut code: usize, dims: &[usize]| -> Vec<usize> {
        let mut tuple = vec![0; dims.len()];
        for i in (0..dims.len()).rev() {
            tuple[i] = code % dims[i];
            code /= dims[i];
        }
        tuple
    };
    let rank = |tuple: &[usize], dims: &[usize]| -> usize {
        tuple.iter().zip(dims).fold(0, |acc, (&t, &d)| acc * d + t)
    };

    let mut morphisms = Vec::with_capacity(n_mor);
    for m in 0..n_mor {
        let t = unrank(m, &mor_dims);
        let src: Vec<usize> = t.iter().zip(factors).map(|(&mi, g)| g.mor[mi].src).collect();
        let dst: Vec<usize> = t.iter().zip(factors).map(|(&mi, g)| g.mor[mi].dst).collect();
        morphisms.push((rank(&src, &obj_dims), rank(&dst, &obj_dims)));
    }
    let mut identities = Vec::with_capacity(n_objects);
    for o in 0..n_objects {
        let t = unrank(o, &obj_dims);
        let ids: Vec<usize> = t.iter().zip(factors).map(|(&oi, g)| g.identity_of[oi]).collect();
        identities.push(rank(&ids, &mor_dims));
    }
    let mut compose = Vec::new();
    for g in 0..n_mor {
        let gt = unrank(g, &mor_dims);
        for f in 0..n_mor {
            let ft = unrank(f, &mor_dims);
            let comps: Option<Vec<usize>> = gt
                .iter()
                .zip(&ft)
                .zip(factors)
                .map(|((&gi, &fi), gr)| gr.compose[gi][fi])
                .collect();
            if let Some(c) = comps {
                compose.push((g, f, rank(&c, &mor_dims)));
            }
        }
    }
    validate_groupoid(&RawGroupoid { n_objects, morphisms, identities, compose })
}

/// A functor between groupoids; carried as plain index maps, with the
/// source and target passed alongside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupoidFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn identity(a: &Groupoid) -> GroupoidFunctor {
        GroupoidFunctor {
            obj_map: (0..a.n_objects).collect(),
            mor_map: (0..a.n_morphisms()).collect(),
        }
    }
}

pub fn check_functor(a: &Groupoid, b: &Groupoid, f: &GroupoidFunctor) -> Result<()> {
    if f.obj_map.len() != a.n_objects || f.mor_map.len() != a.n_morphisms() {
        return Err(Error::Malformed("functor maps have wrong lengths".into()));
    }
    for (m, &fm) in f.mor_map.iter().enumerate() {
        if b.mor[fm].src != f.obj_map[a.mor[m].src] || b.mor[fm].dst != f.obj_map[a.mor[m].dst] {
            return Err(Error::BadFunctor(format!("morphism {m} endpoints not preserved")));
        }
    }
    for (o, &fo) in f.obj_map.iter().enumerate() {
        if f.mor_map[a.identity_of[o]] != b.identity_of[fo] {
            return Err(Error::BadFunctor(format!("identity of object {o} not preserved")));
        }
    }
    for g in 0..a.n_morphisms() {
        for fm in 0..a.n_morphisms() {
            if let Some(h) = a.compose[g][fm] {
                if b.compose[f.mor_map[g]][f.mor_map[fm]] != Some(f.mor_map[h]) {
                    return Err(Error::BadFunctor(format!("composition ({g},{fm}) not preserved")));
                }
            }
        }
    }
    Ok(())
}

/// All functors A -> B, canonically ordered. A functor is determined by,
/// per component of A: the image of the base object, a group
/// homomorphism on the vertex group, and a target morphism for each
/// base path; this enumeration is complete and duplicate-free.
pub fn enumerate_functors(a: &Groupoid, b: &Groupoid, budget: u128) -> Result<Vec<GroupoidFunctor>> {
    // Per-component choice lists.
    struct CompChoice {
        base: usize,
        others: Vec<usize>,
        // each option: (tree morphism images per `others` entry, vertex hom as loop images)
        options: Vec<(Vec<usize>, Vec<usize>)>,
    }
    let mut comps: Vec<CompChoice> = Vec::new();
    let mut total: u128 = 1;
    for comp in &a.components {
        let base = comp[0];
        let others: Vec<usize> = comp[1..].to_vec();
        let (vg, loops) = a.vertex_group(base);
        let mut options = Vec::new();
        for b0 in 0..b.n_objects {
            let (wg, wloops) = b.vertex_group(b0);
            let homs = crate::group::enumerate_homs(&vg, &wg, budget)?;
            let mut tree_choices: Vec<Vec<usize>> = vec![vec![]];
            for _ in &others {
                let mut next = Vec::new();
                for partial in &tree_choices {
                    for m in 0..b.n_morphisms() {
                        if b.mor[m].src == b0 {
                            let mut p = partial.clone();
                            p.push(m);
                            next.push(p);
                        }
                    }
                }
                tree_choices = next;
                if tree_choices.len() as u128 > budget {
                    return Err(Error::BudgetExceeded { size: tree_choices.len() as u128, budget });
                }
            }
            for hom in &homs {
                let loop_images: Vec<usize> =
                    (0..loops.len()).map(|i| wloops[hom.image[i]]).collect();
                for tree in &tree_choices {
                    options.push((tree.clone(), loop_images.clone()));
                }
            }
        }
        total = total.saturating_mul(options.len() as u128);
        if total > budget {
            return Err(Error::BudgetExceeded { size: total, budget });
        }
        comps.push(CompChoice { base, others, options });
    }

    // Cartesian product of per-component options.
    let mut selected = vec![0usize; comps.len()];
    let mut out = Vec::new();
    loop {
        let mut obj_map = vec![usize::MAX; a.n_objects];
        let mut tree_image = vec![usize::MAX; a.n_objects]; // image of path_to[obj]
        for (c, comp) in comps.iter().enumerate() {
            let (tree, loop_images) = &comp.options[selected[c]];
            // the base image is the common source of the tree morphisms,
            // or of any loop image when the component is a single object
            let b0 = match tree.first() {
                Some(&m) => b.mor[m].src,
                None => b.mor[loop_images[0]].src,
            };
            obj_map[comp.base] = b0;
            tree_image[comp.base] = b.identity_of[b0];
            for (i, &o) in comp.others.iter().enumerate() {
                tree_image[o] = tree[i];
                obj_map[o] = b.mor[tree[i]].dst;
            }
        }
        let mut mor_map = vec![usize::MAX; a.n_morphisms()];
        for m in 0..a.n_morphisms() {
            let (src, dst) = (a.mor[m].src, a.mor[m].dst);
            let c = a.component_of[src];
            let comp_idx = comps.iter().position(|cc| a.component_of[cc.base] == c).unwrap();
            let comp = &comps[comp_idx];
            let (_, loop_images) = &comp.options[selected[comp_idx]];
            let (_, loops) = a.vertex_group(comp.base);
            // m = path(dst) ∘ loop ∘ path(src)^-1
            let l = a.comp(a.inv(a.path_to[dst]), a.comp(m, a.path_to[src]));
            let li = loops.iter().position(|&x| x == l).unwrap();
            let img = b.comp(tree_image[dst], b.comp(loop_images[li], b.inv(tree_image[src])));
            mor_map[m] = img;
        }
        out.push(GroupoidFunctor { obj_map, mor_map });

        let mut c = comps.len();
        loop {
            if c == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            c -= 1;
            selected[c] += 1;
            if selected[c] < comps[c].options.len() {
                break;
            }
            selected[c] = 0;
        }
    }
}

/// A natural transformation between two functors with a shared source
/// and target, stored as one target morphism per source object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NatTransformation {
    pub component: Vec<usize>,
}

/// All natural transformations F => G, found by per-component
/// propagation: choose the component at the base, push it along base
/// paths, then check naturality on every morphism.
pub fn natural_transformations(
    a: &Groupoid,
    b: &Groupoid,
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
) -> Vec<NatTransformation> {
    let mut per_comp: Vec<Vec<Vec<usize>>> = Vec::new(); // per component: candidate partial assignments
    for comp in &a.components {
        let base = comp[0];
        let mut candidates = Vec::new();
        'cand: for tau0 in b.morphisms_between(f.obj_map[base], g.obj_map[base]) {
            let mut assignment = vec![usize::MAX; a.n_objects];
            for &o in comp {
                let p = a.path_to[o];
                assignment[o] = b.comp(g.mor_map[p], b.comp(tau0, b.inv(f.mor_map[p])));
            }
            for m in 0..a.n_morphisms() {
                let (s, d) = (a.mor[m].src, a.mor[m].dst);
                if a.component_of[s] != a.component_of[base] {
                    continue;
                }
                if b.comp(g.mor_map[m], assignment[s]) != b.comp(assignment[d], f.mor_map[m]) {
                    continue 'cand;
                }
            }
            candidates.push(assignment);
        }
        per_comp.push(candidates);
    }
    // cartesian product over components
    let mut out = Vec::new();
    let mut sel = vec![0usize; per_comp.len()];
    if per_comp.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let mut component = vec![usize::MAX; a.n_objects];
        for (ci, cands) in per_comp.iter().enumerate() {
            for (o, &v) in cands[sel[ci]].iter().enumerate() {
                if v != usize::MAX {
                    component[o] = v;
                }
            }
        }
        out.push(NatTransformation { component });
        let mut c = per_comp.len();
        loop {
            if c == 0 {
                out.sort();
                return out;
            }
            c -= 1;
            sel[c] += 1;
            if sel[c] < per_comp[c].len() {
                break;
            }
            sel[c] = 0;
        }
    }
}

/// Group of natural self-transformations of a functor under vertical
/// composition, with the backing transformations.
pub fn aut_group_of_functor(
    a: &Groupoid,
    b: &Groupoid,
    f: &GroupoidFunctor,
) -> (FiniteGroup, Vec<NatTransformation>) {
    let elems = natural_transformations(a, b, f, f);
    let index_of = |t: &NatTransformation| elems.binary_search(t).unwrap();
    let n = elems.len();
    let mut table = vec![vec![0; n]; n];
    for (i, s) in elems.iter().enumerate() {
        for (j, t) in elems.iter().enumerate() {
            let composed = NatTransformation {
                component: s
                    .component
                    .iter()
                    .zip(&t.component)
                    .map(|(&x, &y)| b.comp(x, y))
                    .collect(),
            };
            table[i][j] = index_of(&composed);
        }
    }
    let ident = NatTransformation {
        component: f.obj_map.iter().map(|&o| b.identity_of[o]).collect(),
    };
    let identity = index_of(&ident);
    let group =
        validate_group(table, identity, "Aut(functor)").expect("vertical composition group");
    (group, elems)
}

/// Per component, the center of the vertex group at the canonical base;
/// checked against the self-transformation group of the identity.
pub fn groupoid_center_splitting(a: &Groupoid) -> Result<Vec<(usize, FiniteGroup)>> {
    let mut centers = Vec::new();
    let mut product = FiniteGroup::trivial("1");
    for (c, comp) in a.components.iter().enumerate() {
        let (vg, _) = a.vertex_group(comp[0]);
        let z = crate::group::center_of_group(&vg);
        let idx = |m: usize| z.iter().position(|&x| x == m).unwrap();
        let table: Vec<Vec<usize>> =
            z.iter().map(|&x| z.iter().map(|&y| idx(vg.mul(x, y))).collect()).collect();
        let zg = validate_group(table, idx(vg.identity), &format!("Z(component {c})"))?;
        product = FiniteGroup::direct_product(&product, &zg, "Z-product");
        centers.push((c, zg));
    }
    let (autg, _) = aut_group_of_functor(a, a, &GroupoidFunctor::identity(a));
    let mut orders_a: Vec<usize> = (0..autg.order).map(|x| autg.element_order(x)).collect();
    let mut orders_b: Vec<usize> = (0..product.order).map(|x| product.element_order(x)).collect();
    orders_a.sort_unstable();
    orders_b.sort_unstable();
    if autg.order != product.order || orders_a != orders_b {
        return Err(Error::SplittingMismatch(format!(
            "identity self-transformations have order {} but the product of centers has order {}",
            autg.order, product.order
        )));
    }
    Ok(centers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center_of_group, FiniteGroup};

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap()
    }

    #[test]
    fn trivial_groupoid_is_valid() {
        let g = Groupoid::discrete(1);
        assert_eq!(g.n_morphisms(), 1);
        assert_eq!(g.components.len(), 1);
    }

    #[test]
    fn one_object_z3() {
        let g = Groupoid::one_object_from_group(&FiniteGroup::cyclic(3, "Z3"));
        let (vg, _) = g.vertex_group(0);
        assert_eq!(vg.order, 3);
    }

    #[test]
    fn non_invertible_arrow_rejected() {
        // two objects, identities, one arrow 0 -> 1 with no inverse
        let raw = RawGroupoid {
            n_objects: 2,
            morphisms: vec![(0, 0), (1, 1), (0, 1)],
            identities: vec![0, 1],
            compose: vec![(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
        };
        match validate_groupoid(&raw) {
            Err(Error::NotInvertible(2)) => {}
            other => panic!("expected NotInvertible(2), got {other:?}"),
        }
    }

    #[test]
    fn pi0_discrete() {
        assert_eq!(pi0(&Groupoid::discrete(3)).len(), 3);
        let g = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        assert_eq!(pi0(&g).len(), 1);
    }

    #[test]
    fn product_of_cyclics() {
        let z2 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        let z3 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(3, "Z3"));
        let p = product_groupoid(&[&z2, &z3], 1 << 20).unwrap();
        assert_eq!(p.n_objects, 1);
        let (vg, _) = p.vertex_group(0);
        assert_eq!(vg.order, 6);
        assert_eq!(vg.element_order(vg.mul(1, 0).max(1)), vg.element_order(1));
        // empty product is trivial
        let e = product_groupoid(&[], 1 << 20).unwrap();
        assert_eq!(e.n_objects, 1);
        assert_eq!(e.n_morphisms(), 1);
    }

    #[test]
    fn functor_counts() {
        let z2 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        let fs = enumerate_functors(&z2, &z2, 1 << 20).unwrap();
        assert_eq!(fs.len(), 2);
        let d = Groupoid::discrete(1);
        let into = enumerate_functors(&d, &z2, 1 << 20).unwrap();
        assert_eq!(into.len(), 1);
        let d3 = Groupoid::discrete(3);
        assert_eq!(enumerate_functors(&d, &d3, 1 << 20).unwrap().len(), 3);
    }

    // Oracle: filter all (obj_map, mor_map) pairs by functoriality.
    fn functors_brute(a: &Groupoid, b: &Groupoid) -> Vec<GroupoidFunctor> {
        let mut out = Vec::new();
        let n_obj = a.n_objects;
        let n_mor = a.n_morphisms();
        let obj_total = b.n_objects.pow(n_obj as u32);
        let mor_total = b.n_morphisms().pow(n_mor as u32);
        for oc in 0..obj_total {
            let mut o = oc;
            let obj_map: Vec<usize> = (0..n_obj)
                .map(|_| {
                    let v = o % b.n_objects;
                    o /= b.n_objects;
                    v
                })
                .collect();
            for mc in 0..mor_total {
                let mut m = mc;
                let mor_map: Vec<usize> = (0..n_mor)
                    .map(|_| {
                        let v = m % b.n_morphisms();
                        m /= b.n_morphisms();
                        v
                    })
                    .collect();
                let f = GroupoidFunctor { obj_map: obj_map.clone(), mor_map };
                if check_functor(a, b, &f).is_ok() {
                    out.push(f);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn functor_enumeration_matches_brute_force() {
        let z2 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        let d2 = Groupoid::discrete(2);
        let z3 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(3, "Z3"));
        let du = Groupoid::disjoint_union(&[&z2, &d2]);
        for (a, b) in [(&z2, &z2), (&z2, &z3), (&du, &z2), (&d2, &du)] {
            assert_eq!(enumerate_functors(a, b, 1 << 24).unwrap(), functors_brute(a, b));
        }
    }

    #[test]
    fn nat_transformations_of_identity_give_center() {
        let g = Groupoid::one_object_from_group(&s3());
        let id = GroupoidFunctor::identity(&g);
        let nts = natural_transformations(&g, &g, &id, &id);
        let z = center_of_group(&s3());
        assert_eq!(nts.len(), z.len());
    }

    // Oracle: filter all component assignments by naturality.
    fn nat_brute(
        a: &Groupoid,
        b: &Groupoid,
        f: &GroupoidFunctor,
        g: &GroupoidFunctor,
    ) -> Vec<NatTransformation> {
        let per_obj: Vec<Vec<usize>> = (0..a.n_objects)
            .map(|o| b.morphisms_between(f.obj_map[o], g.obj_map[o]))
            .collect();
        let mut out = Vec::new();
        let mut sel = vec![0usize; a.n_objects];
        if per_obj.iter().any(|c| c.is_empty()) {
            return out;
        }
        loop {
            let component: Vec<usize> =
                sel.iter().enumerate().map(|(o, &i)| per_obj[o][i]).collect();
            let natural = (0..a.n_morphisms()).all(|m| {
                b.comp(g.mor_map[m], component[a.mor[m].src])
                    == b.comp(component[a.mor[m].dst], f.mor_map[m])
            });
            if natural {
                out.push(NatTransformation { component });
            }
            let mut o = a.n_objects;
            loop {
                if o == 0 {
                    out.sort();
                    return out;
                }
                o -= 1;
                sel[o] += 1;
                if sel[o] < per_obj[o].len() {
                    break;
                }
                sel[o] = 0;
            }
        }
    }

    #[test]
    fn nat_transformations_match_brute_force() {
        let z2 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        let z4 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(4, "Z4"));
        let du = Groupoid::disjoint_union(&[&z2, &z4]);
        for (a, b) in [(&z2, &z4), (&du, &z2), (&z4, &du)] {
            let fs = enumerate_functors(a, b, 1 << 20).unwrap();
            for f in &fs {
                for g in &fs {
                    assert_eq!(
                        natural_transformations(a, b, f, g),
                        nat_brute(a, b, f, g)
                    );
                }
            }
        }
    }

    #[test]
    fn functors_to_different_components_have_no_transformations() {
        let z2 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(2, "Z2"));
        let d2 = Groupoid::discrete(2);
        let fs = enumerate_functors(&z2, &d2, 1 << 20).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(natural_transformations(&z2, &d2, &fs[0], &fs[1]).is_empty());
    }

    #[test]
    fn aut_of_identity_splits() {
        let z4 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(4, "Z4"));
        let s3g = Groupoid::one_object_from_group(&s3());
        let du = Groupoid::disjoint_union(&[&z4, &s3g]);
        let centers = groupoid_center_splitting(&du).unwrap();
        assert_eq!(centers.len(), 2);
        assert_eq!(centers[0].1.order, 4);
        assert_eq!(centers[1].1.order, 1);
        // one-object S3 groupoid has trivial center
        let only = groupoid_center_splitting(&s3g).unwrap();
        assert_eq!(only[0].1.order, 1);
        // discrete groupoid: product of trivial groups
        let d = groupoid_center_splitting(&Groupoid::discrete(3)).unwrap();
        assert!(d.iter().all(|(_, z)| z.order == 1));
    }

    #[test]
    fn vertical_composition_is_associative_with_identity() {
        let z4 = Groupoid::one_object_from_group(&FiniteGroup::cyclic(4, "Z4"));
        let id = GroupoidFunctor::identity(&z4);
        let (g, _) = aut_group_of_functor(&z4, &z4, &id);
        assert_eq!(g.order, 4);
    }
}
