//! Categories enriched in finite groupoids, and their strict and
//! homotopy-category centers.
//!
//! Objects of a hom-groupoid `hom[x][y]` are called 1-cells, its
//! morphisms 2-cells. Composition is a functor
//! H(y,z) × H(x,y) → H(x,z), written `comp(g, f) = g ∘ f`, carried as
//! two dense tables: `comp1` on 1-cells, `comp2` on 2-cells.

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

#[derive(Debug, Clone)]
pub struct GEnrichedCategory {
    pub n_objects: usize,
    pub labels: Vec<String>,
    pub hom: Vec<Vec<Groupoid>>,
    /// 1-cell id of the unit e_x inside hom[x][x].
    pub unit: Vec<usize>,
    /// comp1[x][y][z][g][f]: composite 1-cell of g ∈ H(y,z), f ∈ H(x,y).
    pub comp1: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    /// comp2[x][y][z][m][a]: horizontal composite of 2-cells.
    pub comp2: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
}

impl GEnrichedCategory {
    pub fn c1(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        self.comp1[x][y][z][g][f]
    }

    pub fn c2(&self, x: usize, y: usize, z: usize, m: usize, a: usize) -> usize {
        self.comp2[x][y][z][m][a]
    }

    /// Identity 2-cell on a 1-cell f ∈ H(x,y).
    pub fn id2(&self, x: usize, y: usize, f: usize) -> usize {
        self.hom[x][y].identity_of[f]
    }

    /// Left-nested composite of a tuple of 1-cells fᵢ ∈ H(xᵢ, xᵢ₋₁);
    /// for the empty tuple, the unit of xs[0].
    pub fn mu1(&self, xs: &[usize], cells: &[usize]) -> usize {
        debug_assert_eq!(xs.len(), cells.len() + 1);
        if cells.is_empty() {
            return self.unit[xs[0]];
        }
        let mut acc = cells[0];
        for i in 1..cells.len() {
            acc = self.c1(xs[i + 1], xs[i], xs[0], acc, cells[i]);
        }
        acc
    }

    /// Left-nested horizontal composite of a tuple of 2-cells.
    pub fn mu2(&self, xs: &[usize], mors: &[usize]) -> usize {
        debug_assert_eq!(xs.len(), mors.len() + 1);
        if mors.is_empty() {
            return self.id2(xs[0], xs[0], self.unit[xs[0]]);
        }
        let mut acc = mors[0];
        for i in 1..mors.len() {
            acc = self.c2(xs[i + 1], xs[i], xs[0], acc, mors[i]);
        }
        acc
    }

    /// All 1-cells of H(x,y) are invertible: for each f there is g with
    /// g∘f = e_x and f∘g = e_y.
    pub fn all_one_cells_invertible(&self) -> bool {
        (0..self.n_objects).all(|x| {
            (0..self.n_objects).all(|y| {
                (0..self.hom[x][y].n_objects).all(|f| {
                    (0..self.hom[y][x].n_objects).any(|g| {
                        self.c1(x, y, x, g, f) == self.unit[x]
                            && self.c1(y, x, y, f, g) == self.unit[y]
                    })
                })
            })
        })
    }
}

/// Validate all composition axioms of an assembled enriched category.
/// The hom-groupoids themselves are assumed already validated.
pub fn validate_enriched(c: &GEnrichedCategory) -> Result<()> {
    let n = c.n_objects;
    if c.labels.len() != n || c.unit.len() != n || c.hom.len() != n {
        return Err(Error::Malformed("object-indexed fields have wrong lengths".into()));
    }
    for x in 0..n {
        if c.unit[x] >= c.hom[x][x].n_objects {
            return Err(Error::Malformed(format!("unit 1-cell of object {x} out of range")));
        }
    }
    // table shapes, ranges, and functor endpoint preservation
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (&c.hom[x][y], &c.hom[y][z], &c.hom[x][z]);
                let t1 = &c.comp1[x][y][z];
                let t2 = &c.comp2[x][y][z];
                if t1.len() != hyz.n_objects || t2.len() != hyz.n_morphisms() {
                    return Err(Error::Malformed(format!(
                        "composition table for ({x},{y},{z}) has wrong shape"
                    )));
                }
                for g in 0..hyz.n_objects {
                    if t1[g].len() != hxy.n_objects {
                        return Err(Error::Malformed(format!(
                            "composition table for ({x},{y},{z}) has wrong shape"
                        )));
                    }
                    for f in 0..hxy.n_objects {
                        if t1[g][f] >= hxz.n_objects {
                            return Err(Error::Malformed(format!(
                                "composite 1-cell out of range at ({x},{y},{z})"
                            )));
                        }
                    }
                }
                for m in 0..hyz.n_morphisms() {
                    if t2[m].len() != hxy.n_morphisms() {
                        return Err(Error::Malformed(format!(
                            "2-cell composition table for ({x},{y},{z}) has wrong shape"
                        )));
                    }
                    for a in 0..hxy.n_morphisms() {
                        let r = t2[m][a];
                        if r >= hxz.n_morphisms() {
                            return Err(Error::Malformed(format!(
                                "composite 2-cell out of range at ({x},{y},{z})"
                            )));
                        }
                        let want_src = t1[hyz.mor[m].src][hxy.mor[a].src];
                        let want_dst = t1[hyz.mor[m].dst][hxy.mor[a].dst];
                        if hxz.mor[r].src != want_src || hxz.mor[r].dst != want_dst {
                            return Err(Error::BadFunctor(format!(
                                "2-cell composite endpoints wrong at ({x},{y},{z}), cells ({m},{a})"
                            )));
                        }
                    }
                }
                // identity preservation
                for g in 0..hyz.n_objects {
                    for f in 0..hxy.n_objects {
                        let lhs = t2[hyz.identity_of[g]][hxy.identity_of[f]];
                        if lhs != hxz.identity_of[t1[g][f]] {
                            return Err(Error::BadFunctor(format!(
                                "identity 2-cells not preserved at ({x},{y},{z}), 1-cells ({g},{f})"
                            )));
                        }
                    }
                }
                // interchange
                for m2 in 0..hyz.n_morphisms() {
                    for m1 in 0..hyz.n_morphisms() {
                        if hyz.mor[m1].dst != hyz.mor[m2].src {
                            continue;
                        }
                        let mv = hyz.comp(m2, m1);
                        for a2 in 0..hxy.n_morphisms() {
                            for a1 in 0..hxy.n_morphisms() {
                                if hxy.mor[a1].dst != hxy.mor[a2].src {
                                    continue;
                                }
                                let av = hxy.comp(a2, a1);
                                if t2[mv][av] != hxz.comp(t2[m2][a2], t2[m1][a1]) {
                                    return Err(Error::BadFunctor(format!(
                                        "interchange fails at ({x},{y},{z}), \
                                         2-cells ({m2}∘{m1}, {a2}∘{a1})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // strict unitality
    for x in 0..n {
        for y in 0..n {
            let hxy = &c.hom[x][y];
            for f in 0..hxy.n_objects {
                if c.c1(x, x, y, f, c.unit[x]) != f || c.c1(x, y, y, c.unit[y], f) != f {
                    return Err(Error::NotUnital(format!("1-cell {f} of ({x},{y})")));
                }
            }
            let idx = c.id2(x, x, c.unit[x]);
            let idy = c.id2(y, y, c.unit[y]);
            for a in 0..hxy.n_morphisms() {
                if c.c2(x, x, y, a, idx) != a || c.c2(x, y, y, idy, a) != a {
                    return Err(Error::NotUnital(format!("2-cell {a} of ({x},{y})")));
                }
            }
        }
    }
    // strict associativity on 1-cells and on 2-cells
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for h in 0..c.hom[z][w].n_objects {
                        for g in 0..c.hom[y][z].n_objects {
                            let hg = c.c1(y, z, w, h, g);
                            for f in 0..c.hom[x][y].n_objects {
                                if c.c1(x, y, w, hg, f) != c.c1(x, z, w, h, c.c1(x, y, z, g, f)) {
                                    return Err(Error::CompNotAssociative(format!(
                                        "1-cells ({h},{g},{f}) over objects ({x},{y},{z},{w})"
                                    )));
                                }
                            }
                        }
                    }
                    for m in 0..c.hom[z][w].n_morphisms() {
                        for b in 0..c.hom[y][z].n_morphisms() {
                            let mb = c.c2(y, z, w, m, b);
                            for a in 0..c.hom[x][y].n_morphisms() {
                                if c.c2(x, y, w, mb, a) != c.c2(x, z, w, m, c.c2(x, y, z, b, a)) {
                                    return Err(Error::CompNotAssociative(format!(
                                        "2-cells ({m},{b},{a}) over objects ({x},{y},{z},{w})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A small ordinary category with dense composition tables.
/// `compose[x][y][z][g][f] = g ∘ f` for f: x→y, g: y→z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryCategory {
    pub n_objects: usize,
    pub labels: Vec<String>,
    /// Number of morphisms x → y.
    pub n_mor: Vec<Vec<usize>>,
    pub compose: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    /// Identity morphism index inside hom(x,x).
    pub identity: Vec<usize>,
}

pub fn validate_category(cat: &OrdinaryCategory) -> Result<()> {
    let n = cat.n_objects;
    for x in 0..n {
        if cat.identity[x] >= cat.n_mor[x][x] {
            return Err(Error::MissingIdentity(x));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = &cat.compose[x][y][z];
                if t.len() != cat.n_mor[y][z] || t.iter().any(|r| r.len() != cat.n_mor[x][y]) {
                    return Err(Error::Malformed(format!(
                        "composition table ({x},{y},{z}) has wrong shape"
                    )));
                }
                for g in 0..cat.n_mor[y][z] {
                    for f in 0..cat.n_mor[x][y] {
                        if t[g][f] >= cat.n_mor[x][z] {
                            return Err(Error::Malformed(format!(
                                "composite out of range at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
            for f in 0..cat.n_mor[x][y] {
                if cat.compose[x][x][y][f][cat.identity[x]] != f
                    || cat.compose[x][y][y][cat.identity[y]][f] != f
                {
                    return Err(Error::NotUnital(format!("morphism {f}: {x} -> {y}")));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for h in 0..cat.n_mor[z][w] {
                        for g in 0..cat.n_mor[y][z] {
                            let hg = cat.compose[y][z][w][h][g];
                            for f in 0..cat.n_mor[x][y] {
                                let gf = cat.compose[x][y][z][g][f];
                                if cat.compose[x][y][w][hg][f] != cat.compose[x][z][w][h][gf] {
                                    return Err(Error::NotAssociative(h, g, f));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A finite monoid whose elements are families of indices (one entry
/// per object of the underlying category).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMonoid {
    pub elements: Vec<Vec<usize>>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FamilyMonoid {
    pub fn is_commutative(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Every element invertible.
    pub fn is_group(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|a| (0..n).any(|b| self.table[a][b] == self.identity && self.table[b][a] == self.identity))
    }
}

/// Center of an ordinary category: families (z_x: x → x) with
/// f ∘ z_x = z_y ∘ f for every f: x → y, under componentwise
/// composition.
pub fn category_center(cat: &OrdinaryCategory, budget: u128) -> Result<FamilyMonoid> {
    let n = cat.n_objects;
    let space: u128 = (0..n).map(|x| cat.n_mor[x][x] as u128).product();
    if space > budget {
        return Err(Error::BudgetExceeded { size: space, budget });
    }
    let mut elements = Vec::new();
    let mut family = vec![0usize; n];
    'outer: loop {
        let central = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..cat.n_mor[x][y]).all(|f| {
                    cat.compose[x][x][y][f][family[x]] == cat.compose[x][y][y][family[y]][f]
                })
            })
        });
        if central {
            elements.push(family.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            family[i] += 1;
            if family[i] < cat.n_mor[i][i] {
                continue 'outer;
            }
            family[i] = 0;
        }
    }
    let index_of = |fam: &Vec<usize>| elements.iter().position(|e| e == fam).unwrap();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let prod: Vec<usize> =
                        (0..n).map(|x| cat.compose[x][x][x][a[x]][b[x]]).collect();
                    index_of(&prod)
                })
                .collect()
        })
        .collect();
    let ident: Vec<usize> = cat.identity.clone();
    let identity = index_of(&ident);
    let monoid = FamilyMonoid { elements, table, identity };
    if !monoid.is_commutative() {
        return Err(Error::NotCommutative("center of an ordinary category".into()));
    }
    Ok(monoid)
}

/// Category of 1-cells with strict composition.
pub fn underlying_category(c: &GEnrichedCategory) -> OrdinaryCategory {
    let n = c.n_objects;
    OrdinaryCategory {
        n_objects: n,
        labels: c.labels.clone(),
        n_mor: (0..n)
            .map(|x| (0..n).map(|y| c.hom[x][y].n_objects).collect())
            .collect(),
        compose: c.comp1.clone(),
        identity: c.unit.clone(),
    }
}

/// Same objects, morphisms = components of the hom-groupoids, with the
/// induced composition; well-definedness on components is checked.
pub fn homotopy_category(c: &GEnrichedCategory) -> Result<OrdinaryCategory> {
    let n = c.n_objects;
    let n_mor: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| c.hom[x][y].components.len()).collect())
        .collect();
    let mut compose = vec![vec![vec![Vec::new(); n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut t = vec![vec![usize::MAX; n_mor[x][y]]; n_mor[y][z]];
                for g in 0..c.hom[y][z].n_objects {
                    let cg = c.hom[y][z].component_of[g];
                    for f in 0..c.hom[x][y].n_objects {
                        let cf = c.hom[x][y].component_of[f];
                        let comp = c.hom[x][z].component_of[c.c1(x, y, z, g, f)];
                        if t[cg][cf] == usize::MAX {
                            t[cg][cf] = comp;
                        } else if t[cg][cf] != comp {
                            return Err(Error::IllDefinedComposition(format!(
                                "components ({cg},{cf}) over objects ({x},{y},{z})"
                            )));
                        }
                    }
                }
                compose[x][y][z] = t;
            }
        }
    }
    let identity: Vec<usize> =
        (0..n).map(|x| c.hom[x][x].component_of[c.unit[x]]).collect();
    let cat = OrdinaryCategory { n_objects: n, labels: c.labels.clone(), n_mor, compose, identity };
    validate_category(&cat)?;
    Ok(cat)
}

/// Center of the homotopy category.
pub fn ho_center(c: &GEnrichedCategory, budget: u128) -> Result<FamilyMonoid> {
    category_center(&homotopy_category(c)?, budget)
}

/// The strict center: a groupoid of strictly central 1-cell families
/// and strictly central 2-cell families, plus the commutative monoid
/// structure on its objects.
#[derive(Debug, Clone)]
pub struct StrictCenter {
    /// Families (Φ_x: 1-cell of H(x,x)) with comp(f, Φ_x) = comp(Φ_y, f)
    /// for every 1-cell f.
    pub objects: Vec<Vec<usize>>,
    /// (source object index, target object index, per-object 2-cells).
    pub morphisms: Vec<(usize, usize, Vec<usize>)>,
    pub monoid: FamilyMonoid,
}

pub fn strict_center(c: &GEnrichedCategory, budget: u128) -> Result<StrictCenter> {
    let n = c.n_objects;
    let space: u128 = (0..n).map(|x| c.hom[x][x].n_objects as u128).product();
    if space > budget {
        return Err(Error::BudgetExceeded { size: space, budget });
    }
    let mut objects = Vec::new();
    let mut family = vec![0usize; n];
    'outer: loop {
        let central = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..c.hom[x][y].n_objects)
                    .all(|f| c.c1(x, x, y, f, family[x]) == c.c1(x, y, y, family[y], f))
            })
        });
        if central {
            objects.push(family.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            family[i] += 1;
            if family[i] < c.hom[i][i].n_objects {
                continue 'outer;
            }
            family[i] = 0;
        }
    }
    // 2-cell families between center objects
    let mut morphisms = Vec::new();
    for (si, src) in objects.iter().enumerate() {
        for (ti, tgt) in objects.iter().enumerate() {
            let per_obj: Vec<Vec<usize>> = (0..n)
                .map(|x| {
                    (0..c.hom[x][x].n_morphisms())
                        .filter(|&a| {
                            c.hom[x][x].mor[a].src == src[x] && c.hom[x][x].mor[a].dst == tgt[x]
                        })
                        .collect()
                })
                .collect();
            if per_obj.iter().any(|v| v.is_empty()) {
                continue;
            }
            let mut sel = vec![0usize; n];
            'fam: loop {
                let fam: Vec<usize> = (0..n).map(|x| per_obj[x][sel[x]]).collect();
                let central = (0..n).all(|x| {
                    (0..n).all(|y| {
                        (0..c.hom[x][y].n_objects).all(|f| {
                            let idf = c.id2(x, y, f);
                            c.c2(x, x, y, idf, fam[x]) == c.c2(x, y, y, fam[y], idf)
                        })
                    })
                });
                if central {
                    morphisms.push((si, ti, fam));
                }
                let mut i = n;
                loop {
                    if i == 0 {
                        break 'fam;
                    }
                    i -= 1;
                    sel[i] += 1;
                    if sel[i] < per_obj[i].len() {
                        continue 'fam;
                    }
                    sel[i] = 0;
                }
            }
        }
    }
    let index_of = |fam: &Vec<usize>| objects.iter().position(|e| e == fam).unwrap();
    let table: Vec<Vec<usize>> = objects
        .iter()
        .map(|a| {
            objects
                .iter()
                .map(|b| {
                    let prod: Vec<usize> = (0..n).map(|x| c.c1(x, x, x, a[x], b[x])).collect();
                    index_of(&prod)
                })
                .collect()
        })
        .collect();
    let identity = index_of(&c.unit.clone());
    let monoid = FamilyMonoid { elements: objects.clone(), table, identity };
    if !monoid.is_commutative() {
        return Err(Error::NotCommutative("strict center object monoid".into()));
    }
    Ok(StrictCenter { objects, morphisms, monoid })
}

/// Discrete enrichment of an ordinary category: hom-groupoids have
/// identity 2-cells only.
pub fn discrete_enrichment(cat: &OrdinaryCategory) -> Result<GEnrichedCategory> {
    let n = cat.n_objects;
    let hom: Vec<Vec<Groupoid>> = (0..n)
        .map(|x| (0..n).map(|y| Groupoid::discrete(cat.n_mor[x][y])).collect())
        .collect();
    let comp2 = cat.compose.clone(); // identity 2-cells are numbered like 1-cells
    let c = GEnrichedCategory {
        n_objects: n,
        labels: cat.labels.clone(),
        hom,
        unit: cat.identity.clone(),
        comp1: cat.compose.clone(),
        comp2,
    };
    validate_category(cat)?;
    validate_enriched(&c)?;
    Ok(c)
}

/// One object, one 1-cell, 2-cells a given abelian group A with
/// horizontal composite = product. Interchange forces A abelian; the
/// validator rejects anything else.
pub fn suspension(a: &crate::group::FiniteGroup) -> Result<GEnrichedCategory> {
    let g = Groupoid::one_object_from_group(a);
    let m = g.n_morphisms();
    let table: Vec<Vec<usize>> =
        (0..m).map(|u| (0..m).map(|v| a.mul(u, v)).collect()).collect();
    let comp2 = vec![vec![vec![table]]];
    let c = GEnrichedCategory {
        n_objects: 1,
        labels: vec![a.label.clone()],
        hom: vec![vec![g]],
        unit: vec![0],
        comp1: vec![vec![vec![vec![vec![0]]]]],
        comp2,
    };
    validate_enriched(&c)?;
    Ok(c)
}

/// A one-object ordinary category from a monoid table.
pub fn monoid_category(table: &[Vec<usize>], identity: usize, label: &str) -> Result<OrdinaryCategory> {
    let m = table.len();
    if table.iter().any(|r| r.len() != m) || identity >= m {
        return Err(Error::Malformed(format!("monoid table for {label} is not square")));
    }
    let cat = OrdinaryCategory {
        n_objects: 1,
        labels: vec![label.to_string()],
        n_mor: vec![vec![m]],
        compose: vec![vec![vec![table.to_vec()]]],
        identity: vec![identity],
    };
    validate_category(&cat)?;
    Ok(cat)
}
