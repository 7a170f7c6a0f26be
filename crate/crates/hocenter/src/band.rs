//! The band category on a finite list of groups: objects are the
//! groups, 1-cells are homomorphisms, 2-cells α → β are elements h of
//! the target with β = h α h⁻¹, composing by (k, h) ↦ k·β(h).

use crate::enriched::{validate_enriched, GEnrichedCategory};
use crate::error::{Error, Result};
use crate::group::{enumerate_homs, FiniteGroup, GroupHom};
use crate::groupoid::{validate_groupoid, Groupoid, RawGroupoid};

/// 2-cell id of the conjugator `h` acting on 1-cell `alpha` inside a
/// band hom-groupoid with target of order `ord`.
fn cell(alpha: usize, h: usize, ord: usize) -> usize {
    alpha * ord + h
}

fn hom_groupoid(tgt: &FiniteGroup, homs: &[GroupHom]) -> Result<Groupoid> {
    let conj = |alpha: &GroupHom, h: usize| -> GroupHom {
        GroupHom { image: alpha.image.iter().map(|&v| tgt.conj(h, v)).collect() }
    };
    let find = |hom: &GroupHom| homs.binary_search_by(|p| p.image.cmp(&hom.image)).unwrap();
    let mut morphisms = Vec::new();
    for alpha in homs {
        for h in 0..tgt.order {
            let a = find(alpha);
            morphisms.push((a, find(&conj(alpha, h))));
        }
    }
    let identities: Vec<usize> =
        (0..homs.len()).map(|a| cell(a, tgt.identity, tgt.order)).collect();
    let mut compose = Vec::new();
    for a in 0..homs.len() {
        for h in 0..tgt.order {
            let m1 = cell(a, h, tgt.order);
            let b = morphisms[m1].1;
            for k in 0..tgt.order {
                let m2 = cell(b, k, tgt.order);
                compose.push((m2, m1, cell(a, tgt.mul(k, h), tgt.order)));
            }
        }
    }
    validate_groupoid(&RawGroupoid {
        n_objects: homs.len(),
        morphisms,
        identities,
        compose,
    })
}

pub fn build_band_category(groups: &[FiniteGroup], budget: u128) -> Result<GEnrichedCategory> {
    let n = groups.len();
    let mut homs = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            homs[x][y] = enumerate_homs(&groups[x], &groups[y], budget)?;
        }
    }
    let mut hom = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            row.push(hom_groupoid(&groups[y], &homs[x][y])?);
        }
        hom.push(row);
    }
    let find = |x: usize, y: usize, h: &GroupHom| {
        homs[x][y].binary_search_by(|p| p.image.cmp(&h.image)).map_err(|_| {
            Error::Internal(format!("composite homomorphism missing from Hom({x},{y})"))
        })
    };
    let mut comp1 = vec![vec![vec![Vec::new(); n]; n]; n];
    let mut comp2 = vec![vec![vec![Vec::new(); n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut t1 = vec![vec![0; homs[x][y].len()]; homs[y][z].len()];
                for (g, beta) in homs[y][z].iter().enumerate() {
                    for (f, alpha) in homs[x][y].iter().enumerate() {
                        let composite = GroupHom {
                            image: alpha.image.iter().map(|&v| beta.image[v]).collect(),
                        };
                        t1[g][f] = find(x, z, &composite)?;
                    }
                }
                let (oy, oz) = (groups[y].order, groups[z].order);
                let n2_yz = homs[y][z].len() * oz;
                let n2_xy = homs[x][y].len() * oy;
                let mut t2 = vec![vec![0; n2_xy]; n2_yz];
                for (g, beta) in homs[y][z].iter().enumerate() {
                    for k in 0..oz {
                        let m = cell(g, k, oz);
                        for f in 0..homs[x][y].len() {
                            for h in 0..oy {
                                let a = cell(f, h, oy);
                                let val = groups[z].mul(k, beta.image[h]);
                                t2[m][a] = cell(t1[g][f], val, oz);
                            }
                        }
                    }
                }
                comp1[x][y][z] = t1;
                comp2[x][y][z] = t2;
            }
        }
    }
    let unit: Vec<usize> = (0..n)
        .map(|x| {
            let id = GroupHom { image: (0..groups[x].order).collect() };
            find(x, x, &id)
        })
        .collect::<Result<_>>()?;
    let c = GEnrichedCategory {
        n_objects: n,
        labels: groups.iter().map(|g| g.label.clone()).collect(),
        hom,
        unit,
        comp1,
        comp2,
    };
    validate_enriched(&c)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{rep_classes, FiniteGroup};

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").unwrap()
    }

    #[test]
    fn band_on_trivial_group_is_terminal() {
        let c = build_band_category(&[FiniteGroup::trivial("1")], 1 << 20).unwrap();
        assert_eq!(c.hom[0][0].n_objects, 1);
        assert_eq!(c.hom[0][0].n_morphisms(), 1);
    }

    #[test]
    fn band_on_z2() {
        let c = build_band_category(&[FiniteGroup::cyclic(2, "Z2")], 1 << 20).unwrap();
        let h = &c.hom[0][0];
        // two 1-cells (trivial and identity), each with vertex group Z2,
        // no cross 2-cells since conjugation is trivial
        assert_eq!(h.n_objects, 2);
        assert_eq!(h.components.len(), 2);
        let (vg, _) = h.vertex_group(0);
        assert_eq!(vg.order, 2);
        assert!(h.morphisms_between(0, 1).is_empty());
    }

    #[test]
    fn band_z2_s3_hom_groupoid() {
        let z2 = FiniteGroup::cyclic(2, "Z2");
        let c = build_band_category(&[z2.clone(), s3()], 1 << 20).unwrap();
        let h = &c.hom[0][1];
        assert_eq!(h.n_objects, 4);
        assert_eq!(h.components.len(), 2);
        assert_eq!(h.components.len(), rep_classes(&z2, &s3(), 1 << 20).unwrap().len());
        // transposition-valued 1-cell: vertex group of order 2
        let sizes: Vec<usize> = h
            .components
            .iter()
            .map(|comp| h.vertex_group(comp[0]).0.order)
            .collect();
        let mut sizes = sizes;
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 6]);
    }

    #[test]
    fn band_units_are_identity_homs() {
        let c =
            build_band_category(&[FiniteGroup::cyclic(2, "Z2"), FiniteGroup::cyclic(3, "Z3")], 1 << 20)
                .unwrap();
        for x in 0..2 {
            // unit composes as a strict identity on 1-cells
            for y in 0..2 {
                for f in 0..c.hom[x][y].n_objects {
                    assert_eq!(c.c1(x, x, y, f, c.unit[x]), f);
                    assert_eq!(c.c1(x, y, y, c.unit[y], f), f);
                }
            }
        }
    }
}
