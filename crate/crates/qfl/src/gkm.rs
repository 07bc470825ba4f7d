//! Moment-graph (GKM) presentation: vertices are fixed points, edges carry
//! the root of the connecting one-dimensional orbit, and classes are tuples
//! of t-polynomials satisfying the divisibility condition along edges.

use std::collections::BTreeMap;

use crate::forest::forest_for_nc;
use crate::permnc::{all_perms, cayley_edge, enumerate_nc, Perm};
use crate::polyalg::forestpoly::forest_poly;
use crate::polyalg::mpoly::MPoly;
use crate::polyalg::ops::ev;

/// A class assigns a t-polynomial to every vertex.
pub type GkmClass = BTreeMap<Perm, MPoly>;

pub struct MomentGraph {
    verts: Vec<Perm>,
    edges: Vec<(usize, usize, (u8, u8))>,
}

impl MomentGraph {
    pub fn verts(&self) -> &[Perm] {
        &self.verts
    }

    /// Edges as (vertex index, vertex index, (a, b)) with a < b; the edge
    /// condition divides differences by t_b - t_a.
    pub fn edges(&self) -> &[(usize, usize, (u8, u8))] {
        &self.edges
    }
}

fn build(mut verts: Vec<Perm>) -> MomentGraph {
    verts.sort();
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if let Some(label) = cayley_edge(&verts[i], &verts[j]) {
                edges.push((i, j, label));
            }
        }
    }
    MomentGraph { verts, edges }
}

/// The moment graph on noncrossing permutations of [n]. Two vertices are
/// adjacent when they differ by one left-multiplied transposition; within
/// the noncrossing family these are exactly the Kreweras covers.
pub fn build_nc_gkm(n: usize) -> MomentGraph {
    build(enumerate_nc(n))
}

/// The moment graph of the full flag variety on S_n.
pub fn build_sn_gkm(n: usize) -> MomentGraph {
    build(all_perms(n))
}

/// Edge condition: t_b - t_a divides the difference across every edge.
/// Divisibility is tested by substituting t_b := t_a.
pub fn is_gkm_class(graph: &MomentGraph, class: &GkmClass) -> bool {
    graph.edges.iter().all(|(i, j, (a, b))| {
        let fi = &class[&graph.verts[*i]];
        let fj = &class[&graph.verts[*j]];
        let diff = fi.sub(fj);
        let mut tv: Vec<Option<MPoly>> = vec![None; *b as usize];
        tv[*b as usize - 1] = Some(MPoly::t(*a as usize));
        diff.subst_all(&[], &tv).is_zero()
    })
}

/// Restriction of an honest polynomial: vertex w gets f(t_w(1), ..).
pub fn class_from_poly(graph: &MomentGraph, f: &MPoly) -> GkmClass {
    graph
        .verts
        .iter()
        .map(|w| (w.clone(), ev(f, w)))
        .collect()
}

/// The flow-up class of a noncrossing vertex: every vertex w receives the
/// w-evaluation of the forest polynomial attached to v.
pub fn flowup_class(v: &Perm, n: usize) -> GkmClass {
    let forest = forest_for_nc(v).expect("flow-up classes sit at noncrossing vertices");
    let p = forest_poly(&forest);
    enumerate_nc(n)
        .into_iter()
        .map(|w| {
            let val = ev(&p, &w);
            (w, val)
        })
        .collect()
}

/// The product of t_{v(i)} - t_{v(j)} over the noncrossing inversions
/// i < j of v, the value a flow-up class takes at its own vertex.
pub fn flowup_diagonal(v: &Perm) -> MPoly {
    let mut prod = MPoly::one();
    for (i, j) in v.noncrossing_inversions() {
        let factor = MPoly::t(v.apply(i) as usize).sub(&MPoly::t(v.apply(j) as usize));
        prod = prod.mul(&factor);
    }
    prod
}

/// Vertices in expansion order: Coxeter length first, then lexicographic.
/// Peeling in this order meets each remaining support at its minimum, so
/// the division in expand_in_flowup is exact whenever an expansion exists.
pub fn expansion_order(n: usize) -> Vec<Perm> {
    let mut verts = enumerate_nc(n);
    verts.sort_by_key(|w| (w.length(), w.clone()));
    verts
}

/// Expands a class over the flow-up basis by peeling vertices in expansion
/// order; the coefficient at v is the remainder there divided exactly by
/// the diagonal value. None when some division fails or a remainder is left.
pub fn expand_in_flowup(n: usize, class: &GkmClass) -> Option<BTreeMap<Perm, MPoly>> {
    let mut remainder = class.clone();
    let mut out = BTreeMap::new();
    for v in expansion_order(n) {
        let at_v = remainder[&v].clone();
        if at_v.is_zero() {
            continue;
        }
        let flow = flowup_class(&v, n);
        let c = at_v.div_exact(&flow[&v])?;
        for (w, fv) in flow {
            let slot = remainder.get_mut(&w).unwrap();
            *slot = slot.sub(&c.mul(&fv));
        }
        out.insert(v, c);
    }
    remainder.values().all(MPoly::is_zero).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permnc::{bruhat_leq, kreweras_leq};

    fn pm(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    // rank in the noncrossing partition lattice: n minus the block count
    fn absolute_length(w: &Perm) -> usize {
        w.cycles().iter().map(|c| c.len() - 1).sum()
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn nc_graph_edges_are_kreweras_covers() {
        let g = build_nc_gkm(3);
        assert_eq!(g.verts().len(), 5);
        // id connects to the three transpositions, each transposition to the
        // full backwards cycle
        assert_eq!(g.edges().len(), 6);
        for (i, j, _) in g.edges() {
            let (u, w) = (&g.verts()[*i], &g.verts()[*j]);
            let (lo, hi) = if kreweras_leq(u, w) { (u, w) } else { (w, u) };
            assert!(kreweras_leq(lo, hi));
            assert_eq!(
                absolute_length(lo) + 1,
                absolute_length(hi),
                "edges step one coarsening at a time"
            );
        }
    }

    #[test]
    fn restrictions_satisfy_edge_condition() {
        let g = build_nc_gkm(4);
        let class = class_from_poly(&g, &p("x1*x2 + x3^2*t2"));
        assert!(is_gkm_class(&g, &class));
        let sn = build_sn_gkm(3);
        let class = class_from_poly(&sn, &p("x1^2 - x2*t3"));
        assert!(is_gkm_class(&sn, &class));
    }

    #[test]
    fn broken_class_fails_edge_condition() {
        let g = build_nc_gkm(2);
        let mut class: GkmClass = BTreeMap::new();
        class.insert(pm("12"), MPoly::zero());
        class.insert(pm("21"), MPoly::one());
        assert!(!is_gkm_class(&g, &class));
    }

    #[test]
    fn flowup_at_two() {
        let class = flowup_class(&pm("21"), 2);
        assert!(class[&pm("12")].is_zero());
        assert_eq!(class[&pm("21")], p("t2 - t1"));
        assert_eq!(flowup_diagonal(&pm("21")), p("t2 - t1"));
    }

    #[test]
    fn flowup_supports_in_three() {
        for v in enumerate_nc(3) {
            let class = flowup_class(&v, 3);
            let diag = flowup_diagonal(&v);
            assert_eq!(class[&v], diag, "diagonal of {v} is the inversion product");
            for w in enumerate_nc(3) {
                if !bruhat_leq(&v, &w) {
                    assert!(class[&w].is_zero(), "{v} at {w}");
                }
            }
            assert!(is_gkm_class(&build_nc_gkm(3), &class));
        }
    }

    #[test]
    fn identity_class_expands_on_basis() {
        let g = build_nc_gkm(3);
        let class = class_from_poly(&g, &p("x1 + x2 - t1 - t2"));
        let coeffs = expand_in_flowup(3, &class).unwrap();
        let mut recon: GkmClass =
            g.verts().iter().map(|w| (w.clone(), MPoly::zero())).collect();
        for (v, c) in &coeffs {
            for (w, fv) in flowup_class(v, 3) {
                let slot = recon.get_mut(&w).unwrap();
                *slot = slot.add(&c.mul(&fv));
            }
        }
        assert_eq!(recon, class);
    }
}
