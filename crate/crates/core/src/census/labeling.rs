use super::CensusError;
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::{FieldCtx, MonicPoly};

/// One label N_a per edge, in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    pub polys: Vec<MonicPoly>,
}

/// M_r = lcm of the labels on edges at r, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabeling {
    pub polys: Vec<MonicPoly>,
}

impl VertexLabeling {
    /// m_r = deg M_r.
    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(MonicPoly::degree).collect()
    }
}

pub fn associated_vertex_labeling(
    ctx: &FieldCtx,
    g: &CoprimalityGraph,
    labels: &EdgeLabeling,
) -> Result<VertexLabeling, CensusError> {
    if labels.polys.len() != g.edge_count() {
        return Err(CensusError::LengthMismatch { expected: g.edge_count(), got: labels.polys.len() });
    }
    let mut m = vec![MonicPoly::one(); g.vertex_count()];
    for (&(r, s), n) in g.edges().iter().zip(&labels.polys) {
        m[r] = ctx.poly_lcm(&m[r], n);
        m[s] = ctx.poly_lcm(&m[s], n);
    }
    Ok(VertexLabeling { polys: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let x = MonicPoly::z();
        let x1 = MonicPoly::linear(1);
        let p3 = CoprimalityGraph::path(3).unwrap();
        let m = associated_vertex_labeling(&f2, &p3, &EdgeLabeling { polys: vec![x.clone(), x1.clone()] }).unwrap();
        assert_eq!(m.polys, vec![x.clone(), f2.poly_mul(&x, &x1), x1]);
        assert_eq!(m.degrees(), vec![1, 2, 1]);

        let ones = EdgeLabeling { polys: vec![MonicPoly::one(); 2] };
        let m = associated_vertex_labeling(&f2, &p3, &ones).unwrap();
        assert!(m.polys.iter().all(MonicPoly::is_one));

        let k2 = CoprimalityGraph::complete(2).unwrap();
        let x2 = f2.poly_pow(&x, 2);
        let m = associated_vertex_labeling(&f2, &k2, &EdgeLabeling { polys: vec![x2.clone()] }).unwrap();
        assert_eq!(m.polys, vec![x2.clone(), x2]);

        let isolated = CoprimalityGraph::new(3, &[(1, 2)]).unwrap();
        let m = associated_vertex_labeling(&f2, &isolated, &EdgeLabeling { polys: vec![x.clone()] }).unwrap();
        assert!(m.polys[2].is_one());

        assert!(matches!(
            associated_vertex_labeling(&f2, &p3, &EdgeLabeling { polys: vec![x] }),
            Err(CensusError::LengthMismatch { expected: 2, got: 1 })
        ));
    }
}
