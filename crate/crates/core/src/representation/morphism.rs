use super::{Rep, RepError};
use crate::linalg::Matrix;

/// A natural transformation between two representations on one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Rep,
    target: Rep,
    components: Vec<Matrix>,
}

impl Morphism {
    /// Checks shapes and every naturality square. Both representations must
    /// already share a partition; see [`common_refinement`].
    pub fn new(source: Rep, target: Rep, components: Vec<Matrix>) -> Result<Morphism, RepError> {
        if source.quiver() != target.quiver() {
            return Err(RepError::QuiverMismatch);
        }
        if source.field() != target.field() {
            return Err(RepError::FieldMismatch);
        }
        if source.partition() != target.partition() {
            return Err(RepError::PartitionMismatch);
        }
        if components.len() != source.cell_count() {
            return Err(RepError::Shape(format!(
                "expected {} components, found {}",
                source.cell_count(),
                components.len()
            )));
        }
        for (i, f) in components.iter().enumerate() {
            if f.shape() != (target.dims()[i], source.dims()[i]) {
                return Err(RepError::Shape(format!(
                    "component {i} has shape {:?}, expected {:?}",
                    f.shape(),
                    (target.dims()[i], source.dims()[i])
                )));
            }
        }
        let m = Morphism {
            source,
            target,
            components,
        };
        if let Some(link) = m.first_broken_square() {
            return Err(RepError::Naturality { link });
        }
        Ok(m)
    }

    fn first_broken_square(&self) -> Option<usize> {
        (0..self.source.maps().len()).find(|&j| {
            let (s, t) = (self.source.link_source(j), self.source.link_target(j));
            self.target.map(j).mul(&self.components[s]) != self.components[t].mul(self.source.map(j))
        })
    }

    pub fn identity(v: &Rep) -> Morphism {
        let components = v.dims().iter().map(|&d| Matrix::identity(v.field(), d)).collect();
        Morphism {
            source: v.clone(),
            target: v.clone(),
            components,
        }
    }

    pub fn zero(v: &Rep, w: &Rep) -> Result<Morphism, RepError> {
        let (v, w) = common_refinement(v, w)?;
        let components = v
            .dims()
            .iter()
            .zip(w.dims())
            .map(|(&a, &b)| Matrix::zeros(v.field(), b, a))
            .collect();
        Ok(Morphism {
            source: v,
            target: w,
            components,
        })
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn is_natural(&self) -> bool {
        self.first_broken_square().is_none()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism, RepError> {
        if self.target != other.source {
            return Err(RepError::Shape("morphisms are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| g.mul(f))
            .collect();
        Ok(Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, RepError> {
        if self.source != other.source || self.target != other.target {
            return Err(RepError::Shape("morphisms have different endpoints".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.add(g))
            .collect();
        Ok(Morphism {
            components,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &crate::linalg::Scalar) -> Morphism {
        Morphism {
            components: self.components.iter().map(|f| f.scale(s)).collect(),
            ..self.clone()
        }
    }
}

/// Both representations refined to the union of their cuts.
pub fn common_refinement(v: &Rep, w: &Rep) -> Result<(Rep, Rep), RepError> {
    if v.quiver() != w.quiver() {
        return Err(RepError::QuiverMismatch);
    }
    if v.field() != w.field() {
        return Err(RepError::FieldMismatch);
    }
    let p = v.partition().merge(w.partition());
    Ok((v.refine_to(&p), w.refine_to(&p)))
}

/// A basis of `Hom(v, w)`, with both sides refined to a common partition.
pub fn hom_space(v: &Rep, w: &Rep) -> Result<Vec<Morphism>, RepError> {
    let (v, w) = common_refinement(v, w)?;
    let field = v.field();
    let n = v.cell_count();
    // Unknowns: the entries of each component f_i (dims_w × dims_v), row-major.
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + v.dims()[i] * w.dims()[i];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<(usize, crate::linalg::Scalar)>> = Vec::new();
    for j in 0..v.maps().len() {
        let (s, t) = (v.link_source(j), v.link_target(j));
        let (a, b) = (v.map(j), w.map(j));
        // W(j) f_s - f_t V(j) = 0, entry (r, c) for r < dim w_t, c < dim v_s.
        for r in 0..w.dims()[t] {
            for c in 0..v.dims()[s] {
                let mut eq = Vec::new();
                for k in 0..w.dims()[s] {
                    let coef = b.get(r, k);
                    if !coef.is_zero() {
                        eq.push((offset[s] + k * v.dims()[s] + c, coef.clone()));
                    }
                }
                for k in 0..v.dims()[t] {
                    let coef = a.get(k, c);
                    if !coef.is_zero() {
                        eq.push((offset[t] + r * v.dims()[t] + k, coef.neg()));
                    }
                }
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    let basis = super::sparse::null_space(field, unknowns, rows);
    Ok(basis
        .into_iter()
        .map(|vec| {
            let components = (0..n)
                .map(|i| {
                    let (rr, cc) = (w.dims()[i], v.dims()[i]);
                    let entries = vec[offset[i]..offset[i + 1]].to_vec();
                    Matrix::from_scalars(field, rr, cc, entries).expect("component shape")
                })
                .collect();
            Morphism {
                source: v.clone(),
                target: w.clone(),
                components,
            }
        })
        .collect())
}
