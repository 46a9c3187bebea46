use super::context::Convention;
use super::profile::{mirror_closed, region, Region};
use super::{
    in_underline_rep, CanonicalMap, CellValue, DimProfile, Inconsistency, Membership, ReflectionContext,
    ReflectionError, Side,
};
use crate::barcode::{decompose, rebuild, Barcode};
use crate::linalg::{induced_on_kernels, induced_on_kernels_by, kernel_of_difference, Field, Matrix};
use crate::quiver::{Coord, PointKind};
use crate::representation::{Bar, Morphism, Rep, RepError};

fn require_plus(v: &Rep, ctx: &ReflectionContext) -> Result<(), ReflectionError> {
    if ctx.side() != Side::Plus {
        return Err(ReflectionError::NotSink(ctx.k()));
    }
    if v.quiver() != ctx.quiver() {
        return Err(RepError::QuiverMismatch.into());
    }
    Ok(())
}

/// Whether `(V(S_{k-1},S_k) | -V(S_{k+1},S_k))` is onto `V(S_k)`.
pub fn in_overline_rep(v: &Rep, k: usize) -> Result<Membership, ReflectionError> {
    let q = v.quiver();
    let (a, b, c) = q.window(k)?;
    if q.classify_point(k)? != PointKind::Sink {
        return Err(ReflectionError::NotSink(k));
    }
    let ab = v.map_along(a, b)?;
    let cb = v.map_along(c, b)?;
    let matrix = Matrix::hstack(v.field(), ab.rows(), &[&ab, &cb.neg()]);
    let rank = matrix.rank();
    let required = v.dim_at(b);
    Ok(Membership {
        holds: rank == required,
        matrix,
        rank,
        required,
    })
}

/// Pointwise kernels of the sink reflection, on the mirror-closed refinement of `v`.
pub fn reflect_dims_plus(v: &Rep, ctx: &ReflectionContext) -> Result<DimProfile, ReflectionError> {
    require_plus(v, ctx)?;
    let v = mirror_closed(v, ctx);
    let part = v.partition().clone();
    let (a, b, c) = ctx.window();
    let field = v.field();
    let along = |x: Coord, y: Coord| v.map_along(x, y);

    let mut cells = Vec::with_capacity(part.cell_count());
    let mut dims = Vec::with_capacity(part.cell_count());
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let xp = ctx.mirror(x);
        let value = match region(ctx, x) {
            Region::Outside => CellValue::Unchanged,
            Region::Left => CellValue::Kernel(kernel_of_difference(&along(a, b)?, &along(xp, b)?)),
            Region::Right => CellValue::Kernel(kernel_of_difference(&along(xp, b)?, &along(c, b)?)),
            Region::Center => match ctx.convention() {
                Convention::Symmetric => CellValue::Kernel(kernel_of_difference(&along(a, b)?, &along(c, b)?)),
                Convention::PaperB => CellValue::Kernel(kernel_of_difference(
                    &Matrix::identity(field, v.dim_at(b)),
                    &along(c, b)?,
                )),
            },
        };
        dims.push(match &value {
            CellValue::Kernel(k) => k.dim(),
            _ => v.dims()[i],
        });
        cells.push(value);
    }

    let kern = |i: usize| match &cells[i] {
        CellValue::Kernel(k) => k,
        _ => unreachable!("window cells carry kernels"),
    };
    let id = |x: Coord| Matrix::identity(field, v.dim_at(x));
    let mut links = Vec::with_capacity(part.link_count());
    for j in 0..part.link_count() {
        let (x, y) = (part.sample(j), part.sample(j + 1));
        let (xp, yp) = (ctx.mirror(x), ctx.mirror(y));
        let link = match (region(ctx, x), region(ctx, y)) {
            (Region::Outside, Region::Outside) => Some(CanonicalMap {
                from: v.link_source(j),
                to: v.link_target(j),
                matrix: v.map(j).clone(),
            }),
            (Region::Outside, _) => Some(CanonicalMap {
                from: j + 1,
                to: j,
                matrix: kern(j + 1).first(),
            }),
            (_, Region::Outside) => Some(CanonicalMap {
                from: j,
                to: j + 1,
                matrix: kern(j).second(),
            }),
            (Region::Left, Region::Left) => {
                let m = Matrix::block_diag(&id(a), &along(xp, yp)?);
                Some(CanonicalMap {
                    from: j,
                    to: j + 1,
                    matrix: induced_on_kernels_by(kern(j), kern(j + 1), &m)?,
                })
            }
            (Region::Left, Region::Center) => match ctx.convention() {
                Convention::Symmetric => {
                    let m = Matrix::block_diag(&id(a), &along(c, xp)?);
                    Some(CanonicalMap {
                        from: j + 1,
                        to: j,
                        matrix: induced_on_kernels_by(kern(j + 1), kern(j), &m)?,
                    })
                }
                Convention::PaperB => None,
            },
            (Region::Center, Region::Right) => match ctx.convention() {
                Convention::Symmetric => {
                    let m = Matrix::block_diag(&along(a, yp)?, &id(c));
                    Some(CanonicalMap {
                        from: j,
                        to: j + 1,
                        matrix: induced_on_kernels_by(kern(j), kern(j + 1), &m)?,
                    })
                }
                Convention::PaperB => {
                    let m = Matrix::block_diag(&along(yp, b)?, &id(c));
                    Some(CanonicalMap {
                        from: j + 1,
                        to: j,
                        matrix: induced_on_kernels_by(kern(j + 1), kern(j), &m)?,
                    })
                }
            },
            (Region::Right, Region::Right) => {
                let m = Matrix::block_diag(&along(yp, xp)?, &id(c));
                Some(CanonicalMap {
                    from: j + 1,
                    to: j,
                    matrix: induced_on_kernels_by(kern(j + 1), kern(j), &m)?,
                })
            }
            (r, s) => unreachable!("cells {r:?} and {s:?} are not adjacent"),
        };
        links.push(link);
    }
    Ok(DimProfile {
        side: Side::Plus,
        input: v,
        dims,
        cells,
        links,
    })
}

/// The bars of the reflection of one interval module.
pub fn transform_interval_plus(bar: Bar, ctx: &ReflectionContext, field: Field) -> Result<Vec<Bar>, ReflectionError> {
    let v = Rep::interval_module(ctx.quiver(), bar, field);
    reflect_dims_plus(&v, ctx)?.interval_bars()
}

/// Barcode transport without the pointwise and subcategory checks.
pub fn reflect_plus_unchecked(v: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    require_plus(v, ctx)?;
    let mut out = Barcode::new();
    for (bar, mult) in decompose(v)?.iter() {
        for t in transform_interval_plus(*bar, ctx, v.field())? {
            out.insert(t, mult);
        }
    }
    Ok(rebuild(ctx.reflected_quiver(), &out, v.field()))
}

/// The sink reflection of `v`, checked cell by cell against the pointwise
/// kernels and, for inputs in the sink subcategory, for landing in the
/// source subcategory.
pub fn reflect_plus(v: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    let w = reflect_plus_unchecked(v, ctx)?;
    check_dims(&w, &reflect_dims_plus(v, ctx)?)?;
    if in_overline_rep(v, ctx.k())?.holds {
        let m = in_underline_rep(&w, ctx.k())?;
        if !m.holds {
            return Err(ReflectionError::Inconsistent(Inconsistency::Containment {
                rank: m.rank,
                required: m.required,
            }));
        }
    }
    Ok(w)
}

pub(super) fn check_dims(w: &Rep, profile: &DimProfile) -> Result<(), ReflectionError> {
    let part = profile.partition();
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let found = w.dim_at(x);
        if found != profile.dims()[i] {
            return Err(ReflectionError::Inconsistent(Inconsistency::Dim {
                at: x,
                expected: profile.dims()[i],
                found,
            }));
        }
    }
    Ok(())
}

/// A morphism between two reflected profiles, in their kernel bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectedMorphism {
    source: DimProfile,
    target: DimProfile,
    components: Vec<Matrix>,
}

impl ReflectedMorphism {
    pub fn source(&self) -> &DimProfile {
        &self.source
    }

    pub fn target(&self) -> &DimProfile {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.components.iter().all(Matrix::is_identity)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ReflectedMorphism) -> Option<ReflectedMorphism> {
        if self.target != other.source {
            return None;
        }
        Some(ReflectedMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| g.mul(f))
                .collect(),
        })
    }

    /// First link whose canonical square fails to commute.
    pub fn broken_square(&self) -> Option<usize> {
        let pairs = self.source.links().iter().zip(self.target.links());
        pairs.enumerate().find_map(|(j, pair)| match pair {
            (Some(s), Some(t)) => {
                let lhs = t.matrix.mul(&self.components[s.from]);
                let rhs = self.components[s.to].mul(&s.matrix);
                (lhs != rhs).then_some(j)
            }
            _ => None,
        })
    }
}

/// The morphism induced on kernels by `f`.
pub fn reflect_morphism_plus(f: &Morphism, ctx: &ReflectionContext) -> Result<ReflectedMorphism, ReflectionError> {
    let source = reflect_dims_plus(f.source(), ctx)?;
    let target = reflect_dims_plus(f.target(), ctx)?;
    let part = source.partition().clone();
    if &part != target.partition() {
        return Err(RepError::PartitionMismatch.into());
    }
    let old = f.source().partition();
    let comp = |x: Coord| &f.components()[old.cell_of(x)];
    let (a, b, c) = ctx.window();
    let mut components = Vec::with_capacity(part.cell_count());
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let xp = ctx.mirror(x);
        let m = match (&source.cells()[i], &target.cells()[i]) {
            (CellValue::Kernel(k1), CellValue::Kernel(k2)) => {
                let blocks = match region(ctx, x) {
                    Region::Left => (comp(a), comp(xp)),
                    Region::Right => (comp(xp), comp(c)),
                    _ => match ctx.convention() {
                        Convention::Symmetric => (comp(a), comp(c)),
                        Convention::PaperB => (comp(b), comp(c)),
                    },
                };
                induced_on_kernels(k1, k2, blocks)?
            }
            _ => comp(x).clone(),
        };
        components.push(m);
    }
    Ok(ReflectedMorphism {
        source,
        target,
        components,
    })
}
