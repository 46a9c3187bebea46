use super::plus::check_dims;
use super::profile::{mirror_closed, region, Region};
use super::{
    in_overline_rep, CanonicalMap, CellValue, DimProfile, Inconsistency, Membership, ReflectionContext,
    ReflectionError, Side,
};
use crate::barcode::{decompose, rebuild, Barcode};
use crate::linalg::{cokernel_of_difference, induced_on_cokernels_by, Field, Matrix};
use crate::quiver::{Coord, PointKind};
use crate::representation::{Bar, Rep, RepError};

fn require_minus(w: &Rep, ctx: &ReflectionContext) -> Result<(), ReflectionError> {
    if ctx.side() != Side::Minus {
        return Err(ReflectionError::NotSource(ctx.k()));
    }
    if w.quiver() != ctx.quiver() {
        return Err(RepError::QuiverMismatch.into());
    }
    Ok(())
}

/// Whether `(W(S'_k,S_{k+1}); -W(S'_k,S_{k-1}))` is injective.
pub fn in_underline_rep(w: &Rep, k: usize) -> Result<Membership, ReflectionError> {
    let q = w.quiver();
    let (a, s, c) = q.window(k)?;
    if q.classify_point(k)? != PointKind::Source {
        return Err(ReflectionError::NotSource(k));
    }
    let sc = w.map_along(s, c)?;
    let sa = w.map_along(s, a)?;
    let matrix = Matrix::vstack(w.field(), sc.cols(), &[&sc, &sa.neg()]);
    let rank = matrix.rank();
    let required = w.dim_at(s);
    Ok(Membership {
        holds: rank == required,
        matrix,
        rank,
        required,
    })
}

/// `(rows × cols)` block matrix from a 2×2 grid of optional blocks.
fn grid(field: Field, rows: (usize, usize), cols: (usize, usize), blocks: [[Option<&Matrix>; 2]; 2]) -> Matrix {
    let mut m = Matrix::zeros(field, rows.0 + rows.1, cols.0 + cols.1);
    let r0 = [0, rows.0];
    let c0 = [0, cols.0];
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if let Some(b) = b {
                m.paste(r0[i], c0[j], b);
            }
        }
    }
    m
}

/// Pointwise cokernels of the source reflection, on the mirror-closed refinement of `w`.
pub fn reflect_dims_minus(w: &Rep, ctx: &ReflectionContext) -> Result<DimProfile, ReflectionError> {
    require_minus(w, ctx)?;
    let w = mirror_closed(w, ctx);
    let part = w.partition().clone();
    let (a, s, c) = ctx.window();
    let field = w.field();
    let along = |x: Coord, y: Coord| w.map_along(x, y);

    let mut cells = Vec::with_capacity(part.cell_count());
    let mut dims = Vec::with_capacity(part.cell_count());
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let xp = ctx.mirror(x);
        let value = match region(ctx, x) {
            Region::Outside => CellValue::Unchanged,
            Region::Left => CellValue::Cokernel(cokernel_of_difference(&along(s, xp)?, &along(s, a)?)),
            Region::Right => CellValue::Cokernel(cokernel_of_difference(&along(s, c)?, &along(s, xp)?)),
            Region::Center => CellValue::Cokernel(cokernel_of_difference(&along(s, a)?, &along(s, c)?)),
        };
        dims.push(match &value {
            CellValue::Cokernel(q) => q.quotient_dim(),
            _ => w.dims()[i],
        });
        cells.push(value);
    }

    let cok = |i: usize| match &cells[i] {
        CellValue::Cokernel(q) => q,
        _ => unreachable!("window cells carry cokernels"),
    };
    let id = |x: Coord| Matrix::identity(field, w.dim_at(x));
    let dim = |x: Coord| w.dim_at(x);
    let mut links = Vec::with_capacity(part.link_count());
    for j in 0..part.link_count() {
        let (x, y) = (part.sample(j), part.sample(j + 1));
        let (xp, yp) = (ctx.mirror(x), ctx.mirror(y));
        let link = match (region(ctx, x), region(ctx, y)) {
            (Region::Outside, Region::Outside) => CanonicalMap {
                from: w.link_source(j),
                to: w.link_target(j),
                matrix: w.map(j).clone(),
            },
            (Region::Outside, _) => CanonicalMap {
                from: j,
                to: j + 1,
                matrix: cok(j + 1).second(),
            },
            (_, Region::Outside) => CanonicalMap {
                from: j + 1,
                to: j,
                matrix: cok(j).first(),
            },
            (Region::Left, Region::Left) => {
                let m = Matrix::block_diag(&along(yp, xp)?, &id(a));
                CanonicalMap {
                    from: j + 1,
                    to: j,
                    matrix: induced_on_cokernels_by(cok(j + 1), cok(j), &m)?,
                }
            }
            (Region::Left, Region::Center) => {
                let xc = along(xp, c)?;
                let m = grid(
                    field,
                    (dim(a), dim(c)),
                    (dim(xp), dim(a)),
                    [[None, Some(&id(a))], [Some(&xc), None]],
                );
                CanonicalMap {
                    from: j,
                    to: j + 1,
                    matrix: induced_on_cokernels_by(cok(j), cok(j + 1), &m)?,
                }
            }
            (Region::Center, Region::Right) => {
                let ya = along(yp, a)?;
                let m = grid(
                    field,
                    (dim(a), dim(c)),
                    (dim(c), dim(yp)),
                    [[None, Some(&ya)], [Some(&id(c)), None]],
                );
                CanonicalMap {
                    from: j + 1,
                    to: j,
                    matrix: induced_on_cokernels_by(cok(j + 1), cok(j), &m)?,
                }
            }
            (Region::Right, Region::Right) => {
                let m = Matrix::block_diag(&id(c), &along(xp, yp)?);
                CanonicalMap {
                    from: j,
                    to: j + 1,
                    matrix: induced_on_cokernels_by(cok(j), cok(j + 1), &m)?,
                }
            }
            (r, t) => unreachable!("cells {r:?} and {t:?} are not adjacent"),
        };
        links.push(Some(link));
    }
    Ok(DimProfile {
        side: Side::Minus,
        input: w,
        dims,
        cells,
        links,
    })
}

/// The bars of the source reflection of one interval module.
pub fn transform_interval_minus(bar: Bar, ctx: &ReflectionContext, field: Field) -> Result<Vec<Bar>, ReflectionError> {
    let w = Rep::interval_module(ctx.quiver(), bar, field);
    reflect_dims_minus(&w, ctx)?.interval_bars()
}

pub fn reflect_minus_unchecked(w: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    require_minus(w, ctx)?;
    let mut out = Barcode::new();
    for (bar, mult) in decompose(w)?.iter() {
        for t in transform_interval_minus(*bar, ctx, w.field())? {
            out.insert(t, mult);
        }
    }
    Ok(rebuild(ctx.reflected_quiver(), &out, w.field()))
}

/// The source reflection of `w`, checked against the pointwise cokernels and,
/// for inputs in the source subcategory, for landing in the sink subcategory.
pub fn reflect_minus(w: &Rep, ctx: &ReflectionContext) -> Result<Rep, ReflectionError> {
    let v = reflect_minus_unchecked(w, ctx)?;
    check_dims(&v, &reflect_dims_minus(w, ctx)?)?;
    if in_underline_rep(w, ctx.k())?.holds {
        let m = in_overline_rep(&v, ctx.k())?;
        if !m.holds {
            return Err(ReflectionError::Inconsistent(Inconsistency::Containment {
                rank: m.rank,
                required: m.required,
            }));
        }
    }
    Ok(v)
}
