//! Lemma squares and the unit of the round trip.

use super::context::Convention;
use super::plus::reflect_morphism_plus;
use super::profile::{mirror_closed, region, Region};
use super::{
    in_overline_rep, reflect_dims_minus, reflect_dims_plus, reflect_minus, reflect_plus, ReflectionContext,
    ReflectionError, Side,
};
use crate::barcode::decompose;
use crate::linalg::{
    cokernel_of_difference, induced_on_cokernels, induced_on_cokernels_by, induced_on_kernels_by, is_pullback,
    is_pushout, CokernelPresentation, Matrix, SquareFailure,
};
use crate::quiver::Coord;
use crate::representation::random::{random_scalar, rng_from_seed};
use crate::representation::{common_refinement, hom_space, Morphism, Rep};

/// One square checked for a window cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCheck {
    pub cell: usize,
    pub at: Coord,
    /// `left`, `center` or `right` part of the window.
    pub part: &'static str,
    pub outcome: Result<(), SquareFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub side: Side,
    pub checks: Vec<SquareCheck>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &SquareCheck> {
        self.checks.iter().filter(|c| c.outcome.is_err())
    }
}

fn symmetric(ctx: &ReflectionContext) -> ReflectionContext {
    ctx.with_convention(Convention::Symmetric)
}

/// Checks, for every window cell, that the square relating the reflected
/// value to the center is a pullback (sink side) or a pushout (source side).
/// The sink side always uses the symmetric value at the mirrored point.
pub fn verify_lemma_squares(v: &Rep, ctx: &ReflectionContext) -> Result<LemmaReport, ReflectionError> {
    match ctx.side() {
        Side::Plus => plus_squares(v, &symmetric(ctx)),
        Side::Minus => minus_squares(v, ctx),
    }
}

fn plus_squares(v: &Rep, ctx: &ReflectionContext) -> Result<LemmaReport, ReflectionError> {
    let profile = reflect_dims_plus(v, ctx)?;
    let v = profile.input();
    let part = profile.partition();
    let (a, b, c) = ctx.window();
    let field = v.field();
    let along = |x: Coord, y: Coord| v.map_along(x, y);
    let id = |x: Coord| Matrix::identity(field, v.dim_at(x));
    let center = part.cell_of(ctx.mirrored_center());
    let kc = profile.kernel(center).expect("center carries a kernel");
    let mut checks = Vec::new();
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let xp = ctx.mirror(x);
        let (part_name, outcome) = match region(ctx, x) {
            Region::Outside => continue,
            Region::Center => (
                "center",
                is_pullback(&kc.first(), &kc.second(), &along(a, b)?, &along(c, b)?),
            ),
            Region::Left => {
                let kx = profile.kernel(i).expect("window cell");
                let p = induced_on_kernels_by(kc, kx, &Matrix::block_diag(&id(a), &along(c, xp)?))?;
                ("left", is_pullback(&p, &kc.second(), &kx.second(), &along(c, xp)?))
            }
            Region::Right => {
                let kx = profile.kernel(i).expect("window cell");
                let p = induced_on_kernels_by(kc, kx, &Matrix::block_diag(&along(a, xp)?, &id(c)))?;
                ("right", is_pullback(&p, &kc.first(), &kx.first(), &along(a, xp)?))
            }
        };
        checks.push(SquareCheck {
            cell: i,
            at: x,
            part: part_name,
            outcome,
        });
    }
    Ok(LemmaReport {
        side: Side::Plus,
        checks,
    })
}

fn minus_squares(w: &Rep, ctx: &ReflectionContext) -> Result<LemmaReport, ReflectionError> {
    let profile = reflect_dims_minus(w, ctx)?;
    let w = profile.input();
    let part = profile.partition();
    let (a, s, c) = ctx.window();
    let field = w.field();
    let along = |x: Coord, y: Coord| w.map_along(x, y);
    let dim = |x: Coord| w.dim_at(x);
    let center = part.cell_of(ctx.mirrored_center());
    let ct = profile.cokernel(center).expect("center carries a cokernel");
    let mut checks = Vec::new();
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let xp = ctx.mirror(x);
        let (part_name, outcome) = match region(ctx, x) {
            Region::Outside => continue,
            Region::Center => (
                "center",
                is_pushout(&along(s, a)?, &along(s, c)?, &ct.first(), &ct.second()),
            ),
            Region::Left => {
                let cx = profile.cokernel(i).expect("window cell");
                let xc = along(xp, c)?;
                let mut m = Matrix::zeros(field, dim(a) + dim(c), dim(xp) + dim(a));
                m.paste(0, dim(xp), &Matrix::identity(field, dim(a)));
                m.paste(dim(a), 0, &xc);
                let p = induced_on_cokernels_by(cx, ct, &m)?;
                ("left", is_pushout(&cx.first(), &xc, &p, &ct.second()))
            }
            Region::Right => {
                let cx = profile.cokernel(i).expect("window cell");
                let xa = along(xp, a)?;
                let mut m = Matrix::zeros(field, dim(a) + dim(c), dim(c) + dim(xp));
                m.paste(0, dim(c), &xa);
                m.paste(dim(a), 0, &Matrix::identity(field, dim(c)));
                let p = induced_on_cokernels_by(cx, ct, &m)?;
                ("right", is_pushout(&cx.second(), &xa, &p, &ct.first()))
            }
        };
        checks.push(SquareCheck {
            cell: i,
            at: x,
            part: part_name,
            outcome,
        });
    }
    Ok(LemmaReport {
        side: Side::Minus,
        checks,
    })
}

/// The round trip of one cell of the input, computed pointwise from the
/// kernels: a cokernel presentation (inside the window) and the unit
/// `V(x) → (S⁻S⁺V)(x)` in its coordinates.
#[derive(Clone, Debug)]
struct RoundTripCell {
    cokernel: Option<CokernelPresentation>,
    unit: Matrix,
}

fn round_trip_cells(v: &Rep, ctx: &ReflectionContext) -> Result<(Rep, Vec<RoundTripCell>), ReflectionError> {
    let profile = reflect_dims_plus(v, ctx)?;
    let v = profile.input().clone();
    let part = v.partition();
    let (a, b, c) = ctx.window();
    let field = v.field();
    let along = |x: Coord, y: Coord| v.map_along(x, y);
    let id = |x: Coord| Matrix::identity(field, v.dim_at(x));
    let kc = profile
        .kernel(part.cell_of(ctx.mirrored_center()))
        .expect("center carries a kernel");
    let mut out = Vec::with_capacity(part.cell_count());
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        if !ctx.inside(x) {
            out.push(RoundTripCell {
                cokernel: None,
                unit: Matrix::identity(field, v.dims()[i]),
            });
            continue;
        }
        let xp = ctx.mirror(x);
        let (q, h) = if x == b {
            let q = cokernel_of_difference(&kc.first(), &kc.second());
            let h = Matrix::hstack(field, v.dim_at(b), &[&along(a, b)?, &along(c, b)?]);
            (q, h)
        } else {
            let kx = profile.kernel(part.cell_of(xp)).expect("window cell");
            if x < b {
                let kappa = induced_on_kernels_by(kc, kx, &Matrix::block_diag(&along(a, x)?, &id(c)))?;
                let q = cokernel_of_difference(&kappa, &kc.first());
                (q, Matrix::hstack(field, v.dim_at(x), &[&kx.first(), &along(a, x)?]))
            } else {
                let kappa = induced_on_kernels_by(kc, kx, &Matrix::block_diag(&id(a), &along(c, x)?))?;
                let q = cokernel_of_difference(&kc.second(), &kappa);
                (q, Matrix::hstack(field, v.dim_at(x), &[&along(c, x)?, &kx.second()]))
            }
        };
        // h · projection = h_ambient; the unit is its inverse.
        let h = q
            .projection()
            .transpose()
            .solve(&h.transpose())
            .map(|t| t.transpose())
            .ok_or(ReflectionError::UnitNotInvertible { at: x })?;
        let unit = h.inverse().ok_or(ReflectionError::UnitNotInvertible { at: x })?;
        out.push(RoundTripCell {
            cokernel: Some(q),
            unit,
        });
    }
    Ok((v, out))
}

/// Checks the unit square `η_W ∘ f = S⁻S⁺(f) ∘ η_V` cell by cell.
fn unit_naturality(f: &Morphism, ctx: &ReflectionContext) -> Result<(), ReflectionError> {
    let (sv, s_cells) = round_trip_cells(f.source(), ctx)?;
    let (_, t_cells) = round_trip_cells(f.target(), ctx)?;
    let reflected = reflect_morphism_plus(f, ctx)?;
    let part = sv.partition();
    let (a, b, c) = ctx.window();
    let old = f.source().partition();
    let comp = |x: Coord| &f.components()[old.cell_of(x)];
    let rcomp = |x: Coord| &reflected.components()[part.cell_of(x)];
    for i in 0..part.cell_count() {
        let x = part.sample(i);
        let fx = comp(x);
        let twice = match (&s_cells[i].cokernel, &t_cells[i].cokernel) {
            (Some(q1), Some(q2)) => {
                let xp = ctx.mirror(x);
                let blocks = if x == b {
                    (comp(a), comp(c))
                } else if x < b {
                    (rcomp(xp), comp(a))
                } else {
                    (comp(c), rcomp(xp))
                };
                induced_on_cokernels(q1, q2, blocks)?
            }
            _ => fx.clone(),
        };
        if t_cells[i].unit.mul(fx) != twice.mul(&s_cells[i].unit) {
            return Err(ReflectionError::UnitNaturality { at: x });
        }
    }
    Ok(())
}

/// An isomorphism from the input to its round trip, with the pointwise unit.
#[derive(Clone, Debug)]
pub struct UnitIso {
    /// A natural isomorphism `V → S⁻S⁺V` between the representations as built.
    pub iso: Morphism,
    /// The pointwise unit on the mirror-closed refinement of `V`.
    pub unit: Vec<Matrix>,
}

fn find_isomorphism(v: &Rep, u: &Rep) -> Result<Morphism, ReflectionError> {
    let (v, u) = common_refinement(v, u)?;
    if v.dims() != u.dims() {
        return Err(ReflectionError::NoIsomorphism);
    }
    let basis = hom_space(&v, &u)?;
    let mut rng = rng_from_seed(0x5eed);
    for _ in 0..16 {
        let mut m = Morphism::zero(&v, &u)?;
        for b in &basis {
            m = m.add(&b.scale(&random_scalar(&mut rng, v.field())))?;
        }
        if m.is_isomorphism() {
            return Ok(m);
        }
        if basis.is_empty() {
            break;
        }
    }
    Err(ReflectionError::NoIsomorphism)
}

/// Round trip through both functors at sink `ctx.k()`: the input must be in
/// the sink subcategory and come back with the same barcode. Returns an
/// explicit isomorphism and the pointwise unit; with `test`, also checks
/// that the unit is natural along that morphism.
pub fn unit_iso_check(v: &Rep, ctx: &ReflectionContext, test: Option<&Morphism>) -> Result<UnitIso, ReflectionError> {
    if ctx.side() != Side::Plus {
        return Err(ReflectionError::NotSink(ctx.k()));
    }
    if !in_overline_rep(v, ctx.k())?.holds {
        return Err(ReflectionError::NotInSubcategory);
    }
    let back = ReflectionContext::minus(ctx.reflected_quiver(), ctx.k())?;
    let w = reflect_plus(v, ctx)?;
    let u = reflect_minus(&w, &back)?;
    let expected = decompose(v)?;
    let found = decompose(&u)?;
    if expected != found {
        return Err(ReflectionError::RoundTripMismatch { expected, found });
    }
    let iso = find_isomorphism(v, &u)?;
    let sym = symmetric(ctx);
    let (_, cells) = round_trip_cells(&mirror_closed(v, &sym), &sym)?;
    if let Some(f) = test {
        unit_naturality(f, &sym)?;
    }
    Ok(UnitIso {
        iso,
        unit: cells.into_iter().map(|c| c.unit).collect(),
    })
}

/// Checks that the pointwise unit exists and is natural along `f`, without
/// assembling the round trip.
pub fn unit_naturality_check(f: &Morphism, ctx: &ReflectionContext) -> Result<(), ReflectionError> {
    if ctx.side() != Side::Plus {
        return Err(ReflectionError::NotSink(ctx.k()));
    }
    unit_naturality(f, &symmetric(ctx))
}
