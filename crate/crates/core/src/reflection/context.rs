use super::ReflectionError;
use crate::quiver::{Coord, OrientedQuiver, PointKind, ReflectedOrientation};

/// Which functor a context is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Kernels at a sink.
    Plus,
    /// Cokernels at a source.
    Minus,
}

/// Value of the kernel functor at the mirrored point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `ker(V(S_{k-1}) ⊕ V(S_{k+1}) → V(S_k))`.
    #[default]
    Symmetric,
    /// The half-window formula evaluated at its closed end:
    /// `ker(V(S_k) ⊕ V(S_{k+1}) → V(S_k))`, a graph over `V(S_{k+1})`.
    PaperB,
}

/// A breakpoint with both neighbors, the window around it and the reflected quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionContext {
    side: Side,
    quiver: OrientedQuiver,
    k: usize,
    window: (Coord, Coord, Coord),
    reflected: OrientedQuiver,
    convention: Convention,
}

impl ReflectionContext {
    /// Context for the kernel functor at sink `k`.
    pub fn plus(quiver: &OrientedQuiver, k: usize) -> Result<ReflectionContext, ReflectionError> {
        ReflectionContext::with(
            quiver,
            k,
            Side::Plus,
            Convention::Symmetric,
            ReflectedOrientation::Flipped,
        )
    }

    /// Context for the cokernel functor at source `k`.
    pub fn minus(quiver: &OrientedQuiver, k: usize) -> Result<ReflectionContext, ReflectionError> {
        ReflectionContext::with(
            quiver,
            k,
            Side::Minus,
            Convention::Symmetric,
            ReflectedOrientation::Flipped,
        )
    }

    pub fn with(
        quiver: &OrientedQuiver,
        k: usize,
        side: Side,
        convention: Convention,
        orientation: ReflectedOrientation,
    ) -> Result<ReflectionContext, ReflectionError> {
        let window = quiver.window(k)?;
        let kind = quiver.classify_point(k)?;
        match (side, kind) {
            (Side::Plus, PointKind::Sink) | (Side::Minus, PointKind::Source) => {}
            (Side::Plus, _) => return Err(ReflectionError::NotSink(k)),
            (Side::Minus, _) => return Err(ReflectionError::NotSource(k)),
        }
        let reflected = quiver.reflect_quiver_with(k, orientation)?;
        Ok(ReflectionContext {
            side,
            quiver: quiver.clone(),
            k,
            window,
            reflected,
            convention,
        })
    }

    pub fn with_convention(&self, convention: Convention) -> ReflectionContext {
        ReflectionContext {
            convention,
            ..self.clone()
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn quiver(&self) -> &OrientedQuiver {
        &self.quiver
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// `(S_{k-1}, S_k, S_{k+1})` of the input quiver.
    pub fn window(&self) -> (Coord, Coord, Coord) {
        self.window
    }

    /// The breakpoint that replaces `S_k`.
    pub fn mirrored_center(&self) -> Coord {
        let (a, b, c) = self.window;
        a + c - b
    }

    pub fn reflected_quiver(&self) -> &OrientedQuiver {
        &self.reflected
    }

    pub fn mirror(&self, x: Coord) -> Coord {
        let (a, _, c) = self.window;
        a + c - x
    }

    /// Strictly inside `(S_{k-1}, S_{k+1})`.
    pub fn inside(&self, x: Coord) -> bool {
        let (a, _, c) = self.window;
        a < x && x < c
    }

    /// Cuts needed so that the partition is closed under the mirror inside
    /// the window and contains both centers.
    pub(crate) fn mirror_closed_cuts(&self, cuts: &[Coord]) -> Vec<Coord> {
        let (a, b, c) = self.window;
        let mut out = cuts.to_vec();
        out.extend([a, b, c, self.mirrored_center()]);
        out.extend(cuts.iter().filter(|&&x| self.inside(x)).map(|&x| self.mirror(x)));
        out
    }
}
