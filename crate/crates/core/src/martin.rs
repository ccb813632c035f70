//! Martin kernel, minimal boundary, spectral measure and the representation
//! of harmonic functions for a finite state space.
//!
//! Everything here assumes the kernel has been normalized so that its
//! maximum cycle mean is 0, and that its star is finite everywhere. On a
//! finite space the Martin space is the set of kernel columns itself (the
//! boundary is empty), so the upper limits in the definitions of `mu` and `H`
//! reduce to maxima over a recurrence class.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{KernelMatrix, Matrix, MaxPlusFunction};
use crate::star::StarMatrix;
use crate::value::{oplus, otimes, Finite, MaxPlusValue, NegInf};

/// Quotient of the state set by `x ~ y ⇔ A*<x,y> + A*<y,x> = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Classes in order of their smallest member, members ascending.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn recurrence_classes(s: &StarMatrix) -> Partition {
    let n = s.dim();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (x..n)
            .filter(|&y| class_of[y] == usize::MAX)
            .filter(|&y| otimes(s.get(x, y), s.get(y, x)).approx_eq(MaxPlusValue::ZERO))
            .collect();
        for &y in &members {
            class_of[y] = id;
        }
        classes.push(members);
    }
    Partition { classes, class_of }
}

/// A point of the (finite) Martin space: the normalized column `K<·,y>`
/// shared by every `y` in one recurrence class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MartinObject {
    pub column: MaxPlusFunction,
    pub class_id: usize,
    pub representatives: Vec<usize>,
    pub harmonic: bool,
    pub minimal: bool,
}

/// Martin kernel column `K<x,y> = A*<x,y> - A*<b,y>`.
pub fn martin_column(s: &StarMatrix, y: usize) -> Result<MaxPlusFunction> {
    s.require_finite()?;
    let b = s.basepoint();
    let by = s.fin(b, y);
    Ok((0..s.dim()).map(|x| Finite(s.fin(x, y) - by)).collect())
}

/// One Martin object per recurrence class, in class order.
pub fn martin_kernel(s: &StarMatrix) -> Result<Vec<MartinObject>> {
    s.require_finite()?;
    let partition = recurrence_classes(s);
    partition
        .classes()
        .iter()
        .enumerate()
        .map(|(class_id, members)| {
            let column = martin_column(s, members[0])?;
            let harmonic = is_harmonic(s.kernel(), &column);
            let mut obj = MartinObject {
                column,
                class_id,
                representatives: members.clone(),
                harmonic,
                minimal: false,
            };
            obj.minimal = harmonic && h_pairing(&obj, &obj, s).approx_eq(MaxPlusValue::ZERO);
            Ok(obj)
        })
        .collect()
}

/// `A♮<x,y> = A*<b,x> + A*<x,y> - A*<b,y>`; every entry is ≤ 0.
pub fn natural_kernel(s: &StarMatrix) -> Result<Matrix> {
    s.require_finite()?;
    let b = s.basepoint();
    let n = s.dim();
    let mut m = Matrix::filled(n, NegInf);
    for x in 0..n {
        for y in 0..n {
            m[(x, y)] = Finite(s.fin(b, x) + s.fin(x, y) - s.fin(b, y));
        }
    }
    Ok(m)
}

/// `mu_ξ(η)`: the largest value of `A*<b,x> + ξ(x)` over states `x` whose
/// Martin column is `η`.
pub fn mu(xi: &MaxPlusFunction, eta: &MartinObject, s: &StarMatrix) -> MaxPlusValue {
    let b = s.basepoint();
    eta.representatives
        .iter()
        .fold(NegInf, |acc, &x| oplus(acc, otimes(s.get(b, x), xi[x])))
}

/// `H<η,ξ> = mu_ξ(η)`.
pub fn h_pairing(eta: &MartinObject, xi: &MartinObject, s: &StarMatrix) -> MaxPlusValue {
    mu(&xi.column, eta, s)
}

/// `A h = h` exactly (up to `EQ_TOL` on non-integer data). A function taking
/// the value +∞ is never harmonic.
pub fn is_harmonic(a: &KernelMatrix, h: &MaxPlusFunction) -> bool {
    if h.has_pos_inf() {
        return false;
    }
    a.apply(h).map(|ah| ah.approx_eq(h)).unwrap_or(false)
}

/// `A h ≤ h`.
pub fn is_superharmonic(a: &KernelMatrix, h: &MaxPlusFunction) -> bool {
    if h.has_pos_inf() {
        return false;
    }
    a.apply(h).map(|ah| ah.approx_le(h)).unwrap_or(false)
}

/// Minimal Martin space: harmonic Martin objects with `H(ξ,ξ) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalSpace {
    dim: usize,
    objects: Vec<MartinObject>,
}

impl MinimalSpace {
    pub fn objects(&self) -> &[MartinObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Number of states of the underlying kernel.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MartinObject> {
        self.objects.iter()
    }

    /// Index of the object whose class contains state `x`, if minimal.
    pub fn position_of_state(&self, x: usize) -> Option<usize> {
        self.objects.iter().position(|w| w.representatives.contains(&x))
    }
}

pub fn minimal_martin_space(s: &StarMatrix) -> Result<MinimalSpace> {
    let objects = martin_kernel(s)?.into_iter().filter(|w| w.minimal).collect();
    Ok(MinimalSpace { dim: s.dim(), objects })
}

/// Values of `mu_h` on the minimal space, aligned with [`MinimalSpace::objects`].
pub fn spectral_measure(
    h: &MaxPlusFunction,
    mmin: &MinimalSpace,
    s: &StarMatrix,
) -> Result<Vec<MaxPlusValue>> {
    check_len(h, mmin.dim())?;
    if !is_harmonic(s.kernel(), h) {
        return Err(Error::NotHarmonic);
    }
    Ok(mmin.iter().map(|w| mu(h, w, s)).collect())
}

/// `sup_w (ν(w) + w)` over the minimal space.
pub fn represent(nu: &[MaxPlusValue], mmin: &MinimalSpace) -> Result<MaxPlusFunction> {
    if nu.len() != mmin.len() {
        return Err(Error::DimensionMismatch { expected: mmin.len(), found: nu.len() });
    }
    Ok(mmin
        .iter()
        .zip(nu)
        .fold(MaxPlusFunction::constant(mmin.dim(), NegInf), |acc, (w, &c)| {
            acc.oplus(&w.column.shift(c))
        }))
}

/// Whether a normalized harmonic `h` is an extremal generator, decided by
/// looking for a single `w` with `h = mu_h(w) + w`.
pub fn is_extremal(h: &MaxPlusFunction, mmin: &MinimalSpace, s: &StarMatrix) -> Result<bool> {
    Ok(extremal_witness(h, mmin, s)?.is_some())
}

/// Index into the minimal space of the object `w` with `h = mu_h(w) + w`.
pub fn extremal_witness(
    h: &MaxPlusFunction,
    mmin: &MinimalSpace,
    s: &StarMatrix,
) -> Result<Option<usize>> {
    check_len(h, mmin.dim())?;
    let hb = h[s.basepoint()];
    if !hb.approx_eq(MaxPlusValue::ZERO) {
        return Err(Error::NotNormalized { value: hb.to_string() });
    }
    let nu = spectral_measure(h, mmin, s)?;
    Ok(mmin
        .iter()
        .zip(&nu)
        .position(|(w, &c)| w.column.shift(c).approx_eq(h)))
}

/// For a harmonic `h` that is not extremal, two harmonic functions `u`, `v`
/// with `h = max(u, v)`, `u ≠ h` and `v ≠ h`. Returns `None` when `h` is a
/// single term `mu_h(w) + w`.
pub fn split_non_extremal(
    h: &MaxPlusFunction,
    mmin: &MinimalSpace,
    s: &StarMatrix,
) -> Result<Option<(MaxPlusFunction, MaxPlusFunction)>> {
    let nu = spectral_measure(h, mmin, s)?;
    let terms: Vec<MaxPlusFunction> = mmin
        .iter()
        .zip(&nu)
        .filter(|(_, c)| !c.is_neg_inf())
        .map(|(w, &c)| w.column.shift(c))
        .collect();
    if terms.iter().any(|t| t.approx_eq(h)) {
        return Ok(None);
    }
    let sup = |ts: &[&MaxPlusFunction]| {
        ts.iter()
            .fold(MaxPlusFunction::constant(h.len(), NegInf), |acc, t| acc.oplus(t))
    };
    // Drop redundant terms until each remaining one is needed for the sup.
    let mut kept: Vec<&MaxPlusFunction> = terms.iter().collect();
    let mut i = 0;
    while i < kept.len() {
        let mut rest = kept.clone();
        rest.remove(i);
        if sup(&rest).approx_eq(h) {
            kept = rest;
        } else {
            i += 1;
        }
    }
    if kept.len() < 2 {
        return Ok(None);
    }
    let u = kept[0].clone();
    let v = sup(&kept[1..]);
    Ok(Some((u, v)))
}

fn check_len(h: &MaxPlusFunction, n: usize) -> Result<()> {
    if h.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.len() });
    }
    Ok(())
}
