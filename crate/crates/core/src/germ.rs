//! Germs `[s, x]` of the partial action of the hull on the boundary.

use crate::boundary::{covered, fixed_stems, theta_apply, trivially_fixed_stems, BoundaryPoint, Cylinder, Image};
use crate::error::{Error, Result};
use crate::hull::{format_hull, hull_elements, hull_mul, hull_star, idempotent, one, Hull};
use crate::instances::self_similar::SelfSimilarGroup;
use crate::instances::TreeSemigroup;
use crate::verdict::{Support, Verdict};

/// Display depth used when germ images cannot be computed exactly.
pub const GERM_DISPLAY_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ<E> {
    pub s: Hull<E>,
    pub x: BoundaryPoint,
}

/// `[s, x]`, provided `x` lies in the domain of `θ_s`.
pub fn germ<T: TreeSemigroup + ?Sized>(inst: &T, s: Hull<T::Elem>, x: BoundaryPoint) -> Result<Germ<T::Elem>> {
    if !theta_apply(inst, &s, &x, GERM_DISPLAY_DEPTH).is_defined() {
        return Err(Error::usage(format!(
            "{} is not in the domain of {}",
            x.format(inst.group().alphabet()),
            format_hull(inst, &s)
        )));
    }
    Ok(Germ { s, x })
}

pub fn unit_germ<T: TreeSemigroup + ?Sized>(inst: &T, x: BoundaryPoint) -> Germ<T::Elem> {
    Germ { s: one(inst), x }
}

/// `θ_s(x)`.
pub fn range<T: TreeSemigroup + ?Sized>(inst: &T, g: &Germ<T::Elem>) -> Image {
    theta_apply(inst, &g.s, &g.x, GERM_DISPLAY_DEPTH)
}

/// `|α| - |β|` for `s = [(α, g), (β, h)]`: the shift of `θ_s` on its domain.
pub fn shift<T: TreeSemigroup + ?Sized>(inst: &T, s: &Hull<T::Elem>) -> Option<i64> {
    let (p, q) = s.parts()?;
    Some(inst.split(p).0.len() as i64 - inst.split(q).0.len() as i64)
}

fn source_len<T: TreeSemigroup + ?Sized>(inst: &T, s: &Hull<T::Elem>) -> usize {
    s.parts().map_or(0, |(_, q)| inst.split(q).0.len())
}

/// Germ equality: equal iff the base points agree and `se = te` for an
/// idempotent `e = [γ, γ]` with `γ` a prefix of the base point. Prefixes are
/// tried up to length `bound`; differing images or shifts are exact
/// failures, and on pseudo-free instances no merge beyond the longest
/// source word is possible.
pub fn germ_eq<T: TreeSemigroup + ?Sized>(
    inst: &T,
    a: &Germ<T::Elem>,
    b: &Germ<T::Elem>,
    bound: usize,
) -> Verdict<Hull<T::Elem>, String> {
    let alphabet = inst.group().alphabet();
    if a.x != b.x {
        return Verdict::fails(format!(
            "base points differ: {} ≠ {}",
            a.x.format(alphabet),
            b.x.format(alphabet)
        ));
    }
    let (ra, rb) = (range(inst, a), range(inst, b));
    if !ra.agrees(&rb, GERM_DISPLAY_DEPTH) {
        return Verdict::fails(format!(
            "range points differ: {} ≠ {}",
            ra.format(alphabet),
            rb.format(alphabet)
        ));
    }
    for n in 0..=bound {
        let e = idempotent(inst, &inst.join(a.x.take(n), inst.group().identity()));
        let (se, te) = (hull_mul(inst, &a.s, &e), hull_mul(inst, &b.s, &e));
        if !se.is_zero() && se == te {
            return Verdict::holds(e, Support::exact("idempotent witness").at(n));
        }
    }
    if shift(inst, &a.s) != shift(inst, &b.s) {
        return Verdict::fails("shifts differ near the base point".to_string());
    }
    let longest = source_len(inst, &a.s).max(source_len(inst, &b.s));
    if inst.right_cancellative_proof().is_some() && bound >= longest {
        return Verdict::fails(format!("no merge: restrictions differ past length {longest} and the action is pseudo-free"));
    }
    Verdict::unknown(bound)
}

/// `[s, θ_t(x)][t, x] = [st, x]`; the range of `b` must be exactly the base
/// point of `a`.
pub fn compose<T: TreeSemigroup + ?Sized>(inst: &T, a: &Germ<T::Elem>, b: &Germ<T::Elem>) -> Result<Germ<T::Elem>> {
    match range(inst, b) {
        Image::Exact(y) if y == a.x => germ(inst, hull_mul(inst, &a.s, &b.s), b.x.clone()),
        _ => Err(Error::usage("germs are not composable")),
    }
}

/// `[s, x]⁻¹ = [s*, θ_s(x)]`.
pub fn inverse<T: TreeSemigroup + ?Sized>(inst: &T, a: &Germ<T::Elem>) -> Result<Germ<T::Elem>> {
    match range(inst, a) {
        Image::Exact(y) => germ(inst, hull_star(inst, &a.s), y),
        _ => Err(Error::usage("the range of this germ is not known exactly")),
    }
}

/// Germs at `x` not known to be units.
#[derive(Clone, Debug)]
pub struct Isotropy<E> {
    pub generator_bound: usize,
    pub bound: usize,
    pub survivors: Vec<(Germ<E>, Verdict<Hull<E>, String>)>,
}

/// Germs `[s, x]` with `|s| ≤ generator_bound` and `θ_s(x) = x` that do not
/// reduce to the unit germ within `bound`.
pub fn isotropy_probe<T: TreeSemigroup + ?Sized>(
    inst: &T,
    x: &BoundaryPoint,
    generator_bound: usize,
    bound: usize,
) -> Isotropy<T::Elem> {
    let unit = unit_germ(inst, x.clone());
    let survivors = hull_elements(inst, generator_bound)
        .into_iter()
        .filter(|s| theta_apply(inst, s, x, GERM_DISPLAY_DEPTH).equals_point(x))
        .filter_map(|s| {
            let g = Germ { s, x: x.clone() };
            let v = germ_eq(inst, &g, &unit, bound);
            (!v.is_holds()).then_some((g, v))
        })
        .collect();
    Isotropy {
        generator_bound,
        bound,
        survivors,
    }
}

/// Whether the interior of `F_s` is covered by `TF_s`, at the given depth.
/// A fixed cylinder outside `TF_s` is confirmed one level deeper before it
/// is reported.
pub fn topological_freeness_probe<T: TreeSemigroup + ?Sized>(
    inst: &T,
    s: &Hull<T::Elem>,
    depth: usize,
) -> Result<Verdict<(), Cylinder>> {
    if s.is_zero() {
        return Ok(Verdict::holds((), Support::exact("empty domain")));
    }
    let alphabet = inst.group().alphabet();
    let fixed = fixed_stems(inst, s, depth);
    let trivial = trivially_fixed_stems(inst, s, depth)?;
    let merged = crate::boundary::merge_siblings(alphabet, &fixed);
    let Some(stem) = merged.into_iter().find(|w| !covered(alphabet, w, &trivial, depth)) else {
        return Ok(Verdict::holds((), Support::bounded(depth)));
    };
    let deeper = fixed_stems(inst, s, depth + 1);
    let deeper_trivial = trivially_fixed_stems(inst, s, depth + 1)?;
    if covered(alphabet, &stem, &deeper, depth + 1) && !covered(alphabet, &stem, &deeper_trivial, depth + 1) {
        Ok(Verdict::fails(Cylinder::new(stem)))
    } else {
        Ok(Verdict::unknown(depth))
    }
}
