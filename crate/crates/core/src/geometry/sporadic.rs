//! Linear sets `L_{U_c}` with `U_c = {c x^{q^3} + x omega : x ∈ F_{q^6}}` in
//! `PG(2, q^4)`: the sporadic designs for q = 2, 3 and the `2(q-1)` family
//! for odd `q ≡ 1 (mod 3)`.

use super::constructions::{subfield_mus, ExtensionFrame};
use super::linear_set::{report_from_sets, LinearSet};
use super::ops::direct_sum_glue;
use super::{Constructed, ConstructionInfo, System};
use crate::error::{precondition, Error, Result};
use crate::fields::{factorize, FieldElement, FieldTower, TowerSpec};
use crate::guards::Guards;
use crate::linalg::{FqSpace, FqSubspace};

/// The linear sets live in `PG(2, q^4)`.
const PG_DEGREE: usize = 4;

fn frame_for(q: u64) -> Result<ExtensionFrame> {
    let f = factorize(q);
    if f.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not a prime power"
        )));
    }
    let (p, e) = f[0];
    ExtensionFrame::new(p, e as u32, 2, 3)
}

/// `U_c` as a subspace of `F_{q^4}^3`.
fn u_c(frame: &ExtensionFrame, c: FieldElement) -> Result<FqSubspace> {
    let big = frame.big();
    let w = frame.omega_big();
    frame.image_subspace(6, |x| {
        big.add(big.mul(c, big.frobenius(x, 3)), big.mul(x, w))
    })
}

fn info_for(frame: &ExtensionFrame, family: &str) -> ConstructionInfo {
    let mut info = ConstructionInfo::new(family);
    info.s = Some(3);
    info.omega = Some(frame.omega().0);
    info.big_field = Some(TowerSpec::of(frame.big()));
    info
}

fn finish(
    frame: &ExtensionFrame,
    spaces: Vec<FqSubspace>,
    info: ConstructionInfo,
) -> Result<Constructed> {
    Ok(Constructed {
        system: System::new(frame.ambient(), 3, spaces)?,
        h: 1,
        r: 1,
        info,
    })
}

/// q = 2: a ∈ F_{2^6} with `N_{2^6/2^3}(a) ∉ F_2` and b with
/// `(ab)^3 a^{q^4+q^2+1} = 1`, the first pair (canonical order) whose two
/// linear sets are verified scattered and disjoint.
pub fn sporadic_q2(guards: &Guards) -> Result<Constructed> {
    let frame = frame_for(2)?;
    let big = frame.big().clone();
    let elems: Vec<FieldElement> = frame
        .subfield(6)?
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    for &a in &elems {
        let n = frame.rel_norm(a, 6, 3);
        if frame.in_subfield(n, 1) {
            continue;
        }
        let a21 = big.pow(a, 16 + 4 + 1);
        for &b in &elems {
            let ab3 = big.pow(big.mul(a, b), 3);
            if big.mul(ab3, a21) != FieldElement::ONE {
                continue;
            }
            let spaces = vec![u_c(&frame, a)?, u_c(&frame, b)?];
            let sets = spaces
                .iter()
                .map(|u| LinearSet::new(u, guards))
                .collect::<Result<Vec<_>>>()?;
            if report_from_sets(&sets, PG_DEGREE).verdict {
                let mut info = info_for(&frame, "sporadic-q2");
                info.a = Some(a.0);
                info.b = Some(b.0);
                return finish(&frame, spaces, info);
            }
        }
    }
    Err(Error::SearchExhausted(
        "no (a, b) over F_{2^6} gives two disjoint maximum scattered linear sets".into(),
    ))
}

/// Roots of `(z^3 - z + 1)(z^3 + z^2 - 1)`.
fn q3_root_poly(t: &FieldTower, z: FieldElement) -> bool {
    let one = FieldElement::ONE;
    let z2 = t.mul(z, z);
    let z3 = t.mul(z2, z);
    let f1 = t.add(t.sub(z3, z), one);
    let f2 = t.sub(t.add(z3, z2), one);
    t.mul(f1, f2).is_zero()
}

/// q = 3: six pairwise disjoint maximum scattered sets `L_{U_{a_i}}`. The
/// candidates are the a with `a^{q+1}` a root of `(z^3-z+1)(z^3+z^2-1)`;
/// if they contain no verified six-set, every nonzero a of `F_{3^6}` is
/// tried. The lexicographically first six-set is returned.
pub fn sporadic_q3(guards: &Guards) -> Result<Constructed> {
    let frame = frame_for(3)?;
    let big = frame.big().clone();
    let elems: Vec<FieldElement> = frame
        .subfield(6)?
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    let candidates: Vec<FieldElement> = elems
        .iter()
        .copied()
        .filter(|&a| q3_root_poly(&big, big.pow(a, 4)))
        .collect();
    let mut info = info_for(&frame, "sporadic-q3");
    let found = match six_set(&frame, &candidates, guards)? {
        Some(f) => {
            info.notes.push(format!(
                "{} candidates from the root condition on a^(q+1)",
                candidates.len()
            ));
            Some(f)
        }
        None => {
            info.notes.push(format!(
                "the {} root-condition candidates contain no six-set; exhaustive search over F_3^6",
                candidates.len()
            ));
            six_set(&frame, &elems, guards)?
        }
    };
    let (chosen, spaces) = found.ok_or_else(|| {
        Error::SearchExhausted(
            "no six pairwise disjoint maximum scattered sets of the form L_{U_a}".into(),
        )
    })?;
    info.a_values = chosen.iter().map(|x| x.0).collect();
    finish(&frame, spaces, info)
}

/// The lexicographically first 6-clique of the disjointness graph on the
/// maximum scattered candidates.
fn six_set(
    frame: &ExtensionFrame,
    candidates: &[FieldElement],
    guards: &Guards,
) -> Result<Option<(Vec<FieldElement>, Vec<FqSubspace>)>> {
    let mut nodes = Vec::new();
    for &a in candidates {
        let u = u_c(frame, a)?;
        let l = LinearSet::new(&u, guards)?;
        if l.is_maximum_scattered(PG_DEGREE) {
            nodes.push((a, u, l));
        }
    }
    let n = nodes.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && nodes[i].2.common_points(&nodes[j].2) == 0)
                .collect()
        })
        .collect();
    let mut clique = Vec::new();
    if extend_clique(&adj, &mut clique, 0, 6) {
        let chosen = clique.iter().map(|&i| nodes[i].0).collect();
        let spaces = clique.iter().map(|&i| nodes[i].1.clone()).collect();
        return Ok(Some((chosen, spaces)));
    }
    Ok(None)
}

fn extend_clique(adj: &[Vec<bool>], clique: &mut Vec<usize>, start: usize, size: usize) -> bool {
    if clique.len() == size {
        return true;
    }
    for v in start..adj.len() {
        if adj.len() - v < size - clique.len() {
            return false;
        }
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
            if extend_clique(adj, clique, v + 1, size) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// Dispatch for q ∈ {2, 3}.
pub fn sporadic_design(q: u64, guards: &Guards) -> Result<Constructed> {
    match q {
        2 => sporadic_q2(guards),
        3 => sporadic_q3(guards),
        _ => Err(precondition(
            "sporadic-q",
            format!("sporadic designs exist for q = 2, 3 only, not {q}"),
        )),
    }
}

/// Parameter check for the `2(q-1)` family: q odd with `q ≡ 1 (mod 3)`.
pub fn validate_2q2_parameters(q: u64, r: usize) -> Result<()> {
    if factorize(q).len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not a prime power"
        )));
    }
    if q % 2 == 0 {
        return Err(precondition("q-odd", format!("q = {q} is even")));
    }
    if q % 3 != 1 {
        return Err(precondition("q-1-mod-3", format!("q = {q} is not 1 mod 3")));
    }
    if r == 0 {
        return Err(precondition("r-positive", "r must be at least 1"));
    }
    Ok(())
}

/// The `2(q-1)` pairwise disjoint maximum scattered sets
/// `{L_{U_{mu_i a}}} ∪ {L_{U_{mu_i b}}}` in `PG(2, q^4)`, glued r times into
/// `PG(3r-1, q^4)`.
///
/// a is the first element of `F_{q^6}` with `N_{q^6/q^3}(a) ∉ F_q` and
/// `rho = a^{(q^3+1)(q-1)}` a primitive cube root of unity; with eps the
/// primitive sixth root satisfying `eps^2 = rho` and `tau = eps/2`, mu is the
/// first element of `F_{q^2}` with `mu^{q+1} = A^{q+1}/tau`, and
/// `b = mu a^{-q^3}`. Disjointness is verified by point enumeration; if it
/// fails the search moves to the next a.
pub fn family_2q2(q: u64, r: usize, guards: &Guards) -> Result<Constructed> {
    validate_2q2_parameters(q, r)?;
    let frame = frame_for(q)?;
    let big = frame.big().clone();
    let amb = frame.ambient().clone();
    let qq = q as u128;
    let base: Vec<FieldElement> = (1..q).map(|c| big.embed_base(c)).collect();
    let order6: Vec<FieldElement> = base
        .iter()
        .copied()
        .filter(|&x| big.multiplicative_order(x) == 6)
        .collect();
    let (big_a, _) = frame.omega_coefficients();
    let norm_a = amb.pow(big_a, qq + 1);
    let mus = subfield_mus(&amb, 2, (q - 1) as usize)?;
    let f_q2 = amb.subfield_elements(2)?;
    let mut tried = 0usize;
    for a in frame.subfield(6)?.into_iter().filter(|x| !x.is_zero()) {
        let rho = big.pow(a, (qq.pow(3) + 1) * (qq - 1));
        if big.multiplicative_order(rho) != 3 || frame.in_subfield(frame.rel_norm(a, 6, 3), 1) {
            continue;
        }
        let Some(&eps) = order6.iter().find(|&&e| big.mul(e, e) == rho) else {
            continue;
        };
        tried += 1;
        let tau_big = big.div(eps, big.embed_base(2 % q));
        let tau = amb.embed_base(big.base_index(tau_big).expect("tau lies in F_q"));
        let target = amb.div(norm_a, tau);
        let Some(&mu) = f_q2
            .iter()
            .find(|&&x| !x.is_zero() && amb.pow(x, qq + 1) == target)
        else {
            continue;
        };
        let b = big.mul(frame.embed(mu), big.inv(big.frobenius(a, 3)));
        let mut spaces = Vec::new();
        for &c in &[a, b] {
            for &mi in &mus {
                spaces.push(u_c(&frame, big.mul(frame.embed(mi), c))?);
            }
        }
        let sets = spaces
            .iter()
            .map(|u| LinearSet::new(u, guards))
            .collect::<Result<Vec<_>>>()?;
        if !report_from_sets(&sets, PG_DEGREE).verdict {
            continue;
        }
        let mut info = info_for(&frame, "family-2q2");
        info.a = Some(a.0);
        info.b = Some(b.0);
        info.mus = mus.iter().map(|x| x.0).collect();
        info.notes.push(format!(
            "eps = {}, rho = {}, tau = {}, mu = {} (eps, rho, tau as big-field elements; mu in the ambient field); {tried} a tried",
            eps, rho, tau_big, mu
        ));
        let mut built = finish(&frame, spaces, info)?;
        if r > 1 {
            let parts: Vec<(System, usize)> = (0..r).map(|_| (built.system.clone(), 1)).collect();
            let glued = direct_sum_glue(&parts, 1)?;
            built.system = glued.system;
            built.r = glued.r;
            built.info.notes.push(format!("glued {r} copies"));
        }
        return Ok(built);
    }
    Err(Error::SearchExhausted(format!(
        "no verified (a, b) for the 2(q-1) family with q = {q} after {tried} candidates"
    )))
}

/// Second disjointness oracle for `L_{U_a}` and `L_{U_b}` (a, b in
/// `F_{q^6}` inside the big field): the sets meet iff
/// `S(x,y) = T(x,y) = 0` for some nonzero x, y in `F_{q^6}`, where
///
/// `S = (x y^{q^4} - x^{q^4} y) A - (a^{q^4} b x^q y^{q^3} - a b^{q^4} x^{q^3} y^q)`
/// `T = (x y^{q^4} - x^{q^4} y) B - (a^{q^4} x^q y - a x^{q^3} y^{q^4}) - (b x^{q^4} y^{q^3} - b^{q^4} x y^q)`
///
/// and `omega^2 = A + B omega`. Both forms are F_q-bilinear, so for each y
/// up to F_q-scalars the x-solutions form the kernel of an F_q-linear map.
pub fn pair_criterion_disjoint(
    frame: &ExtensionFrame,
    a: FieldElement,
    b: FieldElement,
    guards: &Guards,
) -> Result<bool> {
    if frame.m() != 2 || frame.k() != 3 {
        return Err(precondition(
            "frame",
            "the pair criterion lives in PG(2, q^4)",
        ));
    }
    let big = frame.big();
    let q = big.q();
    guards.check_points((q as u128).pow(6))?;
    let (aa, bb) = frame.omega_coefficients();
    let (aa, bb) = (frame.embed(aa), frame.embed(bb));
    let fr = |x: FieldElement, s: u32| big.frobenius(x, s);
    let a4 = fr(a, 4);
    let b4 = fr(b, 4);
    let c1 = big.mul(a4, b);
    let c2 = big.mul(a, b4);
    let basis = frame.subfield_basis(6)?;
    // x, x^q, x^{q^3}, x^{q^4} for each basis element
    let xs: Vec<[FieldElement; 4]> = basis
        .iter()
        .map(|&x| [x, fr(x, 1), fr(x, 3), fr(x, 4)])
        .collect();
    let f = big.base();
    let mut meet = false;
    for_each_projective(big, &basis, &mut |y| {
        if meet {
            return;
        }
        let (y1, y3, y4) = (fr(y, 1), fr(y, 3), fr(y, 4));
        let mut space = FqSpace::zero(2 * big.m() as usize);
        for &[x, x1, x3, x4] in &xs {
            let d = big.sub(big.mul(x, y4), big.mul(x4, y));
            let s = big.sub(
                big.mul(d, aa),
                big.sub(big.mul(c1, big.mul(x1, y3)), big.mul(c2, big.mul(x3, y1))),
            );
            let t1 = big.sub(big.mul(a4, big.mul(x1, y)), big.mul(a, big.mul(x3, y4)));
            let t2 = big.sub(big.mul(b, big.mul(x4, y3)), big.mul(b4, big.mul(x, y1)));
            let t = big.sub(big.sub(big.mul(d, bb), t1), t2);
            let mut v = big.fq_coords(s);
            v.extend(big.fq_coords(t));
            space.insert(f, &v);
        }
        if space.dim() < xs.len() {
            meet = true;
        }
    });
    Ok(!meet)
}

/// Calls `f` on every nonzero F_q-combination of `basis` whose first
/// nonzero coefficient is 1.
fn for_each_projective(t: &FieldTower, basis: &[FieldElement], f: &mut impl FnMut(FieldElement)) {
    fn rec(
        t: &FieldTower,
        basis: &[FieldElement],
        j: usize,
        cur: FieldElement,
        f: &mut impl FnMut(FieldElement),
    ) {
        if j == basis.len() {
            f(cur);
            return;
        }
        for c in 0..t.q() {
            rec(t, basis, j + 1, t.add(cur, t.scale_base(c, basis[j])), f);
        }
    }
    for lead in 0..basis.len() {
        rec(t, basis, lead + 1, basis[lead], f);
    }
}
