//! Maximum 1-designs from pseudoregulus-type subspaces and from pairwise
//! disjoint maximum scattered linear sets in `PG(k-1, q^{2m})`.

use super::linear_set::disjoint_scattered_report;
use super::{Constructed, ConstructionInfo, System};
use crate::error::{precondition, Error, Result};
use crate::fields::{gcd, make_tower, FieldElement, FieldTower, SubfieldEmbedding, TowerSpec};
use crate::guards::Guards;
use crate::linalg::FqSubspace;
use std::sync::Arc;

/// `F_{q^{2km}}` viewed as `F_{q^{2m}}^k` through the basis
/// `{1, z, ..., z^{k-1}}` of the big field over the embedded ambient field,
/// together with the canonical `omega`: the smallest element of
/// `F_{q^{2m}}` outside `F_{q^m}`.
#[derive(Debug, Clone)]
pub struct ExtensionFrame {
    big: Arc<FieldTower>,
    emb: SubfieldEmbedding,
    k: usize,
    m: u32,
    omega: FieldElement,
}

impl ExtensionFrame {
    pub fn new(p: u64, e: u32, m: u32, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidParameter("m and k must be positive".into()));
        }
        let ambient = make_tower(p, e, 2 * m, 0)?;
        let big = make_tower(p, e, 2 * m * k as u32, 0)?;
        let emb = SubfieldEmbedding::new(ambient.clone(), big.clone())?;
        let omega = ambient
            .elements()
            .find(|&x| !ambient.subfield_member(x, m).expect("m divides 2m"))
            .expect("F_{q^2m} is larger than F_{q^m}");
        Ok(ExtensionFrame {
            big,
            emb,
            k,
            m,
            omega,
        })
    }

    pub fn big(&self) -> &Arc<FieldTower> {
        &self.big
    }

    /// The field `F_{q^{2m}}` of the projective space.
    pub fn ambient(&self) -> &Arc<FieldTower> {
        self.emb.small()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.big.q()
    }

    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    pub fn omega_big(&self) -> FieldElement {
        self.emb.embed(self.omega)
    }

    /// `(A, B)` in `F_{q^m}` with `omega^2 = A + B omega`.
    pub fn omega_coefficients(&self) -> (FieldElement, FieldElement) {
        let t = self.ambient();
        let conj = t.frobenius(self.omega, self.m);
        let b = t.add(self.omega, conj);
        let a = t.neg(t.mul(self.omega, conj));
        (a, b)
    }

    pub fn embed(&self, x: FieldElement) -> FieldElement {
        self.emb.embed(x)
    }

    /// Coordinates of a big-field element in `F_{q^{2m}}^k`.
    pub fn vector(&self, x: FieldElement) -> Vec<FieldElement> {
        self.emb.coords(x)
    }

    /// Elements of the subfield `F_{q^r}` of the big field, canonical order.
    pub fn subfield(&self, r: u32) -> Result<Vec<FieldElement>> {
        self.big.subfield_elements(r)
    }

    /// `{1, g, ..., g^{r-1}}` for a primitive element g of `F_{q^r}`.
    pub fn subfield_basis(&self, r: u32) -> Result<Vec<FieldElement>> {
        let b = &self.big;
        if b.m() % r != 0 {
            return Err(Error::InvalidParameter(format!(
                "{r} does not divide {}",
                b.m()
            )));
        }
        let sub = (b.q() as u128).pow(r) - 1;
        let g = b.pow(b.generator(), (b.order() as u128 - 1) / sub);
        Ok((0..r).map(|i| b.pow(g, i as u128)).collect())
    }

    /// The F_q-subspace `{f(x) : x ∈ F_{q^r}}` for an F_q-linear f.
    pub fn image_subspace(
        &self,
        r: u32,
        f: impl Fn(FieldElement) -> FieldElement,
    ) -> Result<FqSubspace> {
        let vecs: Vec<Vec<FieldElement>> = self
            .subfield_basis(r)?
            .into_iter()
            .map(|x| self.vector(f(x)))
            .collect();
        FqSubspace::from_basis(self.ambient(), self.k, &vecs)
    }

    /// `N_{q^{a}/q^{b}}(x) = x^{(q^a - 1)/(q^b - 1)}` in the big field.
    pub fn rel_norm(&self, x: FieldElement, a: u32, b: u32) -> FieldElement {
        let q = self.q() as u128;
        self.big.pow(x, (q.pow(a) - 1) / (q.pow(b) - 1))
    }

    pub fn in_subfield(&self, x: FieldElement, r: u32) -> bool {
        self.big.subfield_member(x, r).unwrap_or(false)
    }
}

fn fq_norm(t: &FieldTower, x: FieldElement, r: u32) -> FieldElement {
    let q = t.q() as u128;
    t.pow(x, (q.pow(r) - 1) / (q - 1))
}

/// The first `count` elements of `F_{q^r}^*` inside `t` (canonical order)
/// with pairwise distinct norms `N_{q^r/q}`.
pub fn subfield_mus(t: &FieldTower, r: u32, count: usize) -> Result<Vec<FieldElement>> {
    if count as u64 > t.q() - 1 {
        return Err(precondition(
            "t-le-q-minus-1",
            format!("t = {count} > q - 1 = {}", t.q() - 1),
        ));
    }
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for x in t.subfield_elements(r)? {
        if out.len() == count {
            break;
        }
        if x.is_zero() {
            continue;
        }
        let n = fq_norm(t, x, r);
        if !seen.contains(&n) {
            seen.push(n);
            out.push(x);
        }
    }
    Ok(out)
}

fn check_mus(t: &FieldTower, r: u32, mus: &[FieldElement]) -> Result<()> {
    if mus.is_empty() || mus.len() as u64 > t.q() - 1 {
        return Err(precondition(
            "t-le-q-minus-1",
            format!("t = {} outside 1..={}", mus.len(), t.q() - 1),
        ));
    }
    let mut norms = Vec::new();
    for &mu in mus {
        if mu.is_zero() || mu.0 >= t.order() || !t.subfield_member(mu, r)? {
            return Err(precondition(
                "mu-in-subfield",
                format!("{mu} is not in F_{{q^{r}}}^*"),
            ));
        }
        let n = fq_norm(t, mu, r);
        if norms.contains(&n) {
            return Err(precondition(
                "distinct-norms",
                format!("two mu share the norm {n}"),
            ));
        }
        norms.push(n);
    }
    Ok(())
}

fn mus_info(mus: &[FieldElement]) -> Vec<u64> {
    mus.iter().map(|x| x.0).collect()
}

/// `U_i = {(x_1, mu_i x_1^{q^s}, ..., x_k, mu_i x_k^{q^s})}` in
/// `F_{q^m}^{2k}`: a maximum 1-design when `gcd(s, m) = 1` and the norms
/// of the `mu_i` are pairwise distinct.
pub fn pseudoregulus_design(
    tower: &Arc<FieldTower>,
    k: usize,
    s: u32,
    mus: &[FieldElement],
) -> Result<Constructed> {
    let m = tower.m();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if gcd(s as u64, m as u64) != 1 {
        return Err(precondition("gcd-s-m", format!("gcd({s}, {m}) != 1")));
    }
    check_mus(tower, m, mus)?;
    let spaces = mus
        .iter()
        .map(|&mu| {
            let mut vecs = Vec::new();
            for j in 0..k {
                for &b in tower.fq_basis() {
                    let mut v = vec![FieldElement::ZERO; 2 * k];
                    v[2 * j] = b;
                    v[2 * j + 1] = tower.mul(mu, tower.frobenius(b, s));
                    vecs.push(v);
                }
            }
            FqSubspace::from_basis(tower, 2 * k, &vecs)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut info = ConstructionInfo::new("pseudoregulus");
    info.s = Some(s);
    info.mus = mus_info(mus);
    Ok(Constructed {
        system: System::new(tower, 2 * k, spaces)?,
        h: 1,
        r: 1,
        info,
    })
}

/// Builds `U_i = {c_i g(x) + x omega : x ∈ F_{q^r}}` and verifies by point
/// enumeration that the linear sets are maximum scattered and pairwise
/// disjoint.
fn scattered_family(
    frame: &ExtensionFrame,
    r: u32,
    coeffs: &[FieldElement],
    g: impl Fn(FieldElement) -> FieldElement,
    mut info: ConstructionInfo,
    guards: &Guards,
) -> Result<Constructed> {
    let big = frame.big();
    let w = frame.omega_big();
    let spaces = coeffs
        .iter()
        .map(|&c| frame.image_subspace(r, |x| big.add(big.mul(c, g(x)), big.mul(x, w))))
        .collect::<Result<Vec<_>>>()?;
    let system = System::new(frame.ambient(), frame.k(), spaces)?;
    let report = disjoint_scattered_report(&system, guards)?;
    if !report.verdict {
        return Err(Error::Inconsistent(format!(
            "{} construction failed verification: points {:?}, intersecting pairs {:?}",
            info.family, report.point_counts, report.intersecting_pairs
        )));
    }
    info.omega = Some(frame.omega().0);
    info.big_field = Some(TowerSpec::of(big));
    Ok(Constructed {
        system,
        h: 1,
        r: 1,
        info,
    })
}

fn check_k_odd(k: usize) -> Result<()> {
    if k < 3 || k % 2 == 0 {
        return Err(precondition("k-odd-ge-3", format!("k = {k}")));
    }
    Ok(())
}

fn check_a(frame: &ExtensionFrame, a: FieldElement, r: u32) -> Result<()> {
    if a.is_zero() || a.0 >= frame.big().order() || !frame.in_subfield(a, r) {
        return Err(precondition(
            "a-in-subfield",
            format!("a = {a} is not in F_{{q^{r}}}^*"),
        ));
    }
    Ok(())
}

fn kodd_gcd_conditions(frame: &ExtensionFrame, s: u32, a: FieldElement) -> Result<()> {
    let (k, m) = (frame.k() as u32, frame.m());
    check_k_odd(frame.k())?;
    if gcd(m as u64, k as u64) != 1 {
        return Err(precondition("gcd-m-k", format!("gcd({m}, {k}) != 1")));
    }
    if gcd(s as u64, 2 * m as u64) != 1 || gcd(s as u64, (k * m) as u64) != k as u64 {
        return Err(precondition(
            "gcd-s",
            format!("need gcd(s,2m) = 1 and gcd(s,km) = k; s = {s}, m = {m}, k = {k}"),
        ));
    }
    check_a(frame, a, k * m)?;
    let n = frame.rel_norm(a, k * m, k);
    if frame.in_subfield(n, 1) {
        return Err(precondition(
            "norm-a-not-in-fq",
            format!("N_{{q^km/q^k}}(a) = {n} lies in F_q"),
        ));
    }
    Ok(())
}

/// `U_i = {a mu_i x^{q^s} + x omega : x ∈ F_{q^{km}}}` for odd k >= 3 with
/// `gcd(m,k) = 1`, `gcd(s,2m) = 1`, `gcd(s,km) = k` and
/// `N_{q^{km}/q^k}(a) ∉ F_q`. The `mu_i` lie in `F_{q^m}` inside the
/// ambient field and have distinct norms.
pub fn kodd_gcd(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    mus: &[FieldElement],
    guards: &Guards,
) -> Result<Constructed> {
    kodd_gcd_conditions(frame, s, a)?;
    check_mus(frame.ambient(), frame.m(), mus)?;
    let mut info = ConstructionInfo::new("kodd-gcd");
    info.s = Some(s);
    info.a = Some(a.0);
    info.mus = mus_info(mus);
    kodd_family(frame, s, a, mus, info, guards)
}

fn kodd_family(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    mus: &[FieldElement],
    info: ConstructionInfo,
    guards: &Guards,
) -> Result<Constructed> {
    let big = frame.big();
    let coeffs: Vec<FieldElement> = mus.iter().map(|&mu| big.mul(a, frame.embed(mu))).collect();
    let r = frame.k() as u32 * frame.m();
    scattered_family(frame, r, &coeffs, |x| big.frobenius(x, s), info, guards)
}

fn kodd_qmod_conditions(frame: &ExtensionFrame, s: u32, a: FieldElement) -> Result<()> {
    let (k, m, q) = (frame.k() as u32, frame.m(), frame.q());
    check_k_odd(frame.k())?;
    if q % k as u64 != 1 {
        return Err(precondition(
            "q-1-mod-k",
            format!("q = {q} is not 1 mod k = {k}"),
        ));
    }
    if gcd(s as u64, 2 * m as u64) != 1 || gcd(s as u64, (k * m) as u64) != 1 {
        return Err(precondition(
            "gcd-s",
            format!("need gcd(s,2m) = gcd(s,km) = 1; s = {s}, m = {m}, k = {k}"),
        ));
    }
    check_a(frame, a, k * m)?;
    let n = frame.rel_norm(a, k * m, 1);
    if frame.big().pow(n, ((q - 1) / k as u64) as u128) == FieldElement::ONE {
        return Err(precondition("norm-a-power", "N_{q^km/q}(a)^{(q-1)/k} = 1"));
    }
    Ok(())
}

/// Same subspaces as [`kodd_gcd`] under `q ≡ 1 (mod k)`,
/// `gcd(s,2m) = gcd(s,km) = 1` and `N_{q^{km}/q}(a)^{(q-1)/k} ≠ 1`.
pub fn kodd_qmod(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    mus: &[FieldElement],
    guards: &Guards,
) -> Result<Constructed> {
    kodd_qmod_conditions(frame, s, a)?;
    check_mus(frame.ambient(), frame.m(), mus)?;
    let mut info = ConstructionInfo::new("kodd-qmod");
    info.s = Some(s);
    info.a = Some(a.0);
    info.mus = mus_info(mus);
    kodd_family(frame, s, a, mus, info, guards)
}

/// Scans `F_{q^{3m}}^*` for an x with `f(x)/x ∈ F_{q^m}`, where
/// `f(x) = a x^{q^s} + b x^{q^{2m+s}}`.
fn plane_quotient_witness(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    b: FieldElement,
    elements: &[FieldElement],
) -> Option<FieldElement> {
    let big = frame.big();
    let m = frame.m();
    elements
        .iter()
        .copied()
        .filter(|x| !x.is_zero())
        .find(|&x| {
            let f = plane_map(big, m, s, a, b, x);
            frame.in_subfield(big.div(f, x), m)
        })
}

fn plane_map(
    big: &FieldTower,
    m: u32,
    s: u32,
    a: FieldElement,
    b: FieldElement,
    x: FieldElement,
) -> FieldElement {
    big.add(
        big.mul(a, big.frobenius(x, s)),
        big.mul(b, big.frobenius(x, 2 * m + s)),
    )
}

fn plane_conditions(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    b: FieldElement,
    guards: &Guards,
) -> Result<()> {
    let m = frame.m();
    if frame.k() != 3 {
        return Err(precondition(
            "plane",
            format!("ambient dimension {} != 3", frame.k()),
        ));
    }
    if s == 0 || s >= 3 * m || gcd(s as u64, 2 * m as u64) != 1 {
        return Err(precondition(
            "gcd-s-2m",
            format!("need 1 <= s < 3m and gcd(s, 2m) = 1; s = {s}"),
        ));
    }
    check_a(frame, a, 3 * m)?;
    check_a(frame, b, 3 * m)?;
    guards.check_points((frame.q() as u128).pow(3 * m))?;
    let elements = frame.subfield(3 * m)?;
    if let Some(x) = plane_quotient_witness(frame, s, a, b, &elements) {
        return Err(precondition(
            "quotient-outside-fqm",
            format!("f(x)/x ∈ F_{{q^m}} at x = {x}"),
        ));
    }
    Ok(())
}

/// `U_i = {mu_i f(x) + x omega : x ∈ F_{q^{3m}}}` in `PG(2, q^{2m})` with
/// `f(x) = a x^{q^s} + b x^{q^{2m+s}}`. Requires `gcd(s, 2m) = 1` and
/// `f(x)/x ∉ F_{q^m}` for all nonzero x (checked exhaustively).
pub fn plane(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    b: FieldElement,
    mus: &[FieldElement],
    guards: &Guards,
) -> Result<Constructed> {
    plane_conditions(frame, s, a, b, guards)?;
    check_mus(frame.ambient(), frame.m(), mus)?;
    plane_family(frame, s, a, b, mus, guards)
}

fn plane_family(
    frame: &ExtensionFrame,
    s: u32,
    a: FieldElement,
    b: FieldElement,
    mus: &[FieldElement],
    guards: &Guards,
) -> Result<Constructed> {
    let big = frame.big();
    let m = frame.m();
    let mut info = ConstructionInfo::new("plane");
    info.s = Some(s);
    info.a = Some(a.0);
    info.b = Some(b.0);
    info.mus = mus_info(mus);
    info.notes.push("validated gcd(s, 2m) = 1".into());
    let coeffs: Vec<FieldElement> = mus.iter().map(|&mu| frame.embed(mu)).collect();
    scattered_family(
        frame,
        3 * m,
        &coeffs,
        |x| plane_map(big, m, s, a, b, x),
        info,
        guards,
    )
}

fn smallest_s(limit: u32, ok: impl Fn(u32) -> bool) -> Option<u32> {
    (1..limit).find(|&s| ok(s))
}

/// [`kodd_gcd`] with canonical choices: the smallest admissible s, the
/// first t canonical `mu`, and the first a (canonical order) satisfying the
/// conditions.
pub fn search_kodd_gcd(
    p: u64,
    e: u32,
    m: u32,
    k: usize,
    t: usize,
    guards: &Guards,
) -> Result<Constructed> {
    let frame = ExtensionFrame::new(p, e, m, k)?;
    let km = k as u32 * m;
    let s = smallest_s(2 * km, |s| {
        gcd(s as u64, 2 * m as u64) == 1 && gcd(s as u64, km as u64) == k as u64
    })
    .ok_or_else(|| precondition("gcd-s", "no admissible s"))?;
    let mus = subfield_mus(frame.ambient(), m, t)?;
    search_a(&frame, km, |a| kodd_gcd(&frame, s, a, &mus, guards))
}

/// [`kodd_qmod`] with canonical choices.
pub fn search_kodd_qmod(
    p: u64,
    e: u32,
    m: u32,
    k: usize,
    t: usize,
    guards: &Guards,
) -> Result<Constructed> {
    let frame = ExtensionFrame::new(p, e, m, k)?;
    let km = k as u32 * m;
    let s = smallest_s(2 * km, |s| {
        gcd(s as u64, 2 * m as u64) == 1 && gcd(s as u64, km as u64) == 1
    })
    .ok_or_else(|| precondition("gcd-s", "no admissible s"))?;
    let mus = subfield_mus(frame.ambient(), m, t)?;
    search_a(&frame, km, |a| kodd_qmod(&frame, s, a, &mus, guards))
}

/// Tries `build` on every nonzero a of `F_{q^r}` in canonical order and
/// returns the first success. Failed preconditions skip to the next a;
/// other errors (guards, verification failures) are returned.
fn search_a(
    frame: &ExtensionFrame,
    r: u32,
    build: impl Fn(FieldElement) -> Result<Constructed>,
) -> Result<Constructed> {
    let mut first_err = None;
    for a in frame.subfield(r)?.into_iter().filter(|x| !x.is_zero()) {
        match build(a) {
            Ok(c) => return Ok(c),
            Err(Error::Precondition { name, detail })
                if matches!(name, "norm-a-not-in-fq" | "norm-a-power") =>
            {
                first_err.get_or_insert(Error::Precondition { name, detail });
            }
            Err(e) => return Err(e),
        }
    }
    Err(first_err.unwrap_or_else(|| Error::SearchExhausted("no admissible a".into())))
}

/// [`plane`] with canonical choices: the smallest s with `gcd(s,2m) = 1`
/// and the first `(a, b)` pair in canonical order passing the quotient
/// condition.
pub fn search_plane(p: u64, e: u32, m: u32, t: usize, guards: &Guards) -> Result<Constructed> {
    let frame = ExtensionFrame::new(p, e, m, 3)?;
    let s = smallest_s(3 * m, |s| gcd(s as u64, 2 * m as u64) == 1)
        .ok_or_else(|| precondition("gcd-s-2m", "no admissible s"))?;
    let mus = subfield_mus(frame.ambient(), m, t)?;
    guards.check_points((frame.q() as u128).pow(3 * m))?;
    let elements: Vec<FieldElement> = frame
        .subfield(3 * m)?
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    for &a in &elements {
        for &b in &elements {
            if plane_quotient_witness(&frame, s, a, b, &elements).is_none() {
                return plane_family(&frame, s, a, b, &mus, guards);
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no (a, b) for the plane family with s = {s}"
    )))
}
