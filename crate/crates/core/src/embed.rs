//! Transcendental extension steps for valued fields of Hahn type, with
//! audits of the monomial group, the coefficient field and the order.
//!
//! A step starts from `K = K_d` (over `𝐤 = ℚ(t_1, …, t_m)`) and a new
//! element that is either value-transcendental (`h`, with a value `δ` that
//! becomes a new last coordinate) or residue-transcendental (`b`, mapped to
//! the next generator `t_{m+1}`). Elements of the extension are polynomials
//! over `K` in the new element.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::analysis::{Check, SampleConfig};
use crate::hahn::random::{random_exponent, random_field_elt, random_nonzero_rational, random_rational};
use crate::hahn::{ValElt, Valuation};
use crate::scalars::{GroupElement, OrderedField, Rational, Scalar, Sign};

const SALT_MONO: u64 = 51;
const SALT_COEFF: u64 = 52;
const SALT_CASE1: u64 = 53;
const SALT_CASE2: u64 = 54;
const SALT_COMPOSED: u64 = 55;
const SALT_IDENTITY: u64 = 56;

/// Highest degree of a sampled polynomial.
pub const MAX_DEGREE: usize = 4;

/// `λ`: the residue of `a ∈ V_d` in the coefficient field, `None` off `V_d`.
pub fn lambda<F: OrderedField>(a: &ValElt<F>) -> Option<F> {
    a.residue(a.dim()).ok()?.as_constant()
}

/// `Σ a_i T^i` with `a_i ∈ K_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtPoly<F: OrderedField> {
    dim: usize,
    coeffs: Vec<ValElt<F>>,
}

impl<F: OrderedField> ExtPoly<F> {
    pub fn new(dim: usize, coeffs: Vec<ValElt<F>>) -> Self {
        assert!(coeffs.iter().all(|a| a.dim() == dim));
        let mut p = ExtPoly { dim, coeffs };
        p.trim();
        p
    }

    pub fn constant(a: ValElt<F>) -> Self {
        Self::new(a.dim(), vec![a])
    }

    /// The new element itself.
    pub fn var(dim: usize) -> Self {
        Self::new(dim, vec![ValElt::zero(dim), ValElt::one(dim)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ValElt::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[ValElt<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ValElt::zero(self.dim);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(self.dim, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.dim, Vec::new());
        }
        let mut coeffs = vec![ValElt::zero(self.dim); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.dim, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|a| -a).collect())
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &ValElt<F>)> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero())
    }

    /// A random polynomial of degree at most [`MAX_DEGREE`]; coefficients
    /// may vanish.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, dim: usize, size: usize) -> Self {
        let deg = rng.gen_range(0..=MAX_DEGREE);
        let coeffs = (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.15) {
                    ValElt::zero(dim)
                } else {
                    random_field_elt(rng, dim, size)
                }
            })
            .collect();
        Self::new(dim, coeffs)
    }
}

impl<F: OrderedField> fmt::Display for ExtPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .nonzero_terms()
            .map(|(i, a)| match i {
                0 => format!("({a})"),
                1 => format!("({a})*T"),
                _ => format!("({a})*T^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn finite(v: Valuation) -> Option<GroupElement> {
    v.finite().cloned()
}

fn lex_min(values: impl Iterator<Item = GroupElement>) -> Option<GroupElement> {
    values.min_by(|a, b| a.lex_cmp(b).expect("same dimension"))
}

/// Case 1: `h ↦ x^δ` (or `−x^δ` when `flipped`) from `K_d(h)` into
/// `K_{d+1}`, with `δ` the new last coordinate.
#[derive(Clone, Copy, Debug)]
pub struct Case1Map {
    pub dim: usize,
    pub flipped: bool,
}

impl Case1Map {
    pub fn new(dim: usize) -> Self {
        Case1Map { dim, flipped: false }
    }

    pub fn delta(&self) -> GroupElement {
        GroupElement::unit(self.dim + 1, self.dim)
    }

    pub fn embed_base<F: OrderedField>(&self, a: &ValElt<F>) -> ValElt<F> {
        a.extend_trailing(1)
    }

    pub fn apply<F: OrderedField>(&self, p: &ExtPoly<F>) -> ValElt<F> {
        let h = ValElt::x_pow(self.delta());
        let h = if self.flipped { -&h } else { h };
        let mut acc = ValElt::zero(self.dim + 1);
        let mut power = ValElt::one(self.dim + 1);
        for a in p.coeffs() {
            if !a.is_zero() {
                acc = &acc + &(&self.embed_base(a) * &power);
            }
            power = &power * &h;
        }
        acc
    }

    /// `min_i (v(a_i) + iδ)` over the nonzero coefficients.
    pub fn law<F: OrderedField>(&self, p: &ExtPoly<F>) -> Option<GroupElement> {
        let delta = self.delta();
        lex_min(p.nonzero_terms().map(|(i, a)| {
            let v = finite(a.val()).expect("nonzero").pad_suffix(1);
            &v + &delta.scale(&Rational::from(i as i64))
        }))
    }

    /// The source order with `h > 0`: the sign of the dominant term.
    pub fn source_sign<F: OrderedField>(&self, p: &ExtPoly<F>) -> Sign {
        let Some(v) = self.law(p) else {
            return Sign::Zero;
        };
        let delta = self.delta();
        p.nonzero_terms()
            .find(|(i, a)| {
                &finite(a.val()).expect("nonzero").pad_suffix(1) + &delta.scale(&Rational::from(*i as i64)) == v
            })
            .map(|(_, a)| a.sign())
            .expect("the minimum is attained")
    }
}

/// Case 2: `b ↦ t_{m+1}` from `K_d(b)` over `ℚ(t_1, …, t_m)`, a Gauss
/// extension with `v(b) = 0`.
#[derive(Clone, Copy, Debug)]
pub struct Case2Map {
    pub dim: usize,
    pub generators: usize,
}

impl Case2Map {
    pub fn new(generators: usize, dim: usize) -> Self {
        Case2Map { dim, generators }
    }

    pub fn image_of_b(&self) -> Scalar {
        Scalar::t(self.generators + 1)
    }

    pub fn apply(&self, p: &ExtPoly<Scalar>) -> ValElt<Scalar> {
        let t = self.image_of_b();
        let mut acc = ValElt::zero(self.dim);
        let mut power = Scalar::one();
        for a in p.coeffs() {
            if !a.is_zero() {
                acc = &acc + &a.scale(&power);
            }
            power = power * t.clone();
        }
        acc
    }

    /// `min_i v(a_i)`.
    pub fn law(&self, p: &ExtPoly<Scalar>) -> Option<GroupElement> {
        lex_min(p.nonzero_terms().map(|(_, a)| finite(a.val()).expect("nonzero")))
    }

    /// The source order: with `μ` the Gauss value, the sign of the top
    /// coefficient of the residue polynomial `Σ λ(a_i x^{−μ}) B^i`, the
    /// residue `B` of `b` being larger than every element of `𝐤`.
    pub fn source_sign(&self, p: &ExtPoly<Scalar>) -> Sign {
        let Some(mu) = self.law(p) else {
            return Sign::Zero;
        };
        let shift = ValElt::x_pow(-&mu);
        p.nonzero_terms()
            .filter_map(|(_, a)| lambda(&(a * &shift)))
            .filter(|c| !c.is_zero())
            .last()
            .map(|c| c.sign())
            .expect("the Gauss value is attained")
    }
}

/// A random element of `ℚ(t_1, …, t_m)`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Scalar {
    let c0 = Scalar::from(random_rational(rng));
    if m == 0 || rng.gen_bool(0.3) {
        return c0;
    }
    let k = rng.gen_range(1..=m);
    let mut mono = Scalar::from(random_nonzero_rational(rng));
    for _ in 0..rng.gen_range(1..=2) {
        mono = mono * Scalar::t(k);
    }
    let num = c0 + mono;
    if rng.gen_bool(0.3) {
        let j = rng.gen_range(1..=m);
        num / (Scalar::one() + Scalar::t(j) * Scalar::t(j))
    } else {
        num
    }
}

fn sample_scalar_poly<R: Rng + ?Sized>(rng: &mut R, dim: usize, m: usize, size: usize) -> ExtPoly<Scalar> {
    let p: ExtPoly<Scalar> = ExtPoly::sample(rng, dim, size);
    let coeffs = p
        .coeffs()
        .iter()
        .map(|a| a.scale(&loop {
            let c = random_scalar(rng, m);
            if !c.is_zero() {
                break c;
            }
        }))
        .collect();
    ExtPoly::new(dim, coeffs)
}

/// Named checks from one audit.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub name: String,
    pub checks: Vec<(&'static str, Check)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}: {}\n", self.name, if self.passed() { "pass" } else { "FAIL" });
        for (name, c) in &self.checks {
            out.push_str(&format!(
                "[{}] {:<14} {}\n",
                if c.passed { "pass" } else { "FAIL" },
                name,
                c.detail
            ));
        }
        out
    }
}

/// For every source element `r > 0` with value `v`, `λ(ε(r)·x^{−v}) > 0`.
/// `value` gives the source valuation in target coordinates.
pub fn order_preservation_audit<F: OrderedField, S: fmt::Display>(
    map: impl Fn(&S) -> ValElt<F>,
    value: impl Fn(&S) -> GroupElement,
    positives: &[S],
) -> Check {
    for r in positives {
        let v = value(r);
        let scaled = &map(r) * &ValElt::x_pow(-&v);
        match lambda(&scaled) {
            Some(c) if c.sign() == Sign::Pos => {}
            Some(c) => return Check::fail(format!("r = {r}: λ(ε(r)·x^(-v)) = {c} is not positive")),
            None => return Check::fail(format!("r = {r}: ε(r)·x^(-v) is not a unit")),
        }
    }
    Check::pass(format!("{} positive elements", positives.len()))
}

/// `G = {x^γ}`: a subgroup of the positive units' multiplicative group
/// with `v(x^γ) = γ`, mapped bijectively onto `ℚ^d`, meeting `ker v` in `1`.
pub fn monomial_group_check(d: usize, cfg: &SampleConfig) -> Check {
    let mut rng = cfg.rng(SALT_MONO);
    let one: ValElt<Rational> = ValElt::one(d);
    if ValElt::<Rational>::x_pow(GroupElement::zero(d)) != one {
        return Check::fail("x^0 is not 1");
    }
    for _ in 0..cfg.trials {
        let g = random_exponent(&mut rng, d);
        let h = random_exponent(&mut rng, d);
        let (xg, xh) = (ValElt::<Rational>::x_pow(g.clone()), ValElt::<Rational>::x_pow(h.clone()));
        if xg.val() != Valuation::Finite(g.clone()) {
            return Check::fail(format!("v(x^{g}) is {}", xg.val()));
        }
        if xg.sign() != Sign::Pos {
            return Check::fail(format!("x^{g} is not positive"));
        }
        if &xg * &xh != ValElt::x_pow(&g + &h) {
            return Check::fail(format!("x^{g}·x^{h} is not x^(g+h)"));
        }
        if &xg * &ValElt::x_pow(-&g) != one {
            return Check::fail(format!("x^{g} has no inverse in G"));
        }
        if (xg == xh) != (g == h) {
            return Check::fail(format!("x^{g} = x^{h} disagrees with {g} = {h}"));
        }
        if xg.is_unit() && xg != one {
            return Check::fail(format!("x^{g} is a unit other than 1"));
        }
    }
    Check::pass(format!("{} exponent pairs in dimension {d}", cfg.trials))
}

/// `𝐤₀ = constants`: `λ` is the identity on them and a ring map, and a
/// constant in `𝔪` is zero.
pub fn coefficient_field_check(m: usize, d: usize, cfg: &SampleConfig) -> Check {
    let mut rng = cfg.rng(SALT_COEFF);
    for _ in 0..cfg.trials {
        let c = random_scalar(&mut rng, m);
        let e = random_scalar(&mut rng, m);
        let (kc, ke) = (ValElt::constant(c.clone(), d), ValElt::constant(e.clone(), d));
        if lambda(&kc) != Some(c.clone()) {
            return Check::fail(format!("λ({c}) is not {c}"));
        }
        if lambda(&(&kc * &ke)) != Some(c.clone() * e.clone()) || lambda(&(&kc + &ke)) != Some(c.clone() + e.clone()) {
            return Check::fail(format!("λ is not a ring map at {c}, {e}"));
        }
        if d > 0 && kc.in_prime(d) != c.is_zero() {
            return Check::fail(format!("constant {c} in the maximal ideal"));
        }
        if d > 0 {
            let g = loop {
                let g = random_exponent(&mut rng, d);
                if g.is_positive() {
                    break g;
                }
            };
            let perturbed = &kc + &ValElt::monomial(g.clone(), Scalar::from(random_nonzero_rational(&mut rng)));
            if lambda(&perturbed) != Some(c.clone()) {
                return Check::fail(format!("λ({c} + x^{g}) is not {c}"));
            }
        }
    }
    Check::pass(format!("{} constants over {m} generators in dimension {d}", cfg.trials))
}

/// The identity of `K_d` sends `x^γ` to `x^{v(x^γ)}`, constants to their
/// residues, and preserves the order.
pub fn identity_contract_check(d: usize, cfg: &SampleConfig) -> Check {
    let mut rng = cfg.rng(SALT_IDENTITY);
    let mut positives = vec![ValElt::<Rational>::one(d)];
    for _ in 0..cfg.trials {
        let g = random_exponent(&mut rng, d);
        let xg = ValElt::<Rational>::x_pow(g.clone());
        if finite(xg.val()).map(ValElt::x_pow).as_ref() != Some(&xg) {
            return Check::fail(format!("x^{g} is not x^(v(x^{g}))"));
        }
        let c = random_rational(&mut rng);
        if lambda(&ValElt::constant(c.clone(), d)) != Some(c.clone()) {
            return Check::fail(format!("λ({c}) is not {c}"));
        }
        let r: ValElt<Rational> = random_field_elt(&mut rng, d, cfg.size);
        match r.sign() {
            Sign::Pos => positives.push(r),
            Sign::Neg => positives.push(-&r),
            Sign::Zero => {}
        }
    }
    order_preservation_audit(
        |r: &ValElt<Rational>| r.clone(),
        |r| finite(r.val()).expect("nonzero"),
        &positives,
    )
}

/// Appends `count` nonzero samples, returning how many zeros were drawn.
fn fill_nonzero<F: OrderedField>(
    samples: &mut Vec<ExtPoly<F>>,
    count: usize,
    mut draw: impl FnMut() -> ExtPoly<F>,
) -> usize {
    let mut skipped = 0;
    let target = samples.len() + count;
    while samples.len() < target {
        let p = draw();
        if p.is_zero() {
            skipped += 1;
        } else {
            samples.push(p);
        }
    }
    skipped
}

struct Tally {
    skipped: usize,
    checked: usize,
}

impl Tally {
    fn detail(&self, what: &str) -> String {
        format!("{} on {} polynomials ({} zero draws skipped)", what, self.checked, self.skipped)
    }
}

/// Case 1 on `samples` random polynomials of degree at most 4 over `K_d`.
pub fn case1_extend<F: OrderedField>(d: usize, cfg: &SampleConfig) -> AuditReport {
    case1_audit::<F>(Case1Map::new(d), cfg)
}

/// Case 1 for an explicit map; with `flipped` set the order audit fails.
pub fn case1_audit<F: OrderedField>(map: Case1Map, cfg: &SampleConfig) -> AuditReport {
    let d = map.dim;
    let mut rng = cfg.rng(SALT_CASE1);
    let mut samples = vec![ExtPoly::<F>::var(d), ExtPoly::constant(ValElt::one(d))];
    let skipped = fill_nonzero(&mut samples, cfg.trials, || ExtPoly::sample(&mut rng, d, cfg.size));

    let mut tally = Tally { skipped, checked: 0 };
    let mut law = None;
    let mut order = None;
    for p in &samples {
        tally.checked += 1;
        let image = map.apply(p);
        let expected = map.law(p);
        if law.is_none() && finite(image.val()) != expected {
            law = Some(Check::fail(format!("v(ε({p})) = {} but the law gives {:?}", image.val(), expected)));
        }
        if order.is_none() && image.sign() != map.source_sign(p) {
            order = Some(Check::fail(format!("sign of ε({p}) differs from the source sign")));
        }
    }
    let law = law.unwrap_or_else(|| Check::pass(tally.detail("v = min(v(a_i) + iδ)")));
    let order = order.unwrap_or_else(|| Check::pass(tally.detail("signs agree")));
    let hom = homomorphism_check(&samples, |p| map.apply(p), &ValElt::one(d + 1));
    let base = base_valuation_check::<F, _>(d, cfg, &mut rng, |a| map.embed_base(a), |g| g.pad_suffix(1));
    let positives: Vec<ExtPoly<F>> = samples
        .iter()
        .filter_map(|p| match map.source_sign(p) {
            Sign::Pos => Some(p.clone()),
            Sign::Neg => Some(p.neg()),
            Sign::Zero => None,
        })
        .collect();
    let audit = order_preservation_audit(|p| map.apply(p), |p| map.law(p).expect("nonzero"), &positives);
    AuditReport {
        name: format!("case1 d={d}{}", if map.flipped { " (flipped)" } else { "" }),
        checks: vec![("valuation-law", law), ("homomorphism", hom), ("base-valuation", base), ("order", order), ("order-audit", audit)],
    }
}

/// Case 2 over `ℚ(t_1, …, t_m)` on `samples` random polynomials.
pub fn case2_extend(m: usize, d: usize, cfg: &SampleConfig) -> AuditReport {
    let map = Case2Map::new(m, d);
    let mut rng = cfg.rng(SALT_CASE2);
    let b = ExtPoly::<Scalar>::var(d);
    let mut samples = vec![b.clone(), ExtPoly::constant(ValElt::one(d))];
    let skipped = fill_nonzero(&mut samples, cfg.trials, || sample_scalar_poly(&mut rng, d, m, cfg.size));

    let image_b = map.apply(&b);
    let residue = if lambda(&image_b) == Some(map.image_of_b()) && image_b.is_unit() {
        Check::pass(format!("λ(b) = {} and v(b) = 0", map.image_of_b()))
    } else {
        Check::fail(format!("ε(b) = {image_b}"))
    };

    let mut tally = Tally { skipped, checked: 0 };
    let mut law = None;
    let mut order = None;
    for p in &samples {
        tally.checked += 1;
        let image = map.apply(p);
        if law.is_none() && finite(image.val()) != map.law(p) {
            law = Some(Check::fail(format!("v(ε({p})) = {} but the law gives {:?}", image.val(), map.law(p))));
        }
        if order.is_none() && image.sign() != map.source_sign(p) {
            order = Some(Check::fail(format!("sign of ε({p}) differs from the source sign")));
        }
    }
    let law = law.unwrap_or_else(|| Check::pass(tally.detail("v = min v(a_i)")));
    let order = order.unwrap_or_else(|| Check::pass(tally.detail("signs agree")));
    let hom = homomorphism_check(&samples, |p| map.apply(p), &ValElt::one(d));
    let positives: Vec<ExtPoly<Scalar>> = samples
        .iter()
        .filter_map(|p| match map.source_sign(p) {
            Sign::Pos => Some(p.clone()),
            Sign::Neg => Some(p.neg()),
            Sign::Zero => None,
        })
        .collect();
    let audit = order_preservation_audit(|p| map.apply(p), |p| map.law(p).expect("nonzero"), &positives);
    AuditReport {
        name: format!("case2 m={m} d={d}"),
        checks: vec![("residue", residue), ("valuation-law", law), ("homomorphism", hom), ("order", order), ("order-audit", audit)],
    }
}

/// Case 1 followed by case 2: polynomials in `b` whose coefficients are
/// polynomials in `h` over `K_d`. The value of the image is the minimum of
/// the case-1 values of the coefficients.
pub fn composed_check(m: usize, d: usize, cfg: &SampleConfig) -> Check {
    let step1 = Case1Map::new(d);
    let step2 = Case2Map::new(m, d + 1);
    let mut rng = cfg.rng(SALT_COMPOSED);
    for _ in 0..cfg.trials {
        let deg = rng.gen_range(0..=2);
        let inner: Vec<ExtPoly<Scalar>> = (0..=deg).map(|_| sample_scalar_poly(&mut rng, d, m, cfg.size)).collect();
        let outer = ExtPoly::new(d + 1, inner.iter().map(|q| step1.apply(q)).collect());
        if outer.is_zero() {
            continue;
        }
        let expected = lex_min(inner.iter().filter_map(|q| step1.law(q)));
        let image = step2.apply(&outer);
        if finite(image.val()) != expected || step2.law(&outer) != expected {
            return Check::fail(format!("composed value of {outer} is {}", image.val()));
        }
    }
    Check::pass(format!("{} two-step polynomials", cfg.trials))
}

fn homomorphism_check<F: OrderedField>(
    samples: &[ExtPoly<F>],
    map: impl Fn(&ExtPoly<F>) -> ValElt<F>,
    one: &ValElt<F>,
) -> Check {
    if &map(&ExtPoly::constant(ValElt::one(samples[0].dim()))) != one {
        return Check::fail("1 does not map to 1");
    }
    for pair in samples.windows(2) {
        let (p, q) = (&pair[0], &pair[1]);
        let (fp, fq) = (map(p), map(q));
        if map(&p.add(q)) != &fp + &fq {
            return Check::fail(format!("sum not preserved at {p}, {q}"));
        }
        if map(&p.mul(q)) != &fp * &fq {
            return Check::fail(format!("product not preserved at {p}, {q}"));
        }
        if fp.is_zero() != p.is_zero() {
            return Check::fail(format!("{p} is in the kernel"));
        }
    }
    Check::pass(format!("injective ring map on {} pairs", samples.len() - 1))
}

fn base_valuation_check<F: OrderedField, R: Rng + ?Sized>(
    d: usize,
    cfg: &SampleConfig,
    rng: &mut R,
    embed: impl Fn(&ValElt<F>) -> ValElt<F>,
    pad: impl Fn(&GroupElement) -> GroupElement,
) -> Check {
    for _ in 0..cfg.trials {
        let a: ValElt<F> = random_field_elt(rng, d, cfg.size);
        let expected = match a.val() {
            Valuation::Finite(g) => Valuation::Finite(pad(&g)),
            Valuation::Infinite => Valuation::Infinite,
        };
        let image = embed(&a);
        if image.val() != expected || image.sign() != a.sign() {
            return Check::fail(format!("{a} changes value or sign"));
        }
    }
    Check::pass(format!("{} elements of K keep value and sign", cfg.trials))
}
