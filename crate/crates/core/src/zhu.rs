//! Zhu bimodule images and the polynomial fusion criteria.
//!
//! `A(M(c,h))` is identified with `ℚ[x,y]`: the highest-weight vector is 1,
//! left multiplication by `[ω]` is `x` and right multiplication is `y`. A PBW
//! monomial reduces through `[L_{-n} u] = (-1)^n (n y - x + wt u) [u]`, where
//! `wt u` is the absolute conformal weight of the tail `u`.

use serde::{Deserialize, Serialize};

use crate::algebra::{BivariatePolynomial, Partition, Rational, SqrtLaurent};
use crate::error::{Error, Result};
use crate::verma::{
    maximal_submodule_generators, weight_c1q, HighestWeightParams, ModuleLabel, Straightener,
    VermaVector,
};

/// Image of a Verma-module vector in `A(M(c,h)) ≅ ℚ[x,y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuClass {
    pub poly: BivariatePolynomial,
    pub source_params: HighestWeightParams,
}

#[derive(Serialize, Deserialize)]
struct ZhuTermJson {
    i: u32,
    j: u32,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ZhuClassJson {
    c: Rational,
    h: Rational,
    poly: Vec<ZhuTermJson>,
}

impl Serialize for ZhuClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ZhuClassJson {
            c: self.source_params.c.clone(),
            h: self.source_params.h.clone(),
            poly: self
                .poly
                .terms()
                .map(|(i, j, c)| ZhuTermJson {
                    i,
                    j,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZhuClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ZhuClassJson::deserialize(deserializer)?;
        Ok(ZhuClass {
            poly: BivariatePolynomial::from_terms(raw.poly.into_iter().map(|t| (t.i, t.j, t.coeff))),
            source_params: HighestWeightParams::new(raw.c, raw.h),
        })
    }
}

fn reduce_monomial(p: &Partition, h: &Rational) -> BivariatePolynomial {
    let x = BivariatePolynomial::x();
    let y = BivariatePolynomial::y();
    let mut acc = BivariatePolynomial::one();
    let mut tail_grade = 0u32;
    // innermost factor first
    for &n in p.parts().iter().rev() {
        let wt = h + Rational::from(tail_grade);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let factor = (y.scale(&Rational::from(n)) - x.clone() + BivariatePolynomial::constant(wt))
            .scale(&Rational::from(sign));
        acc = &factor * &acc;
        tail_grade += n;
    }
    acc
}

/// Image of `v` in the Zhu bimodule of its Verma module.
pub fn zhu_reduce(v: &VermaVector) -> ZhuClass {
    let mut poly = BivariatePolynomial::zero();
    for (p, c) in v.terms() {
        poly = poly + reduce_monomial(p, &v.params.h).scale(c);
    }
    ZhuClass {
        poly,
        source_params: v.params.clone(),
    }
}

/// `((L_{-2} + 2L_{-1} + L_0) v, (L_{-2} + L_{-1}) v)`: the left and right
/// actions of `[ω]` before reduction.
pub fn left_right_omega(v: &VermaVector) -> (VermaVector, VermaVector) {
    let mut st = Straightener::new(v.params.clone());
    let l2 = st.apply(-2, v);
    let l1 = st.apply(-1, v);
    let l0 = st.apply(0, v);
    let left = l2.add(&l1.scale(&Rational::from(2))).add(&l0);
    let right = l2.add(&l1);
    (left, right)
}

/// Zhu images of the generators of the maximal submodule behind `label`.
pub fn singular_image(label: &ModuleLabel) -> Result<Vec<ZhuClass>> {
    Ok(maximal_submodule_generators(label)?
        .into_iter()
        .map(|(_, v)| zhu_reduce(&v))
        .collect())
}

fn images_vanish_at(label: &ModuleLabel, x0: &Rational, y0: &Rational) -> Result<bool> {
    Ok(singular_image(label)?
        .iter()
        .all(|z| z.poly.evaluate(x0, y0).is_zero()))
}

/// Upper bound on the fusion rule `N^{w3}_{w1,w2}` from the Zhu bimodules.
///
/// Returns 1 iff the singular images of `w1` vanish at `(h3, h2)` and those
/// of `w2` vanish at `(h3, h1)`.
pub fn fz_upper_bound(w1: &ModuleLabel, w2: &ModuleLabel, w3: &ModuleLabel) -> Result<u8> {
    let (h1, h2, h3) = (w1.weight(), w2.weight(), w3.weight());
    let ok = images_vanish_at(w1, &h3, &h2)? && images_vanish_at(w2, &h3, &h1)?;
    Ok(ok as u8)
}

/// Indices of one factor `Q_{k,l}^{α,β}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QFactorSpec {
    pub alpha: u32,
    pub beta: u32,
    pub k: u32,
    pub l: u32,
}

impl QFactorSpec {
    pub fn new(alpha: u32, beta: u32, k: u32, l: u32) -> Result<Self> {
        if alpha == 0 || beta == 0 || k >= alpha || l >= beta {
            return Err(Error::InvalidInput(format!(
                "Q factor indices need 0 <= k < alpha, 0 <= l < beta, got ({alpha},{beta},{k},{l})"
            )));
        }
        Ok(QFactorSpec { alpha, beta, k, l })
    }
}

/// `m ξ^{1/2} - n ξ^{-1/2}`.
fn sqrt_binomial(m: i64, n: i64) -> SqrtLaurent {
    SqrtLaurent::xi_half_power(1).scale(&Rational::from(m))
        - SqrtLaurent::xi_half_power(-1).scale(&Rational::from(n))
}

/// `Q_{k,l}^{α,β}(a,b;ξ)` as a polynomial in `a, b` over `ℚ[ξ^{±1/2}]`:
///
/// ```text
/// [(b-a) - (kξ^½ - lξ^-½)((α-k)ξ^½ - (β-l)ξ^-½)]
///   × [(b-a) - ((k+1)ξ^½ - (l+1)ξ^-½)((α-k-1)ξ^½ - (β-l-1)ξ^-½)]
///   + ((α-2k-1)ξ^½ - (β-2l-1)ξ^-½)² a
/// ```
///
/// The last term is invariant under `(k, l) -> (α-1-k, β-1-l)`, which swaps
/// the two brackets. Writing `β-l-1` there instead breaks that symmetry and
/// the equivalence with [`product_condition`] once `β >= 3`.
pub fn q_factor(spec: QFactorSpec) -> SqrtLaurent {
    let (al, be, k, l) = (
        spec.alpha as i64,
        spec.beta as i64,
        spec.k as i64,
        spec.l as i64,
    );
    let a = SqrtLaurent::a();
    let b_minus_a = &SqrtLaurent::b() - &a;
    let first = &b_minus_a - &(sqrt_binomial(k, l) * sqrt_binomial(al - k, be - l));
    let second =
        &b_minus_a - &(sqrt_binomial(k + 1, l + 1) * sqrt_binomial(al - k - 1, be - l - 1));
    let braced = sqrt_binomial(al - 2 * k - 1, be - 2 * l - 1).pow(2);
    first * second + braced * a
}

/// All factors of `P_{α,β}²`.
pub fn q_factors(alpha: u32, beta: u32) -> Vec<SqrtLaurent> {
    (0..alpha)
        .flat_map(|k| (0..beta).map(move |l| (k, l)))
        .map(|(k, l)| q_factor(QFactorSpec { alpha, beta, k, l }))
        .collect()
}

/// `P_{α,β}(a0, b0; xi0)²`, the full product of the `Q` factors.
pub fn p_squared(
    alpha: u32,
    beta: u32,
    a0: &Rational,
    b0: &Rational,
    xi0: &Rational,
) -> Result<Rational> {
    if xi0.is_zero() {
        return Err(Error::InvalidInput("xi must be nonzero".into()));
    }
    let factors = q_factors(alpha, beta);
    let per_factor: Result<Vec<Rational>> =
        factors.iter().map(|f| f.specialize(a0, b0, xi0)).collect();
    match per_factor {
        Ok(values) => Ok(values.into_iter().product()),
        Err(Error::OddHalfPower { .. }) => {
            // odd half-powers may still pair up across factors
            let full = factors
                .iter()
                .fold(SqrtLaurent::one(), |acc, f| &acc * f);
            full.specialize(a0, b0, xi0)
        }
        Err(e) => Err(e),
    }
}

/// Whether some `h_{i3,s3} - h_{i1+i2-2k-1, s1+s2-2l-1}` vanishes for
/// `0 <= k < i1`, `0 <= l < s1`.
pub fn product_condition(q: u32, i1: u32, s1: u32, i2: u32, s2: u32, h3: &Rational) -> bool {
    let (i1, s1, i2, s2) = (i1 as i64, s1 as i64, i2 as i64, s2 as i64);
    (0..i1).any(|k| {
        (0..s1).any(|l| weight_c1q(q, i1 + i2 - 2 * k - 1, s1 + s2 - 2 * l - 1) == *h3)
    })
}

/// `P_{i1,s1}(-h_{i2,s2}, -h3 + h_{i1,s1}; q)² = 0` evaluated exactly.
pub fn p_squared_condition(q: u32, i1: u32, s1: u32, i2: u32, s2: u32, h3: &Rational) -> Result<bool> {
    let a0 = -weight_c1q(q, i2 as i64, s2 as i64);
    let b0 = -h3 + weight_c1q(q, i1 as i64, s1 as i64);
    Ok(p_squared(i1, s1, &a0, &b0, &Rational::from(q))?.is_zero())
}

/// True iff the `P²` criterion and the product criterion agree.
pub fn equivalence_check(q: u32, i1: u32, s1: u32, i2: u32, s2: u32, h3: &Rational) -> Result<bool> {
    Ok(p_squared_condition(q, i1, s1, i2, s2, h3)? == product_condition(q, i1, s1, i2, s2, h3))
}
