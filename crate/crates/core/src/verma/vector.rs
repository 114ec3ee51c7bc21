//! Vectors of `M(c, h)` in the PBW basis and the Virasoro action on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::params::HighestWeightParams;
use crate::algebra::{Partition, Rational};

/// A finite rational combination of PBW monomials `e_I v_{c,h}`.
#[derive(Clone, PartialEq, Eq)]
pub struct VermaVector {
    pub params: HighestWeightParams,
    coeffs: BTreeMap<Partition, Rational>,
}

impl VermaVector {
    pub fn zero(params: HighestWeightParams) -> Self {
        VermaVector {
            params,
            coeffs: BTreeMap::new(),
        }
    }

    /// The highest-weight vector `v_{c,h}`.
    pub fn highest_weight(params: HighestWeightParams) -> Self {
        Self::monomial(params, Partition::empty())
    }

    pub fn monomial(params: HighestWeightParams, p: Partition) -> Self {
        Self::from_terms(params, [(p, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(
        params: HighestWeightParams,
        terms: I,
    ) -> Self {
        let mut v = Self::zero(params);
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in canonical (reverse-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter().rev()
    }

    /// Distinct grades present, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.coeffs.keys().map(Partition::size).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The grade if the vector is nonzero and homogeneous.
    pub fn grade(&self) -> Option<u32> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(
            self.params.clone(),
            self.coeffs.iter().map(|(p, c)| (p.clone(), c * s)),
        )
    }

    pub fn add(&self, other: &VermaVector) -> Self {
        debug_assert_eq!(self.params, other.params);
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VermaVector) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if mag.is_one() && !p.is_empty() {
                write!(f, "{p}")?;
            } else if p.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "({mag}) {p}")?;
            }
        }
        write!(f, " v")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    c: Rational,
    h: Rational,
    terms: Vec<TermJson>,
}

impl Serialize for VermaVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VectorJson {
            c: self.params.c.clone(),
            h: self.params.h.clone(),
            terms: self
                .terms()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VermaVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = VectorJson::deserialize(deserializer)?;
        Ok(VermaVector::from_terms(
            HighestWeightParams::new(raw.c, raw.h),
            raw.terms.into_iter().map(|t| (t.partition, t.coeff)),
        ))
    }
}

type Terms = BTreeMap<Partition, Rational>;

fn accumulate(into: &mut Terms, from: &Terms, scale: &Rational) {
    if scale.is_zero() {
        return;
    }
    for (p, c) in from {
        let slot = into.entry(p.clone()).or_insert_with(Rational::zero);
        *slot += c * scale;
    }
}

fn prune(mut t: Terms) -> Terms {
    t.retain(|_, c| !c.is_zero());
    t
}

/// Computes `L_m` on PBW monomials of one fixed `M(c, h)`, memoizing the
/// normal-ordered results.
///
/// Normal order puts the most negative mode leftmost. A mode is commuted
/// past the leftmost factor with `[L_m, L_n] = (m-n)L_{m+n} + (m^3-m)/12 δ c`.
pub struct Straightener {
    params: HighestWeightParams,
    memo: HashMap<(i64, Partition), Terms>,
}

impl Straightener {
    pub fn new(params: HighestWeightParams) -> Self {
        Straightener {
            params,
            memo: HashMap::new(),
        }
    }

    pub fn params(&self) -> &HighestWeightParams {
        &self.params
    }

    fn act_monomial(&mut self, m: i64, mono: &Partition) -> Terms {
        if m == 0 {
            let w = &self.params.h + Rational::from(mono.size());
            return std::iter::once((mono.clone(), w)).collect();
        }
        let first = mono.parts().first().copied();
        match first {
            None if m > 0 => return Terms::new(),
            None => {
                return std::iter::once((Partition::from_parts(vec![(-m) as u32]), Rational::one()))
                    .collect()
            }
            Some(a) if m < 0 && -m >= a as i64 => {
                return std::iter::once((mono.prepend((-m) as u32), Rational::one())).collect()
            }
            Some(_) => {}
        }
        let key = (m, mono.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }

        let (a1, tail) = mono.split_first().expect("nonempty");
        let a1 = a1 as i64;
        let mut out = Terms::new();

        // L_{-a1} (L_m tail)
        let inner = self.act_monomial(m, &tail);
        for (p, c) in &inner {
            let moved = self.act_monomial(-a1, p);
            accumulate(&mut out, &moved, c);
        }
        // (m + a1) L_{m - a1} tail
        let bracket = self.act_monomial(m - a1, &tail);
        accumulate(&mut out, &bracket, &Rational::from(m + a1));
        // central term when m = a1
        if m == a1 {
            let central = Rational::new(m * m * m - m, 12) * &self.params.c;
            let single: Terms = std::iter::once((tail.clone(), Rational::one())).collect();
            accumulate(&mut out, &single, &central);
        }

        let out = prune(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// `L_m v`.
    pub fn apply(&mut self, m: i64, v: &VermaVector) -> VermaVector {
        debug_assert_eq!(&v.params, &self.params);
        let mut out = Terms::new();
        for (p, c) in &v.coeffs {
            let r = self.act_monomial(m, p);
            accumulate(&mut out, &r, c);
        }
        VermaVector {
            params: self.params.clone(),
            coeffs: prune(out),
        }
    }

    /// `L_m e_I v_{c,h}` for a single PBW monomial.
    pub fn apply_monomial(&mut self, m: i64, p: &Partition) -> VermaVector {
        VermaVector {
            params: self.params.clone(),
            coeffs: self.act_monomial(m, p),
        }
    }

    /// Applies a word of modes, rightmost first: `L_{w_0} L_{w_1} ... v`.
    pub fn apply_word(&mut self, word: &[i64], v: &VermaVector) -> VermaVector {
        word.iter().rev().fold(v.clone(), |acc, &m| self.apply(m, &acc))
    }
}

/// `L_n v` expressed in the PBW basis.
pub fn apply_mode(n: i64, v: &VermaVector) -> VermaVector {
    Straightener::new(v.params.clone()).apply(n, v)
}
