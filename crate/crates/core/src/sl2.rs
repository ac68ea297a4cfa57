//! `sl₂`, its universal enveloping algebra in the PBW basis `F^i H^j E^k`,
//! and the homomorphism onto global differential operators on the
//! projective line.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::p1::sl2_triple;
use crate::weyl::WeylOp;
use crate::Rational;

/// The standard basis `E, F, H` with `[E,F] = H`, `[H,E] = 2E`,
/// `[H,F] = -2F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2Basis {
    E,
    F,
    H,
}

impl Sl2Basis {
    pub const ALL: [Sl2Basis; 3] = [Sl2Basis::E, Sl2Basis::F, Sl2Basis::H];

    /// Position in the PBW order `F < H < E`.
    fn pbw_rank(self) -> u8 {
        match self {
            Sl2Basis::F => 0,
            Sl2Basis::H => 1,
            Sl2Basis::E => 2,
        }
    }

    /// Position in the adjoint-matrix basis `(E, H, F)`.
    fn ad_index(self) -> usize {
        match self {
            Sl2Basis::E => 0,
            Sl2Basis::H => 1,
            Sl2Basis::F => 2,
        }
    }

    pub fn parse(name: &str) -> Option<Sl2Basis> {
        match name {
            "E" => Some(Sl2Basis::E),
            "F" => Some(Sl2Basis::F),
            "H" => Some(Sl2Basis::H),
            _ => None,
        }
    }
}

impl fmt::Display for Sl2Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Basis::E => "E",
            Sl2Basis::F => "F",
            Sl2Basis::H => "H",
        })
    }
}

/// `e·E + f·F + h·H`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sl2Elem {
    pub e: Rational,
    pub f: Rational,
    pub h: Rational,
}

impl Sl2Elem {
    pub fn new(e: Rational, f: Rational, h: Rational) -> Self {
        Sl2Elem { e, f, h }
    }

    pub fn basis(b: Sl2Basis) -> Self {
        let mut out = Sl2Elem::default();
        *out.coord_mut(b) = Rational::one();
        out
    }

    pub fn coord(&self, b: Sl2Basis) -> &Rational {
        match b {
            Sl2Basis::E => &self.e,
            Sl2Basis::F => &self.f,
            Sl2Basis::H => &self.h,
        }
    }

    fn coord_mut(&mut self, b: Sl2Basis) -> &mut Rational {
        match b {
            Sl2Basis::E => &mut self.e,
            Sl2Basis::F => &mut self.f,
            Sl2Basis::H => &mut self.h,
        }
    }

    pub fn add(&self, other: &Sl2Elem) -> Sl2Elem {
        Sl2Elem::new(&self.e + &other.e, &self.f + &other.f, &self.h + &other.h)
    }

    pub fn scale(&self, s: &Rational) -> Sl2Elem {
        Sl2Elem::new(&self.e * s, &self.f * s, &self.h * s)
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.f.is_zero() && self.h.is_zero()
    }

    /// Coordinates in the order `(E, H, F)`.
    pub fn ad_coordinates(&self) -> [Rational; 3] {
        [self.e.clone(), self.h.clone(), self.f.clone()]
    }
}

fn basis_bracket(a: Sl2Basis, b: Sl2Basis) -> Sl2Elem {
    use Sl2Basis::*;
    let two = Rational::from_integer(2.into());
    match (a, b) {
        (E, F) => Sl2Elem::basis(H),
        (F, E) => Sl2Elem::basis(H).scale(&-Rational::one()),
        (H, E) => Sl2Elem::basis(E).scale(&two),
        (E, H) => Sl2Elem::basis(E).scale(&-two),
        (H, F) => Sl2Elem::basis(F).scale(&-two),
        (F, H) => Sl2Elem::basis(F).scale(&two),
        _ => Sl2Elem::default(),
    }
}

/// Bilinear extension of the structure constants.
pub fn bracket(x: &Sl2Elem, y: &Sl2Elem) -> Sl2Elem {
    let mut out = Sl2Elem::default();
    for a in Sl2Basis::ALL {
        for b in Sl2Basis::ALL {
            let c = x.coord(a) * y.coord(b);
            if !c.is_zero() {
                out = out.add(&basis_bracket(a, b).scale(&c));
            }
        }
    }
    out
}

pub type Matrix3 = [[Rational; 3]; 3];

/// Matrix of `ad_x` in the ordered basis `(E, H, F)`; column `j` holds the
/// coordinates of `[x, b_j]`.
pub fn ad_matrix(x: Sl2Basis) -> Matrix3 {
    ad_of(&Sl2Elem::basis(x))
}

/// `ad_x` for an arbitrary element.
pub fn ad_of(x: &Sl2Elem) -> Matrix3 {
    let mut m: Matrix3 = Default::default();
    for b in Sl2Basis::ALL {
        let col = bracket(x, &Sl2Elem::basis(b)).ad_coordinates();
        for (row, v) in col.into_iter().enumerate() {
            m[row][b.ad_index()] = v;
        }
    }
    m
}

pub fn matmul3(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out: Matrix3 = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]);
        }
    }
    out
}

/// Exponents `(i, j, k)` of `F^i H^j E^k`.
pub type PbwWord = (u32, u32, u32);

/// Element of `U(sl₂)` as a combination of PBW monomials `F^i H^j E^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PBWElem {
    terms: BTreeMap<PbwWord, Rational>,
}

impl PBWElem {
    pub fn zero() -> Self {
        PBWElem::default()
    }

    pub fn one() -> Self {
        PBWElem::monomial(Rational::one(), (0, 0, 0))
    }

    pub fn generator(b: Sl2Basis) -> Self {
        let w = match b {
            Sl2Basis::F => (1, 0, 0),
            Sl2Basis::H => (0, 1, 0),
            Sl2Basis::E => (0, 0, 1),
        };
        PBWElem::monomial(Rational::one(), w)
    }

    pub fn scalar(c: Rational) -> Self {
        PBWElem::monomial(c, (0, 0, 0))
    }

    pub fn monomial(c: Rational, w: PbwWord) -> Self {
        let mut out = PBWElem::zero();
        out.insert(w, c);
        out
    }

    pub fn from_sl2(x: &Sl2Elem) -> Self {
        Sl2Basis::ALL.iter().fold(PBWElem::zero(), |acc, &b| {
            acc.add(&PBWElem::generator(b).scale(x.coord(b)))
        })
    }

    fn insert(&mut self, w: PbwWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PbwWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: PbwWord) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j, k)| i + j + k).max()
    }

    pub fn add(&self, other: &PBWElem) -> PBWElem {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PBWElem) -> PBWElem {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> PBWElem {
        let mut out = PBWElem::zero();
        for (w, c) in &self.terms {
            out.insert(*w, c * s);
        }
        out
    }

    pub fn pow(&self, k: u32) -> PBWElem {
        (0..k).fold(PBWElem::one(), |acc, _| pbw_mul(&acc, self))
    }
}

fn word_letters((i, j, k): PbwWord) -> Vec<Sl2Basis> {
    let mut w = Vec::with_capacity((i + j + k) as usize);
    w.extend(std::iter::repeat_n(Sl2Basis::F, i as usize));
    w.extend(std::iter::repeat_n(Sl2Basis::H, j as usize));
    w.extend(std::iter::repeat_n(Sl2Basis::E, k as usize));
    w
}

/// Positions `p` where `word[p]` must move past `word[p+1]`.
pub fn inversions(word: &[Sl2Basis]) -> Vec<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].pbw_rank() > w[1].pbw_rank())
        .map(|(p, _)| p)
        .collect()
}

fn canonical_word(word: &[Sl2Basis]) -> PbwWord {
    word.iter().fold((0, 0, 0), |(i, j, k), b| match b {
        Sl2Basis::F => (i + 1, j, k),
        Sl2Basis::H => (i, j + 1, k),
        Sl2Basis::E => (i, j, k + 1),
    })
}

/// Rewrites `c · word` into PBW order with `ab → ba + [a,b]`, using
/// `choose` to pick which inversion to resolve next.
pub fn straighten_with(
    word: &[Sl2Basis],
    c: Rational,
    choose: &mut impl FnMut(&[usize]) -> usize,
) -> PBWElem {
    let mut out = PBWElem::zero();
    let mut pending: Vec<(Vec<Sl2Basis>, Rational)> = vec![(word.to_vec(), c)];
    while let Some((w, c)) = pending.pop() {
        let inv = inversions(&w);
        if inv.is_empty() {
            out.insert(canonical_word(&w), c);
            continue;
        }
        let p = inv[choose(&inv)];
        let (a, b) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        pending.push((swapped, c.clone()));
        let br = basis_bracket(a, b);
        for g in Sl2Basis::ALL {
            let gc = br.coord(g);
            if gc.is_zero() {
                continue;
            }
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..p]);
            shorter.push(g);
            shorter.extend_from_slice(&w[p + 2..]);
            pending.push((shorter, &c * gc));
        }
    }
    out
}

/// Straightening resolving the leftmost inversion first.
pub fn straighten(word: &[Sl2Basis], c: Rational) -> PBWElem {
    straighten_with(word, c, &mut |_| 0)
}

/// Product in `U(sl₂)`, returned in PBW order.
pub fn pbw_mul(a: &PBWElem, b: &PBWElem) -> PBWElem {
    let mut out = PBWElem::zero();
    for (w1, c1) in &a.terms {
        for (w2, c2) in &b.terms {
            let mut word = word_letters(*w1);
            word.extend(word_letters(*w2));
            out = out.add(&straighten(&word, c1 * c2));
        }
    }
    out
}

/// `H² + 2EF + 2FE` in PBW form, `H² + 4FE + 2H`.
pub fn casimir() -> PBWElem {
    let e = PBWElem::generator(Sl2Basis::E);
    let f = PBWElem::generator(Sl2Basis::F);
    let h = PBWElem::generator(Sl2Basis::H);
    let two = Rational::from_integer(2.into());
    pbw_mul(&h, &h)
        .add(&pbw_mul(&e, &f).scale(&two))
        .add(&pbw_mul(&f, &e).scale(&two))
}

/// Image of a basis element: `E ↦ -∂`, `H ↦ -2z∂`, `F ↦ z²∂`.
pub fn phi_generator(b: Sl2Basis) -> WeylOp {
    let (e, h, f) = sl2_triple();
    match b {
        Sl2Basis::E => e,
        Sl2Basis::H => h,
        Sl2Basis::F => f,
    }
}

/// The algebra homomorphism `U(sl₂) → Γ(P¹, D)`, word by word.
pub fn phi_to_p1(a: &PBWElem) -> WeylOp {
    let (e, h, f) = sl2_triple();
    let mut out = WeylOp::zero(1, false);
    for (&(i, j, k), c) in &a.terms {
        let word = f
            .pow(i)
            .mul(&h.pow(j))
            .and_then(|w| w.mul(&e.pow(k)))
            .expect("same algebra");
        out = out.add(&word.scale(c)).expect("same algebra");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sl2Basis::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn m3(rows: [[i64; 3]; 3]) -> Matrix3 {
        rows.map(|row| row.map(r))
    }

    #[test]
    fn brackets() {
        assert_eq!(
            bracket(&Sl2Elem::basis(E), &Sl2Elem::basis(F)),
            Sl2Elem::basis(H)
        );
        let x = Sl2Elem::new(r(3), r(-1), Rational::new(1.into(), 2.into()));
        assert!(bracket(&x, &x).is_zero());
        let ef = Sl2Elem::basis(E).add(&Sl2Elem::basis(F));
        assert_eq!(
            bracket(&Sl2Elem::basis(H), &ef),
            Sl2Elem::new(r(2), r(-2), r(0))
        );
    }

    #[test]
    fn adjoint_matrices() {
        assert_eq!(ad_matrix(E), m3([[0, -2, 0], [0, 0, 1], [0, 0, 0]]));
        assert_eq!(ad_matrix(H), m3([[2, 0, 0], [0, 0, 0], [0, 0, -2]]));
        assert_eq!(ad_matrix(F), m3([[0, 0, 0], [-1, 0, 0], [0, 2, 0]]));
    }

    #[test]
    fn small_products() {
        let e = PBWElem::generator(E);
        let f = PBWElem::generator(F);
        let h = PBWElem::generator(H);
        assert_eq!(
            pbw_mul(&e, &f),
            PBWElem::monomial(r(1), (1, 0, 1)).add(&PBWElem::monomial(r(1), (0, 1, 0)))
        );
        assert_eq!(pbw_mul(&f, &f), PBWElem::monomial(r(1), (2, 0, 0)));
        // H·E is already ordered
        assert_eq!(pbw_mul(&h, &e), PBWElem::monomial(r(1), (0, 1, 1)));
        // E·H = HE - 2E
        assert_eq!(
            pbw_mul(&e, &h),
            PBWElem::monomial(r(1), (0, 1, 1)).add(&PBWElem::monomial(r(-2), (0, 0, 1)))
        );
        // H·E - E·H = 2E
        assert_eq!(pbw_mul(&h, &e).sub(&pbw_mul(&e, &h)), e.scale(&r(2)));
    }

    #[test]
    fn casimir_form_and_image() {
        let c = casimir();
        let expected = PBWElem::monomial(r(1), (0, 2, 0))
            .add(&PBWElem::monomial(r(4), (1, 0, 1)))
            .add(&PBWElem::monomial(r(2), (0, 1, 0)));
        assert_eq!(c, expected);
        for g in Sl2Basis::ALL {
            let x = PBWElem::generator(g);
            assert_eq!(pbw_mul(&c, &x), pbw_mul(&x, &c));
        }
        assert!(phi_to_p1(&c).is_zero());
    }

    #[test]
    fn phi_on_generators() {
        assert_eq!(
            phi_to_p1(&PBWElem::generator(E)),
            WeylOp::d(1, false, 0).neg()
        );
        assert_eq!(phi_to_p1(&PBWElem::one()), WeylOp::one(1, false));
    }
}
