use std::fmt::{self, Write};

use num_traits::{One, Signed};

use crate::sl2::PBWElem;
use crate::symbol::SymPoly;
use crate::weyl::{MultiIndex, Poly, WeylOp};
use crate::Rational;

pub fn coordinate_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "z".into()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn derivation_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "dz".into()
    } else {
        format!("d{}", i + 1)
    }
}

pub fn xi_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "xi".into()
    } else {
        format!("xi{}", i + 1)
    }
}

fn push_factors(out: &mut Vec<String>, idx: &MultiIndex, name: impl Fn(usize) -> String) {
    for (i, &e) in idx.as_slice().iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(name(i)),
            _ => out.push(format!("{}^{}", name(i), e)),
        }
    }
}

/// Writes `Σ c·m` with the given terms already in printing order.
fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (Vec<String>, &'a Rational)>,
{
    let mut first = true;
    for (factors, c) in terms {
        let mut s = String::new();
        if first {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        if factors.is_empty() {
            write!(s, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(s, "{mag}*")?;
            }
            s.push_str(&factors.join("*"));
        }
        f.write_str(&s)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Operator text with caller-chosen variable names, e.g. `zeta`/`dzeta`
/// for the second chart of the projective line.
pub struct Renamed<'a, C, D> {
    pub op: &'a WeylOp,
    pub coordinate: C,
    pub derivation: D,
}

impl<C, D> fmt::Display for Renamed<'_, C, D>
where
    C: Fn(usize) -> String,
    D: Fn(usize) -> String,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.op.terms().rev().map(|(k, c)| {
                let mut factors = Vec::new();
                push_factors(&mut factors, &k.x, &self.coordinate);
                push_factors(&mut factors, &k.d, &self.derivation);
                (factors, c)
            }),
        )
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        Renamed {
            op: self,
            coordinate: |i| coordinate_name(n, i),
            derivation: |i| derivation_name(n, i),
        }
        .fmt(f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        write_sum(
            f,
            self.terms().rev().map(|(e, c)| {
                let mut factors = Vec::new();
                push_factors(&mut factors, e, |i| coordinate_name(n, i));
                (factors, c)
            }),
        )
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        write_sum(
            f,
            self.terms().rev().map(|(k, c)| {
                let mut factors = Vec::new();
                push_factors(&mut factors, &k.x, |i| coordinate_name(n, i));
                push_factors(&mut factors, &k.d, |i| xi_name(n, i));
                (factors, c)
            }),
        )
    }
}

impl fmt::Display for PBWElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // higher degree first, then by the stored (F, H, E) exponents
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(&(i, j, k), _)| std::cmp::Reverse((i + j + k, i, j, k)));
        write_sum(
            f,
            terms.into_iter().map(|(&(i, j, k), c)| {
                let mut factors = Vec::new();
                for (name, e) in [("F", i), ("H", j), ("E", k)] {
                    match e {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                (factors, c)
            }),
        )
    }
}
