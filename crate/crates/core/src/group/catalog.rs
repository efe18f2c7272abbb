//! Small named groups: permutation groups and cyclic groups.

use std::sync::Arc;

use super::{enumerate_group, Encoding, GroupHandle, GroupLaw};
use crate::error::{Error, Result};

/// Permutations of `0..n` stored as image arrays.
///
/// Products compose left to right: `(a * b)(i) = b(a(i))`, i.e. apply the
/// first factor, then the second.
#[derive(Debug, Clone, Copy)]
pub struct PermutationLaw {
    pub n: usize,
}

impl GroupLaw for PermutationLaw {
    fn width(&self) -> usize {
        self.n
    }

    fn identity(&self) -> Encoding {
        (0..self.n as u8).collect()
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        for (o, &ai) in out.iter_mut().zip(a) {
            *o = b[ai as usize];
        }
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        for (i, &ai) in a.iter().enumerate() {
            out[ai as usize] = i as u8;
        }
    }
}

/// Integers modulo `n` under addition, stored little-endian in four bytes.
#[derive(Debug, Clone, Copy)]
pub struct CyclicLaw {
    pub n: u32,
}

fn read_u32(a: &[u8]) -> u32 {
    u32::from_le_bytes([a[0], a[1], a[2], a[3]])
}

impl GroupLaw for CyclicLaw {
    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Encoding {
        Encoding::from_slice(&0u32.to_le_bytes())
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let s = (read_u32(a) as u64 + read_u32(b) as u64) % self.n as u64;
        out.copy_from_slice(&(s as u32).to_le_bytes());
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        let x = read_u32(a);
        let y = if x == 0 { 0 } else { self.n - x };
        out.copy_from_slice(&y.to_le_bytes());
    }
}

/// Parses 1-based cycle notation such as `"(1,2,3)(4,5)"`. Commas may be
/// omitted when every point is a single digit, e.g. `"(123)(45)"`.
pub fn parse_cycles(n: usize, text: &str) -> Result<Encoding> {
    let bad = |msg: &str| Error::InvalidInput(format!("permutation {text:?}: {msg}"));
    let mut img: Encoding = (0..n as u8).collect();
    let mut rest = text.trim();
    if rest.is_empty() || rest == "()" {
        return Ok(img);
    }
    let mut seen = vec![false; n];
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let body = &body[..body_end - 1];
        let points: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad point")))
                .collect::<Result<_>>()?
        };
        for &pt in &points {
            if pt == 0 || pt > n {
                return Err(bad("point out of range"));
            }
            if std::mem::replace(&mut seen[pt - 1], true) {
                return Err(bad("point repeated"));
            }
        }
        for (k, &pt) in points.iter().enumerate() {
            let next = points[(k + 1) % points.len()];
            img[pt - 1] = (next - 1) as u8;
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(img)
}

/// Permutation group on `n` points generated by cycle-notation strings.
pub fn permutation_group(name: &str, n: usize, gens: &[&str]) -> Result<GroupHandle> {
    if n == 0 || n > 255 {
        return Err(Error::InvalidInput(format!("degree {n} out of range")));
    }
    let seeds = gens.iter().map(|g| parse_cycles(n, g)).collect::<Result<Vec<_>>>()?;
    enumerate_group(name, Arc::new(PermutationLaw { n }), &seeds)
}

fn cycle_string(points: impl IntoIterator<Item = usize>) -> String {
    let pts: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
    format!("({})", pts.join(","))
}

pub fn symmetric(n: usize) -> Result<GroupHandle> {
    let name = format!("S{n}");
    match n {
        0 | 1 => permutation_group(&name, 1, &[]),
        2 => permutation_group(&name, 2, &["(1,2)"]),
        _ => {
            let long = cycle_string(1..=n);
            permutation_group(&name, n, &["(1,2)", &long])
        }
    }
}

pub fn alternating(n: usize) -> Result<GroupHandle> {
    let name = format!("A{n}");
    if n < 3 {
        return permutation_group(&name, n.max(1), &[]);
    }
    // 3-cycles (1,2,k) generate A_n.
    let gens: Vec<String> = (3..=n).map(|k| cycle_string([1, 2, k])).collect();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    permutation_group(&name, n, &refs)
}

pub fn cyclic(n: u32) -> Result<GroupHandle> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group of order 0".into()));
    }
    let seeds: Vec<Encoding> =
        if n == 1 { Vec::new() } else { vec![Encoding::from_slice(&1u32.to_le_bytes())] };
    enumerate_group(format!("C{n}"), Arc::new(CyclicLaw { n }), &seeds)
}

pub fn trivial() -> Result<GroupHandle> {
    let g = cyclic(1)?;
    Ok(g)
}

/// Dihedral group of order `2k`, acting on the vertices of a `k`-gon.
pub fn dihedral(order: usize) -> Result<GroupHandle> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("dihedral order {order} must be even and >= 4")));
    }
    let k = order / 2;
    let rot = cycle_string(1..=k);
    // Reflection i -> k + 1 - i.
    let refl: String = (1..=k / 2).map(|i| cycle_string([i, k + 1 - i])).collect();
    permutation_group(&format!("D{order}"), k, &[&rot, &refl])
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> Result<GroupHandle> {
    permutation_group("Q8", 8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(trivial().unwrap().order(), 1);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(6).unwrap().order(), 6);
        assert_eq!(quaternion().unwrap().order(), 8);
    }

    #[test]
    fn enumeration_examples() {
        let s3 = permutation_group("S3", 3, &["(1,2)", "(1,2,3)"]).unwrap();
        assert_eq!(s3.order(), 6);
        let v4 = permutation_group("V4", 4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        assert_eq!(v4.order(), 4);
        let one = permutation_group("1", 3, &["()"]).unwrap();
        assert_eq!(one.order(), 1);
    }

    #[test]
    fn left_to_right_composition() {
        let s3 = symmetric(3).unwrap();
        let a = s3.index_of(&parse_cycles(3, "(1,2)").unwrap()).unwrap();
        let b = s3.index_of(&parse_cycles(3, "(1,3)").unwrap()).unwrap();
        // Apply (12) then (13): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1.
        let ab = s3.mul(a, b);
        assert_eq!(s3.encoding(ab), parse_cycles(3, "(1,2,3)").unwrap().as_slice());
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles(3, "(123)").unwrap(), parse_cycles(3, "(1,2,3)").unwrap());
        assert!(parse_cycles(3, "(1,4)").is_err());
        assert!(parse_cycles(3, "(1,1)").is_err());
        assert!(parse_cycles(3, "(1,2").is_err());
    }

    #[test]
    fn cap_reports_partial_count() {
        let law = Arc::new(PermutationLaw { n: 9 });
        let seeds = vec![parse_cycles(9, "(1,2)").unwrap(), parse_cycles(9, "(1,2,3,4,5,6,7,8,9)").unwrap()];
        let err = super::super::enumerate_group_capped("S9", law, &seeds, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { reached: 1000, .. }));
    }
}
