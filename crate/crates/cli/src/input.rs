//! Input loading helpers: polynomial files, dimension inference, and flag
//! vector parsing.

use anyhow::{anyhow, bail, Context, Result};
use mixed_links::covering::CoveringSpec;
use mixed_links::mixed_poly::{parse, MixedPolynomial};
use std::path::Path;

/// Largest variable index appearing as zK / wK / ~zK / ~wK in the text.
pub fn infer_dimension(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut max_idx = None;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if matches!(b, b'z' | b'w' | b'Z' | b'W') {
            let mut j = i + 1;
            let mut idx: usize = 0;
            let mut any = false;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                idx = idx * 10 + usize::from(bytes[j] - b'0');
                any = true;
                j += 1;
            }
            if any && idx > 0 {
                max_idx = Some(max_idx.map_or(idx, |m: usize| m.max(idx)));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    max_idx
}

/// Read and parse a polynomial file; `n` overrides the inferred dimension.
pub fn load_polynomial(path: &Path, n: Option<usize>) -> Result<(MixedPolynomial, usize)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let trimmed = text.trim();
    let dim = match (n, infer_dimension(trimmed)) {
        (Some(n), Some(seen)) if seen > n => {
            bail!("input uses variable index {seen} but --n {n} was given")
        }
        (Some(n), _) => n,
        (None, Some(seen)) => seen,
        (None, None) => bail!("cannot infer dimension; pass --n"),
    };
    let poly = parse(trimmed, dim)
        .map_err(|e| anyhow!("{}: parse error: {e}", path.display()))?;
    Ok((poly, dim))
}

/// Parse "2" (homogeneous) or "2,3,1" (per-variable) covering exponents.
pub fn parse_exponents(text: &str, n: usize) -> Result<Vec<u32>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let values: Vec<u32> = parts
        .iter()
        .map(|p| p.parse::<u32>().with_context(|| format!("bad integer '{p}'")))
        .collect::<Result<_>>()?;
    match values.len() {
        1 => Ok(vec![values[0]; n]),
        len if len == n => Ok(values),
        len => bail!("expected 1 or {n} comma-separated integers, got {len}"),
    }
}

pub fn covering_spec(a: &str, b: &str, n: usize) -> Result<CoveringSpec> {
    let av = parse_exponents(a, n)?;
    let bv = parse_exponents(b, n)?;
    CoveringSpec::new(av, bv).map_err(|e| anyhow!("invalid covering: {e}"))
}

/// Parse comma-separated positive sphere weights (or a single integer).
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<u32>> {
    let v = parse_exponents(text, n)?;
    if v.iter().any(|&x| x == 0) {
        bail!("sphere weights must be positive");
    }
    Ok(v)
}

/// Comma-separated radius list.
pub fn parse_radii(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .map(|p| {
            let r: f64 = p.parse().with_context(|| format!("bad radius '{p}'"))?;
            if !(r.is_finite() && r > 0.0) {
                bail!("radius must be positive, got {p}");
            }
            Ok(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dimension("z1^2 + z2^2"), Some(2));
        assert_eq!(infer_dimension("w1^4*~w3^2"), Some(3));
        assert_eq!(infer_dimension("(1/2+1i)"), None);
        assert_eq!(infer_dimension("z12"), Some(12));
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(parse_exponents("2", 3).unwrap(), vec![2, 2, 2]);
        assert_eq!(parse_exponents("2,1,0", 3).unwrap(), vec![2, 1, 0]);
        assert!(parse_exponents("2,1", 3).is_err());
    }
}
