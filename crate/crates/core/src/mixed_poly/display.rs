//! Canonical text form of a mixed polynomial in the input grammar.
//!
//! Terms are emitted in the stored (ν, μ)-lexicographic order, so the output
//! is deterministic and `parse(to_input_syntax(p)) == p` exactly.

use super::{GaussianRational, MixedPolynomial};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text of a coefficient as it appears inside parentheses, sign included.
fn complex_text(c: &GaussianRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (false, true) => rational_text(&c.re),
        (true, false) => format!("{}i", rational_text(&c.im)),
        (true, true) => "0".to_string(),
        (false, false) => {
            let im = if c.im.is_negative() {
                format!("-{}i", rational_text(&(-c.im.clone())))
            } else {
                format!("+{}i", rational_text(&c.im))
            };
            format!("{}{}", rational_text(&c.re), im)
        }
    }
}

impl MixedPolynomial {
    /// Render in the input grammar using `var` ('z' or 'w') as the variable
    /// letter.
    pub fn to_input_syntax(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (nu, mu, coeff)) in self.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in nu.entries().iter().enumerate() {
                if e == 1 {
                    factors.push(format!("{var}{}", j + 1));
                } else if e > 1 {
                    factors.push(format!("{var}{}^{e}", j + 1));
                }
            }
            for (j, &e) in mu.entries().iter().enumerate() {
                if e == 1 {
                    factors.push(format!("~{var}{}", j + 1));
                } else if e > 1 {
                    factors.push(format!("~{var}{}^{e}", j + 1));
                }
            }

            // Fold the sign of purely real coefficients into the separator.
            let (negative, c) = if coeff.is_real() && coeff.re.is_negative() {
                (true, coeff.neg())
            } else {
                (false, coeff.clone())
            };

            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }

            let coeff_text = if c.is_real() {
                if c.re.is_one() && !factors.is_empty() {
                    None
                } else if c.re.denom().is_one() {
                    Some(rational_text(&c.re))
                } else {
                    Some(format!("({})", rational_text(&c.re)))
                }
            } else {
                Some(format!("({})", complex_text(&c)))
            };

            match coeff_text {
                Some(t) if factors.is_empty() => out.push_str(&t),
                Some(t) => {
                    out.push_str(&t);
                    out.push('*');
                    out.push_str(&factors.join("*"));
                }
                None => out.push_str(&factors.join("*")),
            }
        }
        out
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_input_syntax('z'))
    }
}
