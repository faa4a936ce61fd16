//! Text form of polynomials: `"F2: z^2+z+1"`, `"F3: z^2+2*z+1"`,
//! `"F2^2: z^2+(0,1)*z+(1,1)"`.
//!
//! Terms run from the highest degree down and zero terms are dropped. Over a
//! prime field a coefficient is its integer value. Over F_{p^k} a coefficient
//! other than 1 is its base-p digit vector, constant digit first. A unit
//! coefficient is omitted in front of a power of z.

use super::field::{Elem, FieldCtx};
use super::poly::MonicPoly;
use super::PolyError;

impl FieldCtx {
    pub fn render_elem(&self, a: Elem) -> String {
        if self.k() == 1 || a <= 1 {
            a.to_string()
        } else {
            let digits: Vec<String> = self.digits(a).iter().map(u32::to_string).collect();
            format!("({})", digits.join(","))
        }
    }

    /// Renders without the field tag.
    pub fn render_terms(&self, a: &MonicPoly) -> String {
        let mut terms = Vec::new();
        for (i, &c) in a.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => self.render_elem(c),
                (1, _) => mono,
                _ => format!("{}*{}", self.render_elem(c), mono),
            });
        }
        terms.join("+")
    }

    pub fn render_poly(&self, a: &MonicPoly) -> String {
        format!("{}: {}", self.tag(), self.render_terms(a))
    }

    fn parse_elem(&self, s: &str) -> Result<Elem, PolyError> {
        let bad = || PolyError::Parse(format!("bad coefficient {s:?}"));
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let digits =
                inner.split(',').map(|d| d.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
            self.from_digits(&digits).ok_or_else(bad)
        } else {
            let v: u32 = s.parse().map_err(|_| bad())?;
            if v >= self.q() || (self.k() > 1 && v > 1) {
                return Err(bad());
            }
            Ok(v)
        }
    }

    /// Parses the output of [`FieldCtx::render_poly`] (the tag is optional).
    pub fn parse_poly(&self, s: &str) -> Result<MonicPoly, PolyError> {
        let body = match s.split_once(':') {
            Some((tag, body)) => {
                if tag.trim() != self.tag() {
                    return Err(PolyError::Parse(format!("field tag {:?} does not match {}", tag.trim(), self.tag())));
                }
                body
            }
            None => s,
        };
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Elem> = Vec::new();
        for term in body.split('+') {
            let (coef, mono) = match term.find('z') {
                None => (term, None),
                Some(pos) => {
                    let c = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (c, Some(&term[pos..]))
                }
            };
            let deg = match mono {
                None => 0,
                Some("z") => 1,
                Some(m) => m
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| PolyError::Parse(format!("bad monomial {m:?}")))?,
            };
            let c = if coef.is_empty() {
                if mono.is_none() {
                    return Err(PolyError::Parse("empty term".into()));
                }
                1
            } else {
                self.parse_elem(coef)?
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] = self.add(coeffs[deg], c);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        MonicPoly::from_coeffs(self, coeffs)
    }
}
