//! Report assembly and rendering: canonical group strings, optional
//! prime-power torsion, and machine-readable JSON.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use permhom::abelian::FgAbGroup;

/// Canonical rendering "Z^r + Z/d1 + Z/d2"; with `primes` the torsion is
/// re-rendered as prime powers in ascending order.
pub fn render_group(g: &FgAbGroup, primes: bool) -> String {
    if !primes {
        return g.to_string();
    }
    if g.is_trivial() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    match g.rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    let mut powers: Vec<BigInt> = Vec::new();
    for d in g.torsion() {
        match prime_power_factors(d) {
            Some(fs) => powers.extend(fs),
            // Torsion too large to factor by trial division; keep as is.
            None => powers.push(d.clone()),
        }
    }
    powers.sort();
    for p in powers {
        parts.push(format!("Z/{p}"));
    }
    parts.join(" + ")
}

/// Prime-power factorization by trial division, for torsion that fits in a
/// machine word (all desk-scale cases).
fn prime_power_factors(d: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = d.to_u128()?;
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1u128;
            while n % p == 0 {
                q *= p;
                n /= p;
            }
            out.push(BigInt::from(q));
        }
        p += 1;
    }
    if n > 1 {
        out.push(BigInt::from(n));
    }
    Some(out)
}

pub fn groups_json(groups: &[FgAbGroup]) -> Value {
    Value::Array(
        groups
            .iter()
            .map(|g| {
                json!({
                    "rank": g.rank(),
                    "torsion": g.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "text": g.to_string(),
                })
            })
            .collect(),
    )
}

/// A structured command report. Text rendering happens in the command
/// handlers; this carries the machine-readable form.
pub struct Report {
    pub command: String,
    pub input: String,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            results: Value::Null,
            warnings: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        self.warnings.push(text.into());
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "command": self.command,
            "input": self.input,
            "results": self.results,
            "warnings": self.warnings,
        });
        if let Some(ms) = self.timing_ms {
            obj["timing_ms"] = json!(ms);
        }
        obj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_rendering() {
        let g = FgAbGroup::from_parts(2, [BigInt::from(2), BigInt::from(12)]);
        assert_eq!(render_group(&g, false), "Z^2 + Z/2 + Z/12");
        assert_eq!(render_group(&g, true), "Z^2 + Z/2 + Z/3 + Z/4");
        assert_eq!(render_group(&FgAbGroup::trivial(), true), "0");
    }
}
