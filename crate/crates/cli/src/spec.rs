//! State specifications: compact shorthands or JSON operator files.
//!
//! Accepted forms: `werner:ALPHA`, `wc:C1,C2,C3`, `bell:K`,
//! `product:NX,NY,NZ,MX,MY,MZ`, or a path to a JSON file holding either a
//! matrix literal or Pauli coefficients.

use entgeo::io::OperatorJson;
use entgeo::states::{bell_projectors, product_state, w_c_state, werner, DensityMatrix};

use crate::CliError;

#[derive(Debug, Clone)]
pub enum StateSpec {
    Werner(f64),
    Wc([f64; 3]),
    Bell(usize),
    Product([f64; 3], [f64; 3]),
    File(String),
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if let Some(rest) = text.strip_prefix("werner:") {
            let alpha = parse_num(rest, "werner alpha")?;
            return Ok(StateSpec::Werner(alpha));
        }
        if let Some(rest) = text.strip_prefix("wc:") {
            let v = parse_nums::<3>(rest, "wc coefficients")?;
            return Ok(StateSpec::Wc(v));
        }
        if let Some(rest) = text.strip_prefix("bell:") {
            let k: usize = rest
                .parse()
                .map_err(|_| CliError::Parse(format!("bell index `{rest}` is not 0..=3")))?;
            if k > 3 {
                return Err(CliError::Parse(format!(
                    "bell index {k} out of range 0..=3"
                )));
            }
            return Ok(StateSpec::Bell(k));
        }
        if let Some(rest) = text.strip_prefix("product:") {
            let v = parse_nums::<6>(rest, "product Bloch vectors")?;
            return Ok(StateSpec::Product([v[0], v[1], v[2]], [v[3], v[4], v[5]]));
        }
        if text.contains(':') {
            return Err(CliError::Parse(format!(
                "unknown state family in `{text}` (expected werner:, wc:, bell:, product:, or a file path)"
            )));
        }
        Ok(StateSpec::File(text.to_string()))
    }

    pub fn build(&self) -> Result<DensityMatrix, CliError> {
        match self {
            StateSpec::Werner(alpha) => werner(*alpha).map_err(state_err),
            StateSpec::Wc(c) => w_c_state(*c).map_err(state_err),
            StateSpec::Bell(k) => Ok(bell_projectors()[*k].clone()),
            StateSpec::Product(n, m) => product_state(*n, *m).map_err(state_err),
            StateSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Parse(format!("cannot read `{path}`: {e}")))?;
                let op = serde_json::from_str::<OperatorJson>(&text)
                    .map_err(|e| CliError::Parse(format!("cannot parse `{path}`: {e}")))?
                    .into_op()
                    .map_err(state_err)?;
                DensityMatrix::new(op).map_err(state_err)
            }
        }
    }

    pub fn echo(&self) -> String {
        match self {
            StateSpec::Werner(a) => format!("werner:{a}"),
            StateSpec::Wc(c) => format!("wc:{},{},{}", c[0], c[1], c[2]),
            StateSpec::Bell(k) => format!("bell:{k}"),
            StateSpec::Product(n, m) => format!(
                "product:{},{},{},{},{},{}",
                n[0], n[1], n[2], m[0], m[1], m[2]
            ),
            StateSpec::File(p) => p.clone(),
        }
    }
}

fn state_err(e: entgeo::Error) -> CliError {
    CliError::State(e.to_string())
}

fn parse_num(text: &str, what: &str) -> Result<f64, CliError> {
    // accept simple fractions like 1/3 for convenience
    if let Some((num, den)) = text.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{what}: `{text}` is not a number")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{what}: `{text}` is not a number")))?;
        if d == 0.0 {
            return Err(CliError::Parse(format!(
                "{what}: division by zero in `{text}`"
            )));
        }
        return Ok(n / d);
    }
    text.trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("{what}: `{text}` is not a number")))
}

fn parse_nums<const N: usize>(text: &str, what: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(CliError::Parse(format!(
            "{what}: expected {N} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = parse_num(part, what)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_forms_parse() {
        assert!(matches!(
            StateSpec::parse("werner:0.5").unwrap(),
            StateSpec::Werner(a) if a == 0.5
        ));
        assert!(matches!(
            StateSpec::parse("werner:1/3").unwrap(),
            StateSpec::Werner(a) if (a - 1.0 / 3.0).abs() < 1e-15
        ));
        assert!(matches!(
            StateSpec::parse("bell:2").unwrap(),
            StateSpec::Bell(2)
        ));
        assert!(StateSpec::parse("wc:0.1,0.2,0.3").is_ok());
        assert!(StateSpec::parse("product:0,0,1,0,0,-1").is_ok());
    }

    #[test]
    fn bad_input_is_a_parse_error() {
        assert!(matches!(
            StateSpec::parse("werner:abc"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            StateSpec::parse("bell:7"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            StateSpec::parse("unknown:1"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            StateSpec::parse("wc:0.1,0.2"),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn invalid_states_are_state_errors() {
        assert!(matches!(
            StateSpec::parse("werner:2.0").unwrap().build(),
            Err(CliError::State(_))
        ));
        assert!(matches!(
            StateSpec::parse("product:0,0,0.5,0,0,1").unwrap().build(),
            Err(CliError::State(_))
        ));
    }
}
