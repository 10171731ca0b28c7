use super::{check_prime, FpPoly};
use crate::error::{Error, Result};

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Accepts `[c0,c1,...]` or human syntax such as `T^3+2*T+1` / `2T^2 - T`.
/// Any single identifier may serve as the variable.
pub(super) fn parse_poly(p: u64, s: &str) -> Result<FpPoly> {
    check_prime(p)?;
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[') {
        let Some(body) = body.strip_suffix(']') else {
            return perr(format!("unterminated coefficient list `{s}`"));
        };
        let mut c = Vec::new();
        for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let v: i128 = item.parse().map_err(|_| Error::Parse(format!("bad coefficient `{item}`")))?;
            c.push(v.rem_euclid(p as i128) as u64);
        }
        return Ok(FpPoly::new(p, c));
    }
    parse_human(p, s)
}

fn parse_human(p: u64, s: &str) -> Result<FpPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return perr("empty polynomial");
    }
    let mut var: Option<String> = None;
    let mut coeffs: Vec<u64> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i128;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &compact[start..i];
        if term.is_empty() {
            return perr(format!("dangling sign in `{s}`"));
        }
        let (c, e) = parse_term(term, &mut var)?;
        let value = (sign * c).rem_euclid(p as i128) as u64;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = (coeffs[e] + value) % p;
    }
    Ok(FpPoly::new(p, coeffs))
}

fn parse_term(term: &str, var: &mut Option<String>) -> Result<(i128, usize)> {
    let digits = term.bytes().take_while(u8::is_ascii_digit).count();
    let (num, rest) = term.split_at(digits);
    let coeff: i128 = if num.is_empty() {
        1
    } else {
        num.parse().map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?
    };
    let rest = rest.strip_prefix('*').unwrap_or(rest);
    if rest.is_empty() {
        if num.is_empty() {
            return perr(format!("empty term `{term}`"));
        }
        return Ok((coeff, 0));
    }
    let (name, exp) = match rest.split_once('^') {
        Some((n, e)) => {
            let e: usize = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
            (n, e)
        }
        None => (rest, 1),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name.as_bytes()[0].is_ascii_digit() {
        return perr(format!("bad variable in `{term}`"));
    }
    match var {
        Some(v) if v != name => return perr(format!("mixed variables `{v}` and `{name}`")),
        Some(_) => {}
        None => *var = Some(name.to_string()),
    }
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_syntaxes() {
        let a = parse_poly(3, "T^3+2T+1").unwrap();
        let b = parse_poly(3, "[1, 2, 0, 1]").unwrap();
        let c = parse_poly(3, " T^3 - T + 1 ").unwrap();
        let d = parse_poly(3, "Z^3+2*Z+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, d);
        assert_eq!(parse_poly(5, "[-1]").unwrap(), FpPoly::constant(5, 4));
        assert_eq!(parse_poly(2, &a.display_with("T")).is_ok(), true);
        assert!(parse_poly(3, "T^2+X").is_err());
        assert!(parse_poly(4, "T").is_err());
        assert!(parse_poly(3, "T+").is_err());
    }

    #[test]
    fn display_round_trips() {
        for v in 0..200 {
            let f = FpPoly::from_index(5, v);
            assert_eq!(parse_poly(5, &f.to_string()).unwrap(), f);
        }
    }
}
