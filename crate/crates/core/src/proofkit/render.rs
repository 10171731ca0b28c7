use std::fmt::Write;

use super::{verify_certificate, BnMode, Certificate, Payload};
use crate::error::{Error, Result};
use crate::fppoly::FpPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Terse,
    Tutorial,
}

fn paren(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

fn in_x(f: &FpPoly) -> String {
    f.display_with("x")
}

fn dot_join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join("·")
}

/// Deterministic prose for a certificate that passes verification.
pub fn render_certificate(cert: &Certificate, style: Style) -> Result<String> {
    let report = verify_certificate(cert)?;
    if !report.passed() {
        return Err(Error::Refused(format!("certificate fails: {}", report.failure.unwrap_or_default())));
    }
    let tut = style == Style::Tutorial;
    let mut out = String::new();
    let w = &mut out;
    match &cert.payload {
        Payload::Characteristic(c) => {
            let n = c.n;
            let sum: Vec<String> =
                c.witnesses.iter().zip(&c.coefficients).map(|(z, k)| format!("({k})·({z}^{n} - {z})")).collect();
            if tut {
                writeln!(w, "In any {n}-ring every element z satisfies z^{n} = z, so each z^{n} - z is 0.").unwrap();
            }
            writeln!(w, "{} = {}", c.product, sum.join(" + ")).unwrap();
            if tut {
                writeln!(w, "The right side is a sum of zeros, hence so is the left side.").unwrap();
            }
            writeln!(w, "Hence {} = 0 holds in any {n}-ring.", dot_join(&c.primes)).unwrap();
        }
        Payload::Reduction(c) => {
            let (n, p) = (c.n, c.p);
            let q = c.p.pow(c.k as u32);
            let sum: Vec<String> = c
                .witnesses
                .iter()
                .zip(&c.coefficients)
                .map(|(f, u)| format!("{}·({}^{n} - {})", paren(u.to_string()), paren(f.to_string()), paren(f.to_string())))
                .collect();
            writeln!(w, "In F_{p}[T]: {} = {}", c.g, sum.join(" + ")).unwrap();
            writeln!(w, "and ({})·({}) = T^{q} - T.", c.g, c.cofactor).unwrap();
            if tut {
                writeln!(w, "Let x be an element of any {n}-ring with {p} = 0.").unwrap();
                for f in &c.witnesses {
                    let fx = in_x(f);
                    let expanded = f.pow(n);
                    let reduced = expanded.reduce_frobenius(n as usize);
                    writeln!(
                        w,
                        "  {fx} = {}^{n} = {} = {}   (using x^{n} = x)",
                        paren(fx.clone()),
                        in_x(&expanded),
                        in_x(&reduced)
                    )
                    .unwrap();
                }
                writeln!(w, "Substituting x into the identity gives g(x) = 0 for g = {}.", c.g).unwrap();
                writeln!(w, "Multiplying by the cofactor gives x^{q} = x.").unwrap();
            }
            writeln!(w, "Hence every {n}-ring with {p} = 0 is a {q}-ring.").unwrap();
        }
        Payload::CrtGlue(c) => {
            if c.primes.len() == 1 {
                writeln!(w, "xy - yx = {} u_1, nothing to glue.", c.primes[0]).unwrap();
            } else {
                let terms: Vec<String> = c.coefficients.iter().enumerate().map(|(i, k)| format!("({k}) u_{}", i + 1)).collect();
                if tut {
                    for (i, p) in c.primes.iter().enumerate() {
                        writeln!(w, "modulo {p}: xy - yx = {p} u_{}", i + 1).unwrap();
                    }
                }
                writeln!(w, "xy - yx = {} ({})", c.product(), terms.join(" + ")).unwrap();
                if tut {
                    writeln!(w, "since the coefficients times P/p_i sum to 1, and P = 0.").unwrap();
                }
            }
        }
        Payload::IdempotentDecomposition(c) => {
            let q = c.q();
            let terms: Vec<String> = c
                .units
                .iter()
                .map(|u| {
                    let s = u.display_with("z");
                    format!("{}·(1 - (x - {})^{})", paren(s.clone()), paren(s), q - 1)
                })
                .collect();
            writeln!(w, "In F_{q}[x]: {} = x", terms.join(" + ")).unwrap();
            if q > 2 {
                let pf: Vec<String> = c
                    .power_form()
                    .iter()
                    .zip(&c.units)
                    .map(|(k, u)| format!("{}·(x - {})^{}", paren(k.display_with("z")), paren(u.display_with("z")), q - 1))
                    .collect();
                writeln!(w, "equivalently {} = x", pf.join(" + ")).unwrap();
            }
            if tut {
                writeln!(w, "Each 1 - (x - u)^{} is idempotent in a {q}-ring, and idempotents are central.", q - 1).unwrap();
                writeln!(w, "So x is a linear combination of central elements and hence central.").unwrap();
            }
        }
        Payload::EgSystem(s) => {
            let q = s.p.pow(s.k as u32);
            writeln!(w, "Orthogonal idempotents for T^{q} - T over F_{}:", s.p).unwrap();
            for m in &s.members {
                writeln!(w, "  e_{{{}}} = {}", m.g, m.e).unwrap();
            }
            if tut {
                writeln!(w, "Each e_g is 1 mod g and 0 mod the other factors; they sum to 1 and multiply to 0 pairwise.").unwrap();
                writeln!(w, "For an element a, e_g(a) splits the ring into pieces where g(a) = 0.").unwrap();
            }
        }
        Payload::Bn(r) => {
            let step = match r.mode {
                BnMode::Exhaustive => "b_{n+1} = a b_n - b_n a - f_n(a) b_n",
                _ => "b_{n+1} = b_n a - f_n(a) b_n",
            };
            writeln!(w, "Assume g(a) = 0 with g = {} over F_{}; b_0 = b, {step}.", r.g, r.p).unwrap();
            let fs: Vec<String> = r.enumeration.iter().map(|f| f.to_string()).collect();
            writeln!(w, "f = {}", fs.join(", ")).unwrap();
            if tut {
                for (i, b) in r.b.iter().enumerate() {
                    writeln!(w, "  B_{i} = {b}").unwrap();
                }
            }
            writeln!(w, "b_{} = 0.", r.m).unwrap();
            if r.obligations.is_empty() {
                writeln!(w, "No Wedderburn steps needed.").unwrap();
            } else {
                let ob: Vec<String> = r.obligations.iter().map(|f| format!("W_{{{},{},{}}}", r.p, r.k, f)).collect();
                writeln!(w, "Descending to b_1 = 0 uses {}.", ob.join(", ")).unwrap();
            }
        }
        Payload::Commutator(c) => {
            writeln!(w, "XY - YX = sum of {} terms g (f^{} - f) h:", c.summands.len(), c.n).unwrap();
            for s in &c.summands {
                writeln!(w, "  ({})·({})·p({})·({})", s.coeff, s.left, s.inner, s.right).unwrap();
            }
            if tut {
                writeln!(w, "where p(f) = f^{} - f vanishes in every {}-ring.", c.n, c.n).unwrap();
            }
        }
        Payload::P2Trace(t) => {
            let p = t.p;
            let e = t.e.display_with("x");
            writeln!(w, "e(x) = {e} satisfies e^{p} = e in any {}-ring with {p} = 0.", p * p).unwrap();
            writeln!(w, "(x+y)^{p} - x^{p} - y^{p} = sum of brackets [x^i y^{}] for 0 < i < {p}.", "(p-i)").unwrap();
            writeln!(w, "The {p}x{p} Vandermonde matrix over F_{p} is inverted explicitly.").unwrap();
            writeln!(w, "y [x y^{}] = [x y^{}] y gives y^{p} x = x y^{p}.", p - 1, p - 1).unwrap();
            if tut {
                writeln!(w, "Idempotents are central, so e(x) is central; the brackets are then central by the").unwrap();
                writeln!(w, "Vandermonde step, and the last line makes y^{p} commute with x.").unwrap();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofkit::crt_glue_certificate;
    use crate::reduction::{characteristic_certificate, reduction_certificate};

    #[test]
    fn characteristic_seven() {
        let c: Certificate = characteristic_certificate(7).unwrap().into();
        let text = render_certificate(&c, Style::Terse).unwrap();
        assert!(text.contains("2·3·7 = 0"), "{text}");
        assert_eq!(text, render_certificate(&c, Style::Terse).unwrap());
    }

    #[test]
    fn reduction_three_two() {
        let c: Certificate = reduction_certificate(3, 2).unwrap().into();
        let text = render_certificate(&c, Style::Tutorial).unwrap();
        assert!(text.contains("x + 1 = (x + 1)^3 = x^3 + x^2 + x + 1"), "{text}");
        assert!(text.contains("is a 2-ring"));
    }

    #[test]
    fn single_prime_glue_is_one_line() {
        let c: Certificate = crt_glue_certificate(&[5]).unwrap().into();
        assert_eq!(render_certificate(&c, Style::Terse).unwrap().lines().count(), 1);
    }

    #[test]
    fn refuses_failing_certificates() {
        let mut cc = characteristic_certificate(7).unwrap();
        cc.coefficients[1] += 1;
        let c: Certificate = cc.into();
        assert!(matches!(render_certificate(&c, Style::Terse), Err(Error::Refused(_))));
    }
}
