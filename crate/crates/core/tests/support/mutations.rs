//! A fixed corpus of single-leaf mutations of valid certificates.

use num_bigint::BigInt;
use ringlock::proofkit::{
    bn_certificate, crt_glue_certificate, eg_system, idempotent_certificate, p2_trace, verify_json, Certificate,
    CommutatorCertificate, Enumeration,
};
use ringlock::fppoly::FpPoly;
use ringlock::reduction::{characteristic_certificate, reduction_certificate};
use serde_json::Value;

pub const CORPUS_SIZE: usize = 50;

pub fn seeds() -> Vec<Certificate> {
    let g = |p, s| FpPoly::parse(p, s).unwrap();
    vec![
        characteristic_certificate(7).unwrap().into(),
        characteristic_certificate(2023).unwrap().into(),
        reduction_certificate(22, 2).unwrap().into(),
        reduction_certificate(5, 3).unwrap().into(),
        crt_glue_certificate(&[2, 3, 5]).unwrap().into(),
        // over F_5 with modulus Z, flipping to Z + 1 is an equivalent mutant
        idempotent_certificate(2, Some(&g(2, "Z^2+Z+1"))).unwrap().into(),
        eg_system(2, 2).unwrap().into(),
        bn_certificate(2, 3, &g(2, "T^3+T+1"), &Enumeration::Monomial).unwrap().into(),
        CommutatorCertificate::two_ring().into(),
        p2_trace(3).unwrap().into(),
    ]
}

/// Paths to numeric leaves (numbers and decimal strings) of the payload.
fn leaves(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Number(_) => out.push(path.clone()),
        Value::String(s) if s.parse::<BigInt>().is_ok() => out.push(path.clone()),
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                path.push(i.to_string());
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                path.push(k.clone());
                leaves(x, path, out);
                path.pop();
            }
        }
        _ => {}
    }
}

fn at<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |v, k| match v {
        Value::Array(xs) => &mut xs[k.parse::<usize>().unwrap()],
        Value::Object(m) => m.get_mut(k).unwrap(),
        _ => unreachable!(),
    })
}

/// `(description, mutated json)`; each flips the low bit of one numeric leaf.
pub fn corpus() -> Vec<(String, String)> {
    let seeds = seeds();
    (0..CORPUS_SIZE)
        .map(|i| {
            let cert = &seeds[i % seeds.len()];
            let mut v: Value = serde_json::to_value(cert).unwrap();
            let mut paths = Vec::new();
            leaves(&v["payload"], &mut vec!["payload".to_string()], &mut paths);
            let path = &paths[(i / seeds.len() * 7919 + i * 31) % paths.len()];
            let leaf = at(&mut v, path);
            *leaf = match leaf.clone() {
                Value::Number(n) => Value::from(n.as_u64().unwrap() ^ 1),
                Value::String(s) => Value::from((s.parse::<BigInt>().unwrap() ^ BigInt::from(1)).to_string()),
                _ => unreachable!(),
            };
            (format!("{} {}", cert.kind(), path.join(".")), v.to_string())
        })
        .collect()
}

/// Mutations that still verify.
pub fn survivors() -> Vec<String> {
    corpus()
        .into_iter()
        .filter(|(_, json)| verify_json(json).map(|r| r.passed()).unwrap_or(false))
        .map(|(d, _)| d)
        .collect()
}
