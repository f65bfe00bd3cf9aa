//! Character specifications on the command line. Grammar in `docs/characters.ebnf`.

use lambda_adic::characters::unit_generators;
use lambda_adic::DirichletCharacter;
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCharacter {
    modulus: u64,
    /// Exponents of `zeta_order` on the canonical generators of `(Z/modulus)^x`.
    images: Vec<i64>,
    order: Option<u64>,
}

pub fn parse(spec: &str, p: u64) -> Result<DirichletCharacter, String> {
    let s = spec.trim();
    if s.starts_with('{') {
        return parse_json(s);
    }
    let (body, induce) = match s.rsplit_once('@') {
        Some((b, m)) => (b, Some(parse_int::<u64>(m, "modulus")?)),
        None => (s, None),
    };
    let mut chi = DirichletCharacter::trivial(1);
    for term in body.split('*') {
        chi = chi.mul(&parse_term(term.trim(), p)?);
    }
    match induce {
        Some(m) if m == 0 || m % chi.modulus() != 0 => {
            Err(format!("cannot induce a character mod {} to modulus {}", chi.modulus(), m))
        }
        Some(m) => Ok(chi.induce(m)),
        None => Ok(chi),
    }
}

fn parse_term(t: &str, p: u64) -> Result<DirichletCharacter, String> {
    if t == "triv" {
        return Ok(DirichletCharacter::trivial(1));
    }
    if let Some(rest) = t.strip_prefix("omega") {
        let k = match rest.strip_prefix('^') {
            Some(e) => parse_int::<i64>(e, "exponent")?,
            None if rest.is_empty() => 1,
            None => return Err(format!("bad term '{}'", t)),
        };
        return Ok(DirichletCharacter::omega_pow(p, k));
    }
    if let Some(d) = t.strip_prefix("quad") {
        let d = parse_int::<i64>(d, "discriminant")?;
        return DirichletCharacter::quadratic(d).map_err(|e| e.to_string());
    }
    Err(format!("unknown character term '{}' (expected triv, omega^k or quad<D>)", t))
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad {} '{}'", what, s))
}

fn parse_json(s: &str) -> Result<DirichletCharacter, String> {
    let j: JsonCharacter = serde_json::from_str(s).map_err(|e| format!("character JSON: {}", e))?;
    if j.modulus == 0 {
        return Err("modulus must be positive".into());
    }
    let order = match j.order {
        Some(n) => n,
        None => unit_generators(j.modulus).iter().fold(1, |acc, &(_, o)| lcm(acc, o)),
    };
    DirichletCharacter::from_generator_exponents(j.modulus, order, &j.images).map_err(|e| e.to_string())
}

fn lcm(a: u64, b: u64) -> u64 {
    lambda_adic::arith::int::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_forms() {
        let p = 5;
        assert_eq!(parse("omega^2", p).unwrap(), DirichletCharacter::omega_pow(5, 2));
        assert_eq!(parse("omega", p).unwrap(), DirichletCharacter::omega_pow(5, 1));
        assert!(parse("triv", p).unwrap().is_trivial());
        let q = parse("quad-3*omega^2", p).unwrap();
        assert_eq!(q.conductor(), 15);
        let induced = parse("quad-4*omega@60", p).unwrap();
        assert_eq!((induced.modulus(), induced.conductor()), (60, 20));
    }

    #[test]
    fn json_form_matches_named_form() {
        let j = parse(r#"{"modulus": 5, "images": [1]}"#, 5).unwrap();
        assert_eq!(j, DirichletCharacter::omega_pow(5, 1));
        let q4 = parse(r#"{"modulus": 4, "order": 2, "images": [1]}"#, 5).unwrap();
        assert_eq!(q4, DirichletCharacter::quadratic(-4).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["omega^x", "quad7", "chi", "omega@7", r#"{"modulus": 5}"#, r#"{"modulus": 5, "images": [1, 1]}"#] {
            assert!(parse(bad, 5).is_err(), "{}", bad);
        }
    }
}
