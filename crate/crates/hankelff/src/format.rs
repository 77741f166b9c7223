//! JSON encodings of the core types. Rationals and big integers are
//! strings so no precision is lost on the way through a JSON reader.

use hankelff_core::cyclosum::CycInt;
use hankelff_core::ffield::{Elem, Field};
use hankelff_core::fpoly::Poly;
use hankelff_core::hankel::SymbolSeq;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// `{"p", "e", "modulus"}`; the modulus is empty for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn of(field: &Field) -> FieldJson {
        let modulus = if field.is_prime_field() { Vec::new() } else { field.modulus().to_vec() };
        FieldJson { p: field.characteristic(), e: field.degree(), modulus }
    }
}

/// `"num/den"`, with the denominator always present.
pub fn rational_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = s.split_once('/')?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num.parse().ok()?, den))
}

/// An integer when `e = 1`, else the coefficient tuple of the residue.
pub fn elem_json(field: &Field, a: Elem) -> Value {
    if field.is_prime_field() {
        json!(a.code())
    } else {
        json!(field.digits(a))
    }
}

/// Coefficients low degree first, each as in [`elem_json`].
pub fn poly_json(field: &Field, p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| elem_json(field, c)).collect())
}

pub fn seq_json(field: &Field, s: &SymbolSeq) -> Value {
    Value::Array(s.entries().iter().map(|&c| elem_json(field, c)).collect())
}

/// Compact text form of a sequence, for failure messages.
pub fn seq_str(s: &SymbolSeq) -> String {
    let codes: Vec<String> = s.codes().iter().map(|c| c.to_string()).collect();
    format!("({})", codes.join(","))
}

pub fn cyc_json(z: &CycInt) -> Value {
    json!({ "p": z.p(), "coords": z.coords() })
}

pub fn class_str((r, rho, pi): (usize, usize, usize)) -> String {
    format!("({r},{rho},{pi})")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for (a, b) in [(20, 3), (-4, 6), (0, 1), (7, 1)] {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            assert_eq!(parse_rational(&rational_str(&x)), Some(x));
        }
        assert_eq!(rational_str(&BigRational::from_integer(BigInt::from(1))), "1/1");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("12"), None);
    }

    #[test]
    fn field_and_elements() {
        let gf4 = Field::new(2, 2, None).unwrap();
        assert_eq!(serde_json::to_string(&FieldJson::of(&gf4)).unwrap(), r#"{"p":2,"e":2,"modulus":[1,1,1]}"#);
        assert_eq!(elem_json(&gf4, gf4.elem(2).unwrap()), json!([0, 1]));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(FieldJson::of(&f3).modulus, Vec::<u32>::new());
        let p = Poly::from_codes(&f3, &[2, 0, 1]).unwrap();
        assert_eq!(poly_json(&f3, &p), json!([2, 0, 1]));
        let z = hankelff_core::cyclosum::cyc_from_exponent(3, 2).unwrap();
        assert_eq!(cyc_json(&z), json!({"p": 3, "coords": [-1, -1]}));
    }
}
