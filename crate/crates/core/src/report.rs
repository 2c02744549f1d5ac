//! JSON rendering shared by every report: floats are cut to 12 significant
//! digits so output is stable across platforms and solver tweaks.

use serde::Serialize;
use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            if x.fract() == 0.0 && x.abs() < 1e15 {
                // integral floats print without a trailing ".0"
                Value::from(x as i64)
            } else {
                serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(x: &T) -> serde_json::Result<Value> {
    serde_json::to_value(x).map(round_value)
}

pub fn render<T: Serialize>(x: &T) -> serde_json::Result<String> {
    to_value(x).map(|v| v.to_string())
}

pub fn render_pretty<T: Serialize>(x: &T) -> serde_json::Result<String> {
    to_value(x).and_then(|v| serde_json::to_string_pretty(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ub_ckstar;
    use crate::constructions::{sk_certify, CertifyMode};
    use crate::linalg::PmOneMatrix;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(2.0000000000000004), 2.0);
        assert_eq!(round_sig(std::f64::consts::SQRT_2).to_string(), "1.41421356237");
        assert_eq!(render(&vec![1.0f64, 0.5]).unwrap(), "[1,0.5]");
    }

    #[test]
    fn stable_fields() {
        let v = to_value(&sk_certify(&PmOneMatrix::h2(), 2, CertifyMode::Exact).unwrap()).unwrap();
        assert_eq!(v["k"], 2);
        assert_eq!(v["order"], 2);
        assert_eq!(v["verdict"], "member");
        let v = to_value(&ub_ckstar(2).unwrap()[0]).unwrap();
        assert_eq!(v["value"], "1/2");
    }
}
