//! JSON form of a double-series configuration.
//!
//! Keys `a d v h g f u e` hold arrays of parameters, keys `x y z w` hold
//! scalars. A number is either a bare real or a `[re, im]` pair. Missing
//! sequences are empty; all four scalars are required.

use hyperxform::numerics::Complex;
use hyperxform::series::ParameterVector;
use hyperxform::slater::SlaterConfiguration;
use serde_json::Value;

const SEQUENCES: [&str; 8] = ["a", "d", "v", "h", "g", "f", "u", "e"];
const SCALARS: [&str; 4] = ["x", "y", "z", "w"];

fn number(v: &Value, field: &str, prec: u32) -> Result<Complex, String> {
    let component = |c: &Value| c.as_f64().ok_or_else(|| format!("field {field:?}: expected a number, got {c}"));
    match v {
        Value::Number(_) => Ok(Complex::from_f64(component(v)?, 0.0, prec)),
        Value::Array(pair) if pair.len() == 2 => {
            Ok(Complex::from_f64(component(&pair[0])?, component(&pair[1])?, prec))
        }
        other => Err(format!("field {field:?}: expected a number or [re, im], got {other}")),
    }
}

pub fn parse_configuration(text: &str, prec: u32) -> Result<SlaterConfiguration, String> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| format!("line {} column {}: {e}", e.line(), e.column()))?;
    let obj = root.as_object().ok_or("top level must be a JSON object")?;
    if let Some(key) = obj.keys().find(|k| !SEQUENCES.contains(&k.as_str()) && !SCALARS.contains(&k.as_str())) {
        return Err(format!("unknown field {key:?}"));
    }
    let mut cfg = SlaterConfiguration::empty(prec);
    for name in SEQUENCES {
        let Some(v) = obj.get(name) else { continue };
        let items = v.as_array().ok_or_else(|| format!("field {name:?}: expected an array"))?;
        let values = items
            .iter()
            .enumerate()
            .map(|(i, x)| number(x, &format!("{name}[{i}]"), prec))
            .collect::<Result<Vec<_>, _>>()?;
        let seq = ParameterVector::new(values);
        match name {
            "a" => cfg.a = seq,
            "d" => cfg.d = seq,
            "v" => cfg.v = seq,
            "h" => cfg.h = seq,
            "g" => cfg.g = seq,
            "f" => cfg.f = seq,
            "u" => cfg.u = seq,
            _ => cfg.e = seq,
        }
    }
    for name in SCALARS {
        let v = obj.get(name).ok_or_else(|| format!("missing field {name:?}"))?;
        let value = number(v, name, prec)?;
        match name {
            "x" => cfg.x = value,
            "y" => cfg.y = value,
            "z" => cfg.z = value,
            _ => cfg.w = value,
        }
    }
    Ok(cfg)
}

fn encode(c: &Complex) -> Value {
    let [re, im] = c.to_f64_pair();
    if im == 0.0 {
        Value::from(re)
    } else {
        Value::from(vec![re, im])
    }
}

/// Pretty JSON for a configuration, in the format [`parse_configuration`] reads.
pub fn configuration_to_json(cfg: &SlaterConfiguration) -> String {
    let mut obj = serde_json::Map::new();
    let seqs = [&cfg.a, &cfg.d, &cfg.v, &cfg.h, &cfg.g, &cfg.f, &cfg.u, &cfg.e];
    for (name, seq) in SEQUENCES.iter().zip(seqs) {
        obj.insert(name.to_string(), Value::Array(seq.iter().map(encode).collect()));
    }
    for (name, s) in SCALARS.iter().zip([&cfg.x, &cfg.y, &cfg.z, &cfg.w]) {
        obj.insert(name.to_string(), encode(s));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
}
