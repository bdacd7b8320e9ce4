//! Number formatting and record writers.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;

/// JSON with every float written to 17 significant digits.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", sig17(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn sig17(v: f64) -> String {
    if v == 0.0 {
        return "0.0".into();
    }
    format!("{v:.16e}")
}

/// Ten significant digits, fixed notation for moderate magnitudes.
pub fn sig10(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..10).contains(&e) {
        format!("{:.*}", (9 - e).max(0) as usize, v)
    } else {
        format!("{v:.9e}")
    }
}

/// One JSON document per line.
pub fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser)?;
    out.write_all(&buf)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn opt17(v: Option<f64>) -> String {
    v.map(sig17).unwrap_or_default()
}

pub fn opt10(v: Option<f64>) -> String {
    v.map(sig10).unwrap_or_else(|| "-".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_counts() {
        assert_eq!(sig17(2.3504023872876028), "2.3504023872876028e0");
        assert_eq!(sig10(2.3504023872876028), "2.350402387");
        assert_eq!(sig10(-0.000123456789012), "-0.0001234567890");
        assert_eq!(sig10(1.5e-7), "1.500000000e-7");
    }

    #[test]
    fn json_floats_use_seventeen_digits() {
        let mut out = Vec::new();
        json_line(&mut out, &serde_json::json!({"v": 0.1, "n": f64::NAN})).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "{\"n\":null,\"v\":1.0000000000000001e-1}\n");
    }
}
