//! JSON and CSV emission with locale-free, 17-significant-digit reals, so
//! reruns diff bitwise and parsing the output recovers the exact doubles.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io::{self, Write};

/// `serde_json` formatter printing every finite real as `d.16-digits e exp`.
pub struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(buf).expect("serializer emits UTF-8")
}

/// CSV cell for a real; `.` decimal separator, round-trippable.
pub fn csv_real(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "inf".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip_through_text() {
        for &x in &[0.0, 0.5, 1.0 / 3.0, 0.4422, 1e-300, 12345.6789] {
            let s = to_json_string(&x);
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(back, x, "text {s}");
        }
    }

    #[test]
    fn csv_real_has_point_separator() {
        let s = csv_real(2.0 / 3.0);
        assert!(s.contains('.'));
        assert!(!s.contains(','));
        assert_eq!(csv_real(f64::INFINITY), "inf");
    }
}
