//! Single-field mutations of certificate text.
//!
//! Numbers are located lexically, outside string literals, so a mutation
//! changes exactly one field and leaves every other byte in place.

/// A numeric token in certificate text.
#[derive(Debug, Clone)]
pub struct NumericField {
    pub start: usize,
    pub end: usize,
    /// The object key the number belongs to, e.g. `deps` or `old`.
    pub key: String,
    pub value: i64,
}

pub fn numeric_fields(text: &str) -> Vec<NumericField> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut key = String::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'"' => {
                let start = i + 1;
                i += 1;
                while bytes[i] != b'"' {
                    i += if bytes[i] == b'\\' { 2 } else { 1 };
                }
                if text[i + 1..].starts_with(':') {
                    key = text[start..i].to_string();
                }
                i += 1;
            }
            b'-' | b'0'..=b'9' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(NumericField {
                    start,
                    end: i,
                    key: key.clone(),
                    value: text[start..i].parse().expect("integer token"),
                });
            }
            _ => i += 1,
        }
    }
    out
}

/// `text` with `field` replaced by its value with bit `bit` flipped.
pub fn flip_bit(text: &str, field: &NumericField, bit: u32) -> String {
    let value = field.value ^ (1 << bit);
    format!("{}{}{}", &text[..field.start], value, &text[field.end..])
}
