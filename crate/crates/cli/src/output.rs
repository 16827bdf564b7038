use jacobi_core::{DenseMatrix, ScaledValue};

/// 17 significant digits, round-trip exact for binary64. Every number that
/// reaches a payload goes through here, so the JSON and CSV emitters agree
/// to the last digit.
pub(crate) fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON fragment for a quantity that may have left the representable range.
pub(crate) fn fmt_or_null(v: f64) -> String {
    if v.is_finite() {
        fmt_num(v)
    } else {
        "null".to_string()
    }
}

/// Scaled determinant as a one-line object: plain value when representable,
/// sign and base-2 magnitude always (the magnitude is null only for zero).
pub(crate) fn scaled_json(d: ScaledValue) -> String {
    let value = match d.to_f64() {
        Ok(v) if v.is_finite() => fmt_num(v),
        _ => "null".to_string(),
    };
    format!(
        "{{\"value\": {value}, \"sign\": {}, \"log2\": {}}}",
        d.signum(),
        fmt_or_null(d.log2_magnitude()),
    )
}

/// Top-level JSON object with deterministic key order and flat two-space
/// indentation. Keys and string values are fixed ASCII identifiers, so no
/// escaping is needed.
pub(crate) struct JsonObject {
    buf: String,
    any: bool,
}

impl JsonObject {
    pub(crate) fn new() -> JsonObject {
        JsonObject {
            buf: String::from("{"),
            any: false,
        }
    }

    pub(crate) fn raw(&mut self, key: &str, value: &str) -> &mut JsonObject {
        self.buf.push_str(if self.any { ",\n  " } else { "\n  " });
        self.any = true;
        self.buf.push('"');
        self.buf.push_str(key);
        self.buf.push_str("\": ");
        self.buf.push_str(value);
        self
    }

    pub(crate) fn num(&mut self, key: &str, v: f64) -> &mut JsonObject {
        let text = fmt_num(v);
        self.raw(key, &text)
    }

    pub(crate) fn int(&mut self, key: &str, v: u64) -> &mut JsonObject {
        let text = v.to_string();
        self.raw(key, &text)
    }

    pub(crate) fn signed(&mut self, key: &str, v: i64) -> &mut JsonObject {
        let text = v.to_string();
        self.raw(key, &text)
    }

    pub(crate) fn text(&mut self, key: &str, v: &str) -> &mut JsonObject {
        let quoted = format!("\"{v}\"");
        self.raw(key, &quoted)
    }

    pub(crate) fn boolean(&mut self, key: &str, v: bool) -> &mut JsonObject {
        self.raw(key, if v { "true" } else { "false" })
    }

    pub(crate) fn finish(mut self) -> String {
        self.buf.push_str("\n}\n");
        self.buf
    }
}

/// Matrix as a JSON array of row arrays, indented to sit inside a top-level
/// object field.
pub(crate) fn matrix_json(m: &DenseMatrix) -> String {
    let mut out = String::from("[");
    for i in 0..m.order() {
        out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        for j in 0..m.order() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&fmt_num(m.get(i, j)));
        }
        out.push(']');
    }
    out.push_str("\n  ]");
    out
}

/// Vector as a one-line JSON array.
pub(crate) fn vector_json(v: &[f64]) -> String {
    let body: Vec<String> = v.iter().map(|&x| fmt_num(x)).collect();
    format!("[{}]", body.join(", "))
}

/// Vector with gaps as a one-line JSON array, `null` at the gaps.
pub(crate) fn nullable_vector_json(v: &[Option<f64>]) -> String {
    let body: Vec<String> = v
        .iter()
        .map(|x| match x {
            Some(x) => fmt_num(*x),
            None => "null".to_string(),
        })
        .collect();
    format!("[{}]", body.join(", "))
}

/// Matrix export rows under the header `k,s,value`, row-major, 0-based path
/// indices.
pub(crate) fn matrix_csv(m: &DenseMatrix) -> String {
    let mut out = String::from("k,s,value\n");
    for k in 0..m.order() {
        for s in 0..m.order() {
            out.push_str(&format!("{k},{s},{}\n", fmt_num(m.get(k, s))));
        }
    }
    out
}

/// Vector export rows under the header `k,value`.
pub(crate) fn vector_csv(v: &[f64]) -> String {
    let mut out = String::from("k,value\n");
    for (k, &x) in v.iter().enumerate() {
        out.push_str(&format!("{k},{}\n", fmt_num(x)));
    }
    out
}
